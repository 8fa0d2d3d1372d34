#include "normforge/algebra/polymod.hpp"

#include "normforge/error.hpp"

#include <algorithm>
#include <sstream>

namespace normforge {
namespace fp {

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

static u64 red(const Integer& v, u64 p)
{
    Integer r = v % Integer(std::to_string(p));
    if (r < 0) r += Integer(std::to_string(p));
    return to_u64(r);
}

Poly from_ints(const std::vector<Integer>& c, u64 p)
{
    Poly r;
    for (auto& v : c) r.push_back(red(v, p));
    trim(r);
    return r;
}

Poly reduce(const UniPoly& f, u64 p)
{
    Poly r;
    for (auto& a : f.coeffs()) {
        u64 n = red(a.get_num(), p), d = red(a.get_den(), p);
        if (d == 0) fail(ErrorCode::InvalidArgument, "denominator divisible by p");
        r.push_back(mulmod_u64(n, invmod_u64(d, p), p));
    }
    trim(r);
    return r;
}

UniPoly to_unipoly(const Poly& a)
{
    std::vector<Rational> c;
    for (u64 v : a) c.emplace_back(Integer(std::to_string(v)));
    return UniPoly(c);
}

Poly add(const Poly& a, const Poly& b, u64 p)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        u64 s = x + y;
        if (s >= p || s < x) s -= p;
        r[i] = s;
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, u64 p)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = x >= y ? x - y : x + (p - y);
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, u64 p)
{
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    Poly r(acc.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<u64>((r[i + j] + (unsigned __int128)a[i] * b[j]) % p);
        }
    }
    trim(r);
    return r;
}

Poly scale(const Poly& a, u64 s, u64 p)
{
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod_u64(a[i], s, p);
    trim(r);
    return r;
}

void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, u64 p)
{
    if (b.empty()) fail(ErrorCode::InvalidArgument, "division by zero polynomial mod p");
    r = a;
    trim(r);
    std::size_t db = b.size() - 1;
    if (r.size() <= db) { q.clear(); return; }
    u64 inv = invmod_u64(b.back(), p);
    q.assign(r.size() - db, 0);
    for (std::size_t k = r.size(); k-- > db;) {
        u64 c = r[k];
        if (!c) continue;
        u64 t = mulmod_u64(c, inv, p);
        q[k - db] = t;
        for (std::size_t j = 0; j <= db; ++j) {
            u64 s = mulmod_u64(t, b[j], p);
            u64& x = r[k - db + j];
            x = x >= s ? x - s : x + (p - s);
        }
    }
    r.resize(db);
    trim(r);
    trim(q);
}

Poly mod(const Poly& a, const Poly& b, u64 p)
{
    Poly q, r;
    divrem(a, b, q, r, p);
    return r;
}

Poly quo(const Poly& a, const Poly& b, u64 p)
{
    Poly q, r;
    divrem(a, b, q, r, p);
    return q;
}

Poly monic(const Poly& a, u64 p)
{
    if (a.empty()) return a;
    return scale(a, invmod_u64(a.back(), p), p);
}

Poly gcd(const Poly& a0, const Poly& b0, u64 p)
{
    Poly a = a0, b = b0;
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t, u64 p)
{
    Poly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        Poly q, r;
        divrem(r0, r1, q, r, p);
        r0 = r1; r1 = r;
        Poly ns = sub(s0, mul(q, s1, p), p); s0 = s1; s1 = ns;
        Poly nt = sub(t0, mul(q, t1, p), p); t0 = t1; t1 = nt;
    }
    if (r0.empty()) { s.clear(); t.clear(); return {}; }
    u64 inv = invmod_u64(r0.back(), p);
    s = scale(s0, inv, p);
    t = scale(t0, inv, p);
    return scale(r0, inv, p);
}

Poly derivative(const Poly& a, u64 p)
{
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mulmod_u64(a[i], i % p, p));
    trim(r);
    return r;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) { return mod(mul(a, b, p), m, p); }

Poly powmod(const Poly& a, const Integer& e, const Poly& m, u64 p)
{
    if (e < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
    Poly r = mod(Poly{1}, m, p), b = mod(a, m, p);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m, p);
    }
    return r;
}

u64 eval(const Poly& a, u64 x, u64 p)
{
    u64 r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = (mulmod_u64(r, x, p) + a[i]) % p;
    return r;
}

bool less(const Poly& a, const Poly& b)
{
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

namespace {

Poly pth_root(const Poly& c, u64 p)
{
    Poly r;
    for (std::size_t i = 0; i < c.size(); i += p) r.push_back(c[i]);
    trim(r);
    return r;
}

void squarefree(const Poly& f, u64 p, unsigned mult, std::vector<Factor>& out)
{
    if (f.size() <= 1) return;
    Poly c = gcd(f, derivative(f, p), p);
    Poly w = quo(f, c, p);
    unsigned i = 1;
    while (!is_one(w) && !w.empty()) {
        Poly y = gcd(w, c, p);
        Poly fac = quo(w, y, p);
        if (fac.size() > 1) out.push_back({monic(fac, p), i * mult});
        w = y;
        c = quo(c, y, p);
        ++i;
    }
    if (c.size() > 1) squarefree(pth_root(c, p), p, mult * static_cast<unsigned>(p), out);
}

void equal_degree(const Poly& f, std::size_t d, u64 p, std::mt19937_64& rng, std::vector<Poly>& out)
{
    std::size_t n = f.size() - 1;
    if (n == d) { out.push_back(f); return; }
    Integer q = ipow(Integer(std::to_string(p)), static_cast<unsigned long>(d));
    Integer e = (q - 1) / 2;
    std::uniform_int_distribution<u64> dist(0, p - 1);
    while (true) {
        Poly a(n);
        for (auto& v : a) v = dist(rng);
        trim(a);
        if (a.size() <= 1) continue;
        Poly b;
        if (p == 2) {
            Poly t = a, s = a;
            for (std::size_t i = 1; i < d; ++i) {
                t = mulmod(t, t, f, p);
                s = add(s, t, p);
            }
            b = s;
        } else {
            b = sub(powmod(a, e, f, p), Poly{1}, p);
        }
        Poly g = gcd(f, b, p);
        if (g.size() > 1 && g.size() < f.size()) {
            equal_degree(g, d, p, rng, out);
            equal_degree(quo(f, g, p), d, p, rng, out);
            return;
        }
    }
}

// f squarefree monic
void distinct_degree(Poly f, u64 p, std::mt19937_64& rng, std::vector<Poly>& out)
{
    Poly x{0, 1};
    Poly h = mod(x, f, p);
    Integer P(std::to_string(p));
    for (std::size_t d = 1; f.size() > 1; ++d) {
        if (2 * d > f.size() - 1) {
            out.push_back(f);
            return;
        }
        h = powmod(h, P, f, p);
        Poly g = gcd(f, sub(h, x, p), p);
        if (g.size() > 1) {
            equal_degree(g, d, p, rng, out);
            f = quo(f, g, p);
            h = mod(h, f, p);
        }
    }
}

}  // namespace

std::vector<Factor> factor(const Poly& f0, u64 p, std::uint64_t seed)
{
    Poly f = f0;
    trim(f);
    if (f.empty()) fail(ErrorCode::InvalidArgument, "factor of zero polynomial mod p");
    f = monic(f, p);
    std::vector<Factor> sqf;
    squarefree(f, p, 1, sqf);
    std::mt19937_64 rng(seed);
    std::vector<Factor> out;
    for (auto& [g, m] : sqf) {
        std::vector<Poly> irr;
        distinct_degree(g, p, rng, irr);
        for (auto& h : irr) out.push_back({monic(h, p), m});
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.poly != b.poly) return less(a.poly, b.poly);
        return a.mult < b.mult;
    });
    // merge equal factors (possible across squarefree strata for p | multiplicities)
    std::vector<Factor> merged;
    for (auto& fa : out) {
        if (!merged.empty() && merged.back().poly == fa.poly) merged.back().mult += fa.mult;
        else merged.push_back(fa);
    }
    return merged;
}

bool is_irreducible(const Poly& f0, u64 p)
{
    Poly f = f0;
    trim(f);
    if (f.size() <= 1) return false;
    auto fs = factor(f, p);
    return fs.size() == 1 && fs[0].mult == 1;
}

}  // namespace fp

std::vector<ModPFactor> factor_poly_mod_p(const UniPoly& f, const Integer& p, std::uint64_t seed)
{
    require_prime(p);
    if (f.is_zero()) fail(ErrorCode::InvalidArgument, "zero polynomial");
    u64 pp = to_u64(p);
    fp::Poly g = fp::reduce(f, pp);
    std::vector<ModPFactor> out;
    if (g.size() <= 1) return out;
    for (auto& fa : fp::factor(g, pp, seed)) out.push_back({fp::to_unipoly(fa.poly), fa.mult});
    return out;
}

namespace zm {

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly reduce(const Poly& a, const Integer& M)
{
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), M.get_mpz_t());
    }
    trim(r);
    return r;
}

Poly add(const Poly& a, const Poly& b, const Integer& M)
{
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    return reduce(r, M);
}

Poly sub(const Poly& a, const Poly& b, const Integer& M)
{
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    return reduce(r, M);
}

Poly mul(const Poly& a, const Poly& b, const Integer& M)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return reduce(r, M);
}

void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, const Integer& M)
{
    if (b.empty() || b.back() != 1) fail(ErrorCode::InvalidArgument, "zm::divrem needs a monic divisor");
    r = reduce(a, M);
    std::size_t db = b.size() - 1;
    if (r.size() <= db) { q.clear(); return; }
    q.assign(r.size() - db, Integer(0));
    for (std::size_t k = r.size(); k-- > db;) {
        Integer t = r[k] % M;
        if (t < 0) t += M;
        if (t == 0) continue;
        q[k - db] = t;
        for (std::size_t j = 0; j <= db; ++j) {
            r[k - db + j] -= t * b[j];
            r[k - db + j] %= M;
        }
    }
    r.resize(db);
    r = reduce(r, M);
    q = reduce(q, M);
}

Poly mod(const Poly& a, const Poly& b, const Integer& M)
{
    Poly q, r;
    divrem(a, b, q, r, M);
    return r;
}

Poly from_fp(const fp::Poly& a)
{
    Poly r;
    for (u64 v : a) r.emplace_back(Integer(std::to_string(v)));
    return r;
}

}  // namespace zm

namespace {

// One quadratic Hensel step: f ≡ g h mod M, s g + t h ≡ 1 mod M, h monic.
void hensel_step(const zm::Poly& f, zm::Poly& g, zm::Poly& h, zm::Poly& s, zm::Poly& t, const Integer& M2)
{
    using namespace zm;
    Poly e = sub(f, mul(g, h, M2), M2);
    Poly q, r;
    divrem(mul(s, e, M2), h, q, r, M2);
    Poly g2 = add(add(g, mul(t, e, M2), M2), mul(q, g, M2), M2);
    Poly h2 = add(h, r, M2);
    Poly b = sub(add(mul(s, g2, M2), mul(t, h2, M2), M2), Poly{Integer(1)}, M2);
    Poly c, d;
    divrem(mul(s, b, M2), h2, c, d, M2);
    s = sub(s, d, M2);
    t = sub(sub(t, mul(t, b, M2), M2), mul(c, g2, M2), M2);
    g = g2;
    h = h2;
}

fp::Poly product(const std::vector<fp::Poly>& fs, std::size_t lo, std::size_t hi, u64 p)
{
    fp::Poly r{1};
    for (std::size_t i = lo; i < hi; ++i) r = fp::mul(r, fs[i], p);
    return r;
}

void lift_rec(const zm::Poly& f, const std::vector<fp::Poly>& fs, std::size_t lo, std::size_t hi, const Integer& p,
              unsigned steps, std::vector<zm::Poly>& out)
{
    if (hi - lo == 1) { out.push_back(f); return; }
    u64 pp = to_u64(p);
    std::size_t mid = (lo + hi) / 2;
    fp::Poly a = product(fs, lo, mid, pp), b = product(fs, mid, hi, pp);
    fp::Poly s0, t0;
    fp::Poly g = fp::xgcd(a, b, s0, t0, pp);
    if (!fp::is_one(g)) fail(ErrorCode::NotSquarefreeAtP, "factors are not coprime mod p");
    zm::Poly G = zm::from_fp(a), H = zm::from_fp(b), S = zm::from_fp(s0), T = zm::from_fp(t0);
    Integer M = p;
    for (unsigned i = 0; i < steps; ++i) {
        M = M * M;
        hensel_step(f, G, H, S, T, M);
    }
    // make both monic representatives exactly (they are, up to reduction)
    lift_rec(zm::reduce(G, M), fs, lo, mid, p, steps, out);
    lift_rec(zm::reduce(H, M), fs, mid, hi, p, steps, out);
}

}  // namespace

std::vector<zm::Poly> hensel_lift(const std::vector<Integer>& f0, const std::vector<fp::Poly>& factors,
                                  const Integer& p, unsigned m)
{
    if (m == 0) fail(ErrorCode::InvalidArgument, "precision must be positive");
    if (factors.empty()) fail(ErrorCode::InvalidArgument, "no factors");
    unsigned steps = 0;
    for (unsigned long e = 1; e < m; e *= 2) ++steps;
    Integer Mtop = ipow(p, 1ul << steps);
    Integer Mm = ipow(p, m);
    zm::Poly f = zm::reduce(f0, Mtop);
    if (f.empty() || f.back() % p == 0) fail(ErrorCode::InvalidArgument, "leading coefficient divisible by p");
    Integer inv = invmod(f.back(), Mtop);
    for (auto& c : f) c = (c * inv) % Mtop;
    std::vector<zm::Poly> out;
    lift_rec(f, factors, 0, factors.size(), p, steps, out);
    for (auto& g : out) g = zm::reduce(g, Mm);
    return out;
}

std::vector<UniPoly> hensel_lift_factorization(const UniPoly& f, const Integer& p, unsigned m)
{
    require_prime(p);
    if (f.is_zero() || !f.is_integral()) fail(ErrorCode::InvalidArgument, "need a nonzero integer polynomial");
    u64 pp = to_u64(p);
    auto fs = fp::factor(fp::reduce(f, pp), pp);
    std::vector<fp::Poly> facs;
    for (auto& fa : fs) {
        if (fa.mult != 1) fail(ErrorCode::NotSquarefreeAtP, "f is not squarefree mod " + to_string(p));
        facs.push_back(fa.poly);
    }
    if (fp::reduce(f, pp).size() != f.coeffs().size())
        fail(ErrorCode::InvalidArgument, "leading coefficient divisible by p");
    auto lifted = hensel_lift(f.int_coeffs(), facs, p, m);
    std::vector<UniPoly> out;
    for (auto& g : lifted) {
        std::vector<Rational> c;
        for (auto& v : g) c.emplace_back(v);
        out.emplace_back(c);
    }
    return out;
}

FiniteField::FiniteField(u64 p, fp::Poly modulus) : p_(p), g_(fp::monic(modulus, p))
{
    if (!is_prime_u64(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (g_.size() < 2) fail(ErrorCode::InvalidArgument, "finite field modulus must have positive degree");
    if (g_.size() > 2 && !fp::is_irreducible(g_, p)) fail(ErrorCode::InvalidArgument, "modulus not irreducible");
}

Integer FiniteField::order() const { return ipow(Integer(std::to_string(p_)), degree()); }

FiniteField::Elem FiniteField::from_int(const Integer& a) const { return fp::from_ints({a}, p_); }

FiniteField::Elem FiniteField::from_poly(const fp::Poly& a) const { return fp::mod(a, g_, p_); }

FiniteField::Elem FiniteField::inv(const Elem& a) const
{
    if (a.empty()) fail(ErrorCode::ZeroResidue, "inverse of zero in finite field");
    fp::Poly s, t;
    fp::xgcd(a, g_, s, t, p_);
    return fp::mod(s, g_, p_);
}

u64 FiniteField::trace(const Elem& a) const
{
    Elem s = a, t = a;
    Integer P(std::to_string(p_));
    for (unsigned i = 1; i < degree(); ++i) {
        t = pow(t, P);
        s = add(s, t);
    }
    if (s.size() > 1) fail(ErrorCode::InvalidArgument, "trace not in the prime field");
    return s.empty() ? 0 : s[0];
}

Integer FiniteField::order_of(const Elem& a) const
{
    if (a.empty()) fail(ErrorCode::ZeroResidue, "order of zero");
    Integer n = order() - 1;
    Integer o = n;
    for (auto& [q, e] : factor_integer(n)) {
        for (unsigned i = 0; i < e; ++i) {
            if (o % q == 0 && is_one(pow(a, o / q))) o /= q;
        }
    }
    return o;
}

std::string FiniteField::str(const Elem& a) const
{
    if (degree() == 1) return std::to_string(a.empty() ? 0 : a[0]);
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << "]";
    return os.str();
}

bool power_residue_test(const FiniteField& F, const FiniteField::Elem& a, const Integer& q)
{
    if (F.is_zero(a)) fail(ErrorCode::ZeroResidue, "zero residue in power test");
    Integer n = F.order() - 1;
    if (n % q != 0) return true;
    return F.is_one(F.pow(a, n / q));
}

bool power_residue_test(const Integer& a, const FiniteField& F, const Integer& q)
{
    return power_residue_test(F, F.from_int(a), q);
}

}  // namespace normforge
