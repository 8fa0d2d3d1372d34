#include "normforge/field/number_field.hpp"

#include "normforge/algebra/matrix.hpp"
#include "normforge/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>

namespace normforge {

NumberField::NumberField(const UniPoly& f, std::string name)
{
    if (f.is_zero() || f.deg() < 1) fail(ErrorCode::InvalidArgument, "defining polynomial must have degree >= 1");
    if (f.lead() != 1 || !f.is_integral()) fail(ErrorCode::InvalidArgument, "defining polynomial must be monic with integer coefficients");
    if (gcd(f, f.derivative()).deg() > 0) fail(ErrorCode::InvalidArgument, "defining polynomial is not squarefree");
    auto impl = std::make_shared<Impl>();
    impl->f = f;
    impl->n = f.deg();
    impl->disc = normforge::discriminant(f);
    impl->name = name.empty() ? "Q[x]/(" + f.str() + ")" : std::move(name);
    impl->real_roots = real_root_isolate(f);
    impl_ = std::move(impl);
}

NumberField NumberField::rationals() { return NumberField(UniPoly::x(), "Q"); }

FieldElement NumberField::zero() const { return FieldElement(*this, {}); }
FieldElement NumberField::one() const { return from_rational(1); }
FieldElement NumberField::theta() const { return from_poly(UniPoly::x()); }
FieldElement NumberField::from_rational(const Rational& a) const
{
    std::vector<Rational> c(degree(), Rational(0));
    c[0] = a;
    return FieldElement(*this, c);
}
FieldElement NumberField::from_coords(std::vector<Rational> c) const { return FieldElement(*this, std::move(c)); }
FieldElement NumberField::from_poly(const UniPoly& a) const
{
    UniPoly r = a % poly();
    return FieldElement(*this, r.coeffs());
}

std::size_t NumberField::real_embedding_count() const { return impl_->real_roots.size(); }

std::vector<zm::Poly> NumberField::local_factors(const Integer& p, unsigned m) const
{
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        auto it = impl_->lifts.find(p);
        if (it != impl_->lifts.end() && it->second.first >= m) {
            Integer M = ipow(p, m);
            std::vector<zm::Poly> out;
            for (auto& g : it->second.second) out.push_back(zm::reduce(g, M));
            return out;
        }
    }
    u64 pp = to_u64(p);
    auto fs = fp::factor(fp::reduce(poly(), pp), pp);
    std::vector<fp::Poly> pw;
    for (auto& fa : fs) {
        fp::Poly g{1};
        for (unsigned i = 0; i < fa.mult; ++i) g = fp::mul(g, fa.poly, pp);
        pw.push_back(g);
    }
    auto lifted = hensel_lift(poly().int_coeffs(), pw, p, m);
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto& slot = impl_->lifts[p];
    if (slot.first < m) slot = {m, lifted};
    return lifted;
}

FieldElement::FieldElement(NumberField K, std::vector<Rational> coords) : K_(std::move(K)), c_(std::move(coords))
{
    if (c_.size() > K_.degree()) {
        UniPoly r = UniPoly(c_) % K_.poly();
        c_ = r.coeffs();
    }
    for (auto& a : c_) a.canonicalize();
    c_.resize(K_.degree(), Rational(0));
}

void FieldElement::check_same(const FieldElement& o) const
{
    if (!(K_ == o.K_)) fail(ErrorCode::InvalidArgument, "elements of different fields");
}

bool FieldElement::is_zero() const
{
    for (auto& a : c_)
        if (a != 0) return false;
    return true;
}

bool FieldElement::is_rational() const
{
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational FieldElement::as_rational() const
{
    if (!is_rational()) fail(ErrorCode::InvalidArgument, "element is not rational");
    return c_[0];
}

FieldElement FieldElement::operator+(const FieldElement& o) const
{
    check_same(o);
    std::vector<Rational> r = c_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
    return FieldElement(K_, r);
}

FieldElement FieldElement::operator-() const
{
    std::vector<Rational> r = c_;
    for (auto& a : r) a = -a;
    return FieldElement(K_, r);
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const
{
    check_same(o);
    return K_.from_poly(poly() * o.poly());
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }
FieldElement FieldElement::operator+(const Rational& a) const { return *this + K_.from_rational(a); }
FieldElement FieldElement::operator-(const Rational& a) const { return *this - K_.from_rational(a); }
FieldElement FieldElement::operator*(const Rational& a) const
{
    std::vector<Rational> r = c_;
    for (auto& v : r) v *= a;
    return FieldElement(K_, r);
}

FieldElement FieldElement::inverse() const
{
    if (is_zero()) fail(ErrorCode::InvalidArgument, "inverse of zero");
    UniPoly s, t;
    UniPoly g = xgcd(poly(), K_.poly(), s, t);
    if (g.deg() != 0) fail(ErrorCode::InvalidArgument, "defining polynomial is reducible");
    return K_.from_poly(s);
}

FieldElement FieldElement::pow(long e) const
{
    if (e < 0) return inverse().pow(-e);
    FieldElement r = K_.one(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Rational FieldElement::norm() const { return resultant(K_.poly(), poly()); }

UniPoly FieldElement::charpoly() const
{
    std::size_t n = K_.degree();
    QMatrix m(n, std::vector<Rational>(n, Rational(0)));
    FieldElement b = K_.one();
    FieldElement th = K_.theta();
    for (std::size_t j = 0; j < n; ++j) {
        FieldElement col = *this * b;
        for (std::size_t i = 0; i < n; ++i) m[i][j] = col.c_[i];
        b = b * th;
    }
    return normforge::charpoly(m);
}

Rational FieldElement::trace() const { return -charpoly().coeff(K_.degree() - 1); }

UniPoly FieldElement::minpoly() const { return squarefree_part(charpoly()); }

Integer FieldElement::denominator() const
{
    Integer d = 1;
    for (auto& a : c_) d = lcm(d, a.get_den());
    return d;
}

std::string FieldElement::str() const
{
    if (K_.degree() == 1) return c_[0].get_str();
    return poly().str("t");
}

std::string PrimeIdeal::str() const
{
    std::ostringstream os;
    os << "(" << p.get_str() << ", " << fp::to_unipoly(g).str() << ")";
    return os.str();
}

bool dedekind_maximal_at(const NumberField& K, const Integer& p)
{
    u64 pp = to_u64(p);
    auto fs = fp::factor(fp::reduce(K.poly(), pp), pp);
    fp::Poly g{1}, h{1};
    for (auto& fa : fs) {
        g = fp::mul(g, fa.poly, pp);
        for (unsigned i = 1; i < fa.mult; ++i) h = fp::mul(h, fa.poly, pp);
    }
    UniPoly gt = fp::to_unipoly(g), ht = fp::to_unipoly(h);
    UniPoly F = (gt * ht - K.poly()) * Rational(Integer(1), p);
    if (!F.is_integral()) fail(ErrorCode::InvalidArgument, "Dedekind lift is not integral");
    fp::Poly Fb = fp::reduce(F, pp);
    fp::Poly d = fp::gcd(fp::gcd(Fb, g, pp), h, pp);
    return fp::is_one(d);
}

std::vector<PrimeIdeal> splitting_type(const NumberField& K, const Integer& p)
{
    require_prime(p);
    if (!dedekind_maximal_at(K, p))
        fail(ErrorCode::NonMonogenicAtP, "Z[theta] is not maximal at " + to_string(p) + " for " + K.name());
    u64 pp = to_u64(p);
    auto fs = fp::factor(fp::reduce(K.poly(), pp), pp);
    std::vector<PrimeIdeal> out;
    std::size_t total = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        PrimeIdeal P;
        P.p = p;
        P.g = fs[i].poly;
        P.e = fs[i].mult;
        P.f = static_cast<unsigned>(fs[i].poly.size() - 1);
        P.index = i;
        total += P.e * P.f;
        out.push_back(P);
    }
    if (total != K.degree()) fail(ErrorCode::InvalidArgument, "fundamental identity violated");
    return out;
}

namespace {

std::vector<Integer> scaled_coords(const FieldElement& a, Integer& D)
{
    D = a.denominator();
    std::vector<Integer> A;
    for (auto& c : a.coords()) A.push_back(Integer(c * D));
    return A;
}

UniPoly int_poly(const std::vector<Integer>& c)
{
    std::vector<Rational> r;
    for (auto& v : c) r.emplace_back(v);
    return UniPoly(r);
}

constexpr unsigned kPrecisionCap = 1u << 14;

}  // namespace

Ord valuation(const NumberField& K, const PrimeIdeal& P, const FieldElement& a)
{
    if (a.is_zero()) return Ord::infinity();
    Integer D;
    auto A = scaled_coords(a, D);
    UniPoly Ap = int_poly(A);
    Rational N = resultant(K.poly(), Ap);
    long bound = vp(N.get_num(), P.p);
    long shift = static_cast<long>(P.e) * vp(D, P.p);
    if (bound == 0) return Ord(-shift);
    unsigned m = static_cast<unsigned>(2 * bound + 4);
    std::optional<long> prev;
    while (m <= kPrecisionCap) {
        auto F = K.local_factors(P.p, m)[P.index];
        Rational r = resultant(int_poly(F), Ap);
        if (r != 0) {
            long v = vp(r.get_num(), P.p);
            if (v < static_cast<long>(m)) {
                if (v % P.f != 0) fail(ErrorCode::PrecisionExhausted, "local norm valuation not divisible by residue degree");
                long val = v / static_cast<long>(P.f);
                if (prev && *prev == val) return Ord(val - shift);
                prev = val;
            }
        }
        m *= 2;
    }
    fail(ErrorCode::PrecisionExhausted, "valuation did not stabilize below the precision cap");
}

FiniteField::Elem residue(const NumberField& K, const PrimeIdeal& P, const FieldElement& a)
{
    FiniteField F = P.residue_field();
    if (a.is_zero()) return {};
    Ord v = valuation(K, P, a);
    if (v < Ord(0)) fail(ErrorCode::NotAUnit, "residue of an element with a pole at " + P.str());
    if (v > Ord(0)) return {};
    Integer D;
    auto A = scaled_coords(a, D);
    long k = vp(D, P.p);
    unsigned N = static_cast<unsigned>(k + 2);
    Integer M = ipow(P.p, N), pk = ipow(P.p, static_cast<unsigned long>(k));
    auto Fi = K.local_factors(P.p, N)[P.index];
    zm::Poly r = zm::mod(zm::reduce(A, M), Fi, M);
    std::vector<Integer> red;
    for (auto& c : r) {
        if (c % pk != 0) fail(ErrorCode::PrecisionExhausted, "residue lift inconsistent");
        red.push_back(c / pk);
    }
    u64 pp = to_u64(P.p);
    fp::Poly b = fp::from_ints(red, pp);
    u64 dinv = invmod_u64(to_u64(Integer((D / pk) % P.p)), pp);
    return F.from_poly(fp::scale(b, dinv, pp));
}

FieldElement uniformizer(const NumberField& K, const PrimeIdeal& P)
{
    FieldElement g = K.from_poly(fp::to_unipoly(P.g));
    std::vector<FieldElement> cands;
    if (P.e == 1) cands.push_back(K.from_rational(Rational(P.p)));
    cands.push_back(g);
    cands.push_back(g + Rational(P.p));
    for (auto& c : cands)
        if (valuation(K, P, c) == Ord(1)) return c;
    fail(ErrorCode::NonMonogenicAtP, "no uniformizer among the two-element generators of " + P.str());
}

FiniteField::Elem unit_residue(const NumberField& K, const PrimeIdeal& P, const FieldElement& a)
{
    if (a.is_zero()) fail(ErrorCode::ZeroResidue, "unit part of zero");
    long v = valuation(K, P, a).value();
    if (v == 0) return residue(K, P, a);
    FieldElement pi = uniformizer(K, P);
    return residue(K, P, a * pi.pow(-v));
}

bool residue_nonqth_power(const NumberField& K, const PrimeIdeal& P, const FieldElement& c, const Integer& q)
{
    if (c.is_zero() || valuation(K, P, c) != Ord(0)) fail(ErrorCode::NotAUnit, "c is not a unit at " + P.str());
    FiniteField F = P.residue_field();
    return !power_residue_test(F, residue(K, P, c), q);
}

bool omega_membership(const NumberField& K, const FieldElement& a, unsigned q)
{
    if (q != 2 || K.real_embedding_count() == 0 || a.is_zero()) return true;
    UniPoly A = a.poly();
    for (auto iv : K.real_roots())
        if (sign_at_root(K.poly(), iv, A) < 0) return false;
    return true;
}

ThetaPhi theta_phi_membership(const NumberField& K, const FieldElement& c, const std::vector<PrimeIdeal>& S,
                              unsigned q)
{
    FieldElement d = c - Rational(1);
    if (d.is_zero()) return {true, true};
    ThetaPhi r{true, true};
    for (auto& P : S)
        if (valuation(K, P, d) < Ord(1)) r.in_theta = false;
    for (auto& Q : splitting_type(K, Integer(q)))
        if (valuation(K, Q, d) < Ord(3 * static_cast<long>(Q.e))) r.in_phi = false;
    return r;
}

std::vector<Integer> rational_prime_support(const FieldElement& a)
{
    std::set<Integer> s;
    if (a.is_zero()) return {};
    Integer D = a.denominator();
    for (auto& p : prime_support(Rational(D))) s.insert(p);
    Rational N = (a * Rational(D)).norm();
    for (auto& p : prime_support(N)) s.insert(p);
    return {s.begin(), s.end()};
}

std::vector<PrimeIdeal> prime_support(const NumberField& K, const FieldElement& a)
{
    std::vector<PrimeIdeal> out;
    for (auto& p : rational_prime_support(a))
        for (auto& P : splitting_type(K, p))
            if (valuation(K, P, a) != Ord(0)) out.push_back(P);
    return out;
}

ApproxConstraint ApproxConstraint::exact(PrimeIdeal P, long v)
{
    ApproxConstraint c;
    c.P = std::move(P);
    c.kind = Kind::ExactValuation;
    c.valuation = v;
    return c;
}

ApproxConstraint ApproxConstraint::at_least(PrimeIdeal P, long v)
{
    ApproxConstraint c = exact(std::move(P), v);
    c.kind = Kind::MinValuation;
    return c;
}

ApproxConstraint ApproxConstraint::congruent(PrimeIdeal P, FieldElement r, long v)
{
    ApproxConstraint c = exact(std::move(P), v);
    c.kind = Kind::Congruence;
    c.target = std::move(r);
    return c;
}

ApproxConstraint ApproxConstraint::non_power(PrimeIdeal P, unsigned q)
{
    ApproxConstraint c = exact(std::move(P), 0);
    c.kind = Kind::NonPowerResidue;
    c.q = q;
    return c;
}

bool satisfies(const NumberField& K, const ApproxConstraint& c, const FieldElement& x)
{
    switch (c.kind) {
    case ApproxConstraint::Kind::ExactValuation: return valuation(K, c.P, x) == Ord(c.valuation);
    case ApproxConstraint::Kind::MinValuation: return valuation(K, c.P, x) >= Ord(c.valuation);
    case ApproxConstraint::Kind::Congruence: return valuation(K, c.P, x - *c.target) >= Ord(c.valuation);
    case ApproxConstraint::Kind::NonPowerResidue:
        return valuation(K, c.P, x) == Ord(0) && residue_nonqth_power(K, c.P, x, c.q);
    }
    return false;
}

namespace {

// elements of K with p-integral coordinates, as integer vectors mod M
zm::Poly to_mod(const FieldElement& a, const Integer& p, const Integer& M)
{
    Integer D = a.denominator();
    if (D % p == 0) fail(ErrorCode::InvalidArgument, "approximation target is not p-integral");
    Integer Dinv = invmod(D, M);
    zm::Poly r;
    for (auto& c : a.coords()) r.push_back(Integer(c * D) * Dinv);
    return zm::reduce(r, M);
}

zm::Poly mulmod_f(const zm::Poly& a, const zm::Poly& b, const zm::Poly& f, const Integer& M)
{
    return zm::mod(zm::mul(a, b, M), f, M);
}

fp::Poly smallest_nonpower(const FiniteField& F, unsigned q)
{
    Integer total = F.order();
    if ((total - 1) % q != 0) fail(ErrorCode::SearchExhausted, "every residue is a q-th power in this residue field");
    u64 p = F.characteristic();
    for (u64 k = 1;; ++k) {
        fp::Poly e;
        u64 t = k;
        while (t) { e.push_back(t % p); t /= p; }
        fp::trim(e);
        if (e.size() > F.degree()) break;
        if (!power_residue_test(F, e, q)) return e;
    }
    fail(ErrorCode::SearchExhausted, "no non-power residue found");
}

}  // namespace

FieldElement strong_approx_element(const NumberField& K, const std::vector<ApproxConstraint>& cs, bool totally_positive)
{
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            if (cs[i].P == cs[j].P) fail(ErrorCode::InvalidArgument, "duplicate constraint at prime " + cs[i].P.str());
    std::map<Integer, std::vector<const ApproxConstraint*>> byp;
    for (auto& c : cs) byp[c.P.p].push_back(&c);
    std::size_t n = K.degree();
    zm::Poly fz = K.poly().int_coeffs();

    std::map<Integer, long> shift;
    Integer scale = 1;
    for (auto& [p, list] : byp) {
        long s = 0;
        for (auto* c : list) {
            long k = c->valuation;
            if (k < 0 && c->kind != ApproxConstraint::Kind::Congruence)
                s = std::max(s, (-k + static_cast<long>(c->P.e) - 1) / static_cast<long>(c->P.e));
        }
        shift[p] = s;
        scale *= ipow(p, static_cast<unsigned long>(s));
    }
    std::vector<Integer> y(n, Integer(0));
    Integer Mall = 1;
    for (auto& [p, list] : byp) {
        auto primes = splitting_type(K, p);
        long s = shift[p];
        Integer ps = ipow(p, static_cast<unsigned long>(s));
        Rational co(scale / ps);
        long need = s + 1;
        for (auto* c : list) {
            long e = static_cast<long>(c->P.e);
            long kk = c->valuation + e * s;
            if (c->kind == ApproxConstraint::Kind::Congruence) kk = std::max(kk, 0l) - 1;
            if (c->kind == ApproxConstraint::Kind::NonPowerResidue) kk = e * s;
            need = std::max(need, (kk + 1 + e - 1) / e);
        }
        unsigned N = static_cast<unsigned>(need);
        Integer M = ipow(p, N);
        u64 pp = to_u64(p);
        // idempotents
        auto fbar = fp::reduce(K.poly(), pp);
        auto fs = fp::factor(fbar, pp);
        std::vector<zm::Poly> eps;
        for (auto& fa : fs) {
            fp::Poly Fi{1};
            for (unsigned i = 0; i < fa.mult; ++i) Fi = fp::mul(Fi, fa.poly, pp);
            fp::Poly h = fp::quo(fbar, Fi, pp), sa, ta;
            fp::xgcd(Fi, h, sa, ta, pp);
            zm::Poly e = zm::from_fp(fp::mod(fp::mul(ta, h, pp), fbar, pp));
            for (unsigned it = 0; it < 64; ++it) {
                zm::Poly e2 = mulmod_f(e, e, fz, M);
                zm::Poly e3 = mulmod_f(e2, e, fz, M);
                zm::Poly ne = zm::sub(zm::mul({Integer(3)}, e2, M), zm::mul({Integer(2)}, e3, M), M);
                if (ne == e) break;
                e = ne;
            }
            eps.push_back(e);
        }
        zm::Poly yp;
        for (auto& P : primes) {
            const ApproxConstraint* c = nullptr;
            for (auto* cc : list)
                if (cc->P == P) c = cc;
            FieldElement tau = K.from_rational(Rational(scale));
            if (c) {
                switch (c->kind) {
                case ApproxConstraint::Kind::ExactValuation:
                case ApproxConstraint::Kind::MinValuation: {
                    long kk = c->valuation + static_cast<long>(P.e) * s;
                    tau = uniformizer(K, P).pow(kk) * co;
                    break;
                }
                case ApproxConstraint::Kind::Congruence:
                    tau = *c->target * Rational(scale);
                    break;
                case ApproxConstraint::Kind::NonPowerResidue:
                    tau = K.from_poly(fp::to_unipoly(smallest_nonpower(P.residue_field(), c->q))) * Rational(scale);
                    break;
                }
            }
            yp = zm::add(yp, mulmod_f(eps[P.index], to_mod(tau, p, M), fz, M), M);
        }
        yp.resize(n, Integer(0));
        // CRT into y mod Mall
        for (std::size_t i = 0; i < n; ++i) {
            Integer a = y[i], b = yp[i];
            Integer inv = invmod(Mall % M, M);
            Integer t = ((b - a) % M) * inv % M;
            if (t < 0) t += M;
            y[i] = a + Mall * t;
        }
        Mall *= M;
    }
    std::vector<Rational> coords(n);
    for (std::size_t i = 0; i < n; ++i) {
        Integer v = y[i] % Mall;
        if (v < 0) v += Mall;
        if (2 * v > Mall) v -= Mall;
        coords[i] = Rational(v, scale);
        coords[i].canonicalize();
    }
    FieldElement x = K.from_coords(coords);
    if (cs.empty() && !totally_positive) return K.one();
    for (long t = 0; t < 4096; ++t) {
        FieldElement cand = x + Rational(Mall * t, scale);
        if (cand.is_zero()) continue;
        if (totally_positive && !omega_membership(K, cand, 2)) continue;
        bool ok = true;
        for (auto& c : cs) ok = ok && satisfies(K, c, cand);
        if (ok) return cand;
        if (!totally_positive) break;
    }
    fail(ErrorCode::SearchExhausted, "approximation did not verify");
}

ConjugateRange conjugate_interval(const FieldElement& a, const Rational& width)
{
    UniPoly m = a.minpoly();
    auto roots = real_root_isolate(m);
    if (roots.empty()) fail(ErrorCode::NoRealConjugates, "element has no real conjugates");
    auto lo = refine_root(m, roots.front(), width);
    auto hi = refine_root(m, roots.back(), width);
    return {lo, hi};
}

std::vector<FieldElement> roots_in_field(const NumberField& K, const UniPoly& g)
{
    using C = std::complex<long double>;
    if (g.is_zero() || g.deg() == 0) return {};
    if (g.lead() != 1 || !g.is_integral()) fail(ErrorCode::InvalidArgument, "roots_in_field needs a monic integral polynomial");
    std::size_t n = K.degree();
    auto rf = complex_roots(K.poly());
    auto rg = complex_roots(g);
    const long double tol = 1e-7L;
    // embeddings: real ones, and one representative per conjugate pair
    std::vector<std::size_t> reps;
    std::vector<long> partner(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(rf[i].imag()) < tol) { reps.push_back(i); continue; }
        if (rf[i].imag() > 0) {
            reps.push_back(i);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && std::abs(rf[j] - std::conj(rf[i])) < 1e-6L) partner[i] = static_cast<long>(j);
        }
    }
    std::vector<std::vector<std::size_t>> choices;
    long double combos = 1;
    for (auto i : reps) {
        std::vector<std::size_t> ch;
        for (std::size_t k = 0; k < rg.size(); ++k)
            if (std::abs(rf[i].imag()) >= tol || std::abs(rg[k].imag()) < tol) ch.push_back(k);
        if (ch.empty()) return {};  // a real place with no real root of g
        combos *= static_cast<long double>(ch.size());
        choices.push_back(ch);
    }
    if (combos > (1 << 20)) fail(ErrorCode::SearchExhausted, "too many embedding assignments");
    // Vandermonde LU once
    std::vector<std::vector<C>> V(n, std::vector<C>(n));
    for (std::size_t i = 0; i < n; ++i) {
        C pw = 1;
        for (std::size_t j = 0; j < n; ++j) { V[i][j] = pw; pw *= rf[i]; }
    }
    auto solve = [&](std::vector<C> b) {
        auto A = V;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c; r < n; ++r)
                if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
            std::swap(A[piv], A[c]);
            std::swap(b[piv], b[c]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c) continue;
                C f = A[r][c] / A[c][c];
                for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
                b[r] -= f * b[c];
            }
        }
        for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
        return b;
    };
    Integer D = abs(K.discriminant().get_num());
    long double Dd = static_cast<long double>(D.get_d());
    std::vector<FieldElement> out;
    std::vector<std::size_t> idx(reps.size(), 0);
    while (true) {
        std::vector<C> b(n);
        for (std::size_t r = 0; r < reps.size(); ++r) {
            C s = rg[choices[r][idx[r]]];
            b[reps[r]] = s;
            if (partner[reps[r]] >= 0) b[static_cast<std::size_t>(partner[reps[r]])] = std::conj(s);
        }
        auto c = solve(b);
        bool plausible = true;
        std::vector<Rational> coords(n);
        for (std::size_t i = 0; i < n && plausible; ++i) {
            if (std::abs(c[i].imag()) > 1e-5L * (1 + std::abs(c[i]))) plausible = false;
            long double v = c[i].real() * Dd;
            if (std::fabs(v) > 9e17L) plausible = false;
            else coords[i] = Rational(Integer(static_cast<long>(std::llround(v))), D);
        }
        if (plausible) {
            for (auto& q : coords) q.canonicalize();
            FieldElement a = K.from_coords(coords);
            FieldElement val = K.zero();
            for (std::size_t k = g.coeffs().size(); k-- > 0;) val = val * a + g.coeffs()[k];
            if (val.is_zero() && std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
        }
        std::size_t r = 0;
        while (r < idx.size() && ++idx[r] == choices[r].size()) { idx[r] = 0; ++r; }
        if (r == idx.size()) break;
        if (reps.empty()) break;
    }
    std::sort(out.begin(), out.end(), [](const FieldElement& x, const FieldElement& y) { return x.coords() < y.coords(); });
    return out;
}

std::optional<FieldElement> root_of_unity(const NumberField& K, unsigned q)
{
    if (q == 2) return K.from_rational(-1);
    if (q == 1) return K.one();
    if (K.degree() % euler_phi(q) != 0) return std::nullopt;
    auto r = roots_in_field(K, cyclotomic_poly(q));
    if (r.empty()) return std::nullopt;
    return r.front();
}

TowerEdge::TowerEdge(NumberField lo, NumberField up, FieldElement img)
    : lower(std::move(lo)), upper(std::move(up)), image(std::move(img))
{
    if (!(image.field() == upper)) fail(ErrorCode::InvalidArgument, "tower image lives in the wrong field");
    FieldElement v = upper.zero();
    for (std::size_t k = lower.poly().coeffs().size(); k-- > 0;) v = v * image + lower.poly().coeffs()[k];
    if (!v.is_zero()) fail(ErrorCode::InvalidArgument, "image does not satisfy the lower defining polynomial");
}

NumberField field_by_name(const std::string& name)
{
    if (name == "Q") return NumberField::rationals();
    if (name == "Q(i)") return NumberField(UniPoly::from_ints({1, 0, 1}), "Q(i)");
    if (name == "Q(zeta3)" || name == "Q(xi3)") return NumberField(UniPoly::from_ints({1, 1, 1}), "Q(zeta3)");
    if (name == "Q(sqrt2)") return NumberField(UniPoly::from_ints({-2, 0, 1}), "Q(sqrt2)");
    if (name == "Q(sqrt5)") return NumberField(UniPoly::from_ints({-1, -1, 1}), "Q(sqrt5)");
    if (name == "Q(sqrt-2)") return NumberField(UniPoly::from_ints({2, 0, 1}), "Q(sqrt-2)");
    const std::string pre = "Q(zeta";
    if (name.rfind(pre, 0) == 0 && name.back() == ')') {
        unsigned long m = std::stoul(name.substr(pre.size(), name.size() - pre.size() - 1));
        return NumberField(cyclotomic_poly(m), name);
    }
    fail(ErrorCode::InvalidArgument, "unknown field name '" + name + "'");
}

}  // namespace normforge
