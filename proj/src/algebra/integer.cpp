#include "normforge/algebra/integer.hpp"

#include "normforge/error.hpp"

#include <algorithm>
#include <map>

namespace normforge {

long Ord::value() const
{
    if (inf_) fail(ErrorCode::InvalidArgument, "valuation of zero is infinite");
    return v_;
}

long vp(const Integer& n, const Integer& p)
{
    if (n == 0) fail(ErrorCode::InvalidArgument, "vp of zero");
    Integer m = abs(n);
    long k = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++k;
    }
    return k;
}

Ord vp(const Rational& r, const Integer& p)
{
    if (r == 0) return Ord::infinity();
    return Ord(vp(r.get_num(), p) - vp(r.get_den(), p));
}

Integer ipow(const Integer& b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Integer powmod(const Integer& b, const Integer& e, const Integer& m)
{
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((unsigned __int128)a * b % m); }

u64 powmod_u64(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

u64 invmod_u64(u64 a, u64 m)
{
    Integer r = invmod(Integer(std::to_string(a)), Integer(std::to_string(m)));
    return to_u64(r);
}

Integer invmod(const Integer& a, const Integer& m)
{
    Integer r;
    Integer aa = a % m;
    if (aa < 0) aa += m;
    if (!mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), m.get_mpz_t()))
        fail(ErrorCode::NotAUnit, to_string(a) + " is not invertible mod " + to_string(m));
    return r;
}

bool is_prime(const Integer& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime_u64(u64 n) { return is_prime(Integer(std::to_string(n))); }

void require_prime(const Integer& p)
{
    if (!is_prime(p)) fail(ErrorCode::NotPrime, to_string(p) + " is not prime");
}

namespace {

Integer pollard_brent(const Integer& n, unsigned long c0)
{
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = c0;; ++c) {
        Integer y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1, m = 128;
        auto f = [&](const Integer& v) { Integer t = v * v + c; return Integer(t % n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = (q * abs(Integer(x - y))) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        } while (g == 1 && r < (1ul << 26));
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(Integer(x - ys)), n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
}

void factor_rec(const Integer& n, std::map<Integer, unsigned>& out)
{
    if (n == 1) return;
    if (is_prime(n)) { out[n]++; return; }
    Integer d = pollard_brent(n, 1);
    factor_rec(d, out);
    factor_rec(Integer(n / d), out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n0)
{
    if (n0 == 0) fail(ErrorCode::InvalidArgument, "factor of zero");
    Integer n = abs(n0);
    std::map<Integer, unsigned> out;
    for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[Integer(p)]++;
            n /= p;
        }
        if (Integer(p) * p > n) break;
    }
    factor_rec(n, out);
    return {out.begin(), out.end()};
}

std::vector<Integer> prime_support(const Rational& r)
{
    std::vector<Integer> s;
    if (r == 0) return s;
    for (auto& [p, e] : factor_integer(r.get_num())) s.push_back(p);
    for (auto& [p, e] : factor_integer(r.get_den())) s.push_back(p);
    std::sort(s.begin(), s.end());
    return s;
}

u64 euler_phi(u64 n)
{
    u64 r = n;
    for (auto& [p, e] : factor_integer(Integer(std::to_string(n)))) {
        u64 pp = to_u64(p);
        r = r / pp * (pp - 1);
    }
    return r;
}

std::vector<u64> divisors(u64 n)
{
    std::vector<u64> d;
    for (u64 i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    std::sort(d.begin(), d.end());
    return d;
}

u64 multiplicative_order(u64 a, u64 m)
{
    if (m == 1) return 1;
    u64 ph = euler_phi(m);
    u64 o = ph;
    for (auto& [p, e] : factor_integer(Integer(std::to_string(ph)))) {
        u64 pp = to_u64(p);
        for (unsigned i = 0; i < e; ++i)
            if (o % pp == 0 && powmod_u64(a, o / pp, m) == 1) o /= pp;
    }
    return o;
}

Integer multiplicative_order(const Integer& a, const Integer& m)
{
    if (m == 1) return 1;
    if (gcd(a, m) != 1) fail(ErrorCode::InvalidArgument, "order of a non-unit");
    Integer ph = 1;
    for (auto& [p, e] : factor_integer(m)) ph *= (p - 1) * ipow(p, e - 1);
    Integer o = ph;
    for (auto& [p, e] : factor_integer(ph))
        for (unsigned i = 0; i < e; ++i)
            if (o % p == 0 && powmod(a, o / p, m) == 1) o /= p;
    return o;
}

Rational parse_rational(const std::string& s0)
{
    std::string s;
    for (char ch : s0)
        if (ch != ' ' && ch != '"') s += ch;
    if (s.empty()) fail(ErrorCode::ParseError, "empty rational");
    auto slash = s.find('/');
    Integer num, den = 1;
    try {
        num = parse_integer(s.substr(0, slash));
        if (slash != std::string::npos) den = parse_integer(s.substr(slash + 1));
    } catch (const Error&) {
        fail(ErrorCode::ParseError, "bad rational '" + s0 + "'");
    }
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s0 + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer parse_integer(const std::string& s)
{
    std::string t = s;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty() || t == "-") fail(ErrorCode::ParseError, "bad integer '" + s + "'");
    for (std::size_t i = (t[0] == '-'); i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') fail(ErrorCode::ParseError, "bad integer '" + s + "'");
    return Integer(t);
}

std::string to_string(const Integer& n) { return n.get_str(); }
std::string to_string(const Rational& r) { return r.get_str(); }

u64 to_u64(const Integer& n)
{
    if (n < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) fail(ErrorCode::InvalidArgument, "integer out of 64-bit range");
    return static_cast<u64>(std::stoull(n.get_str()));
}

long mod_floor(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace normforge
