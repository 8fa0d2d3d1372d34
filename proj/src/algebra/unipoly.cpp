#include "normforge/algebra/unipoly.hpp"

#include "normforge/error.hpp"

#include <sstream>

namespace normforge {

UniPoly::UniPoly(std::vector<Rational> c) : c_(std::move(c))
{
    for (auto& a : c_) a.canonicalize();
    normalize();
}

UniPoly UniPoly::from_ints(const std::vector<long>& c)
{
    std::vector<Rational> r;
    for (long v : c) r.emplace_back(v);
    return UniPoly(r);
}

UniPoly UniPoly::constant(const Rational& a) { return UniPoly(std::vector<Rational>{a}); }

UniPoly UniPoly::monomial(const Rational& a, std::size_t k)
{
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = a;
    return UniPoly(c);
}

void UniPoly::normalize()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::optional<std::size_t> UniPoly::degree() const
{
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
}

std::size_t UniPoly::deg() const
{
    if (c_.empty()) fail(ErrorCode::InvalidArgument, "degree of the zero polynomial");
    return c_.size() - 1;
}

const Rational& UniPoly::lead() const
{
    if (c_.empty()) fail(ErrorCode::InvalidArgument, "leading coefficient of zero");
    return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const
{
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    UniPoly p;
    p.c_ = std::move(r);
    p.normalize();
    return p;
}

UniPoly UniPoly::operator-() const
{
    UniPoly p = *this;
    for (auto& a : p.c_) a = -a;
    return p;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const
{
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    UniPoly p;
    p.c_ = std::move(r);
    p.normalize();
    return p;
}

UniPoly UniPoly::operator*(const Rational& a) const
{
    if (a == 0) return {};
    UniPoly p = *this;
    for (auto& v : p.c_) v *= a;
    return p;
}

Rational UniPoly::eval(const Rational& x) const
{
    Rational r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

UniPoly UniPoly::derivative() const
{
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UniPoly(r);
}

UniPoly UniPoly::monic() const
{
    if (is_zero()) return {};
    return *this * Rational(1 / lead());
}

UniPoly UniPoly::compose(const UniPoly& g) const
{
    UniPoly r;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(c_[i]);
    return r;
}

UniPoly UniPoly::pow(unsigned e) const
{
    UniPoly r = constant(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

UniPoly UniPoly::shift(std::size_t k) const
{
    if (is_zero()) return {};
    std::vector<Rational> r(k, Rational(0));
    r.insert(r.end(), c_.begin(), c_.end());
    return UniPoly(r);
}

bool UniPoly::is_integral() const
{
    for (auto& a : c_)
        if (a.get_den() != 1) return false;
    return true;
}

Integer UniPoly::denominator_lcm() const
{
    Integer l = 1;
    for (auto& a : c_) l = lcm(l, a.get_den());
    return l;
}

UniPoly UniPoly::primitive_part() const
{
    if (is_zero()) return {};
    UniPoly p = *this * Rational(denominator_lcm());
    Integer g = 0;
    for (auto& a : p.c_) g = gcd(g, a.get_num());
    if (p.lead() < 0) g = -g;
    Rational s(Integer(1), g);
    s.canonicalize();
    return p * s;
}

std::vector<Integer> UniPoly::int_coeffs() const
{
    std::vector<Integer> r;
    for (auto& a : c_) {
        if (a.get_den() != 1) fail(ErrorCode::InvalidArgument, "polynomial is not integral");
        r.push_back(a.get_num());
    }
    return r;
}

std::string UniPoly::str(const std::string& var) const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Rational a = c_[i];
        if (!first) os << (a < 0 ? " - " : " + ");
        else if (a < 0) os << "-";
        Rational m = abs(a);
        if (i == 0 || m != 1) os << m.get_str();
        if (i > 0) os << var;
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r)
{
    if (b.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    std::size_t db = b.deg();
    Rational inv = 1 / b.lead();
    if (rem.size() < db + 1) { q = {}; r = a; return; }
    std::vector<Rational> qq(rem.size() - db, Rational(0));
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k] == 0) continue;
        Rational t = rem[k] * inv;
        qq[k - db] = t;
        for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= t * b.coeffs()[j];
    }
    rem.resize(db);
    q = UniPoly(qq);
    r = UniPoly(rem);
}

UniPoly operator%(const UniPoly& a, const UniPoly& b)
{
    UniPoly q, r;
    divmod(a, b, q, r);
    return r;
}

UniPoly operator/(const UniPoly& a, const UniPoly& b)
{
    UniPoly q, r;
    divmod(a, b, q, r);
    return q;
}

UniPoly gcd(const UniPoly& a0, const UniPoly& b0)
{
    UniPoly a = a0, b = b0;
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

UniPoly xgcd(const UniPoly& a, const UniPoly& b, UniPoly& s, UniPoly& t)
{
    UniPoly r0 = a, r1 = b, s0 = UniPoly::constant(1), s1, t0, t1 = UniPoly::constant(1);
    while (!r1.is_zero()) {
        UniPoly q, r;
        divmod(r0, r1, q, r);
        r0 = r1; r1 = r;
        UniPoly ns = s0 - q * s1; s0 = s1; s1 = ns;
        UniPoly nt = t0 - q * t1; t0 = t1; t1 = nt;
    }
    if (r0.is_zero()) { s = {}; t = {}; return {}; }
    Rational inv = 1 / r0.lead();
    s = s0 * inv;
    t = t0 * inv;
    return r0 * inv;
}

namespace {

Rational rpow(const Rational& a, std::size_t e)
{
    Rational r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= a;
    return r;
}

}  // namespace

Rational resultant(const UniPoly& f0, const UniPoly& g0)
{
    if (f0.is_zero() || g0.is_zero()) return 0;
    UniPoly f = f0, g = g0;
    Rational acc = 1;
    while (true) {
        std::size_t m = f.deg(), n = g.deg();
        if (n == 0) return acc * rpow(g.lead(), m);
        if (m == 0) return acc * rpow(f.lead(), n);
        UniPoly r = f % g;
        if (r.is_zero()) return 0;
        std::size_t k = r.deg();
        if ((m * n) % 2 == 1) acc = -acc;
        acc *= rpow(g.lead(), m - k);
        f = g;
        g = r;
    }
}

Rational discriminant(const UniPoly& f)
{
    std::size_t n = f.deg();
    Rational r = resultant(f, f.derivative()) / f.lead();
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return r;
}

UniPoly squarefree_part(const UniPoly& f)
{
    if (f.is_zero()) return {};
    UniPoly g = gcd(f, f.derivative());
    return (f / g).monic();
}

UniPoly cyclotomic_poly(unsigned long n)
{
    if (n == 0) fail(ErrorCode::InvalidArgument, "cyclotomic index 0");
    UniPoly num = UniPoly::monomial(1, n) - UniPoly::constant(1);
    for (unsigned long d = 1; d < n; ++d)
        if (n % d == 0) num = num / cyclotomic_poly(d);
    return num;
}

}  // namespace normforge
