#include "normforge/elliptic/elliptic.hpp"

#include "normforge/error.hpp"
#include "normforge/normeq/normeq.hpp"

#include <climits>

namespace normforge {

namespace {

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer num_abs(const Rational& r) { return abs(r.get_num()); }

}  // namespace

EllipticCurve::EllipticCurve(Rational a_, Rational c_) : a(std::move(a_)), c(std::move(c_))
{
    if (discriminant() == 0) fail(ErrorCode::InvalidArgument, "singular curve " + str());
}

Rational EllipticCurve::discriminant() const { return Rational(-16) * (Rational(4) * a * a * a + Rational(27) * c * c); }

bool EllipticCurve::integral_model() const { return is_integer(a) && is_integer(c); }

std::string EllipticCurve::str() const { return "y^2 = x^3 + (" + to_string(a) + ")x + (" + to_string(c) + ")"; }

bool CurvePoint::operator==(const CurvePoint& o) const
{
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
}

std::string CurvePoint::str() const { return infinity ? "O" : "(" + to_string(x) + ", " + to_string(y) + ")"; }

bool on_curve(const EllipticCurve& E, const CurvePoint& P)
{
    return P.infinity || P.y * P.y == P.x * P.x * P.x + E.a * P.x + E.c;
}

CurvePoint negate(const CurvePoint& P)
{
    if (P.infinity) return P;
    return CurvePoint::affine(P.x, -P.y);
}

CurvePoint add(const EllipticCurve& E, const CurvePoint& P, const CurvePoint& Q)
{
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Rational l;
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y == 0) return CurvePoint::at_infinity();
        l = (Rational(3) * P.x * P.x + E.a) / (Rational(2) * P.y);
    } else {
        l = (Q.y - P.y) / (Q.x - P.x);
    }
    Rational x3 = l * l - P.x - Q.x;
    Rational y3 = l * (P.x - x3) - P.y;
    return CurvePoint::affine(x3, y3);
}

CurvePoint multiply_point(const EllipticCurve& E, const CurvePoint& P, long n)
{
    if (!on_curve(E, P)) fail(ErrorCode::InvalidArgument, "point " + P.str() + " is not on " + E.str());
    CurvePoint base = n < 0 ? negate(P) : P, r = CurvePoint::at_infinity();
    unsigned long k = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    while (k) {
        if (k & 1) r = add(E, r, base);
        k >>= 1;
        if (k) base = add(E, base, base);
    }
    return r;
}

Multiples::Multiples(EllipticCurve E, CurvePoint P) : E_(std::move(E)), P_(std::move(P))
{
    if (!on_curve(E_, P_)) fail(ErrorCode::InvalidArgument, "point " + P_.str() + " is not on " + E_.str());
    memo_[1] = P_;
}

const CurvePoint& Multiples::get(long n)
{
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    CurvePoint r;
    if (n == 0) r = CurvePoint::at_infinity();
    else if (n < 0) r = negate(get(-n));
    else if (memo_.count(n - 1)) r = add(E_, memo_.at(n - 1), P_);
    else if (n % 2 == 0) {
        const CurvePoint& h = get(n / 2);
        r = add(E_, h, h);
    } else {
        r = add(E_, get(n - 1), P_);
    }
    return memo_.emplace(n, std::move(r)).first->second;
}

const Rational& Multiples::x(long n)
{
    const CurvePoint& Q = get(n);
    if (Q.infinity) fail(ErrorCode::InvalidArgument, "[" + std::to_string(n) + "]P is the point at infinity");
    return Q.x;
}

DenominatorDatum Multiples::datum(long n)
{
    const Rational& v = x(n);
    return {n, v.get_den(), num_abs(v)};
}

void certify_infinite_order(const EllipticCurve& E, const CurvePoint& P)
{
    if (P.infinity) fail(ErrorCode::HypothesisFail, "the point at infinity has finite order");
    bool nonintegral = false;
    CurvePoint Q = CurvePoint::at_infinity();
    for (long n = 1; n <= 12; ++n) {
        Q = add(E, Q, P);
        if (Q.infinity) fail(ErrorCode::HypothesisFail, P.str() + " has order " + std::to_string(n));
        nonintegral = nonintegral || !is_integer(Q.x) || !is_integer(Q.y);
    }
    // torsion points on an integral model have integral coordinates
    if (E.integral_model() && !nonintegral)
        fail(ErrorCode::HypothesisFail, "all multiples up to 12 of " + P.str() + " are integral");
}

DivisorSearch denominator_divisibility_search(Multiples& M, const Integer& A, long m, long k_max)
{
    if (A <= 0) fail(ErrorCode::InvalidArgument, "A must be a positive integer");
    if (m <= 0 || k_max <= 0) fail(ErrorCode::InvalidArgument, "m and k_max must be positive");
    certify_infinite_order(M.curve(), M.base());
    DivisorSearch s;
    for (long k = 1; k <= k_max; ++k) {
        Integer d = M.datum(k * m).denominator;
        s.denominators.push_back(d);
        if (d % A == 0) {
            s.k = k;
            break;
        }
    }
    return s;
}

EquivCheck equiv_divisibility_check(Multiples& M, long m, long l, long k)
{
    if (m <= 0 || l <= 0 || k <= 0) fail(ErrorCode::InvalidArgument, "indices must be positive");
    EquivCheck r;
    const Rational& xk = M.x(k * l * m);
    if (xk == 0) {
        r.skipped = true;
        return r;
    }
    Rational e = M.x(l * m) / xk - Rational(k * k);
    if (e == 0) return r;
    Integer n = num_abs(e);
    r.holds = (n * n) % M.datum(l * m).denominator == 0;
    return r;
}

EquivSearch find_equiv_m(Multiples& M, long m_max, long k_max, long l_max)
{
    certify_infinite_order(M.curve(), M.base());
    EquivSearch s;
    for (long m = 1; m <= m_max; ++m) {
        bool ok = true;
        for (long k = 1; k <= k_max && ok; ++k)
            for (long l = 1; l <= l_max && ok; ++l) {
                auto c = equiv_divisibility_check(M, m, l, k);
                if (c.skipped) ++s.skipped;
                else if (!c.holds) {
                    ok = false;
                    s.failures.push_back({m, {k, l}});
                }
            }
        if (ok) {
            s.m = m;
            break;
        }
    }
    return s;
}

WeakVerticalReport weak_vertical_check(const NumberField& N, const Integer& p, const FieldElement& u,
                                       const std::vector<std::pair<long, Rational>>& pairs)
{
    require_prime(p);
    if (!(u.field() == N)) fail(ErrorCode::InvalidArgument, "u is not in N");
    auto primes = splitting_type(N, p);
    std::size_t n = N.degree();
    for (auto& P : primes)
        if (valuation(N, P, u) < Ord(0)) fail(ErrorCode::HypothesisFail, "u is not integral at " + P.str());
    WeakVerticalReport rep;
    rep.in_base = u.is_rational();
    rep.ord_disc = vp(N.discriminant(), p).value();
    long prev = 0;
    bool first = true;
    rep.ell = LONG_MIN;
    for (auto& [k, y] : pairs) {
        if (!first && k <= prev) fail(ErrorCode::HypothesisFail, "k_i must increase");
        if (k <= 0) fail(ErrorCode::HypothesisFail, "k_i must be positive");
        first = false;
        prev = k;
        if (vp(y, p) < Ord(0)) fail(ErrorCode::HypothesisFail, "y_i = " + to_string(y) + " has a pole at " + to_string(p));
        long gap = LONG_MAX;
        FieldElement d = u - y;
        for (auto& P : primes) {
            Ord v = valuation(N, P, d);
            if (v <= Ord(k))
                fail(ErrorCode::HypothesisFail, "ord(u - y_i) = " + v.str() + " <= " + std::to_string(k) + " at " + P.str());
            if (!v.is_infinite()) gap = std::min(gap, v.value() - k);
        }
        rep.gaps.push_back(gap);
        // largest ℓ with k > n (ℓ + ord D)
        long nn = static_cast<long>(n);
        long ell = (k - 1) / nn - rep.ord_disc;
        rep.ell = std::max(rep.ell, ell);
    }
    if (pairs.empty()) rep.ell = 0;
    rep.consistent = true;
    for (std::size_t r = 1; r < n; ++r) {
        Ord v = vp(u.coords()[r], p);
        rep.coordinate_ords.push_back(v);
        if (v < Ord(rep.ell)) rep.consistent = false;
    }
    if (!rep.consistent) fail(ErrorCode::ConclusionViolation, "coordinate valuations below the forced bound");
    return rep;
}

EllipticEval elliptic_definition_eval(Multiples& M, const Integer& p, const Rational& b, const Rational& u,
                                      const std::vector<Rational>& battery, const EllipticOptions& o)
{
    require_prime(p);
    NumberField Q = NumberField::rationals();
    auto tracked = splitting_type(Q, p);
    Ord vb = vp(b, p);
    if (b == 0 || vb >= Ord(0) || vb.value() % static_cast<long>(o.q) == 0)
        fail(ErrorCode::HypothesisFail, "b needs a pole at " + to_string(p) + " of order prime to q");
    for (auto& l : prime_support(b))
        if (l != p && vp(b, l) < Ord(0)) fail(ErrorCode::HypothesisFail, "b has a pole outside the tracked prime");
    certify_infinite_order(M.curve(), M.base());

    EllipticEval ev;
    auto in_int = [&](const Rational& v) { return int_set_membership(Q, Q.from_rational(b), tracked, o.q, Q.from_rational(v)); };
    ev.ub_in_int = in_int(u * b);
    if (o.m > 0) ev.m = o.m;
    else {
        auto s = find_equiv_m(M, o.m_max, 3, 3);
        if (!s.m) fail(ErrorCode::SearchExhausted, "no m up to " + std::to_string(o.m_max));
        ev.m = *s.m;
    }
    Integer db2 = Rational(b * b).get_den();
    for (auto& z : battery) {
        if (z == 0) fail(ErrorCode::InvalidArgument, "z = 0 in the battery");
        Integer need = db2 * num_abs(z);
        ZWitness w;
        w.z = z;
        long r = 0;
        for (long t = 1; t <= o.r_max; ++t)
            if (M.datum(t * ev.m).denominator % need == 0) {
                r = t;
                break;
            }
        if (!r) fail(ErrorCode::SearchExhausted, "no r <= " + std::to_string(o.r_max) + " for z = " + to_string(z));
        w.r = r;
        const Rational& a1 = M.x(r * ev.m);
        w.atom1 = in_int(b * b / (z * a1));
        for (long j = 1; j <= o.j_max && w.atom1; ++j) {
            const Rational& a2 = M.x(j * r * ev.m);
            if (a2 == 0) continue;
            Rational t = u - a1 / a2;
            if (in_int(t * t * a1)) {
                w.j = j;
                w.atom2 = true;
                break;
            }
        }
        w.found = w.atom1 && w.atom2;
        ev.holds = ev.holds && w.found;
        ev.witnesses.push_back(w);
    }
    return ev;
}

}  // namespace normforge
