#ifndef NORMFORGE_ELLIPTIC_ELLIPTIC_HPP
#define NORMFORGE_ELLIPTIC_ELLIPTIC_HPP

#include "normforge/algebra/integer.hpp"
#include "normforge/field/number_field.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace normforge {

// y^2 = x^3 + a x + c over Q
struct EllipticCurve {
    Rational a, c;
    EllipticCurve(Rational a, Rational c);   // throws InvalidArgument when singular
    Rational discriminant() const;           // -16 (4a^3 + 27c^2)
    bool integral_model() const;
    std::string str() const;
};

struct CurvePoint {
    bool infinity = true;
    Rational x, y;
    static CurvePoint at_infinity() { return {}; }
    static CurvePoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }
    bool operator==(const CurvePoint& o) const;
    std::string str() const;
};

bool on_curve(const EllipticCurve& E, const CurvePoint& P);
CurvePoint negate(const CurvePoint& P);
CurvePoint add(const EllipticCurve& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint multiply_point(const EllipticCurve& E, const CurvePoint& P, long n);   // throws InvalidArgument off the curve

struct DenominatorDatum {
    long n;
    Integer denominator;   // d(x_n) > 0
    Integer numerator;     // n(x_n) >= 0
};

// Memoized multiples of a fixed point.
class Multiples {
public:
    Multiples(EllipticCurve E, CurvePoint P);
    const CurvePoint& get(long n);
    const Rational& x(long n);       // throws InvalidArgument at infinity
    DenominatorDatum datum(long n);
    const EllipticCurve& curve() const { return E_; }
    const CurvePoint& base() const { return P_; }

private:
    EllipticCurve E_;
    CurvePoint P_;
    std::map<long, CurvePoint> memo_;
};

// [n]P != O for n <= 12, plus a non-integral multiple on an integral model. Throws HypothesisFail otherwise.
void certify_infinite_order(const EllipticCurve& E, const CurvePoint& P);

struct DivisorSearch {
    std::optional<long> k;
    std::vector<Integer> denominators;   // d(x_{km}) for every k tried
};
DivisorSearch denominator_divisibility_search(Multiples& M, const Integer& A, long m, long k_max);

struct EquivCheck {
    bool holds = true;
    bool skipped = false;   // x_{klm} = 0
};
// d(x_{lm}) | n(x_{lm}/x_{klm} - k^2)^2; a zero numerator divides everything
EquivCheck equiv_divisibility_check(Multiples& M, long m, long l, long k);

struct EquivSearch {
    std::optional<long> m;
    std::vector<std::pair<long, std::pair<long, long>>> failures;   // (m, first failing (k, l))
    std::size_t skipped = 0;
};
EquivSearch find_equiv_m(Multiples& M, long m_max, long k_max, long l_max);

struct WeakVerticalReport {
    bool in_base = false;                // u ∈ Q
    std::vector<long> gaps;              // min_j ord(u - y_i) - k_i
    long ell = 0;                        // best ℓ with k_i > n(ℓ + ord D)
    long ord_disc = 0;
    std::vector<Ord> coordinate_ords;    // ord_p a_r, r = 1..n-1
    bool consistent = false;             // every ord_p a_r >= ℓ
};
// N over Q, p rational, u integral above p, y_i rational. Throws HypothesisFail when the hypotheses fail.
WeakVerticalReport weak_vertical_check(const NumberField& N, const Integer& p, const FieldElement& u,
                                       const std::vector<std::pair<long, Rational>>& pairs);

struct EllipticOptions {
    unsigned q = 2;
    long m = 0;          // 0: find_equiv_m
    long m_max = 6;
    long r_max = 200;
    long j_max = 4;      // a2 = x_{j r m}
};

struct ZWitness {
    Rational z;
    bool found = false;
    long r = 0, j = 0;
    bool atom1 = false, atom2 = false;
};

struct EllipticEval {
    bool holds = true;
    bool ub_in_int = false;
    long m = 0;
    std::vector<ZWitness> witnesses;
};
// Level field Q, tracked prime p, b with ord_p b < 0, ≢ 0 mod q and no other poles.
// Throws SearchExhausted when no r ≤ r_max gives d(b^2) n(z) | d(x_{rm}).
EllipticEval elliptic_definition_eval(Multiples& M, const Integer& p, const Rational& b, const Rational& u,
                                      const std::vector<Rational>& battery, const EllipticOptions& o = {});

}  // namespace normforge

#endif
