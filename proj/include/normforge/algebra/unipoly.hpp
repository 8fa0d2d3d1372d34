#ifndef NORMFORGE_ALGEBRA_UNIPOLY_HPP
#define NORMFORGE_ALGEBRA_UNIPOLY_HPP

#include "normforge/algebra/integer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace normforge {

// Univariate polynomial over Q, coefficients ascending. The zero polynomial
// has an empty coefficient list and degree() == nullopt.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> c);
    static UniPoly from_ints(const std::vector<long>& c);
    static UniPoly constant(const Rational& a);
    static UniPoly monomial(const Rational& a, std::size_t k);
    static UniPoly x() { return monomial(1, 1); }

    std::optional<std::size_t> degree() const;
    std::size_t deg() const;  // requires nonzero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& lead() const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator-() const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Rational& a) const;
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    Rational eval(const Rational& x) const;
    UniPoly derivative() const;
    UniPoly monic() const;
    UniPoly compose(const UniPoly& g) const;
    UniPoly pow(unsigned e) const;
    UniPoly shift(std::size_t k) const;  // multiply by x^k

    bool is_integral() const;
    Integer denominator_lcm() const;
    // Integer primitive polynomial with positive leading coefficient.
    UniPoly primitive_part() const;
    std::vector<Integer> int_coeffs() const;  // requires is_integral

    std::string str(const std::string& var = "x") const;

private:
    void normalize();
    std::vector<Rational> c_;
};

void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
UniPoly operator%(const UniPoly& a, const UniPoly& b);
UniPoly operator/(const UniPoly& a, const UniPoly& b);
UniPoly gcd(const UniPoly& a, const UniPoly& b);  // monic, or zero
// s*a + t*b = g (monic gcd)
UniPoly xgcd(const UniPoly& a, const UniPoly& b, UniPoly& s, UniPoly& t);
Rational resultant(const UniPoly& f, const UniPoly& g);
Rational discriminant(const UniPoly& f);
UniPoly squarefree_part(const UniPoly& f);
UniPoly cyclotomic_poly(unsigned long n);

}  // namespace normforge

#endif
