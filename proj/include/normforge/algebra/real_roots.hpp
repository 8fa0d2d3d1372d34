#ifndef NORMFORGE_ALGEBRA_REAL_ROOTS_HPP
#define NORMFORGE_ALGEBRA_REAL_ROOTS_HPP

#include "normforge/algebra/unipoly.hpp"

#include <complex>
#include <vector>

namespace normforge {

// Isolating interval. lo < hi means the open interval (lo, hi) with f(lo), f(hi)
// nonzero; lo == hi is an exact rational root.
struct RationalInterval {
    Rational lo, hi;
    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo == hi ? x == lo : (lo < x && x < hi); }
};

std::vector<RationalInterval> real_root_isolate(const UniPoly& f);
// Number of distinct real roots of f in the half-open interval (a, b].
long sturm_count(const UniPoly& f, const Rational& a, const Rational& b);
RationalInterval refine_root(const UniPoly& f, RationalInterval iv, const Rational& width);
// Bisect once, keeping the root; returns false if already exact.
bool bisect_root(const UniPoly& f, RationalInterval& iv);

// Enclosure of g over [lo, hi].
RationalInterval interval_eval(const UniPoly& g, const RationalInterval& x);
// Sign of g at the root of f isolated by iv (refines iv in place). g must not
// vanish at that root unless the root is exact.
int sign_at_root(const UniPoly& f, RationalInterval& iv, const UniPoly& g);

// All complex roots, numerically (Aberth iteration, long double).
std::vector<std::complex<long double>> complex_roots(const UniPoly& f);

}  // namespace normforge

#endif
