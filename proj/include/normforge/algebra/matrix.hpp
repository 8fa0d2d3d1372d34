#ifndef NORMFORGE_ALGEBRA_MATRIX_HPP
#define NORMFORGE_ALGEBRA_MATRIX_HPP

#include "normforge/algebra/unipoly.hpp"

#include <vector>

namespace normforge {

using QMatrix = std::vector<std::vector<Rational>>;

Rational determinant(QMatrix m);
// det(xI - m)
UniPoly charpoly(const QMatrix& m);
// Solves m x = b; throws InvalidArgument if singular.
std::vector<Rational> solve(QMatrix m, std::vector<Rational> b);

}  // namespace normforge

#endif
