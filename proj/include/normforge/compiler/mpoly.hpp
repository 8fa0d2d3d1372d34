#ifndef NORMFORGE_COMPILER_MPOLY_HPP
#define NORMFORGE_COMPILER_MPOLY_HPP

#include "normforge/algebra/integer.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace normforge {

// Sparse polynomial over Z in indexed variables.
class MPoly {
public:
    using Mono = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (variable, exponent), sorted, exponents > 0
    using Terms = std::map<Mono, Integer>;
    using Complex = std::complex<long double>;

    MPoly() = default;
    explicit MPoly(const Integer& c);
    static MPoly constant(long c) { return MPoly(Integer(c)); }
    static MPoly var(std::uint32_t v, std::uint32_t e = 1);
    static MPoly monomial(const Mono& m, const Integer& c);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    std::size_t size() const { return t_.size(); }
    const Terms& terms() const { return t_; }

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Integer& c) const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    bool operator==(const MPoly& o) const { return t_ == o.t_; }
    bool operator!=(const MPoly& o) const { return t_ != o.t_; }
    MPoly pow(unsigned e) const;

    std::uint32_t degree_in(std::uint32_t v) const;
    std::uint32_t total_degree() const;
    // c[k] is the coefficient of v^k; v does not occur in c[k]
    std::vector<MPoly> coefficients_in(std::uint32_t v) const;
    MPoly substitute(std::uint32_t v, const MPoly& s) const;
    // new index for every variable; throws InvalidArgument for a variable mapped to -1
    MPoly remap(const std::vector<long>& to) const;
    std::set<std::uint32_t> variables() const;
    // largest monomial dividing every term, restricted to vars
    Mono monomial_content(const std::set<std::uint32_t>& vars) const;
    MPoly divide_monomial(const Mono& m) const;  // m divides every term

    Rational eval(const std::map<std::uint32_t, Rational>& at) const;   // throws IncompleteAssignment
    Complex eval(const std::vector<Complex>& at) const;
    Integer max_coefficient() const;

    std::string str(const std::vector<std::string>& names) const;

private:
    Terms t_;
};

MPoly::Mono mono_mul(const MPoly::Mono& a, const MPoly::Mono& b);
std::string mono_str(const MPoly::Mono& m, const std::vector<std::string>& names);

}  // namespace normforge

#endif
