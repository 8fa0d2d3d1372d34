#ifndef NORMFORGE_ALGEBRA_POLYMOD_HPP
#define NORMFORGE_ALGEBRA_POLYMOD_HPP

#include "normforge/algebra/integer.hpp"
#include "normforge/algebra/unipoly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace normforge {

// Polynomials over F_p with p < 2^63, ascending coefficients in [0, p).
namespace fp {

using Poly = std::vector<u64>;

void trim(Poly& a);
Poly reduce(const UniPoly& f, u64 p);  // denominators must be prime to p
Poly from_ints(const std::vector<Integer>& c, u64 p);
UniPoly to_unipoly(const Poly& a);
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
Poly scale(const Poly& a, u64 s, u64 p);
void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, u64 p);
Poly mod(const Poly& a, const Poly& b, u64 p);
Poly quo(const Poly& a, const Poly& b, u64 p);
Poly monic(const Poly& a, u64 p);
Poly gcd(const Poly& a, const Poly& b, u64 p);
// s*a + t*b = gcd (monic); deg s < deg b, deg t < deg a when coprime.
Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t, u64 p);
Poly derivative(const Poly& a, u64 p);
Poly powmod(const Poly& a, const Integer& e, const Poly& m, u64 p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p);
u64 eval(const Poly& a, u64 x, u64 p);
inline bool is_one(const Poly& a) { return a.size() == 1 && a[0] == 1; }
inline std::size_t deg(const Poly& a) { return a.empty() ? 0 : a.size() - 1; }
bool less(const Poly& a, const Poly& b);  // degree, then coefficients from the top

struct Factor {
    Poly poly;
    unsigned mult;
};

// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
std::vector<Factor> factor(const Poly& f, u64 p, std::uint64_t seed = 0x5eed);
bool is_irreducible(const Poly& f, u64 p);

}  // namespace fp

struct ModPFactor {
    UniPoly factor;  // monic, coefficients in [0, p)
    unsigned multiplicity;
};

std::vector<ModPFactor> factor_poly_mod_p(const UniPoly& f, const Integer& p, std::uint64_t seed = 0x5eed);

// Polynomials with coefficients modulo an arbitrary positive integer M.
namespace zm {

using Poly = std::vector<Integer>;

void trim(Poly& a);
Poly reduce(const Poly& a, const Integer& M);
Poly add(const Poly& a, const Poly& b, const Integer& M);
Poly sub(const Poly& a, const Poly& b, const Integer& M);
Poly mul(const Poly& a, const Poly& b, const Integer& M);
// b monic
void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, const Integer& M);
Poly mod(const Poly& a, const Poly& b, const Integer& M);
Poly from_fp(const fp::Poly& a);

}  // namespace zm

// Lifts f ≡ ∏ g_i (mod p), g_i monic and pairwise coprime (not necessarily
// irreducible), to monic factors modulo p^m. f must have unit leading
// coefficient mod p.
std::vector<zm::Poly> hensel_lift(const std::vector<Integer>& f, const std::vector<fp::Poly>& factors,
                                  const Integer& p, unsigned m);

// Squarefree-mod-p case: factors modulo p^m with coefficients in [0, p^m).
std::vector<UniPoly> hensel_lift_factorization(const UniPoly& f, const Integer& p, unsigned m);

// Finite field F_p[x]/(g) with g monic irreducible.
class FiniteField {
public:
    using Elem = fp::Poly;
    FiniteField(u64 p, fp::Poly modulus);
    static FiniteField prime(u64 p) { return FiniteField(p, fp::Poly{0, 1}); }

    u64 characteristic() const { return p_; }
    unsigned degree() const { return static_cast<unsigned>(g_.size() - 1); }
    const fp::Poly& modulus() const { return g_; }
    Integer order() const;  // p^f

    Elem from_int(const Integer& a) const;
    Elem from_poly(const fp::Poly& a) const;
    Elem add(const Elem& a, const Elem& b) const { return fp::add(a, b, p_); }
    Elem sub(const Elem& a, const Elem& b) const { return fp::sub(a, b, p_); }
    Elem mul(const Elem& a, const Elem& b) const { return fp::mulmod(a, b, g_, p_); }
    Elem neg(const Elem& a) const { return fp::sub({}, a, p_); }
    Elem inv(const Elem& a) const;
    Elem pow(const Elem& a, const Integer& e) const { return fp::powmod(a, e, g_, p_); }
    bool is_zero(const Elem& a) const { return a.empty(); }
    bool is_one(const Elem& a) const { return fp::is_one(a); }
    // Tr to F_p, returned in [0, p).
    u64 trace(const Elem& a) const;
    // Multiplicative order of a nonzero element.
    Integer order_of(const Elem& a) const;
    std::string str(const Elem& a) const;

private:
    u64 p_;
    fp::Poly g_;
};

// a is a q-th power in F (a != 0).
bool power_residue_test(const FiniteField& F, const FiniteField::Elem& a, const Integer& q);
bool power_residue_test(const Integer& a, const FiniteField& F, const Integer& q);

}  // namespace normforge

#endif
