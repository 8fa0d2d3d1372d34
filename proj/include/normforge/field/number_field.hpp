#ifndef NORMFORGE_FIELD_NUMBER_FIELD_HPP
#define NORMFORGE_FIELD_NUMBER_FIELD_HPP

#include "normforge/algebra/polymod.hpp"
#include "normforge/algebra/real_roots.hpp"
#include "normforge/algebra/unipoly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace normforge {

class FieldElement;

// K = Q[θ]/(f), f monic irreducible with integer coefficients. Cheap to copy.
class NumberField {
public:
    explicit NumberField(const UniPoly& f, std::string name = "");
    static NumberField rationals();

    const UniPoly& poly() const { return impl_->f; }
    std::size_t degree() const { return impl_->n; }
    const Rational& discriminant() const { return impl_->disc; }
    const std::string& name() const { return impl_->name; }
    bool operator==(const NumberField& o) const { return impl_ == o.impl_ || impl_->f == o.impl_->f; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement theta() const;
    FieldElement from_rational(const Rational& a) const;
    FieldElement from_coords(std::vector<Rational> c) const;
    FieldElement from_poly(const UniPoly& a) const;  // reduced mod f

    std::size_t real_embedding_count() const;
    const std::vector<RationalInterval>& real_roots() const { return impl_->real_roots; }

    // Monic lifts of f ≡ ∏ g_i^{e_i} (mod p) to modulus p^m, in the order of the mod p factorization.
    std::vector<zm::Poly> local_factors(const Integer& p, unsigned m) const;

private:
    struct Impl {
        UniPoly f;
        std::size_t n;
        Rational disc;
        std::string name;
        std::vector<RationalInterval> real_roots;
        mutable std::mutex mu;
        mutable std::map<Integer, std::pair<unsigned, std::vector<zm::Poly>>> lifts;
    };
    std::shared_ptr<const Impl> impl_;
};

class FieldElement {
public:
    FieldElement(NumberField K, std::vector<Rational> coords);

    const NumberField& field() const { return K_; }
    const std::vector<Rational>& coords() const { return c_; }
    UniPoly poly() const { return UniPoly(c_); }
    bool is_zero() const;
    bool is_rational() const;
    Rational as_rational() const;  // requires is_rational

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator+(const Rational& a) const;
    FieldElement operator-(const Rational& a) const;
    FieldElement operator*(const Rational& a) const;
    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return c_ != o.c_; }

    FieldElement inverse() const;
    FieldElement pow(long e) const;
    Rational norm() const;
    Rational trace() const;
    UniPoly charpoly() const;
    UniPoly minpoly() const;
    // lcm of coordinate denominators
    Integer denominator() const;
    std::string str() const;

private:
    void check_same(const FieldElement& o) const;
    NumberField K_;
    std::vector<Rational> c_;
};

// Prime ideal of Z[θ] above p, given by the Kummer-Dedekind factor g.
struct PrimeIdeal {
    Integer p;
    fp::Poly g;       // monic irreducible factor of f mod p
    unsigned e = 1;   // ramification index
    unsigned f = 1;   // residue degree
    std::size_t index = 0;  // position in splitting_type(K, p)

    bool operator==(const PrimeIdeal& o) const { return p == o.p && g == o.g; }
    bool operator<(const PrimeIdeal& o) const { return p != o.p ? p < o.p : fp::less(g, o.g); }
    FiniteField residue_field() const { return FiniteField(to_u64(p), g); }
    std::string str() const;
};

std::vector<PrimeIdeal> splitting_type(const NumberField& K, const Integer& p);
// Dedekind criterion for Z[θ] at p.
bool dedekind_maximal_at(const NumberField& K, const Integer& p);

Ord valuation(const NumberField& K, const PrimeIdeal& P, const FieldElement& a);
// Reduction of an element with v_P >= 0 into F_p[x]/(g).
FiniteField::Elem residue(const NumberField& K, const PrimeIdeal& P, const FieldElement& a);
// Element with v_P = 1.
FieldElement uniformizer(const NumberField& K, const PrimeIdeal& P);
// a * π^{-v_P(a)} for the fixed uniformizer π; residue of that unit.
FiniteField::Elem unit_residue(const NumberField& K, const PrimeIdeal& P, const FieldElement& a);

bool residue_nonqth_power(const NumberField& K, const PrimeIdeal& P, const FieldElement& c, const Integer& q);
bool omega_membership(const NumberField& K, const FieldElement& a, unsigned q);

struct ThetaPhi {
    bool in_theta;
    bool in_phi;
};
ThetaPhi theta_phi_membership(const NumberField& K, const FieldElement& c, const std::vector<PrimeIdeal>& S,
                              unsigned q);

// Sorted prime ideals dividing numerator or denominator of a (a != 0).
std::vector<PrimeIdeal> prime_support(const NumberField& K, const FieldElement& a);
std::vector<Integer> rational_prime_support(const FieldElement& a);

struct ApproxConstraint {
    enum class Kind { ExactValuation, MinValuation, Congruence, NonPowerResidue };
    PrimeIdeal P;
    Kind kind = Kind::ExactValuation;
    long valuation = 0;                    // Exact/Min value, or min valuation of (x - residue)
    std::optional<FieldElement> target;    // Congruence
    unsigned q = 2;                        // NonPowerResidue

    static ApproxConstraint exact(PrimeIdeal P, long v);
    static ApproxConstraint at_least(PrimeIdeal P, long v);
    static ApproxConstraint congruent(PrimeIdeal P, FieldElement r, long v);
    static ApproxConstraint non_power(PrimeIdeal P, unsigned q);
};

FieldElement strong_approx_element(const NumberField& K, const std::vector<ApproxConstraint>& cs,
                                   bool totally_positive = false);
bool satisfies(const NumberField& K, const ApproxConstraint& c, const FieldElement& x);

struct ConjugateRange {
    RationalInterval min, max;
};
ConjugateRange conjugate_interval(const FieldElement& a, const Rational& width);

// Roots in K of a monic integral polynomial.
std::vector<FieldElement> roots_in_field(const NumberField& K, const UniPoly& g);
std::optional<FieldElement> root_of_unity(const NumberField& K, unsigned q);  // primitive q-th

struct TowerEdge {
    NumberField lower, upper;
    FieldElement image;  // image of the lower generator in the upper field
    TowerEdge(NumberField lo, NumberField up, FieldElement img);
};

// Named fixtures: Q, Q(i), Q(zeta3), Q(sqrt2), Q(sqrt5), Q(zetaN).
NumberField field_by_name(const std::string& name);

}  // namespace normforge

#endif
