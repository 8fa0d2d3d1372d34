#ifndef NORMFORGE_COMPILER_COMPILER_HPP
#define NORMFORGE_COMPILER_COMPILER_HPP

#include "normforge/compiler/mpoly.hpp"
#include "normforge/field/number_field.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace normforge {

// U_1..U_q, C, Z in variables 0..q+1: Res_T(T^q - C, U_1 + U_2 T + ... + U_q T^{q-1}) - Z.
MPoly coordinate_norm_poly(unsigned q);

struct Variable {
    enum class Role { Existential, Universal, Free, Parameter, Auxiliary };
    std::string name;
    Role role;
    std::string provenance;
};
const char* to_string(Variable::Role r);

struct PolynomialSystem {
    std::vector<Variable> vars;
    std::vector<MPoly> equations;
    std::vector<std::string> trace;                  // one per equation
    std::vector<std::vector<MPoly>> nonzero;         // each atom: at least one entry is nonzero
    std::vector<std::string> history;                // applied substitutions and descents
    // expressions carried through descents; after a coordinate expansion an entry holds its coordinates
    std::map<std::string, std::vector<MPoly>> named;

    std::uint32_t add_var(std::string name, Variable::Role role, std::string provenance);
    std::optional<std::uint32_t> find(const std::string& name) const;
    std::uint32_t index(const std::string& name) const;   // throws InvalidArgument
    MPoly v(const std::string& name) const { return MPoly::var(index(name)); }
    std::vector<std::string> names() const;
    std::size_t count(Variable::Role r) const;
    std::size_t term_count() const;
    void add_equation(MPoly e, std::string why);
    // every referenced variable registered, trace covers every equation
    void validate() const;
};

// Γ^degree = (Σ_{k<degree} relation[k] Γ^k) / den over polynomials in the lower variables.
struct Layer {
    std::string name;
    unsigned degree = 2;
    std::vector<MPoly> relation;
    MPoly den = MPoly::constant(1);
    std::vector<std::string> expand;   // variables written in coordinates over the lower field
};
Layer radical_layer(std::string name, unsigned q, MPoly num, MPoly den, std::vector<std::string> expand);
// Ξ a primitive q-th root of unity, minimal polynomial Φ_q
Layer cyclotomic_layer(std::string name, unsigned q, std::vector<std::string> expand);

// Throws DegenerateLayer for a zero denominator or radicand, SearchExhausted past term_budget (0 = none).
PolynomialSystem descend_layer(const PolynomialSystem& sys, const Layer& layer, std::size_t term_budget = 0);

// Throws IncompleteAssignment when a variable is missing.
bool verify_witness(const PolynomialSystem& sys, const std::map<std::string, Rational>& assignment);
// Residuals of every equation.
std::vector<Rational> evaluate_system(const PolynomialSystem& sys, const std::map<std::string, Rational>& assignment);

struct NormSystemOptions {
    unsigned q = 2;
    bool xda = false;               // radicands 1+1/d, 1+1/(d t^q + d^q), 1+(a+1/a)/d
    std::string x = "X", y = "B", z = "C";
    bool descend_radicals = true;
    bool descend_roots_of_unity = true;   // only q > 2
    std::size_t term_budget = 0;
    Variable::Role yz_role = Variable::Role::Universal;
};
// N(U, z, y x^q + y^q) = 0 over the three-radical tower, descended to the base.
PolynomialSystem norm_equation_system(const NormSystemOptions& o);

struct FormulaAST;

struct FormulaNode {
    enum class Kind { And, Or, Implies, Equation, NonZero, System, Predicate, True };
    Kind kind = Kind::True;
    std::string label;
    std::vector<FormulaNode> children;
    std::vector<MPoly> polys;                          // Equation: all vanish; NonZero: one does not. Main registry.
    std::shared_ptr<const PolynomialSystem> system;    // System: ∃ existential variables, all equations vanish
    std::shared_ptr<const FormulaAST> encoding;        // Predicate: polynomial encoding, when one exists
    std::string description;                           // Predicate: meaning
};
const char* to_string(FormulaNode::Kind k);

struct Quantifier {
    bool universal;
    std::string name;
    std::string sort;
    std::size_t coordinates = 1;
};

struct FormulaAST {
    std::string variant;
    unsigned q = 2;
    std::string free_var = "x";
    std::vector<Quantifier> prefix;
    FormulaNode matrix;
    std::vector<std::string> registry;   // names for Equation/NonZero polynomials
    bool materialized = true;
    std::size_t existential_count = 0;   // variables of the descended system
    std::size_t equation_count = 0;
    std::vector<std::string> notes;

    std::size_t universal_blocks() const;
    std::string prefix_string() const;
    std::string str() const;             // matrix as text
};

struct CompileOptions {
    std::string variant = "eqC";         // eqA eqB eqC diffversion1 diffversion2 diffversion3
    unsigned q = 2;
    std::vector<std::string> S;          // names of the primes in S; empty collapses eqA to eqB
    bool real_embeddings = true;         // base field has real places
    bool descend_roots_of_unity = true;
    std::size_t term_budget = 2000000;
    // numeric w and ŵ; symbolic when absent
    std::optional<FieldElement> w, w_hat;
};

// Throws InvalidArgument for an unknown variant or unmet variant prerequisites.
FormulaAST compile_definition(const CompileOptions& o);

// w with ord w = 3 ord q above q, ord w = 1 at S, no other zeros; nullopt when the search fails.
std::optional<FieldElement> realize_w(const NumberField& K, unsigned q, const std::vector<PrimeIdeal>& S);

// c = w^q: rational solution of N(U, c, z) = 0 from the Vandermonde system.
std::vector<Rational> kummer_power_witness(unsigned q, const Rational& w, const Rational& z);

}  // namespace normforge

#endif
