#ifndef NORMFORGE_TREE_FACTOR_TREE_HPP
#define NORMFORGE_TREE_FACTOR_TREE_HPP

#include "normforge/field/number_field.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace normforge {

// Element of anchor[α_s]: Σ coeffs[i] α_s^i, where α_s is the root adjoined by polynomial step s.
struct RadicandExpr {
    std::optional<std::size_t> alpha_step;
    std::vector<FieldElement> coeffs;
};

struct RecipeStep {
    enum class Kind { RootOfUnity, Radical, Polynomial };
    Kind kind = Kind::RootOfUnity;
    u64 n = 0;                                        // RootOfUnity: adjoin ξ_n
    unsigned degree = 0;                              // Radical
    std::optional<RadicandExpr> radicand;             // Radical, resolved
    std::vector<ApproxConstraint> selector;           // Radical, resolved by strong approximation when radicand is empty
    UniPoly poly;                                     // Polynomial over Q; as the first step it defines the anchor field
    std::map<Integer, std::vector<Integer>> split_roots;  // p -> approximate p-adic roots certifying complete splitting
    std::string note;

    static RecipeStep root_of_unity(u64 n);
    static RecipeStep radical(unsigned degree, RadicandExpr r, std::string note = "");
    static RecipeStep radical(unsigned degree, std::vector<ApproxConstraint> selector, std::string note = "");
    static RecipeStep polynomial(UniPoly f, std::string note = "");
};

// Steps apply in order. A leading RootOfUnity or Polynomial step fixes the anchor field in which
// later radicands live; a recipe made only of RootOfUnity steps is handled in closed form.
struct TowerRecipe {
    std::string name;
    NumberField anchor = NumberField::rationals();
    std::vector<RecipeStep> steps;
    std::vector<std::string> notes;

    bool cyclotomic() const;
    // degree of the level-k field over Q, assuming each step is irreducible over its predecessor
    std::vector<Integer> level_degrees() const;
};

// Fills empty radicands from their selectors and validates anchors.
void resolve_recipe(TowerRecipe& r);

TowerRecipe five_power_cyclotomic(unsigned depth);
TowerRecipe cyclotomic_q_avoiding(unsigned q, unsigned m, u64 prime_bound, unsigned depth);
// One round of the three-step construction over Q(ξ_q) (n = 1 only).
TowerRecipe three_step(unsigned q, unsigned n);
// Catalog lookup: "five-power-cyclotomic" (alias "five-power"), "cyclotomic-q-avoiding", "three-step".
TowerRecipe example_tower(const std::string& name, const std::map<std::string, long>& params);

struct TreeNode {
    std::size_t id;
    int level;
    std::optional<std::size_t> parent;
    long e = 1, f = 1;           // over the base prime
    std::string rule;            // how the node arose
    bool truncated = false;      // layer below could not be decided
};

struct FactorTree {
    Integer p;
    std::string recipe;
    int depth = 0;               // requested
    std::vector<TreeNode> nodes;
    std::vector<std::vector<std::size_t>> levels;
    std::vector<Integer> level_degrees;
    bool representative_only = false;  // closed-form tree cut to one branch per node (symmetric levels)
    std::vector<std::string> flags;

    std::vector<std::size_t> children(std::size_t id) const;
    long local_degree(std::size_t id) const { return nodes[id].e * nodes[id].f; }
    int complete_depth() const;  // deepest level reached without truncation
};

FactorTree grow_tree(const TowerRecipe& recipe, const Integer& p, int depth, std::size_t max_nodes = 10000);

struct BoundednessCertificate {
    enum class Kind { QUnboundedUpToDepth, QBounded, CompletelyQBounded };
    Kind kind;
    unsigned q;
    int depth;                             // depth examined
    std::vector<std::size_t> witness_path; // root to leaf
    int bounding_level = -1;
    long bounding_order = -1;
    std::vector<long> min_order_sequence;  // per level, min ord_q of local degree
    std::vector<std::string> notes;
};
const char* to_string(BoundednessCertificate::Kind k);

// threshold >= 0 prunes nodes with ord_q(d) >= threshold before the path search.
BoundednessCertificate classify_prime(const FactorTree& tree, unsigned q, long threshold = -1);

}  // namespace normforge

#endif
