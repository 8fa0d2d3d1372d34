#ifndef NORMFORGE_LOCAL_LOCAL_PRIME_HPP
#define NORMFORGE_LOCAL_LOCAL_PRIME_HPP

#include "normforge/field/number_field.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace normforge {

// Base data for one prime P of K. All tracked quantities are measured at P.
struct LocalContext {
    NumberField K;
    PrimeIdeal P;
    FiniteField F;
    FieldElement pi;                      // uniformizer at P
    unsigned q;                           // the prime whose radicals are analysed
    std::optional<FieldElement> zeta;     // primitive q-th root of unity in K, if any
    std::optional<FieldElement> lambda;   // zeta - 1
};

struct TrackedValue {
    Ord val;                                          // v_P(u); infinite for u = 0
    std::optional<FiniteField::Elem> unit_residue;    // residue of w = u * pi^{-v}
    Ord w_minus_one;                                  // v_P(w - 1), only when P | q
    std::optional<FiniteField::Elem> as_residue;      // residue of (w - 1)/lambda^q when integral
};

struct LocalPrime {
    std::shared_ptr<const LocalContext> ctx;
    long e_rel = 1, f_rel = 1;
    bool e_exact = true, f_exact = true;
    std::map<std::string, TrackedValue> tracked;
    std::vector<std::string> trace;

    const Integer& p() const { return ctx->P.p; }
    long e() const { return static_cast<long>(ctx->P.e) * e_rel; }   // over Q
    long f() const { return static_cast<long>(ctx->P.f) * f_rel; }
    const TrackedValue& value(const std::string& id) const;
    // valuation at the current level; nullopt when unknown
    std::optional<long> current_valuation(const std::string& id) const;
    // whether t divides the current valuation; nullopt when unknown. e_rel always divides the true e.
    std::optional<bool> valuation_divisible(const std::string& id, long t) const;
    // whether the unit part of the element is a t-th power in the current residue field
    std::optional<bool> residue_is_power(const std::string& id, long t) const;
    // order of the current residue field
    Integer residue_order() const;
};

std::shared_ptr<const LocalContext> make_local_context(const NumberField& K, const PrimeIdeal& P, unsigned q);
LocalPrime make_local_prime(std::shared_ptr<const LocalContext> ctx,
                            const std::map<std::string, FieldElement>& elements);
TrackedValue track_element(const LocalContext& ctx, const FieldElement& u);

enum class LayerKind { Split, Inert, Unramified, UnramifiedUnknown, TameRamified, WildRamified, Indeterminate };
const char* to_string(LayerKind k);

struct LayerResult {
    LayerKind kind;
    std::string rule;
    std::vector<LocalPrime> children;
};

// Layer K_cur(u^{1/t}) over the current node. t is a positive integer; for
// p | t only prime t = q is modelled.
LayerResult classify_layer(const LocalPrime& lp, const std::string& u, unsigned t);
std::vector<LocalPrime> extend_by_radical(const LocalPrime& lp, const std::string& u, unsigned q);

struct LocalVerdict {
    enum class Kind { Solvable, Unsolvable, Indeterminate };
    Kind kind;
    std::string reason;
    static LocalVerdict solvable(std::string r = "") { return {Kind::Solvable, std::move(r)}; }
    static LocalVerdict unsolvable(std::string r) { return {Kind::Unsolvable, std::move(r)}; }
    static LocalVerdict indeterminate(std::string r) { return {Kind::Indeterminate, std::move(r)}; }
};
const char* to_string(LocalVerdict::Kind k);

LocalVerdict local_norm_solvable(const LocalPrime& lp, const std::string& rhs, const std::string& c, unsigned q);

// Real places. When radicands are given, only real embeddings at which all of
// them are positive survive to the top of the tower.
LocalVerdict archimedean_check(const NumberField& K, const FieldElement& c, const FieldElement& rhs, unsigned q,
                               const std::vector<FieldElement>& radicands = {});

}  // namespace normforge

#endif
