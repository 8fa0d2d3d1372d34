#ifndef NORMFORGE_NORMEQ_NORMEQ_HPP
#define NORMFORGE_NORMEQ_NORMEQ_HPP

#include "normforge/radical/radical_tower.hpp"
#include "normforge/tree/factor_tree.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace normforge {

// N_{L(c^{1/q})/L}(y) = y0 x^q + y0^q over the three-radical tower L/K.
struct NormEquationInstance {
    RadicalTowerSpec tower;
    std::vector<PrimeIdeal> S;

    const NumberField& K() const { return tower.K; }
    unsigned q() const { return tower.q; }
    const FieldElement& x() const { return tower.x; }
    const FieldElement& b() const { return tower.y; }
    const FieldElement& c() const { return tower.z; }
    const FieldElement& rhs() const { return tower.rhs; }
};

// Rejects rhs = 0 and x = 0.
NormEquationInstance make_instance(const NumberField& K, unsigned q, const FieldElement& x, const FieldElement& b,
                                   const FieldElement& c, std::vector<PrimeIdeal> S = {});
// d, a in place of b, c; radicands in the XDA shape.
NormEquationInstance make_xda_instance(const NumberField& K, unsigned q, const FieldElement& x, const FieldElement& d,
                                       const FieldElement& a);

struct LedgerEntry {
    PrimeIdeal P;
    LocalVerdict verdict;
    std::array<bool, 4> conditions{};  // c q-th power mod P; v(x) >= 0; q v(x) >= (q-1) v(b); v(b) ≡ 0 mod q
    bool in_W = false;                  // above q or in S
    std::size_t leaves = 0;
    std::vector<std::string> leaf_reasons;
};

struct NormAnalysis {
    LocalVerdict::Kind verdict;
    std::vector<LedgerEntry> ledger;   // in prime order
    LocalVerdict archimedean;
    bool compliant_c = false;          // c ∈ Θ ∩ Φ ∩ Ω
    bool integral_x = false;           // v(x) >= 0 outside W
};

// prime_bound as in primes_of_interest. Throws ConclusionViolation for an Unsolvable verdict on integral x with
// compliant c.
NormAnalysis analyze(const NormEquationInstance& inst, const Integer& prime_bound = 0);

struct BatteryResult {
    bool passed = true;
    std::optional<FieldElement> b, c;
    std::optional<PrimeIdeal> prime;
    std::vector<PrimeIdeal> not_catchable;   // poles above q
    std::size_t candidates_tried = 0;
    std::vector<std::string> notes;
};

BatteryResult integrality_battery(const NumberField& K, const FieldElement& x, unsigned q,
                                  const std::vector<PrimeIdeal>& S, std::size_t battery_size, std::uint64_t seed);

// Tracked primes: the poles of d. Throws HypothesisFail when a pole has ord ≡ 0 mod p or a is not a
// non-p-th-power unit there.
std::vector<PrimeIdeal> b_set_tracked(const NumberField& K, unsigned p, const FieldElement& a, const FieldElement& d);
bool b_set_membership(const NumberField& K, unsigned p, const FieldElement& a, const FieldElement& d,
                      const FieldElement& x);

struct RingFilterResult {
    bool member = false;
    bool in_B = false;
    std::optional<FieldElement> witness;   // y = x^r with x^r ∈ B, x^{r+1} ∉ B
    long r = 0;
};
RingFilterResult ring_filter(const NumberField& K, unsigned p, const FieldElement& a, const FieldElement& d,
                             const FieldElement& x);

// A: primes above q where the characterization applies. Audit: v(d) <= -3 v(q) and K(a^{1/q}) nonsplit at each.
bool c_set_membership(const NumberField& K, const FieldElement& a, const FieldElement& d, unsigned q,
                      const FieldElement& x, const std::vector<PrimeIdeal>& A);

// Audit: v(b) < 0 and ≢ 0 mod q at each tracked prime, no other poles of b.
bool int_set_membership(const NumberField& K, const FieldElement& b, const std::vector<PrimeIdeal>& tracked,
                        unsigned q, const FieldElement& x);

// Local data of an instance at one node of a factor tree. Valuations are scaled by e(node)/e(anchor);
// c's residue is tracked through its multiplicative order.
struct ProbeTemplate {
    int anchor_level = 0;
    long v_rhs = 0;
    Integer c_order = 1;
    unsigned q = 2;
};
// Template from an element pair at a prime of K, anchored at level anchor_level.
ProbeTemplate probe_template(const NumberField& K, const PrimeIdeal& P, const FieldElement& rhs,
                             const FieldElement& c, unsigned q, int anchor_level);

struct ProbeResult {
    std::optional<int> level;                // nullopt: still obstructed at max depth
    std::vector<std::size_t> obstructed;     // per level, number of obstructed nodes
    std::vector<std::string> notes;
};
ProbeResult unbounded_denominator_probe(const FactorTree& tree, const ProbeTemplate& t, int max_depth);

}  // namespace normforge

#endif
