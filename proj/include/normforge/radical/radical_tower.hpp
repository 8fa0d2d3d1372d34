#ifndef NORMFORGE_RADICAL_RADICAL_TOWER_HPP
#define NORMFORGE_RADICAL_RADICAL_TOWER_HPP

#include "normforge/local/local_prime.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace normforge {

// Three-layer radical tower over K.
//   XBC: radicands 1 + 1/x, 1 + 1/(b x^q + b^q), 1 + (c + 1/c)/x
//   XDA: radicands 1 + 1/d, 1 + 1/(d x^q + d^q), 1 + (a + 1/a)/d
struct RadicalTowerSpec {
    enum class Variant { XBC, XDA };
    NumberField K;
    unsigned q;
    Variant variant;
    FieldElement x, y, z;   // y = b or d, z = c or a
    FieldElement rhs;       // y x^q + y^q
    std::array<FieldElement, 3> radicands;

    std::string y_name() const { return variant == Variant::XBC ? "b" : "d"; }
    std::string z_name() const { return variant == Variant::XBC ? "c" : "a"; }
    std::map<std::string, FieldElement> elements() const;
};

RadicalTowerSpec make_xbc_spec(const NumberField& K, unsigned q, const FieldElement& x, const FieldElement& b,
                               const FieldElement& c);
RadicalTowerSpec make_xda_spec(const NumberField& K, unsigned q, const FieldElement& x, const FieldElement& d,
                               const FieldElement& a);

struct PrimeTower {
    PrimeIdeal P;
    std::vector<std::string> layer_ids;          // radicand ids in the order applied
    std::vector<std::vector<LayerKind>> kinds;   // kinds[i]: one entry per node processed at layer i
    std::vector<LocalPrime> leaves;
};

// Support of x, y, z, rhs and the radicands together with the primes above q.
// A nonzero prime_bound drops rational primes above it.
std::vector<PrimeIdeal> primes_of_interest(const RadicalTowerSpec& spec, const Integer& prime_bound = 0);

// order is a permutation of {0,1,2}; the default applies r1, r2, r3.
PrimeTower build_prime_tower(const RadicalTowerSpec& spec, const PrimeIdeal& P,
                             std::array<int, 3> order = {0, 1, 2});
std::vector<PrimeTower> build_tower(const RadicalTowerSpec& spec, const std::vector<PrimeIdeal>& primes,
                                    std::array<int, 3> order = {0, 1, 2});

enum class PropositionKind { BadPrime, FixOrder, BadPrimeQ, FixOrderQ };
const char* to_string(PropositionKind k);
PropositionKind parse_proposition_kind(const std::string& s);

struct Check {
    enum class Status { Pass, Fail, Unknown };
    int index;
    std::string statement;
    Status status;
    std::string witness;
};
const char* to_string(Check::Status s);

struct PropositionReport {
    enum class Status { Verified, HypothesisFail, Indeterminate };
    PropositionKind kind;
    std::string prime;
    Status status = Status::Verified;
    std::vector<Check> hypotheses;
    std::vector<Check> conclusions;          // empty unless every hypothesis passed
    std::vector<int> failed_hypotheses;
    std::map<std::string, std::vector<std::string>> traces;   // per prime of the top field
};
const char* to_string(PropositionReport::Status s);

// Throws ConclusionViolation if a conclusion is contradicted by the local data.
// strict adds badprime hypothesis 6, ord b + q ord x < 0; without it conclusion 3 can fail when ord b > 0.
PropositionReport verify_proposition(PropositionKind kind, const RadicalTowerSpec& spec, const PrimeIdeal& target,
                                     bool strict = true);
// fixorder kinds over every prime of interest meeting the selection condition
std::vector<PropositionReport> verify_all_primes(PropositionKind kind, const RadicalTowerSpec& spec, bool strict = true,
                                                const Integer& prime_bound = 0);
// Throws HypothesisFail listing the failed hypotheses.
void require_hypotheses(const PropositionReport& r);

struct SampledInstance {
    RadicalTowerSpec spec;
    PrimeIdeal P;
};
// Random instance meeting the hypotheses of kind at a prime P with p <= max_p (rejection sampling).
SampledInstance sample_instance(PropositionKind kind, const NumberField& K, unsigned q, std::uint64_t seed,
                                unsigned max_p = 50);

}  // namespace normforge

#endif
