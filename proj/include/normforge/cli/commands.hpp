#ifndef NORMFORGE_CLI_COMMANDS_HPP
#define NORMFORGE_CLI_COMMANDS_HPP

#include "normforge/compiler/compiler.hpp"
#include "normforge/elliptic/elliptic.hpp"
#include "normforge/field/number_field.hpp"
#include "normforge/radical/radical_tower.hpp"
#include "normforge/tree/factor_tree.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace normforge::cli {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::uint64_t seed = 1;
    long max_depth = 8;
    std::size_t max_nodes = 10000;
    std::size_t term_budget = 2000000;
    std::string out;
    void validate() const;   // InvalidArgument unless every cap is positive
};

// Inputs. Numbers may be JSON numbers or decimal strings ("-3/4").
Rational parse_rational_json(const Json& j);
UniPoly parse_poly(const Json& j);                       // ascending coefficients
NumberField parse_field(const Json& j);                  // name, coefficient array or {"poly": [...], "name": ...}
FieldElement parse_element(const NumberField& K, const Json& j);   // rational or coordinate array
PrimeIdeal parse_prime(const NumberField& K, const Json& j);        // {"p": 7, "index": 0} or {"p": 7, "g": [...]}
TowerRecipe parse_recipe(const Json& j);                 // {"catalog": name, "params": {...}} or explicit steps
EllipticCurve parse_curve(const Json& j);                // {"a": ..., "c": ...}
CurvePoint parse_point(const Json& j);                   // {"x": ..., "y": ...} or "infinity"
// text that starts with '[' or '{' is JSON, anything else a bare scalar
Json parse_arg(const std::string& text);

// Outputs
Json to_json(const Rational& r);
Json to_json(const Integer& n);
Json to_json(const UniPoly& f);
Json to_json(const NumberField& K);
Json to_json(const FieldElement& a);
Json to_json(const PrimeIdeal& P);
Json to_json(const FactorTree& t);
Json to_json(const BoundednessCertificate& c);
Json to_json(const PropositionReport& r);
Json to_json(const PolynomialSystem& s);
Json to_json(const FormulaAST& f);
Json to_json(const CurvePoint& P);

// Reports, each with "schema_version" and "command".
Json field_factor(const NumberField& K, const Integer& p);
Json field_info(const NumberField& K);
Json tower_grow(const TowerRecipe& r, const Integer& p, int depth, const RunConfig& cfg);
Json tower_classify(const TowerRecipe& r, const Integer& p, int depth, unsigned q, const RunConfig& cfg);
Json verify_prop(PropositionKind kind, const RadicalTowerSpec& spec, const std::optional<PrimeIdeal>& target,
                 bool strict);
Json normeq_analyze(const Json& instance);
Json normeq_battery(const NumberField& K, const FieldElement& x, unsigned q, const std::vector<PrimeIdeal>& S,
                    std::size_t size, std::uint64_t seed);
Json compile_report(const CompileOptions& o, bool include_system);
Json cyclic_construct(unsigned q, unsigned m);
Json ec_mul(const EllipticCurve& E, const CurvePoint& P, long n);
Json ec_lemmas(const EllipticCurve& E, const CurvePoint& P, const Json& bounds);

// Exit codes: 0 success, 1 domain error, 2 usage error. Output is a JSON report on out (or the --out file).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normforge::cli

#endif
