#include "normforge/cli/commands.hpp"

#include "normforge/cyclic/cyclic.hpp"
#include "normforge/error.hpp"
#include "normforge/normeq/normeq.hpp"

#include <fstream>
#include <sstream>

namespace normforge::cli {

namespace {

Json report(const std::string& command)
{
    Json r;
    r["schema_version"] = kSchemaVersion;
    r["command"] = command;
    r["status"] = "ok";
    return r;
}

[[noreturn]] void bad_input(const std::string& what) { fail(ErrorCode::ParseError, what); }

const Json& need(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) bad_input(std::string("missing key '") + key + "'");
    return j.at(key);
}

long as_long(const Json& j)
{
    if (j.is_number_integer()) return j.get<long>();
    if (j.is_string()) {
        try {
            std::size_t pos = 0;
            long v = std::stol(j.get<std::string>(), &pos);
            if (pos == j.get<std::string>().size()) return v;
        } catch (const std::exception&) {
        }
    }
    bad_input("expected an integer, got " + j.dump());
}

Integer as_integer(const Json& j)
{
    Rational r = parse_rational_json(j);
    if (r.get_den() != 1) bad_input("expected an integer, got " + j.dump());
    return r.get_num();
}

Json str_list(const std::vector<std::string>& v) { return Json(v); }

Json verdict_json(const LocalVerdict& v) { return {{"kind", to_string(v.kind)}, {"reason", v.reason}}; }

const FormulaNode* find_system(const FormulaNode& n)
{
    if (n.kind == FormulaNode::Kind::System && n.system) return &n;
    for (auto& c : n.children)
        if (auto* s = find_system(c)) return s;
    return nullptr;
}

Json node_json(const FormulaNode& n, const std::vector<std::string>& names)
{
    Json j{{"kind", to_string(n.kind)}};
    if (!n.label.empty()) j["label"] = n.label;
    if (!n.polys.empty()) {
        Json ps = Json::array();
        for (auto& p : n.polys) ps.push_back(p.str(names));
        j["polys"] = ps;
    }
    if (n.system) {
        j["system"] = {{"variables", n.system->vars.size()},
                       {"existential", n.system->count(Variable::Role::Existential)},
                       {"equations", n.system->equations.size()},
                       {"terms", n.system->term_count()}};
    }
    if (!n.description.empty()) j["description"] = n.description;
    if (n.encoding) j["encoding"] = to_json(*n.encoding);
    if (!n.children.empty()) {
        Json cs = Json::array();
        for (auto& c : n.children) cs.push_back(node_json(c, names));
        j["children"] = cs;
    }
    return j;
}

}  // namespace

void RunConfig::validate() const
{
    if (max_depth <= 0 || max_nodes == 0 || term_budget == 0)
        fail(ErrorCode::InvalidArgument, "depth, node and term caps must be positive");
}

Rational parse_rational_json(const Json& j)
{
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error&) {
            bad_input("not a rational: " + j.dump());
        }
    }
    bad_input("expected a rational as an integer or decimal string, got " + j.dump());
}

UniPoly parse_poly(const Json& j)
{
    if (!j.is_array() || j.empty()) bad_input("polynomial must be a nonempty coefficient array");
    std::vector<Rational> c;
    for (auto& x : j) c.push_back(parse_rational_json(x));
    return UniPoly(c);
}

NumberField parse_field(const Json& j)
{
    if (j.is_string()) return field_by_name(j.get<std::string>());
    if (j.is_array()) return NumberField(parse_poly(j));
    if (j.is_object()) {
        if (j.contains("name") && !j.contains("poly")) return field_by_name(j.at("name").get<std::string>());
        return NumberField(parse_poly(need(j, "poly")), j.value("name", std::string()));
    }
    bad_input("bad field descriptor " + j.dump());
}

FieldElement parse_element(const NumberField& K, const Json& j)
{
    if (j.is_array()) {
        std::vector<Rational> c;
        for (auto& x : j) c.push_back(parse_rational_json(x));
        if (c.size() > K.degree()) bad_input("element has more coordinates than the field degree");
        c.resize(K.degree());
        return K.from_coords(c);
    }
    return K.from_rational(parse_rational_json(j));
}

PrimeIdeal parse_prime(const NumberField& K, const Json& j)
{
    Json p = j.is_object() ? need(j, "p") : j;
    auto primes = splitting_type(K, as_integer(p));
    if (j.is_object() && j.contains("g")) {
        fp::Poly g;
        for (auto& x : j.at("g")) g.push_back(static_cast<u64>(as_long(x)));
        for (auto& P : primes)
            if (P.g == g) return P;
        bad_input("no prime with factor " + j.at("g").dump());
    }
    long idx = j.is_object() && j.contains("index") ? as_long(j.at("index")) : 0;
    if (idx < 0 || static_cast<std::size_t>(idx) >= primes.size())
        bad_input("prime index " + std::to_string(idx) + " out of range");
    return primes[static_cast<std::size_t>(idx)];
}

TowerRecipe parse_recipe(const Json& j)
{
    if (j.is_string()) return example_tower(j.get<std::string>(), {});
    if (j.contains("catalog")) {
        std::map<std::string, long> params;
        if (j.contains("params"))
            for (auto& [k, v] : j.at("params").items()) params[k] = as_long(v);
        return example_tower(j.at("catalog").get<std::string>(), params);
    }
    TowerRecipe r;
    r.name = j.value("name", std::string("custom"));
    if (j.contains("anchor")) r.anchor = parse_field(j.at("anchor"));
    for (auto& s : need(j, "steps")) {
        std::string kind = need(s, "kind").get<std::string>();
        if (kind == "root_of_unity") r.steps.push_back(RecipeStep::root_of_unity(static_cast<u64>(as_long(need(s, "n")))));
        else if (kind == "polynomial") r.steps.push_back(RecipeStep::polynomial(parse_poly(need(s, "poly"))));
        else if (kind == "radical") {
            // radicand coordinates live in the anchor, which a leading step may still replace
            NumberField A = r.anchor;
            if (!r.steps.empty() && r.steps[0].kind == RecipeStep::Kind::RootOfUnity)
                A = NumberField(cyclotomic_poly(r.steps[0].n), "Q(zeta" + std::to_string(r.steps[0].n) + ")");
            else if (!r.steps.empty() && r.steps[0].kind == RecipeStep::Kind::Polynomial)
                A = NumberField(r.steps[0].poly);
            r.anchor = A;
            RadicandExpr e;
            if (s.contains("alpha_step")) {
                e.alpha_step = static_cast<std::size_t>(as_long(s.at("alpha_step")));
                for (auto& c : need(s, "coeffs")) e.coeffs.push_back(parse_element(A, c));
            } else {
                e.coeffs.push_back(parse_element(A, need(s, "radicand")));
            }
            r.steps.push_back(RecipeStep::radical(static_cast<unsigned>(as_long(need(s, "degree"))), e));
        } else {
            bad_input("unknown recipe step kind '" + kind + "'");
        }
    }
    resolve_recipe(r);
    return r;
}

EllipticCurve parse_curve(const Json& j) { return EllipticCurve(parse_rational_json(need(j, "a")), parse_rational_json(need(j, "c"))); }

CurvePoint parse_point(const Json& j)
{
    if (j.is_string() && j.get<std::string>() == "infinity") return CurvePoint::at_infinity();
    return CurvePoint::affine(parse_rational_json(need(j, "x")), parse_rational_json(need(j, "y")));
}

Json parse_arg(const std::string& text)
{
    std::size_t i = text.find_first_not_of(" \t\n");
    if (i != std::string::npos && (text[i] == '[' || text[i] == '{')) {
        try {
            return Json::parse(text);
        } catch (const Json::exception& e) {
            bad_input(std::string("malformed JSON: ") + e.what());
        }
    }
    return Json(text);
}

Json to_json(const Rational& r) { return to_string(r); }
Json to_json(const Integer& n) { return to_string(n); }

Json to_json(const UniPoly& f)
{
    Json a = Json::array();
    for (auto& c : f.coeffs()) a.push_back(to_string(c));
    return a;
}

Json to_json(const NumberField& K)
{
    return {{"poly", to_json(K.poly())},
            {"name", K.name()},
            {"degree", K.degree()},
            {"discriminant", to_json(K.discriminant())}};
}

Json to_json(const FieldElement& a)
{
    Json c = Json::array();
    for (auto& x : a.coords()) c.push_back(to_string(x));
    return c;
}

Json to_json(const PrimeIdeal& P)
{
    Json g = Json::array();
    for (auto x : P.g) g.push_back(std::to_string(x));
    return {{"p", to_json(P.p)}, {"g", g}, {"e", P.e}, {"f", P.f}, {"index", P.index}};
}

Json to_json(const FactorTree& t)
{
    Json nodes = Json::array();
    for (auto& n : t.nodes) {
        Json j{{"id", n.id}, {"level", n.level}, {"e", n.e}, {"f", n.f}, {"rule", n.rule}, {"truncated", n.truncated}};
        j["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
        j["children"] = t.children(n.id);
        nodes.push_back(j);
    }
    Json degs = Json::array();
    for (auto& d : t.level_degrees) degs.push_back(to_json(d));
    return {{"p", to_json(t.p)},
            {"recipe", t.recipe},
            {"depth", t.depth},
            {"complete_depth", t.complete_depth()},
            {"nodes", nodes},
            {"levels", t.levels},
            {"level_degrees", degs},
            {"representative_only", t.representative_only},
            {"flags", str_list(t.flags)}};
}

Json to_json(const BoundednessCertificate& c)
{
    return {{"kind", to_string(c.kind)},
            {"q", c.q},
            {"depth", c.depth},
            {"witness_path", c.witness_path},
            {"bounding_level", c.bounding_level},
            {"bounding_order", c.bounding_order},
            {"min_order_sequence", c.min_order_sequence},
            {"notes", str_list(c.notes)}};
}

Json to_json(const PropositionReport& r)
{
    auto checks = [](const std::vector<Check>& v) {
        Json a = Json::array();
        for (auto& c : v)
            a.push_back({{"index", c.index}, {"statement", c.statement}, {"status", to_string(c.status)}, {"witness", c.witness}});
        return a;
    };
    Json traces = Json::object();
    for (auto& [k, v] : r.traces) traces[k] = v;
    return {{"kind", to_string(r.kind)},
            {"prime", r.prime},
            {"status", to_string(r.status)},
            {"hypotheses", checks(r.hypotheses)},
            {"conclusions", checks(r.conclusions)},
            {"failed_hypotheses", r.failed_hypotheses},
            {"local_trace", traces}};
}

Json to_json(const PolynomialSystem& s)
{
    Json vars = Json::array();
    for (auto& v : s.vars) vars.push_back({{"name", v.name}, {"role", to_string(v.role)}, {"provenance", v.provenance}});
    std::size_t n = s.vars.size();
    auto terms = [n](const MPoly& p) {
        Json t = Json::array();
        for (auto& [m, c] : p.terms()) {
            std::vector<std::uint32_t> ev(n, 0);
            for (auto& [v, e] : m) ev.at(v) = e;
            t.push_back({c.get_str(), ev});
        }
        return t;
    };
    Json eqs = Json::array();
    for (std::size_t i = 0; i < s.equations.size(); ++i)
        eqs.push_back({{"trace", i < s.trace.size() ? s.trace[i] : ""}, {"terms", terms(s.equations[i])}});
    Json nz = Json::array();
    for (auto& atom : s.nonzero) {
        Json a = Json::array();
        for (auto& p : atom) a.push_back(terms(p));
        nz.push_back(a);
    }
    return {{"variables", vars}, {"equations", eqs}, {"nonzero", nz}, {"history", str_list(s.history)}};
}

Json to_json(const FormulaAST& f)
{
    Json prefix = Json::array();
    for (auto& q : f.prefix)
        prefix.push_back({{"quantifier", q.universal ? "forall" : "exists"}, {"name", q.name}, {"sort", q.sort}, {"coordinates", q.coordinates}});
    return {{"variant", f.variant},
            {"q", f.q},
            {"free_var", f.free_var},
            {"prefix", prefix},
            {"prefix_string", f.prefix_string()},
            {"universal_blocks", f.universal_blocks()},
            {"matrix", node_json(f.matrix, f.registry)},
            {"text", f.str()},
            {"materialized", f.materialized},
            {"existential_count", f.existential_count},
            {"equation_count", f.equation_count},
            {"notes", str_list(f.notes)}};
}

Json to_json(const CurvePoint& P)
{
    if (P.infinity) return "infinity";
    return {{"x", to_json(P.x)}, {"y", to_json(P.y)}};
}

Json field_factor(const NumberField& K, const Integer& p)
{
    Json r = report("field factor");
    r["field"] = to_json(K);
    r["p"] = to_json(p);
    r["dedekind_maximal"] = dedekind_maximal_at(K, p);
    Json ps = Json::array();
    long sum = 0;
    for (auto& P : splitting_type(K, p)) {
        ps.push_back(to_json(P));
        sum += static_cast<long>(P.e * P.f);
    }
    r["primes"] = ps;
    r["sum_ef"] = sum;
    return r;
}

Json field_info(const NumberField& K)
{
    Json r = report("field info");
    r["field"] = to_json(K);
    r["real_embeddings"] = K.real_embedding_count();
    return r;
}

Json tower_grow(const TowerRecipe& rec, const Integer& p, int depth, const RunConfig& cfg)
{
    if (depth > cfg.max_depth) fail(ErrorCode::InvalidArgument, "depth exceeds --max-depth");
    Json r = report("tower grow");
    r["tree"] = to_json(grow_tree(rec, p, depth, cfg.max_nodes));
    r["notes"] = str_list(rec.notes);
    return r;
}

Json tower_classify(const TowerRecipe& rec, const Integer& p, int depth, unsigned q, const RunConfig& cfg)
{
    if (depth > cfg.max_depth) fail(ErrorCode::InvalidArgument, "depth exceeds --max-depth");
    Json r = report("tower classify");
    FactorTree t = grow_tree(rec, p, depth, cfg.max_nodes);
    r["tree"] = to_json(t);
    r["certificate"] = to_json(classify_prime(t, q));
    return r;
}

Json verify_prop(PropositionKind kind, const RadicalTowerSpec& spec, const std::optional<PrimeIdeal>& target, bool strict)
{
    Json r = report("verify prop");
    r["field"] = to_json(spec.K);
    r["q"] = spec.q;
    Json el = Json::object();
    for (auto& [k, v] : spec.elements()) el[k] = to_json(v);
    r["elements"] = el;
    Json reps = Json::array();
    if (target) reps.push_back(to_json(verify_proposition(kind, spec, *target, strict)));
    else
        for (auto& x : verify_all_primes(kind, spec, strict)) reps.push_back(to_json(x));
    r["reports"] = reps;
    return r;
}

Json normeq_analyze(const Json& in)
{
    NumberField K = parse_field(need(in, "field"));
    unsigned q = static_cast<unsigned>(as_long(need(in, "q")));
    std::string variant = in.value("variant", std::string("xbc"));
    FieldElement x = parse_element(K, need(in, "x"));
    std::vector<PrimeIdeal> S;
    if (in.contains("S"))
        for (auto& s : in.at("S")) S.push_back(parse_prime(K, s));
    NormEquationInstance inst = [&] {
        if (variant == "xbc")
            return make_instance(K, q, x, parse_element(K, need(in, "b")), parse_element(K, need(in, "c")), S);
        if (variant == "xda") {
            auto i = make_xda_instance(K, q, x, parse_element(K, need(in, "d")), parse_element(K, need(in, "a")));
            i.S = S;
            return i;
        }
        bad_input("variant must be xbc or xda");
    }();
    Integer bound = in.contains("prime_bound") ? as_integer(in.at("prime_bound")) : Integer(0);
    NormAnalysis a = analyze(inst, bound);

    Json r = report("normeq analyze");
    r["field"] = to_json(K);
    r["q"] = q;
    r["variant"] = variant;
    r["rhs"] = to_json(inst.rhs());
    r["verdict"] = to_string(a.verdict);
    r["archimedean"] = verdict_json(a.archimedean);
    r["compliant_c"] = a.compliant_c;
    r["integral_x"] = a.integral_x;
    Json led = Json::array();
    for (auto& e : a.ledger) {
        led.push_back({{"prime", to_json(e.P)},
                       {"verdict", verdict_json(e.verdict)},
                       {"conditions", e.conditions},
                       {"in_W", e.in_W},
                       {"leaves", e.leaves},
                       {"local_trace", e.leaf_reasons}});
    }
    r["ledger"] = led;
    return r;
}

Json normeq_battery(const NumberField& K, const FieldElement& x, unsigned q, const std::vector<PrimeIdeal>& S,
                    std::size_t size, std::uint64_t seed)
{
    BatteryResult b = integrality_battery(K, x, q, S, size, seed);
    Json r = report("normeq battery");
    r["field"] = to_json(K);
    r["q"] = q;
    r["x"] = to_json(x);
    r["seed"] = std::to_string(seed);
    r["passed"] = b.passed;
    r["b"] = b.b ? to_json(*b.b) : Json(nullptr);
    r["c"] = b.c ? to_json(*b.c) : Json(nullptr);
    r["prime"] = b.prime ? to_json(*b.prime) : Json(nullptr);
    Json nc = Json::array();
    for (auto& P : b.not_catchable) nc.push_back(to_json(P));
    r["not_catchable"] = nc;
    r["candidates_tried"] = b.candidates_tried;
    r["notes"] = str_list(b.notes);
    return r;
}

Json compile_report(const CompileOptions& o, bool include_system)
{
    FormulaAST f = compile_definition(o);
    Json r = report("compile");
    r["formula"] = to_json(f);
    if (include_system && f.materialized)
        if (auto* n = find_system(f.matrix)) r["system"] = to_json(*n->system);
    return r;
}

Json cyclic_construct(unsigned q, unsigned m)
{
    u64 ell = find_auxiliary_ell(q, m);
    u64 d = 1;
    for (unsigned i = 0; i < m; ++i) d *= q;
    CyclicFieldData H = gaussian_period_subfield(ell, d);
    NumberField F = H.field();
    Json r = report("cyclic construct");
    r["q"] = q;
    r["m"] = m;
    r["ell"] = ell;
    r["degree"] = d;
    r["generator"] = H.generator;
    r["subgroup"] = H.subgroup;
    r["poly"] = to_json(H.poly);
    r["poly_text"] = H.poly.str();
    r["totally_real"] = H.totally_real;
    r["irreducibility_prime"] = H.irreducibility_prime ? Json(*H.irreducibility_prime) : Json(nullptr);
    u64 f = frobenius_residue_degree(ell, d, Integer(static_cast<unsigned long>(q)));
    Json ps = Json::array();
    for (auto& P : splitting_type(F, Integer(static_cast<unsigned long>(q)))) ps.push_back(to_json(P));
    r["q_splitting"] = ps;
    r["frobenius_residue_degree"] = f;
    r["q_inert"] = ps.size() == 1 && f == d && ps[0]["f"].get<u64>() == d;
    return r;
}

Json ec_mul(const EllipticCurve& E, const CurvePoint& P, long n)
{
    Json r = report("ec mul");
    r["curve"] = {{"a", to_json(E.a)}, {"c", to_json(E.c)}};
    r["point"] = to_json(P);
    r["n"] = n;
    r["result"] = to_json(multiply_point(E, P, n));
    return r;
}

Json ec_lemmas(const EllipticCurve& E, const CurvePoint& P, const Json& bounds)
{
    auto get = [&](const char* k, long d) { return bounds.contains(k) ? as_long(bounds.at(k)) : d; };
    Integer A = bounds.contains("A") ? as_integer(bounds.at("A")) : Integer(4);
    long m = get("m", 1), k_max = get("k_max", 20), m_max = get("m_max", 6), kl = get("kl_max", 5), brute = get("brute", 6);
    if (m <= 0 || k_max <= 0 || m_max <= 0 || kl <= 0 || brute <= 0) fail(ErrorCode::InvalidArgument, "bounds must be positive");
    Multiples M(E, P);
    Json r = report("ec lemmas");
    r["curve"] = {{"a", to_json(E.a)}, {"c", to_json(E.c)}};
    r["point"] = to_json(P);

    auto ds = denominator_divisibility_search(M, A, m, k_max);
    Json dj{{"A", to_json(A)}, {"m", m}, {"k", ds.k ? Json(*ds.k) : Json(nullptr)}};
    Json seen = Json::array();
    for (auto& d : ds.denominators) seen.push_back(to_json(d));
    dj["denominators"] = seen;
    r["anydivisor"] = dj;

    auto es = find_equiv_m(M, m_max, kl, kl);
    Json ej{{"m", es.m ? Json(*es.m) : Json(nullptr)}, {"skipped", es.skipped}};
    Json fails = Json::array();
    for (auto& [mm, kl2] : es.failures) fails.push_back({{"m", mm}, {"k", kl2.first}, {"l", kl2.second}});
    ej["failures"] = fails;
    if (es.m) {
        bool all = true;
        for (long k = 1; k <= brute; ++k)
            for (long l = 1; l <= brute; ++l) all = all && equiv_divisibility_check(M, *es.m, l, k).holds;
        ej["brute_force_range"] = brute;
        ej["brute_force_holds"] = all;
    }
    r["equiv"] = ej;
    return r;
}

}  // namespace normforge::cli
