#include "normforge/cli/commands.hpp"

#include "normforge/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace normforge::cli {

namespace {

// existing file path, JSON text, or bare string
Json load_arg(const std::string& s)
{
    std::error_code ec;
    if (!s.empty() && s[0] != '[' && s[0] != '{' && std::filesystem::is_regular_file(s, ec)) {
        std::ifstream in(s);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            return Json::parse(ss.str());
        } catch (const Json::exception& e) {
            fail(ErrorCode::ParseError, s + ": " + e.what());
        }
    }
    return parse_arg(s);
}

Json error_report(const std::string& command, const std::string& code, const std::string& message,
                  const std::vector<std::string>& detail = {})
{
    return {{"schema_version", kSchemaVersion},
            {"command", command},
            {"status", "error"},
            {"error", {{"code", code}, {"message", message}, {"detail", detail}}}};
}

struct FieldArgs {
    std::string field, poly;
    void add(CLI::App* c)
    {
        c->add_option("--field", field, "named field: Q, Q(i), Q(zeta3), Q(sqrt2), Q(sqrt5), Q(zetaN)");
        c->add_option("--poly", poly, "defining polynomial as a JSON coefficient array, ascending");
    }
    NumberField get() const
    {
        if (!poly.empty()) return parse_field(parse_arg(poly));
        return field_by_name(field.empty() ? "Q" : field);
    }
};

std::map<std::string, long> parse_params(const std::vector<std::string>& kv)
{
    std::map<std::string, long> out;
    for (auto& s : kv) {
        auto eq = s.find('=');
        if (eq == std::string::npos) fail(ErrorCode::ParseError, "--param expects key=value, got '" + s + "'");
        try {
            out[s.substr(0, eq)] = std::stol(s.substr(eq + 1));
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "--param value must be an integer: '" + s + "'");
        }
    }
    return out;
}

TowerRecipe recipe_from(const std::string& arg, const std::vector<std::string>& params)
{
    Json j = load_arg(arg);
    if (j.is_string()) return example_tower(j.get<std::string>(), parse_params(params));
    if (!params.empty()) {
        if (!j.contains("catalog")) fail(ErrorCode::ParseError, "--param only applies to catalog recipes");
        for (auto& [k, v] : parse_params(params)) j["params"][k] = v;
    }
    return parse_recipe(j);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"normforge: number-field kernels for norm-equation definability checks", "normforge"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "RNG seed (NORMFORGE_SEED overrides)");
    app.add_option("--out", cfg.out, "write the report to this file");
    app.add_option("--max-depth", cfg.max_depth, "cap on tower depth");
    app.add_option("--max-nodes", cfg.max_nodes, "cap on factor-tree nodes");
    app.add_option("--budget", cfg.term_budget, "term budget for compiled systems");

    std::string command;
    std::function<Json()> run;
    auto leaf = [&](CLI::App* c, std::string name, std::function<Json()> fn) {
        c->fallthrough();
        c->callback([&, name, fn] {
            command = name;
            run = fn;
        });
    };

    // field
    auto* field = app.add_subcommand("field", "prime factorization in number fields");
    field->require_subcommand(1);
    field->fallthrough();
    FieldArgs ff;
    std::string fp_str;
    auto* factor = field->add_subcommand("factor", "splitting of p");
    ff.add(factor);
    factor->add_option("--p", fp_str, "rational prime")->required();
    leaf(factor, "field factor", [&] { return field_factor(ff.get(), parse_integer(fp_str)); });
    FieldArgs fi;
    auto* info = field->add_subcommand("info", "degree, discriminant, real places");
    fi.add(info);
    leaf(info, "field info", [&] { return field_info(fi.get()); });

    // tower
    auto* tower = app.add_subcommand("tower", "factor trees over recipe towers");
    tower->require_subcommand(1);
    tower->fallthrough();
    std::string recipe, tprime;
    std::vector<std::string> params;
    int depth = 3;
    unsigned tq = 2;
    auto tower_opts = [&](CLI::App* c) {
        c->add_option("--recipe", recipe, "catalog name, JSON text or JSON file")->required();
        c->add_option("--param", params, "catalog parameter key=value");
        c->add_option("--prime", tprime, "base prime")->required();
        c->add_option("--depth", depth, "levels to grow");
    };
    auto* grow = tower->add_subcommand("grow", "grow the factor tree of a prime");
    tower_opts(grow);
    leaf(grow, "tower grow", [&] { return tower_grow(recipe_from(recipe, params), parse_integer(tprime), depth, cfg); });
    auto* classify = tower->add_subcommand("classify", "q-boundedness certificate");
    tower_opts(classify);
    classify->add_option("--q", tq, "prime q")->required();
    leaf(classify, "tower classify",
         [&] { return tower_classify(recipe_from(recipe, params), parse_integer(tprime), depth, tq, cfg); });

    // verify
    auto* verify = app.add_subcommand("verify", "proposition checks on radical towers");
    verify->require_subcommand(1);
    verify->fallthrough();
    auto* prop = verify->add_subcommand("prop", "verify one proposition");
    FieldArgs vf;
    vf.add(prop);
    std::string kind = "badprime", variant = "xbc", vx, vy, vz, vp_str;
    unsigned vq = 2;
    long vindex = 0;
    bool lenient = false, sample = false;
    prop->add_option("--kind", kind, "badprime, fixorder, badprimeq, fixorderq");
    prop->add_option("--q", vq, "prime q");
    prop->add_option("--variant", variant, "xbc or xda");
    prop->add_option("--x", vx, "x");
    prop->add_option("--b,--d", vy, "b (xbc) or d (xda)");
    prop->add_option("--c,--a", vz, "c (xbc) or a (xda)");
    prop->add_option("--p", vp_str, "rational prime below the target; omitted: every prime of interest");
    prop->add_option("--index", vindex, "index of the target in the splitting of p");
    prop->add_flag("--lenient", lenient, "drop the extra badprime hypothesis ord b + q ord x < 0");
    prop->add_flag("--sample", sample, "use a seeded instance meeting the hypotheses");
    leaf(prop, "verify prop", [&] {
        NumberField K = vf.get();
        PropositionKind k = parse_proposition_kind(kind);
        if (sample) {
            auto s = sample_instance(k, K, vq, cfg.seed);
            return verify_prop(k, s.spec, s.P, !lenient);
        }
        if (vx.empty() || vy.empty() || vz.empty()) fail(ErrorCode::ParseError, "--x, --b/--d and --c/--a are required");
        auto e = [&](const std::string& s) { return parse_element(K, parse_arg(s)); };
        if (variant != "xbc" && variant != "xda") fail(ErrorCode::ParseError, "variant must be xbc or xda");
        RadicalTowerSpec spec = variant == "xda" ? make_xda_spec(K, vq, e(vx), e(vy), e(vz))
                                                 : make_xbc_spec(K, vq, e(vx), e(vy), e(vz));
        std::optional<PrimeIdeal> target;
        if (!vp_str.empty()) target = parse_prime(K, Json{{"p", vp_str}, {"index", vindex}});
        return verify_prop(k, spec, target, !lenient);
    });

    // normeq
    auto* normeq = app.add_subcommand("normeq", "norm-equation analysis");
    normeq->require_subcommand(1);
    normeq->fallthrough();
    std::string instance;
    auto* analyze_c = normeq->add_subcommand("analyze", "local and global verdicts for one instance");
    analyze_c->add_option("--instance", instance, "instance JSON text or file")->required();
    leaf(analyze_c, "normeq analyze", [&] { return normeq_analyze(load_arg(instance)); });
    auto* battery = normeq->add_subcommand("battery", "integrality battery for x");
    FieldArgs bf;
    bf.add(battery);
    std::string bx, bS;
    unsigned bq = 2;
    std::size_t bsize = 8;
    battery->add_option("--x", bx, "x")->required();
    battery->add_option("--q", bq, "prime q")->required();
    battery->add_option("--S", bS, "JSON array of primes {\"p\":..,\"index\":..}");
    battery->add_option("--size", bsize, "random candidates after the deterministic ones");
    leaf(battery, "normeq battery", [&] {
        NumberField K = bf.get();
        std::vector<PrimeIdeal> S;
        if (!bS.empty())
            for (auto& s : parse_arg(bS)) S.push_back(parse_prime(K, s));
        return normeq_battery(K, parse_element(K, parse_arg(bx)), bq, S, bsize, cfg.seed);
    });

    // compile
    auto* compile = app.add_subcommand("compile", "compile a definition to a formula and polynomial system");
    CompileOptions co;
    bool no_real = false, no_xi = false, with_system = false;
    compile->add_option("--variant", co.variant, "eqA eqB eqC diffversion1 diffversion2 diffversion3")->required();
    compile->add_option("--q", co.q, "prime q")->required();
    compile->add_option("--S", co.S, "names of the primes in S");
    compile->add_flag("--no-real", no_real, "base field without real places");
    compile->add_flag("--no-roots-of-unity", no_xi, "keep the primitive q-th root of unity symbolic");
    compile->add_flag("--system", with_system, "include the descended polynomial system");
    leaf(compile, "compile", [&] {
        co.real_embeddings = !no_real;
        co.descend_roots_of_unity = !no_xi;
        co.term_budget = cfg.term_budget;
        return compile_report(co, with_system || !cfg.out.empty());
    });

    // cyclic
    auto* cyclic = app.add_subcommand("cyclic", "auxiliary cyclic fields");
    cyclic->require_subcommand(1);
    cyclic->fallthrough();
    auto* construct = cyclic->add_subcommand("construct", "degree q^m subfield of Q(zeta_l)");
    unsigned cq = 2, cm = 1;
    construct->add_option("--q", cq, "prime q")->required();
    construct->add_option("--m", cm, "exponent m")->required();
    leaf(construct, "cyclic construct", [&] { return cyclic_construct(cq, cm); });

    // ec
    auto* ec = app.add_subcommand("ec", "elliptic curves over Q");
    ec->require_subcommand(1);
    ec->fallthrough();
    std::string curve, point, bounds = "{}";
    long en = 2;
    auto* mul = ec->add_subcommand("mul", "[n]P");
    mul->add_option("--curve", curve, "{\"a\":..,\"c\":..}")->required();
    mul->add_option("--point", point, "{\"x\":..,\"y\":..}")->required();
    mul->add_option("--n", en, "multiplier");
    leaf(mul, "ec mul", [&] { return ec_mul(parse_curve(load_arg(curve)), parse_point(load_arg(point)), en); });
    auto* lemmas = ec->add_subcommand("lemmas", "denominator lemmas");
    lemmas->add_option("--curve", curve, "{\"a\":..,\"c\":..}")->required();
    lemmas->add_option("--point", point, "{\"x\":..,\"y\":..}")->required();
    lemmas->add_option("--bounds", bounds, "{\"A\":..,\"m\":..,\"k_max\":..,\"m_max\":..,\"kl_max\":..,\"brute\":..}");
    leaf(lemmas, "ec lemmas", [&] { return ec_lemmas(parse_curve(load_arg(curve)), parse_point(load_arg(point)), load_arg(bounds)); });

    std::vector<const char*> argv{"normforge"};
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        out << error_report("", "UsageError", e.what()).dump(2) << "\n";
        return 2;
    }

    if (const char* s = std::getenv("NORMFORGE_SEED")) {
        try {
            cfg.seed = std::stoull(s);
        } catch (const std::exception&) {
            err << "NORMFORGE_SEED must be an unsigned integer\n";
            out << error_report(command, "UsageError", "bad NORMFORGE_SEED").dump(2) << "\n";
            return 2;
        }
    }

    Json rep;
    int code = 0;
    try {
        cfg.validate();
        rep = run();
    } catch (const Error& e) {
        code = e.code() == ErrorCode::ParseError ? 2 : 1;
        rep = error_report(command, to_string(e.code()), e.what(), e.detail());
    } catch (const Json::exception& e) {
        code = 2;
        rep = error_report(command, "ParseError", e.what());
    }
    if (code == 2) err << rep["error"]["message"].get<std::string>() << "\n";
    std::string text = rep.dump(2) + "\n";
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out);
        if (!f) {
            err << "cannot write " << cfg.out << "\n";
            return 2;
        }
        f << text;
    } else {
        out << text;
    }
    return code;
}

}  // namespace normforge::cli
