#include "normforge/cli/commands.hpp"
#include "normforge/error.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace normforge;
using cli::Json;

namespace {

// Arguments cross the boundary as JSON text; the Python side wraps them.
Json arg(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        fail(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
}

std::string out(const Json& j) { return j.dump(); }

cli::RunConfig config(std::uint64_t seed, long max_nodes)
{
    cli::RunConfig cfg;
    cfg.seed = seed;
    cfg.max_nodes = static_cast<std::size_t>(max_nodes);
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "normforge core";
    static py::exception<Error> exc(m, "CoreError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = py::reinterpret_borrow<py::object>(exc)(e.what());
            inst.attr("code") = to_string(e.code());
            inst.attr("detail") = e.detail();
            PyErr_SetObject(exc.ptr(), inst.ptr());
        }
    });
    m.attr("SCHEMA_VERSION") = cli::kSchemaVersion;

    m.def("run", [](const std::vector<std::string>& args) {
        std::ostringstream o, e;
        int rc = cli::dispatch(args, o, e);
        return py::make_tuple(rc, o.str(), e.str());
    }, py::arg("args"));

    m.def("field_factor", [](const std::string& field, const std::string& p) {
        return out(cli::field_factor(cli::parse_field(arg(field)), parse_integer(p)));
    });
    m.def("field_info", [](const std::string& field) { return out(cli::field_info(cli::parse_field(arg(field)))); });

    m.def("tower_grow", [](const std::string& recipe, const std::string& p, int depth, long max_nodes) {
        return out(cli::tower_grow(cli::parse_recipe(arg(recipe)), parse_integer(p), depth, config(1, max_nodes)));
    });
    m.def("tower_classify", [](const std::string& recipe, const std::string& p, int depth, unsigned q, long max_nodes) {
        return out(cli::tower_classify(cli::parse_recipe(arg(recipe)), parse_integer(p), depth, q, config(1, max_nodes)));
    });

    m.def("verify_prop", [](const std::string& kind, const std::string& field, unsigned q, const std::string& variant,
                            const std::string& x, const std::string& y, const std::string& z, const std::string& prime,
                            bool strict) {
        NumberField K = cli::parse_field(arg(field));
        auto e = [&](const std::string& s) { return cli::parse_element(K, arg(s)); };
        if (variant != "xbc" && variant != "xda") fail(ErrorCode::InvalidArgument, "variant must be xbc or xda");
        RadicalTowerSpec spec = variant == "xda" ? make_xda_spec(K, q, e(x), e(y), e(z)) : make_xbc_spec(K, q, e(x), e(y), e(z));
        Json pj = arg(prime);
        std::optional<PrimeIdeal> target;
        if (!pj.is_null()) target = cli::parse_prime(K, pj);
        return out(cli::verify_prop(parse_proposition_kind(kind), spec, target, strict));
    });
    m.def("verify_sample", [](const std::string& kind, const std::string& field, unsigned q, std::uint64_t seed,
                              bool strict) {
        PropositionKind k = parse_proposition_kind(kind);
        auto s = sample_instance(k, cli::parse_field(arg(field)), q, seed);
        return out(cli::verify_prop(k, s.spec, s.P, strict));
    });

    m.def("normeq_analyze", [](const std::string& instance) { return out(cli::normeq_analyze(arg(instance))); });
    m.def("normeq_battery", [](const std::string& field, const std::string& x, unsigned q, const std::string& S,
                               std::size_t size, std::uint64_t seed) {
        NumberField K = cli::parse_field(arg(field));
        std::vector<PrimeIdeal> primes;
        for (auto& p : arg(S)) primes.push_back(cli::parse_prime(K, p));
        return out(cli::normeq_battery(K, cli::parse_element(K, arg(x)), q, primes, size, seed));
    });

    m.def("compile", [](const std::string& variant, unsigned q, const std::vector<std::string>& S, bool real,
                        bool roots_of_unity, std::size_t budget, bool include_system) {
        CompileOptions o;
        o.variant = variant;
        o.q = q;
        o.S = S;
        o.real_embeddings = real;
        o.descend_roots_of_unity = roots_of_unity;
        o.term_budget = budget;
        return out(cli::compile_report(o, include_system));
    });
    m.def("coordinate_norm_poly", [](unsigned q) {
        MPoly N = coordinate_norm_poly(q);
        std::vector<std::string> names;
        for (unsigned i = 1; i <= q; ++i) names.push_back("U" + std::to_string(i));
        names.push_back("C");
        names.push_back("Z");
        return N.str(names);
    });

    m.def("cyclic_construct", [](unsigned q, unsigned mm) { return out(cli::cyclic_construct(q, mm)); });
    m.def("ec_mul", [](const std::string& curve, const std::string& point, long n) {
        return out(cli::ec_mul(cli::parse_curve(arg(curve)), cli::parse_point(arg(point)), n));
    });
    m.def("ec_lemmas", [](const std::string& curve, const std::string& point, const std::string& bounds) {
        return out(cli::ec_lemmas(cli::parse_curve(arg(curve)), cli::parse_point(arg(point)), arg(bounds)));
    });
}
