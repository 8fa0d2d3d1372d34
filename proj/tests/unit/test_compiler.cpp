#include "doctest.h"

#include "normforge/compiler/compiler.hpp"
#include "normforge/error.hpp"

#include <cmath>
#include <functional>
#include <random>

using namespace normforge;

namespace {

using Cx = MPoly::Complex;

ErrorCode code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

Cx random_cx(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    return {d(rng), d(rng)};
}

long double rel_err(Cx a, Cx b) { return std::abs(a - b) / std::max<long double>(1, std::abs(b)); }

// the q-th roots of g
std::vector<Cx> roots_of(Cx g, unsigned q)
{
    std::vector<Cx> r;
    Cx base = std::pow(g, 1.0L / q);
    for (unsigned k = 0; k < q; ++k) r.push_back(base * std::polar(1.0L, 2 * M_PIl * k / q));
    return r;
}

}  // namespace

TEST_CASE("coordinate norm polynomial")
{
    // U1 U2 [U3] C Z
    MPoly U1 = MPoly::var(0), U2 = MPoly::var(1), C2 = MPoly::var(2), Z2 = MPoly::var(3);
    CHECK(coordinate_norm_poly(2) == U1 * U1 - C2 * U2 * U2 - Z2);
    MPoly U3 = MPoly::var(2), C3 = MPoly::var(3), Z3 = MPoly::var(4);
    CHECK(coordinate_norm_poly(3) ==
          U1.pow(3) + C3 * U2.pow(3) + C3 * C3 * U3.pow(3) - C3 * U1 * U2 * U3 * Integer(3) - Z3);
    for (unsigned q : {2u, 3u, 5u, 7u}) {
        MPoly N = coordinate_norm_poly(q);
        std::map<std::uint32_t, Rational> at;
        for (unsigned i = 0; i < q; ++i) at[i] = i == 0 ? 1 : 0;
        at[q] = Rational(17, 3);
        at[q + 1] = 1;
        CHECK(N.eval(at) == 0);
        CHECK(N.degree_in(0) == q);
    }
    CHECK(code_of([] { coordinate_norm_poly(4); }) == ErrorCode::NotPrime);
}

TEST_CASE("norm polynomial equals the product of conjugates")
{
    std::mt19937_64 rng(5);
    for (unsigned q : {2u, 3u, 5u}) {
        MPoly N = coordinate_norm_poly(q);
        for (int t = 0; t < 50; ++t) {
            std::vector<Cx> v(q + 2);
            for (auto& z : v) z = random_cx(rng);
            Cx root = std::pow(v[q], 1.0L / q), prod = 1;
            for (unsigned j = 0; j < q; ++j) {
                Cx xi = std::polar(1.0L, 2 * M_PIl * j / q), s = 0;
                for (unsigned i = 0; i < q; ++i) s += v[i] * std::pow(xi * root, static_cast<int>(i));
                prod *= s;
            }
            CHECK(rel_err(N.eval(v), prod - v[q + 1]) < 1e-9);
        }
    }
}

TEST_CASE("single layer descent")
{
    PolynomialSystem s;
    for (auto n : {"U1", "U2"}) s.add_var(n, Variable::Role::Existential, "top");
    auto C = s.add_var("C", Variable::Role::Universal, "");
    auto Z = s.add_var("Z", Variable::Role::Universal, "");
    auto X = s.add_var("X", Variable::Role::Free, "");
    s.add_equation(coordinate_norm_poly(2), "norm");
    MPoly Cv = MPoly::var(C), Xv = MPoly::var(X), one = MPoly::constant(1);
    Layer L = radical_layer("G", 2, Cv * Xv + Cv * Cv + one, Cv * Xv, {"U1", "U2"});
    auto d = descend_layer(s, L);
    CHECK(d.equations.size() == 2);
    CHECK(d.count(Variable::Role::Existential) == 4);
    CHECK(d.trace.size() == 2);
    CHECK(d.trace[0].find("multiplier") != std::string::npos);
    d.validate();

    // Γ^2 = g with g = 1: one equation is the direct substitution
    Layer unit = radical_layer("H", 2, one, one, {"U1", "U2"});
    auto u = descend_layer(s, unit);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> di(-9, 9);
    for (int t = 0; t < 20; ++t) {
        std::map<std::string, Rational> a;
        for (auto& v : u.vars) a[v.name] = Rational(di(rng));
        // Γ = 1 and Γ = -1
        std::map<std::uint32_t, Rational> p1, pm;
        p1[0] = a["U1_0"] + a["U1_1"];
        p1[1] = a["U2_0"] + a["U2_1"];
        pm[0] = a["U1_0"] - a["U1_1"];
        pm[1] = a["U2_0"] - a["U2_1"];
        for (auto* p : {&p1, &pm}) {
            (*p)[2] = a["C"];
            (*p)[3] = a["Z"];
            (*p)[4] = a["X"];
        }
        auto r = evaluate_system(u, a);
        CHECK(r[0] + r[1] == s.equations[0].eval(p1));
        CHECK(r[0] - r[1] == s.equations[0].eval(pm));
    }

    CHECK(code_of([&] { descend_layer(s, radical_layer("Z0", 2, one, MPoly(), {"U1"})); }) ==
          ErrorCode::DegenerateLayer);
    CHECK(code_of([&] { descend_layer(s, radical_layer("Z1", 2, MPoly(), one, {"U1"})); }) ==
          ErrorCode::DegenerateLayer);
    (void)Z;
}

TEST_CASE("descent identity and witnesses at numeric points")
{
    std::mt19937_64 rng(17);
    for (unsigned q : {2u, 3u}) {
        NormSystemOptions o;
        o.q = q;
        o.descend_radicals = false;
        o.descend_roots_of_unity = false;
        PolynomialSystem top = norm_equation_system(o);
        std::vector<std::string> ex;
        for (auto& v : top.vars)
            if (v.role == Variable::Role::Existential) ex.push_back(v.name);
        MPoly C = top.v("C"), X = top.v("X"), one = MPoly::constant(1);
        MPoly num = C * X + C * C + one, den = C * X;
        PolynomialSystem child = descend_layer(top, radical_layer("G3", q, num, den, ex));
        REQUIRE(child.equations.size() == q);
        for (int t = 0; t < 20; ++t) {
            std::map<std::string, Cx> val;
            for (auto& v : child.vars) val[v.name] = random_cx(rng);
            std::vector<Cx> cv;
            for (auto& v : child.vars) cv.push_back(val[v.name]);
            std::vector<Cx> low(top.vars.size());
            for (std::size_t i = 0; i < top.vars.size(); ++i)
                if (top.vars[i].role != Variable::Role::Existential) low[i] = val[top.vars[i].name];
            Cx gv = num.eval(low) / den.eval(low);
            std::vector<Cx> Ns;
            for (auto& e : child.equations) Ns.push_back(e.eval(cv));
            // ratio (Σ N_i Γ^i) / parent(U(Γ)) is the same nonzero multiplier at every root
            std::vector<Cx> ratios;
            for (Cx G : roots_of(gv, q)) {
                std::vector<Cx> pv = low;
                for (unsigned i = 0; i < q; ++i) {
                    Cx u = 0;
                    for (unsigned j = 0; j < q; ++j)
                        u += val["U" + std::to_string(i + 1) + "_" + std::to_string(j)] * std::pow(G, static_cast<int>(j));
                    pv[i] = u;
                }
                Cx lhs = 0;
                for (unsigned i = 0; i < q; ++i) lhs += Ns[i] * std::pow(G, static_cast<int>(i));
                ratios.push_back(lhs / top.equations[0].eval(pv));
            }
            for (auto& r : ratios) CHECK(rel_err(r, ratios[0]) < 1e-8);
            CHECK(std::abs(ratios[0]) > 1e-12);
        }
    }

    // both directions for q = 2: solve the child system through its values at the two roots
    NormSystemOptions o;
    o.q = 2;
    o.descend_radicals = false;
        o.descend_roots_of_unity = false;
    PolynomialSystem top = norm_equation_system(o);
    MPoly C = top.v("C"), X = top.v("X"), one = MPoly::constant(1);
    MPoly num = C * X + C * C + one, den = C * X;
    PolynomialSystem child = descend_layer(top, radical_layer("G3", 2, num, den, {"U1", "U2"}));
    for (int t = 0; t < 20; ++t) {
        std::map<std::string, Cx> val;
        for (auto n : {"C", "B", "X", "U2_0", "U2_1"}) val[n] = random_cx(rng);
        std::vector<Cx> low(top.vars.size());
        for (std::size_t i = 0; i < top.vars.size(); ++i)
            if (top.vars[i].role != Variable::Role::Existential) low[i] = val[top.vars[i].name];
        Cx gv = num.eval(low) / den.eval(low);
        auto Gs = roots_of(gv, 2);
        Cx rhs = top.named.at("rhs")[0].eval(low);
        // U1(Γ_k)^2 = C U2(Γ_k)^2 + rhs
        std::vector<Cx> s;
        for (Cx G : Gs) s.push_back(std::sqrt(val["C"] * std::pow(val["U2_0"] + val["U2_1"] * G, 2) + rhs));
        val["U1_1"] = (s[0] - s[1]) / (Gs[0] - Gs[1]);
        val["U1_0"] = s[0] - val["U1_1"] * Gs[0];
        std::vector<Cx> cv;
        for (auto& v : child.vars) cv.push_back(val[v.name]);
        for (auto& e : child.equations) CHECK(std::abs(e.eval(cv)) < 1e-8);
        // parent from child: the parent vanishes at either root
        for (Cx G : Gs) {
            std::vector<Cx> pv = low;
            pv[0] = val["U1_0"] + val["U1_1"] * G;
            pv[1] = val["U2_0"] + val["U2_1"] * G;
            CHECK(std::abs(top.equations[0].eval(pv)) < 1e-8);
        }
        // parent solution in the lower field embeds with zero Γ-components
        std::map<std::string, Cx> emb = val;
        emb["U2_1"] = 0;
        emb["U1_1"] = 0;
        emb["U1_0"] = std::sqrt(val["C"] * val["U2_0"] * val["U2_0"] + rhs);
        std::vector<Cx> ev;
        for (auto& v : child.vars) ev.push_back(emb[v.name]);
        for (auto& e : child.equations) CHECK(std::abs(e.eval(ev)) < 1e-8);
    }
}

TEST_CASE("full descent for q = 2 and the c = w^2 witness")
{
    NormSystemOptions o;
    o.q = 2;
    PolynomialSystem s = norm_equation_system(o);
    CHECK(s.count(Variable::Role::Existential) == 16);
    CHECK(s.equations.size() == 8);
    CHECK(s.trace.size() == 8);
    CHECK(s.history.size() == 4);
    s.validate();

    // x = 5, b = 1, c = 9 = 3^2 ≡ 1 mod 8: z = 26
    Rational z = 26;
    auto a = kummer_power_witness(2, Rational(3), z);
    CHECK(a[0] == Rational(27, 2));
    CHECK(a[1] == Rational(25, 6));
    CHECK(a[0] * a[0] - Rational(9) * a[1] * a[1] == z);
    std::map<std::string, Rational> asg;
    for (auto& v : s.vars) asg[v.name] = 0;
    asg["X"] = 5;
    asg["B"] = 1;
    asg["C"] = 9;
    asg["U1_0_0_0"] = a[0];
    asg["U2_0_0_0"] = a[1];
    CHECK(verify_witness(s, asg));
    asg["U2_0_0_0"] = a[1] + 1;
    CHECK_FALSE(verify_witness(s, asg));
    asg.erase("U1_1_0_0");
    CHECK(code_of([&] { verify_witness(s, asg); }) == ErrorCode::IncompleteAssignment);

    PolynomialSystem t;
    auto x = t.add_var("x", Variable::Role::Existential, "");
    t.add_equation(MPoly::var(x, 2) - MPoly::constant(2), "x^2 - 2");
    CHECK_FALSE(verify_witness(t, {{"x", Rational(0)}}));

    // q = 3 witness through the first layer: c = w^3 with w = 2
    auto a3 = kummer_power_witness(3, Rational(2), Rational(10));
    MPoly N3 = coordinate_norm_poly(3);
    std::map<std::uint32_t, Rational> at{{0, a3[0]}, {1, a3[1]}, {2, a3[2]}, {3, Rational(8)}, {4, Rational(10)}};
    CHECK(N3.eval(at) == 0);
}

TEST_CASE("compiled definitions")
{
    CompileOptions b;
    b.variant = "eqB";
    b.q = 2;
    auto B = compile_definition(b);
    CHECK(B.universal_blocks() == 2);
    CHECK(B.prefix.size() == 3);
    CHECK_FALSE(B.prefix[2].universal);
    CHECK(B.existential_count == 16);
    CHECK(B.materialized);
    CHECK(B.free_var == "x");

    CompileOptions a = b;
    a.variant = "eqA";
    auto A = compile_definition(a);
    CHECK(A.str() == B.str());
    CHECK(A.prefix_string() == B.prefix_string());
    a.S = {"P5"};
    auto AS = compile_definition(a);
    CHECK(AS.str() != B.str());
    CHECK(AS.str().find("Theta_q") != std::string::npos);

    CompileOptions c;
    c.variant = "eqC";
    c.q = 2;
    CHECK(code_of([&] { compile_definition(c); }) == ErrorCode::InvalidArgument);
    c.real_embeddings = false;
    auto C2 = compile_definition(c);
    CHECK(C2.str().find("Omega") == std::string::npos);

    c.q = 3;
    c.real_embeddings = true;
    c.term_budget = 60000;
    auto C3 = compile_definition(c);
    CHECK(C3.prefix_string() == "forall c[2] forall b[2] exists u[162]");
    CHECK(C3.universal_blocks() == 2);
    CHECK(C3.existential_count == 162);   // 3 * 3^3 radical coordinates, doubled by the ξ_3 layer
    CHECK(C3.equation_count == 54);
    CHECK_FALSE(C3.materialized);

    c.descend_roots_of_unity = false;
    c.term_budget = 0;
    auto C3r = compile_definition(c);
    CHECK(C3r.materialized);
    CHECK(C3r.existential_count == 81);
    CHECK(C3r.equation_count == 27);

    for (auto v : {"diffversion1", "diffversion2", "diffversion3"}) {
        CompileOptions d;
        d.variant = v;
        d.q = 2;
        auto D = compile_definition(d);
        CHECK(D.universal_blocks() == 2);
        CHECK(D.str().find("R_") != std::string::npos);
        bool symbolic = false;
        for (auto& n : D.notes) symbolic = symbolic || n.find("symbolic") != std::string::npos;
        CHECK(symbolic);
    }
    CompileOptions bad;
    bad.variant = "eqD";
    CHECK(code_of([&] { compile_definition(bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("realizing w")
{
    auto Q = NumberField::rationals();
    auto S = splitting_type(Q, Integer(5));
    auto w = realize_w(Q, 2, S);
    REQUIRE(w);
    CHECK(valuation(Q, splitting_type(Q, Integer(2))[0], *w) == Ord(3));
    CHECK(valuation(Q, S[0], *w) == Ord(1));
    for (auto& P : prime_support(Q, *w))
        if (P.p != 2 && P.p != 5) CHECK(valuation(Q, P, *w) < Ord(0));

    auto K = field_by_name("Q(zeta3)");
    auto S7 = splitting_type(K, Integer(7));
    auto w3 = realize_w(K, 3, {S7[0]});
    REQUIRE(w3);
    CHECK(valuation(K, S7[0], *w3) == Ord(1));
    CHECK(valuation(K, splitting_type(K, Integer(3))[0], *w3) == Ord(6));
    CHECK(valuation(K, S7[1], *w3) <= Ord(0));
}
