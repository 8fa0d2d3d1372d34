#include "doctest.h"

#include "normforge/error.hpp"
#include "normforge/tree/factor_tree.hpp"

#include <algorithm>
#include <functional>

using namespace normforge;

namespace {

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

using Kind = BoundednessCertificate::Kind;

std::vector<std::pair<long, long>> leaf_types(const FactorTree& t)
{
    std::vector<std::pair<long, long>> v;
    for (std::size_t id : t.levels.back()) v.push_back({t.nodes[id].e, t.nodes[id].f});
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::pair<long, long>> absolute_types(const NumberField& K, const Integer& p)
{
    std::vector<std::pair<long, long>> v;
    for (auto& P : splitting_type(K, p)) v.push_back({P.e, P.f});
    std::sort(v.begin(), v.end());
    return v;
}

long ordq(long d, unsigned q)
{
    long k = 0;
    while (d % q == 0) {
        d /= q;
        ++k;
    }
    return k;
}

std::vector<std::vector<std::size_t>> all_paths(const FactorTree& t, int D)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> go = [&](std::size_t id) {
        cur.push_back(id);
        if (t.nodes[id].level == D)
            out.push_back(cur);
        else
            for (std::size_t c : t.children(id)) go(c);
        cur.pop_back();
    };
    go(0);
    return out;
}

RecipeStep rad(const NumberField& K, unsigned t, const FieldElement& u)
{
    (void)K;
    return RecipeStep::radical(t, RadicandExpr{std::nullopt, {u}});
}

}  // namespace

TEST_CASE("five-power cyclotomic tree")
{
    auto r = example_tower("five-power", {{"depth", 3}});
    auto t2 = grow_tree(r, 2, 3);
    REQUIRE(t2.levels.size() == 4);
    std::vector<long> f;
    for (int L = 1; L <= 3; ++L) {
        REQUIRE(t2.levels[L].size() == 1);
        CHECK(t2.nodes[t2.levels[L][0]].e == 1);
        f.push_back(t2.nodes[t2.levels[L][0]].f);
    }
    CHECK(f == std::vector<long>{4, 20, 100});
    auto t5 = grow_tree(r, 5, 3);
    std::vector<long> e;
    for (int L = 1; L <= 3; ++L) e.push_back(t5.nodes[t5.levels[L][0]].e);
    CHECK(e == std::vector<long>{4, 20, 100});

    auto c = classify_prime(t2, 2);
    CHECK(c.kind == Kind::CompletelyQBounded);
    CHECK(c.bounding_order == 2);
    CHECK(c.bounding_level == 1);
    auto u = classify_prime(t2, 5);
    CHECK(u.kind == Kind::QUnboundedUpToDepth);
    CHECK(u.min_order_sequence == std::vector<long>{0, 1, 2});
    CHECK(classify_prime(t5, 5).min_order_sequence == std::vector<long>{0, 1, 2});
    // 11 ≡ 1 mod 5 splits in Q(ξ5), then each factor is inert above
    auto t11 = grow_tree(r, 11, 3);
    CHECK(t11.levels[1].size() == 4);
    CHECK(t11.nodes[t11.levels[3][0]].f == 25);
    CHECK(classify_prime(t11, 5).kind == Kind::QUnboundedUpToDepth);
    CHECK(classify_prime(t11, 2).kind == Kind::CompletelyQBounded);
    CHECK(classify_prime(t11, 2).bounding_order == 0);
}

TEST_CASE("depth zero and short recipes")
{
    auto t = grow_tree(five_power_cyclotomic(3), 2, 0);
    CHECK(t.nodes.size() == 1);
    auto c = classify_prime(t, 2);
    CHECK(c.kind == Kind::CompletelyQBounded);
    CHECK(c.bounding_order == 0);
    auto s = grow_tree(five_power_cyclotomic(1), 2, 4);
    CHECK(s.levels.size() == 2);
    CHECK_FALSE(s.flags.empty());
    CHECK(code_of([] { grow_tree(five_power_cyclotomic(1), 4, 1); }) == ErrorCode::NotPrime);
    CHECK(code_of([] { example_tower("nonsense", {}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { three_step(3, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("closed-form cyclotomic levels match Kummer-Dedekind")
{
    long compared = 0;
    for (u64 N : {3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24}) {
        TowerRecipe r;
        r.name = "single";
        r.steps.push_back(RecipeStep::root_of_unity(N));
        NumberField K(cyclotomic_poly(N));
        for (long p = 2; p <= 23; ++p) {
            if (!is_prime(Integer(p))) continue;
            auto t = grow_tree(r, p, 1);
            CHECK(leaf_types(t) == absolute_types(K, p));
            ++compared;
        }
    }
    CHECK(compared > 100);
    // chained levels: ξ3 then ξ9 then ξ36
    TowerRecipe r;
    for (u64 n : {3, 9, 36}) r.steps.push_back(RecipeStep::root_of_unity(n));
    for (long p : {2, 3, 5, 7, 11, 13, 19, 37}) {
        auto t = grow_tree(r, p, 3);
        for (int L = 1; L <= 3; ++L) {
            NumberField K(cyclotomic_poly(L == 1 ? 3 : L == 2 ? 9 : 36));
            std::vector<std::pair<long, long>> lv;
            for (auto id : t.levels[L]) lv.push_back({t.nodes[id].e, t.nodes[id].f});
            std::sort(lv.begin(), lv.end());
            CHECK(lv == absolute_types(K, p));
        }
    }
}

TEST_CASE("radical and polynomial layers match absolute fields")
{
    NumberField Q = NumberField::rationals();
    struct Case {
        TowerRecipe r;
        UniPoly absolute;
    };
    std::vector<Case> cases;
    {
        TowerRecipe r;  // Q(√2, √3)
        r.steps = {rad(Q, 2, Q.from_rational(2)), rad(Q, 2, Q.from_rational(3))};
        cases.push_back({r, UniPoly::from_ints({1, 0, -10, 0, 1})});
    }
    {
        TowerRecipe r;  // Q(√2)(√θ) = Q(2^{1/4})
        r.steps.push_back(RecipeStep::polynomial(UniPoly::from_ints({-2, 0, 1})));
        resolve_recipe(r);
        r.steps.push_back(rad(r.anchor, 2, r.anchor.theta()));
        cases.push_back({r, UniPoly::from_ints({-2, 0, 0, 0, 1})});
    }
    {
        TowerRecipe r;  // Q(√2)((1+√2)^{1/3})
        r.steps.push_back(RecipeStep::polynomial(UniPoly::from_ints({-2, 0, 1})));
        resolve_recipe(r);
        r.steps.push_back(rad(r.anchor, 3, r.anchor.theta() + Rational(1)));
        cases.push_back({r, UniPoly::from_ints({-1, 0, 0, -2, 0, 0, 1})});
    }
    {
        TowerRecipe r;  // Q(i)(2^{1/3}) via a polynomial layer
        r.steps = {rad(Q, 2, Q.from_rational(-1)), RecipeStep::polynomial(UniPoly::from_ints({-2, 0, 0, 1}))};
        cases.push_back({r, UniPoly::from_ints({5, 12, 3, -4, 3, 0, 1})});
    }
    {
        TowerRecipe r;  // Q(ζ3)(2^{1/3})
        r.steps.push_back(RecipeStep::root_of_unity(3));
        resolve_recipe(r);
        r.steps.push_back(rad(r.anchor, 3, r.anchor.from_rational(2)));
        cases.push_back({r, UniPoly::from_ints({9, 9, 0, 3, 6, 3, 1})});  // θ = ζ3 + 2^{1/3}
    }
    long compared = 0, skipped = 0;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        auto& cs = cases[ci];
        NumberField A(cs.absolute);
        int depth = static_cast<int>(cs.r.steps.size());
        for (long p = 2; p <= 60; ++p) {
            if (!is_prime(Integer(p))) continue;
            CAPTURE(ci);
            CAPTURE(p);
            if (!dedekind_maximal_at(A, p)) {
                ++skipped;
                continue;
            }
            auto t = grow_tree(cs.r, p, depth);
            if (t.complete_depth() < depth) {
                ++skipped;
                continue;
            }
            CHECK(leaf_types(t) == absolute_types(A, p));
            ++compared;
        }
    }
    CHECK(compared > 60);
    MESSAGE("compared ", compared, ", skipped ", skipped);
}

TEST_CASE("q-avoiding cyclotomic family")
{
    auto r = example_tower("cyclotomic-q-avoiding", {{"q", 3}, {"m", 1}, {"bound", 20}, {"depth", 2}});
    REQUIRE(!r.notes.empty());
    CHECK(r.notes[0] == "primes 2,5,7,11,13,17");
    for (long p : {2, 3, 5, 7, 19, 23}) {
        auto t = grow_tree(r, p, 2);
        auto c = classify_prime(t, 3);
        CAPTURE(p);
        CHECK(c.kind == Kind::CompletelyQBounded);
        CHECK(c.bounding_level <= 1);
    }
    // q-avoiding: ord_3 of residue degrees never exceeds m = 1
    auto t = grow_tree(r, 2, 2);
    for (auto& n : t.nodes) CHECK(ordq(n.e * n.f, 3) <= 1);
}

TEST_CASE("three-step construction")
{
    auto r = example_tower("three-step", {{"n", 1}, {"q", 3}});
    REQUIRE(r.steps.size() == 4);
    const NumberField& G = r.anchor;
    CHECK(G.degree() == 2);
    // the radicand of M_{1,1} meets its constraints
    auto P2 = splitting_type(G, 2)[0];
    auto L3 = splitting_type(G, 3)[0];
    FieldElement a = r.steps[1].radicand->coeffs[0];
    CHECK(valuation(G, P2, a) == Ord(1));
    CHECK(valuation(G, L3, a - Rational(1)) >= Ord(2));
    CHECK(r.steps[2].poly.deg() == 5);

    auto t2 = grow_tree(r, 2, 4);
    CHECK(t2.complete_depth() == 4);
    REQUIRE(t2.levels[3].size() == 5);
    CHECK(t2.nodes[t2.levels[2][0]].e == 2);  // ramified above p_1
    // above p_1: one factor splits completely, the others stay inert
    std::vector<std::size_t> split_counts;
    for (auto id : t2.levels[3]) split_counts.push_back(t2.children(id).size());
    CHECK(split_counts == std::vector<std::size_t>{3, 1, 1, 1, 1});
    auto c2 = classify_prime(t2, 3);
    CHECK(c2.kind == Kind::QBounded);
    CHECK(c2.bounding_order == 0);
    REQUIRE(c2.witness_path.size() == 5);
    CHECK(c2.witness_path[3] == t2.levels[3][0]);

    auto t3 = grow_tree(r, 3, 4);
    CHECK(t3.complete_depth() == 4);
    CHECK(t3.levels[4].size() == 30);
    for (auto id : t3.levels[4]) CHECK(t3.local_degree(id) == 2);
    auto c3 = classify_prime(t3, 3);
    CHECK(c3.kind == Kind::CompletelyQBounded);
    CHECK(c3.bounding_order == 0);

    // at the Eisenstein prime the polynomial layer is totally ramified over unramified nodes
    auto t7 = grow_tree(r, 7, 3);
    CHECK(t7.complete_depth() == 3);
    for (auto id : t7.levels[3]) CHECK(t7.nodes[id].e == 5);
}

TEST_CASE("tree invariants: monotonicity and pruned path search")
{
    std::vector<std::pair<TowerRecipe, long>> trees{{five_power_cyclotomic(3), 2},  {five_power_cyclotomic(3), 11},
                                                    {three_step(3, 1), 2},       {three_step(3, 1), 3},
                                                    {five_power_cyclotomic(3), 5}};
    for (auto& [r, p] : trees) {
        auto t = grow_tree(r, p, static_cast<int>(r.steps.size()));
        for (auto& n : t.nodes) {
            if (!n.parent) continue;
            auto& par = t.nodes[*n.parent];
            CHECK(n.e % par.e == 0);
            CHECK(n.f % par.f == 0);
        }
        for (unsigned q : {2u, 3u, 5u}) {
            int D = t.complete_depth();
            auto paths = all_paths(t, D);
            auto full = classify_prime(t, q);
            for (long thr = 0; thr <= 4; ++thr) {
                auto c = classify_prime(t, q, thr);
                bool exists = false;
                for (auto& path : paths) {
                    bool ok = true;
                    for (auto id : path)
                        if (ordq(t.local_degree(id), q) >= thr) ok = false;
                    if (ok && D > 0 &&
                        ordq(t.local_degree(path[D - 1]), q) == ordq(t.local_degree(path[D]), q))
                        exists = true;
                }
                CAPTURE(p);
                CAPTURE(q);
                CAPTURE(thr);
                if (full.kind == Kind::CompletelyQBounded)
                    CHECK(c.kind == Kind::CompletelyQBounded);
                else
                    CHECK((c.kind == Kind::QBounded) == exists);
            }
        }
    }
}

TEST_CASE("work-off-path: extending a completely bounded tree inside its union")
{
    auto t3 = grow_tree(five_power_cyclotomic(3), 2, 3);
    auto c = classify_prime(t3, 2);
    REQUIRE(c.kind == Kind::CompletelyQBounded);
    for (unsigned d = 4; d <= 6; ++d) {
        auto t = grow_tree(five_power_cyclotomic(d), 2, static_cast<int>(d));
        bool some_zero = false;
        for (auto id : t.levels[d]) {
            std::size_t anc = id;
            while (t.nodes[anc].level > c.bounding_level) anc = *t.nodes[anc].parent;
            if (ordq(t.local_degree(id) / t.local_degree(anc), 2) == 0) some_zero = true;
        }
        CHECK(some_zero);
    }
}
