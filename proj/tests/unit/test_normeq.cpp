#include "doctest.h"

#include "normforge/error.hpp"
#include "normforge/normeq/normeq.hpp"

#include <functional>
#include <random>

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

using V = LocalVerdict::Kind;

FieldElement R(const NumberField& K, long n, long d = 1) { return K.from_rational(Rational(n) / Rational(d)); }

}  // namespace

TEST_CASE("norm equation over Q(zeta3): integral and non-integral x")
{
    auto K = field_by_name("Q(zeta3)");
    auto good = analyze(make_instance(K, 3, R(K, 2), R(K, 1, 7), R(K, 82)));
    CHECK(good.verdict == V::Solvable);
    CHECK(good.compliant_c);
    CHECK(good.integral_x);
    for (auto& e : good.ledger) CHECK(e.verdict.kind == V::Solvable);

    auto bad = analyze(make_instance(K, 3, R(K, 1, 7), R(K, 1, 7), R(K, 82)));
    CHECK(bad.verdict == V::Unsolvable);
    int sevens = 0;
    for (auto& e : bad.ledger) {
        if (e.P.p == 7) {
            ++sevens;
            CHECK(e.verdict.kind == V::Unsolvable);
            // none of the four escape conditions holds
            CHECK(e.conditions == std::array<bool, 4>{false, false, false, false});
        } else {
            CHECK(e.verdict.kind != V::Unsolvable);
        }
    }
    CHECK(sevens == 2);
}

TEST_CASE("instances with vanishing right-hand side are rejected")
{
    auto K = field_by_name("Q(zeta3)");
    auto Q = NumberField::rationals();
    CHECK(code_of([&] { make_instance(Q, 2, R(Q, 1), R(Q, -1), R(Q, 3)); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { make_instance(K, 3, R(K, 0), R(K, 1), R(K, 82)); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { make_instance(K, 3, R(K, 2), R(K, 1), R(K, 0)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("integrality battery")
{
    auto K = field_by_name("Q(zeta3)");
    auto five = integrality_battery(K, R(K, 5), 3, {}, 4, 1);
    CHECK(five.passed);
    CHECK(five.not_catchable.empty());

    auto seventh = integrality_battery(K, R(K, 1, 7), 3, {}, 4, 1);
    REQUIRE_FALSE(seventh.passed);
    CHECK(*seventh.b == R(K, 1, 7));
    CHECK(*seventh.c == R(K, 82));
    CHECK(seventh.prime->p == 7);

    auto third = integrality_battery(K, R(K, 1, 3), 3, {}, 4, 1);
    CHECK(third.passed);
    REQUIRE(third.not_catchable.size() == 1);
    CHECK(third.not_catchable[0].p == 3);

    // mixed: integral at 3, pole at a prime above 13 only
    FieldElement th = K.theta();
    FieldElement x = (th + Rational(4)).inverse();  // norm 13
    auto r = integrality_battery(K, x, 3, {}, 4, 7);
    REQUIRE_FALSE(r.passed);
    CHECK(r.prime->p == 13);
    CHECK(code_of([&] { integrality_battery(K, K.zero(), 3, {}, 4, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("battery over Q with q = 2")
{
    auto Q = NumberField::rationals();
    // 2 is not a square mod 5 and c = 1 + 8k stays positive
    auto r = integrality_battery(Q, R(Q, 1, 5), 2, {}, 4, 3);
    REQUIRE_FALSE(r.passed);
    CHECK(r.prime->p == 5);
    CHECK(omega_membership(Q, *r.c, 2));
    CHECK(integrality_battery(Q, R(Q, 15), 2, {}, 4, 3).passed);
    auto half = integrality_battery(Q, R(Q, 1, 2), 2, {}, 4, 3);
    CHECK(half.passed);
    CHECK(half.not_catchable.size() == 1);
}

TEST_CASE("soundness sentinel over seeded integral instances")
{
    auto K = field_by_name("Q(zeta3)");
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> small(-9, 9), kd(1, 6);
    int solvable = 0, indeterminate = 0;
    for (int seed = 0; seed < 100; ++seed) {
        FieldElement th = K.theta();
        FieldElement x = th * Rational(small(rng)) + Rational(small(rng));
        if (x.is_zero()) x = R(K, 1);
        long bd = std::uniform_int_distribution<long>(1, 40)(rng);
        FieldElement b = (th * Rational(small(rng)) + Rational(small(rng)) + Rational(1)) * (Rational(1) / Rational(bd));
        if (b.is_zero()) b = R(K, 1, bd);
        FieldElement c = R(K, 1 + 27 * kd(rng));
        if ((b * x.pow(3) + b.pow(3)).is_zero()) continue;
        auto inst = make_instance(K, 3, x, b, c);
        NormAnalysis a{};
        CHECK_NOTHROW(a = analyze(inst, 200));
        CHECK(a.integral_x);
        CHECK(a.compliant_c);
        CHECK(a.verdict != V::Unsolvable);
        (a.verdict == V::Solvable ? solvable : indeterminate)++;
    }
    CHECK(solvable > 50);
}

TEST_CASE("B-set membership by valuations and by the norm equation")
{
    auto K = field_by_name("Q(zeta3)");
    FieldElement d = R(K, 1, 7), a = R(K, 82);
    CHECK(b_set_membership(K, 3, a, d, R(K, 5)));
    CHECK_FALSE(b_set_membership(K, 3, a, d, d));
    int compared = 0;
    for (long n : {1, 2, 3, 5, 7, 49, 10, 11})
        for (long m : {1, 7, 49, 343, 2, 5}) {
            FieldElement x = R(K, n, m);
            bool B = b_set_membership(K, 3, a, d, x);
            auto an = analyze(make_xda_instance(K, 3, x, d, a));
            if (an.verdict == V::Indeterminate) continue;
            ++compared;
            CHECK(B == (an.verdict == V::Solvable));
        }
    CHECK(compared >= 40);

    auto Q = NumberField::rationals();
    FieldElement d5 = R(Q, 1, 125), a2 = R(Q, 2);
    CHECK(b_set_membership(Q, 2, a2, d5, R(Q, 1, 5)));       // -1 > -3/2
    CHECK_FALSE(b_set_membership(Q, 2, a2, d5, R(Q, 1, 25)));  // -2 > -3/2 fails
    for (long m : {1, 5, 25, 125, 625}) {
        FieldElement x = R(Q, 3, m);
        auto an = analyze(make_xda_instance(Q, 2, x, d5, a2));
        if (an.verdict == V::Indeterminate) continue;
        CHECK(b_set_membership(Q, 2, a2, d5, x) == (an.verdict == V::Solvable));
    }

    CHECK(code_of([&] { b_set_membership(K, 3, a, R(K, 1, 343), R(K, 1)); }) == ErrorCode::HypothesisFail);
    CHECK(code_of([&] { b_set_membership(K, 3, R(K, 8), d, R(K, 1)); }) == ErrorCode::HypothesisFail);
    CHECK(code_of([&] { b_set_membership(K, 3, a, R(K, 7), R(K, 1)); }) == ErrorCode::HypothesisFail);
}

TEST_CASE("ring filter")
{
    auto Q = NumberField::rationals();
    FieldElement d = R(Q, 1, 125), a = R(Q, 2);
    CHECK(ring_filter(Q, 2, a, d, R(Q, 7, 3)).member);
    auto r = ring_filter(Q, 2, a, d, R(Q, 1, 5));
    CHECK(r.in_B);
    CHECK_FALSE(r.member);
    REQUIRE(r.witness);
    CHECK(r.r == 1);
    CHECK(*r.witness == R(Q, 1, 5));
    CHECK_FALSE(b_set_membership(Q, 2, a, d, *r.witness * R(Q, 1, 5)));
    auto out = ring_filter(Q, 2, a, d, R(Q, 1, 25));
    CHECK_FALSE(out.in_B);
    CHECK_FALSE(out.member);
    CHECK_FALSE(out.witness);

    // deeper pole of d leaves room for r > 1
    FieldElement d7 = R(Q, 1, 78125);   // 5^-7
    auto deep = ring_filter(Q, 2, a, d7, R(Q, 1, 5));
    CHECK(deep.r == 3);                  // v = -3 > -3.5, v = -4 fails
    CHECK(*deep.witness == R(Q, 1, 125));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-30, 30), ex(0, 3);
    int closed = 0;
    for (int i = 0; i < 200; ++i) {
        auto rnd = [&] {
            long n = num(rng);
            if (n == 0) n = 1;
            Rational v(n);
            long k = ex(rng);
            for (long j = 0; j < k; ++j) v *= (i % 2 ? Rational(1, 5) : Rational(3));
            return Q.from_rational(v);
        };
        FieldElement x = rnd(), y = rnd();
        if (!ring_filter(Q, 2, a, d7, x).member || !ring_filter(Q, 2, a, d7, y).member) continue;
        ++closed;
        CHECK(ring_filter(Q, 2, a, d7, x * y).member);
        CHECK(ring_filter(Q, 2, a, d7, x + y).member);
        CHECK(ring_filter(Q, 2, a, d7, x - y).member);
    }
    CHECK(closed > 50);
}

TEST_CASE("C-set membership at the prime above 3")
{
    auto K = field_by_name("Q(zeta3)");
    auto A = splitting_type(K, Integer(3));
    REQUIRE(A.size() == 1);
    FieldElement th = K.theta();
    FieldElement a = th * Rational(3) - Rational(2);   // 1 + 3(ξ - 1): inert by the trace rule
    FieldElement d = R(K, 1, 27);                      // ord -6 = -3 ord 3
    CHECK(c_set_membership(K, a, d, 3, R(K, 5), A));
    CHECK(c_set_membership(K, a, d, 3, R(K, 1, 3), A));       // -2 > -4
    CHECK_FALSE(c_set_membership(K, a, d, 3, R(K, 1, 9), A)); // -4 > -4 fails
    // other factors are unconstrained
    CHECK(c_set_membership(K, a, d, 3, R(K, 1, 7 * 7 * 7), A));
    CHECK(code_of([&] { c_set_membership(K, a, R(K, 1, 9), 3, R(K, 1), A); }) == ErrorCode::HypothesisFail);
    CHECK(code_of([&] { c_set_membership(K, R(K, 82), d, 3, R(K, 1), A); }) == ErrorCode::HypothesisFail);
}

TEST_CASE("Int-set membership")
{
    auto K = field_by_name("Q(zeta3)");
    auto T = splitting_type(K, Integer(7));
    FieldElement b = R(K, 1, 7);
    CHECK(int_set_membership(K, b, T, 3, R(K, 10)));
    CHECK_FALSE(int_set_membership(K, b, T, 3, b));          // -1 >= -2/3 fails
    FieldElement b2 = R(K, 1, 49);
    CHECK(int_set_membership(K, b2, T, 3, R(K, 1, 7)));      // -1 >= -4/3
    CHECK_FALSE(int_set_membership(K, b2, T, 3, R(K, 1, 49)));
    CHECK(code_of([&] { int_set_membership(K, R(K, 1, 343), T, 3, R(K, 1)); }) == ErrorCode::HypothesisFail);
    CHECK(code_of([&] { int_set_membership(K, R(K, 1, 14), T, 3, R(K, 1)); }) == ErrorCode::HypothesisFail);
    CHECK(code_of([&] { int_set_membership(K, R(K, 7), T, 3, R(K, 1)); }) == ErrorCode::HypothesisFail);
}

TEST_CASE("unbounded denominator probe")
{
    auto tree = grow_tree(five_power_cyclotomic(3), Integer(2), 3);
    // c of order 5 in F_16 is not a fifth power there; it is one in F_{2^20}
    ProbeTemplate t{1, 1, Integer(5), 5};
    auto r = unbounded_denominator_probe(tree, t, 3);
    REQUIRE(r.level);
    CHECK(*r.level == 2);
    CHECK(r.obstructed.front() > 0);

    ProbeTemplate clean{0, 5, Integer(1), 5};
    auto r0 = unbounded_denominator_probe(tree, clean, 3);
    REQUIRE(r0.level);
    CHECK(*r0.level == 0);

    // at 3 with q = 2 the 2-part of 3^f - 1 stays 16
    auto t3 = grow_tree(five_power_cyclotomic(3), Integer(3), 3);
    CHECK(classify_prime(t3, 2).kind == BoundednessCertificate::Kind::CompletelyQBounded);
    ProbeTemplate nonsq{1, 1, Integer(16), 2};
    auto rb = unbounded_denominator_probe(t3, nonsq, 3);
    CHECK_FALSE(rb.level);
    CHECK(rb.obstructed.size() == 3);

    // template from field data
    auto K = field_by_name("Q(zeta5)");
    auto P2 = splitting_type(K, Integer(2));
    REQUIRE(P2.size() == 1);
    FieldElement th = K.theta();
    auto pt = probe_template(K, P2[0], K.from_rational(Rational(1, 2)), th, 5, 1);
    CHECK(pt.c_order == 5);
    CHECK(pt.v_rhs == -1);
    CHECK(*unbounded_denominator_probe(tree, pt, 3).level == 2);
}
