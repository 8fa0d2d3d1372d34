#include "doctest.h"

#include "normforge/error.hpp"
#include "normforge/radical/radical_tower.hpp"
#include "tower_helper.hpp"

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

}  // namespace

TEST_CASE("build_tower examples")
{
    NumberField K = field_by_name("Q(zeta3)");
    auto spec = make_xbc_spec(K, 3, K.from_rational(Rational(1, 7)), K.from_rational(Rational(1, 7)), K.from_rational(82));
    auto towers = build_tower(spec, splitting_type(K, 7));
    REQUIRE(towers.size() == 2);
    for (auto& t : towers) {
        REQUIRE(t.kinds.size() == 3);
        CHECK(t.kinds[0] == std::vector<LayerKind>{LayerKind::Split});
        CHECK(t.kinds[1] == std::vector<LayerKind>(3, LayerKind::Split));
        CHECK(t.kinds[2] == std::vector<LayerKind>(9, LayerKind::Split));
        CHECK(t.leaves.size() == 27);
        for (auto& l : t.leaves) {
            CHECK(l.trace.size() == 3);
            CHECK(l.e() == 1);
            CHECK(l.f() == 1);
        }
    }

    NumberField Q = NumberField::rationals();
    auto s2 = make_xbc_spec(Q, 2, Q.from_rational(Rational(1, 3)), Q.from_rational(Rational(1, 3)), Q.from_rational(17));
    CHECK(s2.rhs.as_rational() == Rational(4, 27));
    auto t3 = build_prime_tower(s2, splitting_type(Q, 3)[0]);
    CHECK(t3.leaves.size() == 8);
    for (auto& l : t3.leaves) {
        CHECK(l.trace.size() == 3);
        CHECK(l.e() * l.f() == 1);
        CHECK(l.current_valuation("rhs") == -3);
    }

    // x = 1, b = -1: b x^2 + b^2 = 0
    CHECK(code_of([&] { make_xbc_spec(Q, 2, Q.one(), Q.from_rational(-1), Q.from_rational(3)); }) ==
          ErrorCode::DegenerateRadicand);
    CHECK(code_of([&] { make_xbc_spec(Q, 2, Q.from_rational(-1), Q.one(), Q.from_rational(3)); }) ==
          ErrorCode::DegenerateRadicand);
    CHECK(code_of([&] { make_xbc_spec(Q, 3, Q.from_rational(2), Q.one(), Q.from_rational(3)); }) ==
          ErrorCode::MissingRootOfUnity);
}

TEST_CASE("proposition checks on fixtures")
{
    NumberField K = field_by_name("Q(zeta3)");
    auto spec = make_xbc_spec(K, 3, K.from_rational(Rational(1, 7)), K.from_rational(Rational(1, 7)), K.from_rational(82));
    for (auto& P : splitting_type(K, 7)) {
        auto r = verify_proposition(PropositionKind::BadPrime, spec, P);
        CHECK(r.status == PropositionReport::Status::Verified);
        REQUIRE(r.conclusions.size() == 3);
        for (auto& c : r.conclusions) CHECK(c.status == Check::Status::Pass);
        CHECK(r.traces.size() == 27);
    }
    for (auto& r : verify_all_primes(PropositionKind::FixOrder, spec)) CHECK(r.status == PropositionReport::Status::Verified);

    NumberField Q = NumberField::rationals();
    auto P3 = splitting_type(Q, 3)[0];
    // ord_3 b = 2
    auto bad = make_xbc_spec(Q, 2, Q.from_rational(Rational(1, 27)), Q.from_rational(Rational(1, 9)), Q.from_rational(2));
    auto r = verify_proposition(PropositionKind::BadPrime, bad, P3);
    CHECK(r.status == PropositionReport::Status::HypothesisFail);
    CHECK(r.failed_hypotheses == std::vector<int>{4});
    CHECK(r.conclusions.empty());
    CHECK(code_of([&] { require_hypotheses(r); }) == ErrorCode::HypothesisFail);

    // hypotheses 1-5 hold but ord b > 0 puts b x^2 + b^2 in the second radicand's ramification locus
    auto P17 = splitting_type(Q, 17)[0];
    auto gap = make_xbc_spec(Q, 2, Q.from_rational(Rational(3, 17)), Q.from_rational(5 * 17 * 17 * 17), Q.from_rational(3));
    auto rg = verify_proposition(PropositionKind::BadPrime, gap, P17);
    CHECK(rg.failed_hypotheses == std::vector<int>{6});
    CHECK(code_of([&] { verify_proposition(PropositionKind::BadPrime, gap, P17, false); }) ==
          ErrorCode::ConclusionViolation);
    auto tg = build_prime_tower(gap, P17);
    CHECK(tg.kinds[1][0] == LayerKind::TameRamified);
    for (auto& l : tg.leaves) CHECK(l.current_valuation("rhs") == 2);

    auto ok = make_xbc_spec(Q, 2, Q.from_rational(Rational(1, 3)), Q.from_rational(Rational(1, 3)), Q.from_rational(2));
    CHECK(verify_proposition(PropositionKind::BadPrime, ok, P3).status == PropositionReport::Status::Verified);

    auto P2 = splitting_type(Q, 2)[0];
    auto fq = make_xda_spec(Q, 2, Q.from_rational(3), Q.from_rational(56), Q.from_rational(17));
    auto all = verify_all_primes(PropositionKind::FixOrderQ, fq);
    CHECK(all.size() == primes_of_interest(fq).size());
    for (auto& rep : all) {
        CAPTURE(rep.prime);
        CHECK(rep.status == PropositionReport::Status::Verified);
    }

    // d = 1/40: ord_2 d = -3; a = 5 is inert at 2
    auto bq = make_xda_spec(Q, 2, Q.from_rational(Rational(1, 16)), Q.from_rational(Rational(1, 40)), Q.from_rational(5));
    auto rq = verify_proposition(PropositionKind::BadPrimeQ, bq, P2);
    CHECK(rq.status == PropositionReport::Status::Verified);
    auto bq17 = make_xda_spec(Q, 2, Q.from_rational(Rational(1, 16)), Q.from_rational(Rational(1, 40)), Q.from_rational(17));
    CHECK(verify_proposition(PropositionKind::BadPrimeQ, bq17, P2).failed_hypotheses == std::vector<int>{2});
    auto bq3 = make_xda_spec(Q, 2, Q.from_rational(Rational(1, 16)), Q.from_rational(Rational(1, 40)), Q.from_rational(3));
    CHECK(verify_proposition(PropositionKind::BadPrimeQ, bq3, P2).status == PropositionReport::Status::Indeterminate);

    // q = 3 over Q(zeta3): d = 1/(27 lambda), x = 1/(9 lambda), a = 1 + 3 lambda
    FieldElement lam = K.theta() - Rational(1);
    auto Pl = splitting_type(K, 3)[0];
    auto s3 = make_xda_spec(K, 3, (lam * Rational(9)).inverse(), (lam * Rational(27)).inverse(), lam * Rational(3) + Rational(1));
    CHECK(valuation(K, Pl, s3.y) == Ord(-7));
    auto r3 = verify_proposition(PropositionKind::BadPrimeQ, s3, Pl);
    CHECK(r3.status == PropositionReport::Status::Verified);

    CHECK(code_of([&] { verify_proposition(PropositionKind::BadPrime, fq, P2); }) == ErrorCode::InvalidArgument);
    CHECK(parse_proposition_kind("fixorderq") == PropositionKind::FixOrderQ);
}

TEST_CASE("seeded instances never violate conclusions")
{
    struct Setup {
        std::string field;
        unsigned q;
    };
    std::vector<Setup> setups{{"Q", 2}, {"Q(i)", 2}, {"Q(zeta3)", 3}, {"Q(sqrt5)", 2}, {"Q(zeta3)", 2}};
    for (auto kind : {PropositionKind::BadPrime, PropositionKind::FixOrder, PropositionKind::BadPrimeQ,
                      PropositionKind::FixOrderQ}) {
        int verified = 0, total = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const Setup& s = setups[seed % setups.size()];
            NumberField K = field_by_name(s.field);
            SampledInstance inst = sample_instance(kind, K, s.q, 1000 + seed);
            CAPTURE(to_string(kind));
            CAPTURE(seed);
            PropositionReport r = verify_proposition(kind, inst.spec, inst.P);
            CHECK(r.status != PropositionReport::Status::HypothesisFail);
            ++total;
            if (r.status == PropositionReport::Status::Verified) ++verified;
        }
        CAPTURE(to_string(kind));
        CHECK(total == 50);
        if (kind != PropositionKind::FixOrderQ) CHECK(verified == 50);
        else CHECK(verified > 0);
    }
}

TEST_CASE("first two layers commute at unramified primes")
{
    long compared = 0;
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        NumberField K = field_by_name(seed % 2 ? "Q(i)" : "Q");
        SampledInstance inst = sample_instance(PropositionKind::FixOrder, K, 2, 77 + seed);
        for (auto& P : primes_of_interest(inst.spec, 2000)) {
            auto a = build_prime_tower(inst.spec, P, {0, 1, 2});
            auto b = build_prime_tower(inst.spec, P, {1, 0, 2});
            auto ok = [](const PrimeTower& t) {
                for (auto& l : t.leaves)
                    if (!l.e_exact || !l.f_exact || l.e_rel != 1) return false;
                return true;
            };
            if (!ok(a) || !ok(b)) continue;
            std::vector<std::pair<long, long>> ea, eb;
            for (auto& l : a.leaves) ea.push_back({l.e(), l.f()});
            for (auto& l : b.leaves) eb.push_back({l.e(), l.f()});
            std::sort(ea.begin(), ea.end());
            std::sort(eb.begin(), eb.end());
            CHECK(ea == eb);
            ++compared;
        }
    }
    CHECK(compared > 20);
}

TEST_CASE("first layer agrees with the absolute field")
{
    long compared = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const char* names[] = {"Q", "Q(i)", "Q(sqrt5)"};
        NumberField K = field_by_name(names[seed % 3]);
        SampledInstance inst = sample_instance(PropositionKind::FixOrder, K, 2, 500 + seed);
        const FieldElement& r1 = inst.spec.radicands[0];
        Integer D = r1.denominator();
        FieldElement scaled = r1 * Rational(D * D);
        std::optional<NumberField> A;
        // singular when r1 is a square in K
        try {
            A.emplace(testhelp::absolute_polynomial(K, {{scaled, 2}}));
        } catch (const Error&) {
            continue;
        }
        for (auto& P : primes_of_interest(inst.spec, 2000)) {
            if (!dedekind_maximal_at(*A, P.p)) continue;
            auto ctx = make_local_context(K, P, 2);
            auto layer = classify_layer(make_local_prime(ctx, inst.spec.elements()), "r1", 2);
            if (layer.kind == LayerKind::Indeterminate || layer.kind == LayerKind::UnramifiedUnknown) continue;
            // compare only the part of the absolute splitting lying over P: all primes over p
            std::vector<std::pair<long, long>> local, global;
            bool determinate = true;
            for (auto& Pk : splitting_type(K, P.p)) {
                auto l = classify_layer(make_local_prime(make_local_context(K, Pk, 2), inst.spec.elements()), "r1", 2);
                if (l.kind == LayerKind::Indeterminate || l.kind == LayerKind::UnramifiedUnknown) determinate = false;
                for (auto& c : l.children) local.push_back({c.e(), c.f()});
            }
            if (!determinate) continue;
            for (auto& G : splitting_type(*A, P.p)) global.push_back({G.e, G.f});
            std::sort(local.begin(), local.end());
            std::sort(global.begin(), global.end());
            CHECK(local == global);
            ++compared;
        }
    }
    CHECK(compared > 5);
}
