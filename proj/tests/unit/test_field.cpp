#include "doctest.h"

#include "normforge/error.hpp"
#include "normforge/field/number_field.hpp"

#include <random>

using namespace normforge;

namespace {

UniPoly P(std::vector<long> c) { return UniPoly::from_ints(c); }

FieldElement el(const NumberField& K, std::vector<long> c)
{
    std::vector<Rational> r;
    for (long v : c) r.emplace_back(v);
    return K.from_coords(r);
}

const PrimeIdeal& prime_with_root(const std::vector<PrimeIdeal>& ps, u64 root)
{
    for (auto& P : ps)
        if (P.g.size() == 2 && (P.p.get_ui() - P.g[0]) % P.p.get_ui() == root) return P;
    FAIL("no such prime");
    return ps[0];
}

}  // namespace

TEST_CASE("splitting types")
{
    NumberField K = field_by_name("Q(zeta3)");
    auto s7 = splitting_type(K, 7);
    REQUIRE(s7.size() == 2);
    for (auto& P : s7) { CHECK(P.e == 1); CHECK(P.f == 1); }
    NumberField G(P({-1, -1, 1}));
    auto s2 = splitting_type(G, 2);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].e == 1);
    CHECK(s2[0].f == 2);
    auto s3 = splitting_type(K, 3);
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].e == 2);
    CHECK(s3[0].f == 1);
    NumberField bad(P({-5, 0, 1}));
    CHECK_THROWS_AS(splitting_type(bad, 2), Error);
    try { splitting_type(bad, 2); } catch (const Error& e) { CHECK(e.code() == ErrorCode::NonMonogenicAtP); }
}

TEST_CASE("valuations and residues")
{
    NumberField K = field_by_name("Q(zeta3)");
    auto s7 = splitting_type(K, 7);
    const PrimeIdeal& P2 = prime_with_root(s7, 2);
    const PrimeIdeal& P4 = prime_with_root(s7, 4);
    CHECK(valuation(K, P2, K.from_rational(7)) == Ord(1));
    FieldElement t2 = K.theta() - Rational(2);
    CHECK(valuation(K, P2, t2) == Ord(1));
    CHECK(valuation(K, P4, t2) == Ord(0));
    CHECK(valuation(K, P2, K.one()) == Ord(0));
    CHECK(valuation(K, P2, K.zero()).is_infinite());
    CHECK(valuation(K, P2, K.from_rational(Rational(1, 49))) == Ord(-2));

    CHECK(residue_nonqth_power(K, P2, K.from_rational(82), 3));
    CHECK_FALSE(residue_nonqth_power(K, P2, K.from_rational(6), 3));
    CHECK_THROWS_AS(residue_nonqth_power(K, P2, K.from_rational(14), 3), Error);

    auto s3 = splitting_type(K, 3);
    FieldElement lam = K.theta() - Rational(1);
    CHECK(valuation(K, s3[0], lam) == Ord(1));
    CHECK(valuation(K, s3[0], K.from_rational(3)) == Ord(2));
    CHECK(valuation(K, s3[0], lam.pow(-3) * Rational(5)) == Ord(-3));
}

TEST_CASE("valuation properties")
{
    std::mt19937_64 rng(17);
    std::vector<NumberField> fields{field_by_name("Q(i)"), field_by_name("Q(zeta3)"), field_by_name("Q(sqrt5)"),
                                    field_by_name("Q(zeta5)"), field_by_name("Q(zeta7)"), field_by_name("Q(zeta15)"),
                                    NumberField(P({-1, -2, 1, 1}))};
    auto rnd = [&](const NumberField& K) {
        std::vector<Rational> c;
        for (std::size_t i = 0; i < K.degree(); ++i)
            c.emplace_back(static_cast<long>(rng() % 61) - 30, 1 + static_cast<long>(rng() % 4));
        for (auto& v : c) v.canonicalize();
        return K.from_coords(c);
    };
    for (auto& K : fields) {
        for (int it = 0; it < 6; ++it) {
            FieldElement a = rnd(K), b = rnd(K);
            if (a.is_zero() || b.is_zero() || (a + b).is_zero()) continue;
            for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
                if (!dedekind_maximal_at(K, p)) continue;
                auto ps = splitting_type(K, p);
                long sumf = 0;
                for (auto& Pr : ps) {
                    Ord va = valuation(K, Pr, a), vb = valuation(K, Pr, b);
                    CHECK(valuation(K, Pr, a * b).value() == va.value() + vb.value());
                    CHECK(valuation(K, Pr, a + b) >= std::min(va, vb));
                    sumf += static_cast<long>(Pr.f) * va.value();
                    sumf += 0;
                }
                CHECK(vp(a.norm(), Integer(p)).value() == sumf);
            }
        }
    }
}

TEST_CASE("omega and theta/phi")
{
    NumberField K = field_by_name("Q(sqrt2)");
    CHECK_FALSE(omega_membership(K, el(K, {1, 1}), 2));
    CHECK(omega_membership(K, el(K, {3, 1}), 2));
    NumberField Z3 = field_by_name("Q(zeta3)");
    CHECK(omega_membership(Z3, el(Z3, {-5, 1}), 2));
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        FieldElement a = el(K, {static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10});
        CHECK(omega_membership(K, a * a, 2));
    }
    NumberField Q = NumberField::rationals();
    auto r = theta_phi_membership(Q, Q.from_rational(82), {}, 3);
    CHECK(r.in_theta);
    CHECK(r.in_phi);
    r = theta_phi_membership(Q, Q.from_rational(1), {}, 3);
    CHECK((r.in_theta && r.in_phi));
    r = theta_phi_membership(Q, Q.from_rational(2), {}, 3);
    CHECK(r.in_theta);
    CHECK_FALSE(r.in_phi);
}

TEST_CASE("strong approximation")
{
    NumberField Q = NumberField::rationals();
    auto P7 = splitting_type(Q, 7)[0];
    auto P2 = splitting_type(Q, 2)[0];
    CHECK(strong_approx_element(Q, {ApproxConstraint::exact(P7, -1)}) == Q.from_rational(Rational(1, 7)));
    CHECK(strong_approx_element(Q, {ApproxConstraint::exact(P2, 3), ApproxConstraint::exact(P7, 1)}) ==
          Q.from_rational(56));
    CHECK_THROWS_AS(strong_approx_element(Q, {ApproxConstraint::exact(P7, 1), ApproxConstraint::exact(P7, 2)}), Error);

    NumberField K = field_by_name("Q(zeta3)");
    auto s7 = splitting_type(K, 7);
    auto s3 = splitting_type(K, 3);
    std::vector<ApproxConstraint> cs{ApproxConstraint::exact(s7[0], -2), ApproxConstraint::exact(s7[1], 1),
                                     ApproxConstraint::non_power(splitting_type(K, 13)[0], 3),
                                     ApproxConstraint::at_least(s3[0], 4)};
    FieldElement x = strong_approx_element(K, cs);
    for (auto& c : cs) CHECK(satisfies(K, c, x));
    NumberField R = field_by_name("Q(sqrt2)");
    auto r7 = splitting_type(R, 7);
    FieldElement y = strong_approx_element(R, {ApproxConstraint::exact(r7[0], 1)}, true);
    CHECK(omega_membership(R, y, 2));
    CHECK(valuation(R, r7[0], y) == Ord(1));
}

TEST_CASE("conjugates and roots in fields")
{
    NumberField Q = NumberField::rationals();
    auto c = conjugate_interval(Q.from_rational(2), Rational(1, 1000));
    CHECK(c.min.lo == 2);
    CHECK(c.max.hi == 2);
    NumberField R = field_by_name("Q(sqrt2)");
    auto s = conjugate_interval(R.theta(), Rational(1, 1000));
    CHECK(s.min.hi < 0);
    CHECK(s.max.lo > 1);
    CHECK(s.max.hi - s.max.lo <= Rational(1, 1000));
    CHECK_THROWS_AS(conjugate_interval(field_by_name("Q(i)").theta(), Rational(1, 10)), Error);

    NumberField Z3 = field_by_name("Q(zeta3)");
    CHECK(root_of_unity(Z3, 3).has_value());
    CHECK_FALSE(root_of_unity(field_by_name("Q(i)"), 3).has_value());
    CHECK(root_of_unity(field_by_name("Q(zeta12)"), 3).has_value());
    CHECK(roots_in_field(field_by_name("Q(zeta7)"), cyclotomic_poly(7)).size() == 6);
    NumberField Z7 = field_by_name("Q(zeta7)");
    FieldElement t = Z7.theta();
    FieldElement a = t + t.pow(6) + Rational(2);
    auto range = conjugate_interval(a, Rational(1, 100));
    CHECK(range.min.lo > 0);
    CHECK(range.max.hi < 4);
}
