#include "doctest.h"

#include "normforge/algebra/matrix.hpp"
#include "normforge/algebra/polymod.hpp"
#include "normforge/algebra/real_roots.hpp"
#include "normforge/error.hpp"

#include <random>
#include <set>

using namespace normforge;

namespace {

UniPoly P(std::vector<long> c) { return UniPoly::from_ints(c); }

fp::Poly expand(const std::vector<fp::Factor>& fs, u64 p)
{
    fp::Poly r{1};
    for (auto& f : fs)
        for (unsigned i = 0; i < f.mult; ++i) r = fp::mul(r, f.poly, p);
    return r;
}

}  // namespace

TEST_CASE("factor mod p examples")
{
    auto f = factor_poly_mod_p(P({1, 1, 1}), 7);
    REQUIRE(f.size() == 2);
    CHECK(f[1].factor == P({5, 1}));  // x - 2
    CHECK(f[0].factor == P({3, 1}));  // x - 4
    CHECK(f[0].multiplicity == 1);

    auto g = factor_poly_mod_p(P({1, 1, 1}), 2);
    REQUIRE(g.size() == 1);
    CHECK(g[0].factor == P({1, 1, 1}));

    auto h = factor_poly_mod_p(P({-1, -2, 1, 1}), 3);
    REQUIRE(h.size() == 1);
    CHECK(h[0].factor.deg() == 3);

    CHECK_THROWS_AS(factor_poly_mod_p(P({1, 1}), 6), Error);

    auto sq = factor_poly_mod_p(P({1, 2, 1}), 5);
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].multiplicity == 2);
    // x^4 + 1 over F_2 = (x+1)^4
    auto p2 = factor_poly_mod_p(P({1, 0, 0, 0, 1}), 2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].multiplicity == 4);
}

TEST_CASE("factorization round trip on random inputs")
{
    std::mt19937_64 rng(11);
    std::vector<u64> primes;
    for (u64 p = 2; p <= 100; ++p)
        if (is_prime_u64(p)) primes.push_back(p);
    for (int it = 0; it < 200; ++it) {
        u64 p = primes[rng() % primes.size()];
        std::size_t d = 1 + rng() % 10;
        fp::Poly f(d + 1);
        for (auto& c : f) c = rng() % p;
        if (f.back() == 0) f.back() = 1;
        auto fs = fp::factor(f, p, rng());
        CHECK(expand(fs, p) == fp::monic(f, p));
        for (auto& fa : fs) CHECK(fp::is_irreducible(fa.poly, p));
    }
}

TEST_CASE("hensel lifting")
{
    auto l = hensel_lift_factorization(P({1, 1, 1}), 7, 2);
    REQUIRE(l.size() == 2);
    std::set<std::vector<Rational>> got{l[0].coeffs(), l[1].coeffs()};
    CHECK(got.count(P({49 - 18, 1}).coeffs()) == 1);
    CHECK(got.count(P({49 - 30, 1}).coeffs()) == 1);

    auto s = hensel_lift_factorization(P({-2, 0, 1}), 7, 2);
    REQUIRE(s.size() == 2);
    std::set<std::vector<Rational>> got2{s[0].coeffs(), s[1].coeffs()};
    CHECK(got2.count(P({39, 1}).coeffs()) == 1);  // x - 10
    CHECK(got2.count(P({10, 1}).coeffs()) == 1);  // x + 10

    auto lin = hensel_lift_factorization(P({3, 1}), 5, 4);
    REQUIRE(lin.size() == 1);
    CHECK(lin[0] == P({3, 1}));

    CHECK_THROWS_AS(hensel_lift_factorization(P({1, 2, 1}), 3, 2), Error);

    // consistency: lifts reduce to mod p factors, and higher precision agrees
    std::mt19937_64 rng(5);
    for (int it = 0; it < 30; ++it) {
        u64 p = std::vector<u64>{3, 5, 7, 11, 13}[rng() % 5];
        std::vector<long> c(5);
        for (auto& v : c) v = static_cast<long>(rng() % 41) - 20;
        c.back() = 1;
        UniPoly f = P(c);
        bool sqf = true;
        for (auto& fa : factor_poly_mod_p(f, p)) sqf = sqf && fa.multiplicity == 1;
        if (!sqf) continue;
        auto a = hensel_lift_factorization(f, p, 3);
        auto b = hensel_lift_factorization(f, p, 6);
        REQUIRE(a.size() == b.size());
        Integer M3 = ipow(Integer(p), 3), M6 = ipow(Integer(p), 6);
        zm::Poly prod{Integer(1)};
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto ai = a[i].int_coeffs(), bi = zm::reduce(b[i].int_coeffs(), M3);
            CHECK(ai == bi);
            CHECK(fp::from_ints(ai, p) == fp::from_ints(factor_poly_mod_p(f, p)[i].factor.int_coeffs(), p));
            prod = zm::mul(prod, b[i].int_coeffs(), M6);
        }
        CHECK(prod == zm::reduce(f.int_coeffs(), M6));
    }
}

TEST_CASE("power residues")
{
    auto F7 = FiniteField::prime(7);
    CHECK_FALSE(power_residue_test(3, F7, 3));
    CHECK(power_residue_test(6, F7, 3));
    CHECK(power_residue_test(3, F7, 5));
    CHECK_THROWS_AS(power_residue_test(14, F7, 3), Error);

    // brute force over small fields
    std::vector<std::pair<u64, fp::Poly>> fields = {
        {2, {1, 1, 1}}, {3, {1, 0, 1}}, {5, {2, 0, 1}}, {7, {1, 1}}, {13, {0, 1}}, {2, {1, 1, 0, 1}},
        {3, {1, 2, 0, 1}}, {31, {0, 1}}, {97, {0, 1}}, {11, {1, 0, 1}}};
    for (auto& [p, g] : fields) {
        FiniteField F(p, g);
        unsigned f = F.degree();
        std::vector<fp::Poly> elems;
        std::size_t total = 1;
        for (unsigned i = 0; i < f; ++i) total *= p;
        for (std::size_t k = 1; k < total; ++k) {
            fp::Poly e;
            std::size_t t = k;
            for (unsigned i = 0; i < f; ++i) { e.push_back(t % p); t /= p; }
            fp::trim(e);
            elems.push_back(e);
        }
        for (u64 q : {2u, 3u, 5u, 7u}) {
            std::set<fp::Poly> powers;
            for (auto& e : elems) powers.insert(F.pow(e, q));
            for (auto& e : elems) CHECK(power_residue_test(F, e, q) == (powers.count(e) > 0));
        }
    }
}

TEST_CASE("real root isolation")
{
    auto r = real_root_isolate(P({-2, 0, 1}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].hi <= 0);
    CHECK(r[1].lo >= 0);
    CHECK(real_root_isolate(P({1, 0, 1})).empty());
    CHECK(real_root_isolate(P({-1, -2, 1, 1})).size() == 3);
    auto ex = real_root_isolate(P({0, -1, 0, 1}));  // x^3 - x
    CHECK(ex.size() == 3);
    for (std::size_t i = 0; i + 1 < ex.size(); ++i) CHECK(ex[i].hi <= ex[i + 1].lo);

    std::mt19937_64 rng(3);
    int done = 0;
    while (done < 100) {
        std::size_t d = 1 + rng() % 7;
        std::vector<long> c(d + 1);
        for (auto& v : c) v = static_cast<long>(rng() % 21) - 10;
        if (c.back() == 0) c.back() = 1;
        UniPoly f = P(c);
        if (gcd(f, f.derivative()).deg() > 0) continue;
        ++done;
        auto iv = real_root_isolate(f);
        auto z = complex_roots(f);
        std::size_t nreal = 0;
        for (auto& w : z)
            if (std::abs(w.imag()) < 1e-6L) ++nreal;
        CHECK(iv.size() == nreal);
        for (auto& i : iv) {
            auto t = refine_root(f, i, Rational(1, 1000000));
            bool hit = false;
            for (auto& w : z)
                if (std::abs(w.imag()) < 1e-6L && std::abs(w.real() - (long double)t.lo.get_d()) < 2e-6L) hit = true;
            CHECK(hit);
        }
    }
}

TEST_CASE("resultant and matrices")
{
    CHECK(resultant(P({-2, 0, 1}), P({-3, 0, 1})) == 1);
    CHECK(discriminant(P({1, 1, 1})) == -3);
    CHECK(discriminant(P({-1, -2, 1, 1})) == 49);
    QMatrix m = {{Rational(0), Rational(2)}, {Rational(1), Rational(0)}};
    CHECK(charpoly(m) == P({-2, 0, 1}));
    CHECK(determinant(m) == -2);
    CHECK(cyclotomic_poly(12) == P({1, 0, -1, 0, 1}));
}
