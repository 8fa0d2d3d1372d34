#include "normforge/tree/factor_tree.hpp"

#include "normforge/error.hpp"

#include <numeric>

namespace normforge {

RecipeStep RecipeStep::root_of_unity(u64 n)
{
    if (n == 0) fail(ErrorCode::InvalidArgument, "root of unity order must be positive");
    RecipeStep s;
    s.kind = Kind::RootOfUnity;
    s.n = n;
    s.note = "adjoin zeta_" + std::to_string(n);
    return s;
}

RecipeStep RecipeStep::radical(unsigned degree, RadicandExpr r, std::string note)
{
    if (degree < 2) fail(ErrorCode::InvalidArgument, "radical degree must be at least 2");
    if (r.coeffs.empty()) fail(ErrorCode::InvalidArgument, "empty radicand");
    RecipeStep s;
    s.kind = Kind::Radical;
    s.degree = degree;
    s.radicand = std::move(r);
    s.note = std::move(note);
    return s;
}

RecipeStep RecipeStep::radical(unsigned degree, std::vector<ApproxConstraint> selector, std::string note)
{
    if (degree < 2) fail(ErrorCode::InvalidArgument, "radical degree must be at least 2");
    RecipeStep s;
    s.kind = Kind::Radical;
    s.degree = degree;
    s.selector = std::move(selector);
    s.note = std::move(note);
    return s;
}

RecipeStep RecipeStep::polynomial(UniPoly f, std::string note)
{
    if (f.is_zero() || f.deg() < 1 || f.lead() != 1 || !f.is_integral())
        fail(ErrorCode::InvalidArgument, "polynomial step needs a monic integral polynomial");
    RecipeStep s;
    s.kind = Kind::Polynomial;
    s.poly = std::move(f);
    s.note = std::move(note);
    return s;
}

bool TowerRecipe::cyclotomic() const
{
    for (auto& s : steps)
        if (s.kind != RecipeStep::Kind::RootOfUnity) return false;
    return true;
}

std::vector<Integer> TowerRecipe::level_degrees() const
{
    std::vector<Integer> out{1};
    if (cyclotomic()) {
        Integer N = 1;
        for (auto& s : steps) {
            N = lcm(N, Integer(static_cast<unsigned long>(s.n)));
            Integer phi = 1;
            for (auto& [r, k] : factor_integer(N)) phi *= (r - 1) * ipow(r, k - 1);
            out.push_back(phi);
        }
        return out;
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const RecipeStep& s = steps[i];
        Integer d;
        switch (s.kind) {
        case RecipeStep::Kind::RootOfUnity: d = euler_phi(s.n); break;
        case RecipeStep::Kind::Radical: d = s.degree; break;
        case RecipeStep::Kind::Polynomial: d = static_cast<unsigned long>(s.poly.deg()); break;
        }
        out.push_back(out.back() * d);
    }
    return out;
}

void resolve_recipe(TowerRecipe& r)
{
    if (r.steps.empty()) return;
    // a single root-of-unity step usually opens a recipe that is still being assembled
    if (!r.cyclotomic() || r.steps.size() == 1) {
        for (std::size_t i = 1; i < r.steps.size(); ++i)
            if (r.steps[i].kind == RecipeStep::Kind::RootOfUnity)
                fail(ErrorCode::InvalidArgument, "roots of unity may only open a mixed recipe");
        const RecipeStep& s0 = r.steps[0];
        if (s0.kind == RecipeStep::Kind::RootOfUnity) {
            if (!(r.anchor.poly() == cyclotomic_poly(s0.n)))
                r.anchor = NumberField(cyclotomic_poly(s0.n), "Q(zeta" + std::to_string(s0.n) + ")");
        } else if (s0.kind == RecipeStep::Kind::Polynomial) {
            if (!(r.anchor.poly() == s0.poly)) r.anchor = NumberField(s0.poly);
        } else if (r.anchor.degree() != 1) {
            fail(ErrorCode::InvalidArgument, "a recipe opening with a radical is anchored at Q");
        }
    }
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        RecipeStep& s = r.steps[i];
        if (s.kind != RecipeStep::Kind::Radical) continue;
        if (!s.radicand) {
            if (s.selector.empty()) fail(ErrorCode::InvalidArgument, "radical step without radicand or selector");
            s.radicand = RadicandExpr{std::nullopt, {strong_approx_element(r.anchor, s.selector)}};
        }
        for (auto& c : s.radicand->coeffs)
            if (!(c.field() == r.anchor)) fail(ErrorCode::InvalidArgument, "radicand outside the anchor field");
        if (s.radicand->alpha_step) {
            std::size_t a = *s.radicand->alpha_step;
            if (a >= i || r.steps[a].kind != RecipeStep::Kind::Polynomial || a == 0)
                fail(ErrorCode::InvalidArgument, "radicand refers to a step that is not an earlier polynomial step");
        } else if (s.radicand->coeffs.size() != 1) {
            fail(ErrorCode::InvalidArgument, "radicand in the anchor field needs exactly one coefficient");
        }
        bool zero = true;
        for (auto& c : s.radicand->coeffs)
            if (!c.is_zero()) zero = false;
        if (zero) fail(ErrorCode::DegenerateRadicand, "radicand is zero");
    }
}

TowerRecipe five_power_cyclotomic(unsigned depth)
{
    TowerRecipe r;
    r.name = "five-power-cyclotomic";
    Integer n = 1;
    for (unsigned k = 1; k <= depth; ++k) {
        n *= 5;
        r.steps.push_back(RecipeStep::root_of_unity(to_u64(n)));
    }
    return r;
}

TowerRecipe cyclotomic_q_avoiding(unsigned q, unsigned m, u64 prime_bound, unsigned depth)
{
    require_prime(Integer(q));
    if (m < 1) fail(ErrorCode::InvalidArgument, "m must be positive");
    Integer qm1 = ipow(Integer(q), m + 1);
    std::vector<u64> S;
    for (u64 p = 2; p <= prime_bound; ++p)
        if (is_prime_u64(p) && p != q && Integer(static_cast<unsigned long>(p - 1)) % qm1 != 0) S.push_back(p);
    if (S.empty()) fail(ErrorCode::InvalidArgument, "no admissible primes below the bound");
    TowerRecipe r;
    r.name = "cyclotomic-q-avoiding";
    std::string list;
    for (u64 p : S) list += (list.empty() ? "" : ",") + std::to_string(p);
    r.notes.push_back("primes " + list);
    Integer N = 1, base = 1;
    for (u64 p : S) base *= static_cast<unsigned long>(p);
    for (unsigned k = 1; k <= depth; ++k) {
        N *= base;
        if (N > Integer("18446744073709551615")) fail(ErrorCode::InvalidArgument, "conductor exceeds 64 bits");
        r.steps.push_back(RecipeStep::root_of_unity(to_u64(N)));
    }
    return r;
}

namespace {

Integer norm_of(const PrimeIdeal& P) { return ipow(P.p, P.f); }

// least-norm prime of K not above q
PrimeIdeal first_prime_away_from(const NumberField& K, unsigned q)
{
    std::optional<PrimeIdeal> best;
    for (u64 l = 2; l < 100000; ++l) {
        if (!is_prime_u64(l) || l == q) continue;
        if (best && Integer(static_cast<unsigned long>(l)) > norm_of(*best)) break;
        for (auto& P : splitting_type(K, Integer(static_cast<unsigned long>(l))))
            if (!best || norm_of(P) < norm_of(*best)) best = P;
    }
    if (!best) fail(ErrorCode::SearchExhausted, "no prime away from q");
    return *best;
}

Integer sym_mod(const Integer& a, const Integer& M)
{
    Integer r = a % M;
    if (r < 0) r += M;
    if (2 * r > M) r -= M;
    return r;
}

Integer crt2(const Integer& a, const Integer& m, const Integer& b, const Integer& n)
{
    // m, n coprime
    Integer t = ((b - a) % n) * invmod(Integer(m % n), n) % n;
    if (t < 0) t += n;
    return a + m * t;
}

}  // namespace

TowerRecipe three_step(unsigned q, unsigned n)
{
    require_prime(Integer(q));
    if (n != 1) fail(ErrorCode::InvalidArgument, "the three-step builder supports n = 1 only");
    const unsigned N = 40;  // p-adic precision of the split-polynomial certificates

    TowerRecipe r;
    r.name = "three-step";
    r.steps.push_back(RecipeStep::root_of_unity(q));
    r.anchor = NumberField(cyclotomic_poly(q), "Q(zeta" + std::to_string(q) + ")");
    const NumberField& G = r.anchor;
    auto Qs = splitting_type(G, Integer(q));

    // pi_1: least rational prime other than q
    unsigned pi1 = q == 2 ? 3 : 2;
    PrimeIdeal p1 = first_prime_away_from(G, q);
    r.notes.push_back("p_1 = " + p1.str() + ", pi_1 = " + std::to_string(pi1));

    // M_{1,1} = G(a^{1/pi_1}): ord_{p_1} a = 1, a ≡ 1 mod q so that primes above q split
    for (auto& L : Qs)
        if ((norm_of(L) - 1) % pi1 != 0)
            fail(ErrorCode::SearchExhausted, "residue field above q lacks the pi_1-th roots of unity");
    std::vector<ApproxConstraint> sel{ApproxConstraint::exact(p1, 1)};
    for (auto& L : Qs) sel.push_back(ApproxConstraint::congruent(L, G.one(), static_cast<long>(L.e)));
    FieldElement a = strong_approx_element(G, sel);
    r.steps.push_back(RecipeStep::radical(pi1, RadicandExpr{std::nullopt, {a}}, "M_{1,1}: ramified above p_1, split above q"));

    // M_{1,2}: degree p prime to p_1 and q, split completely above p_1 and q.
    // f ≡ x(x-1)...(x-p+1) modulo (l_1 q)^N, Eisenstein at an unramified prime.
    u64 l1 = to_u64(p1.p);
    u64 p = 2;
    while (!is_prime_u64(p) || p == l1 || p == q) ++p;
    Integer bad = Integer(static_cast<unsigned long>(l1 * q * p * pi1)) * G.discriminant().get_num() *
                  a.norm().get_num() * a.norm().get_den();
    u64 lE = 2;
    while (!is_prime_u64(lE) || bad % lE == 0) ++lE;
    UniPoly g = UniPoly::constant(1);
    for (u64 i = 0; i < p; ++i) g *= UniPoly::from_ints({-static_cast<long>(i), 1});
    Integer M1 = ipow(Integer(static_cast<unsigned long>(l1 * q)), N);
    Integer E = static_cast<unsigned long>(lE), E2 = E * E;
    std::vector<Rational> fc(p + 1);
    for (u64 k = 0; k < p; ++k) {
        Integer gk = g.coeff(k).get_num();
        Integer target = k == 0 ? E : Integer(0);
        fc[k] = Rational(sym_mod(crt2(gk, M1, target, E2), M1 * E2));
    }
    fc[p] = 1;
    RecipeStep ps = RecipeStep::polynomial(UniPoly(fc), "M_{1,2}: split above p_1 and q, Eisenstein at " + std::to_string(lE));
    std::vector<Integer> roots;
    for (u64 i = 0; i < p; ++i) roots.push_back(Integer(static_cast<unsigned long>(i)));
    ps.split_roots[p1.p] = roots;
    ps.split_roots[Integer(q)] = roots;
    r.steps.push_back(ps);
    r.notes.push_back("polynomial step of degree " + std::to_string(p) + ", Eisenstein at " + std::to_string(lE));

    // K_2 = M_{1,2}(c^{1/q}): c ≡ 1 mod q^3 above q; at the primes of M_{1,2} over p_1 (roots 0..p-1 of f)
    // c is ≡ 1 at root 0 and a non-q-th power at the others.
    std::vector<FieldElement> T;
    for (u64 j = 0; j < p; ++j) {
        std::vector<ApproxConstraint> cs;
        for (auto& L : Qs) cs.push_back(ApproxConstraint::congruent(L, G.one(), 3 * static_cast<long>(L.e) + 1));
        if (j == 0)
            cs.push_back(ApproxConstraint::congruent(p1, G.one(), 1));
        else
            cs.push_back(ApproxConstraint::non_power(p1, q));
        T.push_back(strong_approx_element(G, cs));
    }
    std::vector<FieldElement> cc(p, G.zero());
    for (u64 j = 0; j < p; ++j) {
        UniPoly L = UniPoly::constant(1);
        for (u64 k = 0; k < p; ++k)
            if (k != j)
                L *= UniPoly(std::vector<Rational>{Rational(-static_cast<long>(k), 1), Rational(1)}) *
                     (Rational(1) / Rational(static_cast<long>(j) - static_cast<long>(k)));
        for (u64 i = 0; i < p; ++i) cc[i] = cc[i] + T[j] * L.coeff(i);
    }
    r.steps.push_back(RecipeStep::radical(q, RadicandExpr{std::size_t{2}, cc},
                                          "K_2: split above q, above p_1 one factor splits and the rest stay inert"));
    resolve_recipe(r);
    return r;
}

TowerRecipe example_tower(const std::string& name, const std::map<std::string, long>& params)
{
    auto get = [&](const std::string& k, long dflt) {
        auto it = params.find(k);
        return it == params.end() ? dflt : it->second;
    };
    if (name == "five-power-cyclotomic" || name == "five-power")
        return five_power_cyclotomic(static_cast<unsigned>(get("depth", 3)));
    if (name == "cyclotomic-q-avoiding")
        return cyclotomic_q_avoiding(static_cast<unsigned>(get("q", 3)), static_cast<unsigned>(get("m", 1)),
                                     static_cast<u64>(get("bound", 20)), static_cast<unsigned>(get("depth", 2)));
    if (name == "three-step") return three_step(static_cast<unsigned>(get("q", 3)), static_cast<unsigned>(get("n", 1)));
    fail(ErrorCode::InvalidArgument, "unknown tower '" + name + "'");
}

}  // namespace normforge
