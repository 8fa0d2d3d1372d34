#include "normforge/cyclic/cyclic.hpp"

#include "normforge/algebra/matrix.hpp"
#include "normforge/error.hpp"

#include <algorithm>
#include <numeric>

namespace normforge {

namespace {

// Elements of Z[ξ_ℓ] in the redundant basis ξ^0..ξ^{ℓ-1}.
using Cyc = std::vector<Integer>;

Cyc cyc_mul(const Cyc& a, const Cyc& b)
{
    std::size_t l = a.size();
    Cyc r(l, 0);
    for (std::size_t i = 0; i < l; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < l; ++j)
            if (b[j] != 0) r[(i + j) % l] += a[i] * b[j];
    }
    return r;
}

Cyc cyc_add(Cyc a, const Cyc& b, long s = 1)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

// coordinate of ξ^k after removing the ξ^0 component via 1 = -Σ ξ^k
Integer coord(const Cyc& a, std::size_t k) { return a[k] - a[0]; }

Integer as_integer(const Cyc& a)
{
    for (std::size_t k = 2; k < a.size(); ++k)
        if (a[k] != a[1]) fail(ErrorCode::ConclusionViolation, "period polynomial coefficient is not rational");
    return a[0] - a[1];
}

u64 primitive_root(u64 ell)
{
    if (ell == 2) return 1;
    auto fac = factor_integer(Integer(ell - 1));
    for (u64 g = 2; g < ell; ++g) {
        bool ok = true;
        for (auto& [r, e] : fac)
            if (powmod_u64(g, (ell - 1) / to_u64(r), ell) == 1) ok = false;
        if (ok) return g;
    }
    fail(ErrorCode::SearchExhausted, "no primitive root");
}

Cyc period(u64 ell, u64 g, u64 d, u64 j)
{
    Cyc c(ell, 0);
    u64 gd = powmod_u64(g, d, ell);
    u64 x = powmod_u64(g, j, ell);
    for (u64 k = 0; k < (ell - 1) / d; ++k) {
        c[x] += 1;
        x = mulmod_u64(x, gd, ell);
    }
    return c;
}

void check_prime_ell(u64 ell, u64 d)
{
    if (!is_prime_u64(ell)) fail(ErrorCode::NotPrime, std::to_string(ell) + " is not prime");
    if (d == 0 || (ell - 1) % d != 0) fail(ErrorCode::InvalidArgument, "d must divide ell - 1");
}

}  // namespace

NumberField CyclicFieldData::field() const
{
    return NumberField(poly, "Q(eta_" + std::to_string(ell) + "," + std::to_string(d) + ")");
}

u64 find_auxiliary_ell(unsigned q, unsigned m, u64 bound, RealityMode mode)
{
    require_prime(Integer(q));
    if (m < 1) fail(ErrorCode::InvalidArgument, "m must be positive");
    bool totally_real = mode == RealityMode::RequireReal || (mode == RealityMode::PreferReal && !(q == 2 && m >= 2));
    u64 qm = to_u64(ipow(Integer(q), m));
    for (u64 ell = qm + 1; ell <= bound; ell += qm) {
        if (!is_prime_u64(ell)) continue;
        if (totally_real && ((ell - 1) / qm) % 2 != 0) continue;
        if (powmod_u64(q % ell, (ell - 1) / q, ell) != 1) return ell;
    }
    fail(ErrorCode::SearchExhausted, "no auxiliary prime below " + std::to_string(bound));
}

CyclicFieldData gaussian_period_subfield(u64 ell, u64 d)
{
    check_prime_ell(ell, d);
    u64 g = primitive_root(ell);
    CyclicFieldData out{ell, d, g, {}, UniPoly(), ((ell - 1) / d) % 2 == 0, std::nullopt};
    Cyc h0 = period(ell, g, d, 0);
    for (u64 k = 0; k < ell; ++k)
        if (h0[k] != 0) out.subgroup.push_back(k);

    std::vector<Cyc> P{Cyc(ell, 0)};
    P[0][0] = 1;
    for (u64 j = 0; j < d; ++j) {
        Cyc eta = period(ell, g, d, j);
        std::vector<Cyc> next(P.size() + 1, Cyc(ell, 0));
        for (std::size_t i = 0; i < P.size(); ++i) {
            next[i + 1] = cyc_add(next[i + 1], P[i]);
            next[i] = cyc_add(next[i], cyc_mul(P[i], eta), -1);
        }
        P = std::move(next);
    }
    std::vector<Rational> coeffs;
    for (auto& c : P) coeffs.push_back(Rational(as_integer(c)));
    out.poly = UniPoly(coeffs);
    if (out.poly.deg() != d || discriminant(out.poly) == 0)
        fail(ErrorCode::ConclusionViolation, "period polynomial is not separable of degree d");
    // a prime whose Frobenius generates the quotient certifies irreducibility
    for (u64 p = 2; p < 100000 && d > 1; ++p) {
        if (!is_prime_u64(p) || p == ell) continue;
        if (frobenius_residue_degree(ell, d, Integer(p)) != d) continue;
        auto fac = factor_poly_mod_p(out.poly, Integer(p));
        if (fac.size() == 1 && fac[0].multiplicity == 1) {
            out.irreducibility_prime = p;
            break;
        }
    }
    if (d == 1) out.irreducibility_prime = 2;
    if (!out.irreducibility_prime) fail(ErrorCode::ConclusionViolation, "period polynomial not certified irreducible");
    return out;
}

u64 frobenius_residue_degree(u64 ell, u64 d, const Integer& p)
{
    check_prime_ell(ell, d);
    if (p % ell == 0) fail(ErrorCode::RamifiedCase, std::to_string(ell) + " is totally ramified in Q(zeta_ell)");
    u64 pr = to_u64(mod_floor(Integer(p % ell).get_si(), static_cast<long>(ell)));
    u64 img = powmod_u64(pr, (ell - 1) / d, ell);
    return img == 1 ? 1 : multiplicative_order(img, ell);
}

CompositumData compositum_degree_data(const NumberField& G, const CyclicFieldData& H)
{
    // G∩H is the period field of the largest k | d embedded in G
    u64 k = 1;
    for (u64 c : divisors(H.d)) {
        if (c <= k) continue;
        if (c > G.degree() || G.degree() % c != 0) continue;
        CyclicFieldData sub = gaussian_period_subfield(H.ell, c);
        if (!roots_in_field(G, sub.poly).empty()) k = c;
    }
    return {H.d / k, H.d / k, k};
}

SublayerPrediction nonsplit_sublayer(const NumberField& G, const PrimeIdeal& PG, const CyclicFieldData& H, unsigned q)
{
    require_prime(Integer(q));
    Integer Q(q);
    long r = 0;
    for (u64 d = H.d; d % q == 0; d /= q) ++r;
    if (ipow(Q, static_cast<unsigned long>(r)) != H.d)
        fail(ErrorCode::HypothesisFail, "[H:Q] is not a power of q");
    u64 fH = frobenius_residue_degree(H.ell, H.d, PG.p);
    if (fH != H.d) fail(ErrorCode::HypothesisFail, PG.p.get_str() + " splits in H");
    long m = 0;
    for (u64 f = PG.f; f % q == 0; f /= q) ++m;
    if (m >= r)
        fail(ErrorCode::HypothesisFail, "ord_q f(P_G/p) = " + std::to_string(m) + " is not below r = " + std::to_string(r));
    CompositumData cd = compositum_degree_data(G, H);
    // Gal(GH/G) = Gal(H/G∩H); the Frobenius of P_G is Frob_p^{f}
    u64 frob = H.d / std::gcd(H.d, static_cast<u64>(PG.f));
    if (frob % q != 0 || cd.cyclic_order % q != 0)
        fail(ErrorCode::ConclusionViolation, "Frobenius order not divisible by q");
    return {1, static_cast<long>(q), cd.cyclic_order, frob, m, r};
}

QuadraticSublayer makereal_generator(const CyclicFieldData& H)
{
    if (H.d % 2 != 0) fail(ErrorCode::InvalidArgument, "degree must be even");
    u64 ell = H.ell, g = H.generator, d = H.d, h = d / 2;
    CyclicFieldData lower = gaussian_period_subfield(ell, h);
    if (lower.generator != g) fail(ErrorCode::InvalidArgument, "inconsistent primitive roots");
    Cyc e0 = period(ell, g, d, 0), e1 = period(ell, g, d, h);
    Cyc s = cyc_add(e0, e1), t = cyc_mul(e0, e1);
    Cyc a = cyc_add(cyc_mul(s, s), t, -4);
    // a is constant on cosets of the index-h subgroup; match its values at coset representatives
    Cyc theta = period(ell, g, h, 0);
    std::vector<Cyc> pw{Cyc(ell, 0)};
    pw[0][0] = 1;
    for (u64 i = 1; i < h; ++i) pw.push_back(cyc_mul(pw.back(), theta));
    QMatrix M(h, std::vector<Rational>(h));
    std::vector<Rational> rhs(h);
    for (u64 row = 0; row < h; ++row) {
        u64 rep = powmod_u64(g, row, ell);
        for (u64 col = 0; col < h; ++col) M[row][col] = Rational(coord(pw[col], rep));
        rhs[row] = Rational(coord(a, rep));
    }
    return {lower, lower.field().from_coords(solve(M, rhs))};
}

}  // namespace normforge
