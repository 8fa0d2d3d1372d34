#ifndef NORMFORGE_CYCLIC_CYCLIC_HPP
#define NORMFORGE_CYCLIC_CYCLIC_HPP

#include "normforge/field/number_field.hpp"

#include <optional>
#include <vector>

namespace normforge {

// Degree-d subfield of Q(ξ_ℓ), generated by the Gaussian period over the index-d subgroup H.
struct CyclicFieldData {
    u64 ell;
    u64 d;
    u64 generator;                 // primitive root mod ℓ
    std::vector<u64> subgroup;     // H, sorted
    UniPoly poly;                  // minimal polynomial of the period
    bool totally_real;             // -1 ∈ H, i.e. (ℓ-1)/d even
    std::optional<u64> irreducibility_prime;  // p with poly irreducible mod p

    NumberField field() const;
};

enum class RealityMode { Any, RequireReal, PreferReal };

// Least prime ℓ ≡ 1 mod q^m with q not a q-th power mod ℓ. RequireReal also asks (ℓ-1)/q^m even, so
// the degree q^m subfield is totally real. PreferReal equals RequireReal except for q = 2, m >= 2,
// where no such ℓ exists (ℓ ≡ 1 mod 8 makes 2 a square) and Any is used.
u64 find_auxiliary_ell(unsigned q, unsigned m, u64 bound = 1000000, RealityMode mode = RealityMode::PreferReal);

CyclicFieldData gaussian_period_subfield(u64 ell, u64 d);

// Order of p in (Z/ℓ)*/H: the residue degree of p in the degree-d subfield.
u64 frobenius_residue_degree(u64 ell, u64 d, const Integer& p);

struct CompositumData {
    u64 degree;               // [GH:G]
    u64 cyclic_order;         // order of Gal(GH/G)
    u64 intersection_degree;  // [G∩H:Q]
};
CompositumData compositum_degree_data(const NumberField& G, const CyclicFieldData& H);

struct SublayerPrediction {
    long e = 1;
    long f_multiplier;        // q: the prime stays inert in GH over the intermediate field
    u64 galois_order;         // [GH:G]
    u64 frobenius_order;      // order of the Frobenius of P_G in Gal(GH/G)
    long m;                   // ord_q f(P_G/p)
    long r;                   // ord_q [H:Q]
};
// GH over the intermediate field Ĝ with [GH:Ĝ] = q. Needs [H:Q] = q^r, p inert in H and ord_q f(P_G/p) < r.
SublayerPrediction nonsplit_sublayer(const NumberField& G, const PrimeIdeal& PG, const CyclicFieldData& H, unsigned q);

struct QuadraticSublayer {
    CyclicFieldData lower;     // Ĝ: the index-2 subfield of H
    FieldElement a;            // H = Ĝ(√a)
};
// For [H:Q] even: the relative quadratic generator of H over its index-2 subfield.
QuadraticSublayer makereal_generator(const CyclicFieldData& H);

}  // namespace normforge

#endif
