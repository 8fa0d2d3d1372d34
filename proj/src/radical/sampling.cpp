#include "normforge/radical/radical_tower.hpp"

#include "normforge/error.hpp"

#include <random>

namespace normforge {

namespace {

struct Sampler {
    const NumberField& K;
    std::mt19937_64 rng;

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

    FieldElement small()
    {
        for (;;) {
            std::vector<Rational> c(K.degree());
            for (auto& x : c) x = Rational(uniform(-9, 9));
            FieldElement a = K.from_coords(c);
            if (!a.is_zero()) return a;
        }
    }

    // random element with v_P exactly v
    FieldElement with_valuation(const PrimeIdeal& P, const FieldElement& pi, long v)
    {
        FieldElement a = small();
        long va = valuation(K, P, a).value();
        return a * pi.pow(v - va);
    }

    PrimeIdeal prime(unsigned q, bool over_q, unsigned max_p)
    {
        std::vector<PrimeIdeal> cands;
        if (over_q) {
            cands = splitting_type(K, Integer(q));
        } else {
            for (u64 p = 2; p <= max_p; ++p) {
                if (!is_prime_u64(p) || p == q || !dedekind_maximal_at(K, Integer(p))) continue;
                for (auto& P : splitting_type(K, Integer(p))) cands.push_back(P);
            }
        }
        if (cands.empty()) fail(ErrorCode::SearchExhausted, "no suitable primes");
        return cands[static_cast<std::size_t>(uniform(0, static_cast<long>(cands.size()) - 1))];
    }
};

// largest integer strictly below (q-1) v / q
long below(long q, long v)
{
    long num = (q - 1) * v;
    long fl = num >= 0 ? num / q : -((-num + q - 1) / q);
    return fl * q == num ? fl - 1 : fl;
}

long nonmultiple(Sampler& s, long lo, long hi, long q)
{
    for (;;) {
        long v = s.uniform(lo, hi);
        if (v % q != 0) return v;
    }
}

}  // namespace

SampledInstance sample_instance(PropositionKind kind, const NumberField& K, unsigned q, std::uint64_t seed,
                                unsigned max_p)
{
    Sampler s{K, std::mt19937_64(seed)};
    const long Q = q;
    for (int attempt = 0; attempt < 500; ++attempt) {
        try {
            bool over_q = kind == PropositionKind::BadPrimeQ ||
                          (kind == PropositionKind::FixOrderQ && s.uniform(0, 1) == 1);
            PrimeIdeal P = s.prime(q, over_q, max_p);
            FieldElement pi = uniformizer(K, P);
            std::optional<RadicalTowerSpec> spec;
            switch (kind) {
            case PropositionKind::BadPrime: {
                FieldElement c = s.with_valuation(P, pi, 0);
                if (!residue_nonqth_power(K, P, c, Integer(q))) continue;
                long vb = nonmultiple(s, -4, 4, Q);
                long vx = std::min(-1L, below(Q, vb)) - s.uniform(0, 2);
                spec = make_xbc_spec(K, q, s.with_valuation(P, pi, vx), s.with_valuation(P, pi, vb), c);
                break;
            }
            case PropositionKind::FixOrder:
                spec = make_xbc_spec(K, q, s.with_valuation(P, pi, s.uniform(0, 3)),
                                     s.with_valuation(P, pi, s.uniform(-3, 3)), s.with_valuation(P, pi, s.uniform(-3, 3)));
                break;
            case PropositionKind::BadPrimeQ: {
                auto zeta = root_of_unity(K, q);
                if (!zeta) fail(ErrorCode::MissingRootOfUnity, "no primitive q-th root of unity");
                FieldElement lam = *zeta - Rational(1);
                FieldElement a = lam.pow(Q) * s.with_valuation(P, pi, 0) + Rational(1);
                long e = static_cast<long>(P.e);
                long vd = -3 * e - s.uniform(0, 3);
                if (vd % Q == 0) --vd;
                long vx = std::min(-1L, below(Q, vd)) - s.uniform(0, 2);
                spec = make_xda_spec(K, q, s.with_valuation(P, pi, vx), s.with_valuation(P, pi, vd), a);
                break;
            }
            case PropositionKind::FixOrderQ:
                spec = make_xda_spec(K, q, s.with_valuation(P, pi, s.uniform(0, 3)),
                                     s.with_valuation(P, pi, s.uniform(0, 3)), s.with_valuation(P, pi, s.uniform(-3, 3)));
                break;
            }
            SampledInstance inst{*spec, P};
            // hypotheses must pass exactly; conclusions are left to the caller
            PropositionReport r = verify_proposition(kind, inst.spec, P);
            if (r.status == PropositionReport::Status::HypothesisFail) continue;
            if (kind == PropositionKind::BadPrimeQ && r.status == PropositionReport::Status::Indeterminate &&
                r.conclusions.empty())
                continue;
            return inst;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateRadicand) throw;
        }
    }
    fail(ErrorCode::SearchExhausted, "could not sample an instance satisfying the hypotheses");
}

}  // namespace normforge
