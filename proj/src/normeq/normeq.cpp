#include "normforge/normeq/normeq.hpp"

#include "normforge/error.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace normforge {

namespace {

bool above_q(const PrimeIdeal& P, unsigned q) { return P.p == Integer(q); }

bool in_list(const std::vector<PrimeIdeal>& S, const PrimeIdeal& P)
{
    return std::find(S.begin(), S.end(), P) != S.end();
}

// c is a q-th power modulo P: 0 counts, poles do not
bool qth_power_mod(const NumberField& K, const PrimeIdeal& P, const FieldElement& c, unsigned q)
{
    Ord v = valuation(K, P, c);
    if (v < Ord(0)) return false;
    if (v > Ord(0)) return true;
    return power_residue_test(P.residue_field(), residue(K, P, c), Integer(q));
}

std::vector<PrimeIdeal> poles(const NumberField& K, const FieldElement& a)
{
    std::vector<PrimeIdeal> out;
    for (auto& P : prime_support(K, a))
        if (valuation(K, P, a) < Ord(0)) out.push_back(P);
    return out;
}

// q v(x) > (q-1) v(d)  (strict) or >= (non-strict)
bool order_bound(long vx, long vd, long q, bool strict)
{
    long lhs = q * vx, rhs = (q - 1) * vd;
    return strict ? lhs > rhs : lhs >= rhs;
}

}  // namespace

NormEquationInstance make_instance(const NumberField& K, unsigned q, const FieldElement& x, const FieldElement& b,
                                   const FieldElement& c, std::vector<PrimeIdeal> S)
{
    if (x.is_zero()) fail(ErrorCode::InvalidArgument, "x must be nonzero");
    if (c.is_zero()) fail(ErrorCode::InvalidArgument, "c must be nonzero");
    if ((b * x.pow(q) + b.pow(q)).is_zero())
        fail(ErrorCode::InvalidArgument, "b x^q + b^q = 0: the formula holds trivially");
    return {make_xbc_spec(K, q, x, b, c), std::move(S)};
}

NormEquationInstance make_xda_instance(const NumberField& K, unsigned q, const FieldElement& x, const FieldElement& d,
                                       const FieldElement& a)
{
    if (x.is_zero()) fail(ErrorCode::InvalidArgument, "x must be nonzero");
    if ((d * x.pow(q) + d.pow(q)).is_zero())
        fail(ErrorCode::InvalidArgument, "d x^q + d^q = 0: the formula holds trivially");
    return {make_xda_spec(K, q, x, d, a), {}};
}

NormAnalysis analyze(const NormEquationInstance& inst, const Integer& prime_bound)
{
    const NumberField& K = inst.K();
    unsigned q = inst.q();
    long qq = q;
    const RadicalTowerSpec& spec = inst.tower;
    std::set<PrimeIdeal> primes;
    for (auto& P : primes_of_interest(spec, prime_bound)) primes.insert(P);
    for (auto& P : inst.S) primes.insert(P);

    NormAnalysis out;
    ThetaPhi tp = theta_phi_membership(K, inst.c(), inst.S, q);
    out.compliant_c = tp.in_theta && tp.in_phi && omega_membership(K, inst.c(), q);
    out.integral_x = true;
    for (auto& P : poles(K, inst.x()))
        if (!above_q(P, q) && !in_list(inst.S, P)) out.integral_x = false;

    bool any_unsolvable = false, all_solvable = true;
    for (auto& P : primes) {
        LedgerEntry e{P, LocalVerdict::solvable(), {}, above_q(P, q) || in_list(inst.S, P), 0, {}};
        Ord vx = valuation(K, P, inst.x()), vb = valuation(K, P, inst.b());
        e.conditions[0] = qth_power_mod(K, P, inst.c(), q);
        e.conditions[1] = vx >= Ord(0);
        e.conditions[2] = vb.is_infinite() || (!vx.is_infinite() && order_bound(vx.value(), vb.value(), qq, false));
        e.conditions[3] = vb.is_infinite() || mod_floor(vb.value(), qq) == 0;

        PrimeTower t = build_prime_tower(spec, P);
        int uns = 0, ind = 0;
        std::string first_bad;
        for (auto& leaf : t.leaves) {
            LocalVerdict v = local_norm_solvable(leaf, "rhs", spec.z_name(), q);
            e.leaf_reasons.push_back(std::string(to_string(v.kind)) + ": " + v.reason);
            if (v.kind == LocalVerdict::Kind::Unsolvable) {
                if (!uns) first_bad = v.reason;
                ++uns;
            } else if (v.kind == LocalVerdict::Kind::Indeterminate) {
                if (!uns && !ind) first_bad = v.reason;
                ++ind;
            }
        }
        e.leaves = t.leaves.size();
        if (uns) e.verdict = LocalVerdict::unsolvable(std::to_string(uns) + " of " + std::to_string(e.leaves) +
                                                      " top primes: " + first_bad);
        else if (ind) e.verdict = LocalVerdict::indeterminate(std::to_string(ind) + " of " +
                                                              std::to_string(e.leaves) + " top primes: " + first_bad);
        else e.verdict = LocalVerdict::solvable("all " + std::to_string(e.leaves) + " top primes");
        any_unsolvable = any_unsolvable || uns;
        all_solvable = all_solvable && !uns && !ind;
        out.ledger.push_back(std::move(e));
    }

    std::vector<FieldElement> rads(spec.radicands.begin(), spec.radicands.end());
    out.archimedean = archimedean_check(K, inst.c(), inst.rhs(), q, rads);
    if (out.archimedean.kind == LocalVerdict::Kind::Unsolvable) any_unsolvable = true;
    if (out.archimedean.kind != LocalVerdict::Kind::Solvable) all_solvable = false;

    out.verdict = any_unsolvable ? LocalVerdict::Kind::Unsolvable
                  : all_solvable ? LocalVerdict::Kind::Solvable
                                 : LocalVerdict::Kind::Indeterminate;
    if (out.integral_x && out.compliant_c && out.verdict == LocalVerdict::Kind::Unsolvable) {
        std::string where = "archimedean";
        for (auto& e : out.ledger)
            if (e.verdict.kind == LocalVerdict::Kind::Unsolvable) { where = e.P.str(); break; }
        fail(ErrorCode::ConclusionViolation,
             "norm equation unsolvable at " + where + " although x is integral and c is compliant");
    }
    return out;
}

BatteryResult integrality_battery(const NumberField& K, const FieldElement& x, unsigned q,
                                  const std::vector<PrimeIdeal>& S, std::size_t battery_size, std::uint64_t seed)
{
    if (x.is_zero()) fail(ErrorCode::InvalidArgument, "x must be nonzero");
    BatteryResult res;
    std::mt19937_64 rng(seed);
    // c ≡ 1 mod q^3 and mod every prime of S
    Integer M = ipow(Integer(q), 3);
    for (auto& P : S) M *= P.p;
    for (auto& P : poles(K, x)) {
        if (above_q(P, q)) {
            res.not_catchable.push_back(P);
            res.notes.push_back("pole " + P.str() + " lies above q: not catchable");
            continue;
        }
        if (in_list(S, P)) {
            res.notes.push_back("pole " + P.str() + " is in S");
            continue;
        }
        FieldElement b = P.e == 1 ? K.from_rational(Rational(1) / Rational(P.p))
                                  : strong_approx_element(K, {ApproxConstraint::exact(P, -1)});
        if (valuation(K, P, b) != Ord(-1)) b = strong_approx_element(K, {ApproxConstraint::exact(P, -1)});

        std::vector<FieldElement> cands;
        std::set<Integer> used;
        auto push_k = [&](const Integer& k) {
            if (!used.insert(k).second) return;
            FieldElement c = K.from_rational(Rational(1 + k * M));
            if (valuation(K, P, c) == Ord(0) && !qth_power_mod(K, P, c, q)) cands.push_back(c);
        };
        for (long k = 1; k <= 4 * static_cast<long>(q) && cands.size() < battery_size; ++k) push_k(Integer(k));
        std::uniform_int_distribution<long> dist(1, 1000);
        for (std::size_t tries = 0; tries < 20 * battery_size && cands.size() < battery_size; ++tries)
            push_k(Integer(dist(rng)));
        if (cands.size() < battery_size) {
            std::vector<ApproxConstraint> cs{ApproxConstraint::non_power(P, q)};
            for (auto& Q : splitting_type(K, Integer(q)))
                cs.push_back(ApproxConstraint::congruent(Q, K.one(), 3 * static_cast<long>(Q.e)));
            for (auto& Sp : S) cs.push_back(ApproxConstraint::congruent(Sp, K.one(), 1));
            try {
                cands.push_back(strong_approx_element(K, cs, q == 2 && K.real_embedding_count() > 0));
            } catch (const Error& err) {
                if (cands.empty()) throw;
            }
        }
        if (cands.empty()) fail(ErrorCode::SearchExhausted, "no admissible c at " + P.str());

        for (auto& c : cands) {
            ++res.candidates_tried;
            ThetaPhi tp = theta_phi_membership(K, c, S, q);
            if (!tp.in_theta || !tp.in_phi || !omega_membership(K, c, q)) continue;
            NormAnalysis a = analyze(make_instance(K, q, x, b, c, S));
            if (a.verdict != LocalVerdict::Kind::Unsolvable) continue;
            res.passed = false;
            res.b = b;
            res.c = c;
            for (auto& e : a.ledger)
                if (e.verdict.kind == LocalVerdict::Kind::Unsolvable && (!res.prime || e.P == P)) res.prime = e.P;
            return res;
        }
        res.notes.push_back("no witness at pole " + P.str() + " within " + std::to_string(cands.size()) +
                            " candidates");
    }
    return res;
}

std::vector<PrimeIdeal> b_set_tracked(const NumberField& K, unsigned p, const FieldElement& a, const FieldElement& d)
{
    if (d.is_zero()) fail(ErrorCode::HypothesisFail, "d must be nonzero");
    auto W = poles(K, d);
    if (W.empty()) fail(ErrorCode::HypothesisFail, "d has no poles");
    for (auto& P : W) {
        long v = valuation(K, P, d).value();
        if (mod_floor(v, p) == 0)
            fail(ErrorCode::HypothesisFail, "ord of d at " + P.str() + " is divisible by " + std::to_string(p));
        if (a.is_zero() || valuation(K, P, a) != Ord(0))
            fail(ErrorCode::HypothesisFail, "a is not a unit at " + P.str());
        if (qth_power_mod(K, P, a, p))
            fail(ErrorCode::HypothesisFail, "a is a " + std::to_string(p) + "-th power modulo " + P.str());
    }
    return W;
}

bool b_set_membership(const NumberField& K, unsigned p, const FieldElement& a, const FieldElement& d,
                      const FieldElement& x)
{
    auto W = b_set_tracked(K, p, a, d);
    if (x.is_zero()) return true;
    for (auto& P : W) {
        long vx = valuation(K, P, x).value(), vd = valuation(K, P, d).value();
        if (!order_bound(vx, vd, p, true)) return false;
    }
    return true;
}

RingFilterResult ring_filter(const NumberField& K, unsigned p, const FieldElement& a, const FieldElement& d,
                             const FieldElement& x)
{
    RingFilterResult r;
    auto W = b_set_tracked(K, p, a, d);
    r.in_B = b_set_membership(K, p, a, d, x);
    if (!r.in_B) return r;
    r.member = x.is_zero();
    if (!r.member) {
        r.member = true;
        for (auto& P : W)
            if (valuation(K, P, x) < Ord(0)) r.member = false;
    }
    if (r.member) return r;
    // x^r ∈ B for small r since v(x^r) = r v(x) decreases
    FieldElement y = x;
    for (long k = 1;; ++k) {
        FieldElement next = y * x;
        if (!b_set_membership(K, p, a, d, next)) {
            r.witness = y;
            r.r = k;
            return r;
        }
        y = next;
    }
}

bool c_set_membership(const NumberField& K, const FieldElement& a, const FieldElement& d, unsigned q,
                      const FieldElement& x, const std::vector<PrimeIdeal>& A)
{
    if (d.is_zero() || a.is_zero()) fail(ErrorCode::HypothesisFail, "a and d must be nonzero");
    for (auto& P : A) {
        if (!above_q(P, q)) fail(ErrorCode::HypothesisFail, P.str() + " does not lie above q");
        long vd = valuation(K, P, d).value();
        if (vd > -3 * static_cast<long>(P.e))
            fail(ErrorCode::HypothesisFail, "ord of d at " + P.str() + " exceeds -3 ord q");
        auto ctx = make_local_context(K, P, q);
        LocalPrime lp = make_local_prime(ctx, {{"a", a}});
        LayerResult lr = classify_layer(lp, "a", q);
        if (lr.kind == LayerKind::Split)
            fail(ErrorCode::HypothesisFail, "a generates a split layer at " + P.str());
        if (lr.kind == LayerKind::Indeterminate || lr.kind == LayerKind::UnramifiedUnknown)
            fail(ErrorCode::HypothesisFail, "layer of a at " + P.str() + " is undetermined");
    }
    if (x.is_zero()) return true;
    for (auto& P : A) {
        long vx = valuation(K, P, x).value(), vd = valuation(K, P, d).value();
        if (!order_bound(vx, vd, q, true)) return false;
    }
    return true;
}

bool int_set_membership(const NumberField& K, const FieldElement& b, const std::vector<PrimeIdeal>& tracked,
                        unsigned q, const FieldElement& x)
{
    if (b.is_zero()) fail(ErrorCode::HypothesisFail, "b must be nonzero");
    if (tracked.empty()) fail(ErrorCode::HypothesisFail, "no tracked primes");
    for (auto& P : tracked) {
        long v = valuation(K, P, b).value();
        if (v >= 0 || mod_floor(v, q) == 0)
            fail(ErrorCode::HypothesisFail, "ord of b at " + P.str() + " must be negative and prime to q");
    }
    for (auto& P : poles(K, b))
        if (!in_list(tracked, P)) fail(ErrorCode::HypothesisFail, "b has an untracked pole at " + P.str());
    if (x.is_zero()) return true;
    for (auto& P : tracked) {
        long vx = valuation(K, P, x).value(), vb = valuation(K, P, b).value();
        if (!order_bound(vx, vb, q, false)) return false;
    }
    return true;
}

ProbeTemplate probe_template(const NumberField& K, const PrimeIdeal& P, const FieldElement& rhs,
                             const FieldElement& c, unsigned q, int anchor_level)
{
    if (valuation(K, P, c) != Ord(0)) fail(ErrorCode::NotAUnit, "c must be a unit at " + P.str());
    ProbeTemplate t;
    t.anchor_level = anchor_level;
    t.v_rhs = valuation(K, P, rhs).value();
    t.c_order = P.residue_field().order_of(residue(K, P, c));
    t.q = q;
    return t;
}

ProbeResult unbounded_denominator_probe(const FactorTree& tree, const ProbeTemplate& t, int max_depth)
{
    ProbeResult res;
    if (t.anchor_level < 0 || t.anchor_level > tree.complete_depth())
        fail(ErrorCode::InvalidArgument, "anchor level outside the tree");
    int top = std::min(max_depth, tree.complete_depth());
    Integer Q(t.q);
    Integer mod = Q * t.c_order;
    for (int L = t.anchor_level; L <= top; ++L) {
        std::size_t bad = 0;
        for (auto id : tree.levels[L]) {
            std::size_t anc = id;
            while (tree.nodes[anc].level > t.anchor_level) anc = *tree.nodes[anc].parent;
            long e = tree.nodes[id].e / tree.nodes[anc].e;
            if (mod_floor(e * t.v_rhs, t.q) == 0) continue;
            // c is a q-th power in F_{p^f} iff q ∤ p^f - 1 or q·ord(c) | p^f - 1
            Integer f(tree.nodes[id].f);
            bool power = powmod(tree.p, f, Q) != 1 || powmod(tree.p, f, mod) == 1;
            if (!power) ++bad;
        }
        res.obstructed.push_back(bad);
        if (bad == 0) {
            res.level = L;
            return res;
        }
    }
    res.notes.push_back(top < max_depth ? "tree complete only to depth " + std::to_string(top)
                                        : "obstruction persists through depth " + std::to_string(top));
    return res;
}

}  // namespace normforge
