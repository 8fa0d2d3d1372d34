#include "normforge/radical/radical_tower.hpp"

#include "normforge/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace normforge {

std::map<std::string, FieldElement> RadicalTowerSpec::elements() const
{
    return {{"x", x},   {y_name(), y},          {z_name(), z},          {"rhs", rhs},
            {"r1", radicands[0]}, {"r2", radicands[1]}, {"r3", radicands[2]}};
}

namespace {

RadicalTowerSpec make_spec(const NumberField& K, unsigned q, RadicalTowerSpec::Variant variant,
                           const FieldElement& x, const FieldElement& y, const FieldElement& z)
{
    require_prime(Integer(q));
    if (!(x.field() == K) || !(y.field() == K) || !(z.field() == K))
        fail(ErrorCode::InvalidArgument, "tower elements must lie in the base field");
    if (!root_of_unity(K, q))
        fail(ErrorCode::MissingRootOfUnity, "base field " + K.name() + " lacks a primitive " + std::to_string(q) +
                                                "-th root of unity");
    bool xbc = variant == RadicalTowerSpec::Variant::XBC;
    std::string yn = xbc ? "b" : "d", zn = xbc ? "c" : "a";
    if (x.is_zero()) fail(ErrorCode::DegenerateRadicand, "x = 0");
    if (y.is_zero()) fail(ErrorCode::DegenerateRadicand, yn + " = 0");
    if (z.is_zero()) fail(ErrorCode::DegenerateRadicand, zn + " = 0");
    FieldElement rhs = y * x.pow(q) + y.pow(q);
    if (rhs.is_zero()) fail(ErrorCode::DegenerateRadicand, yn + "x^q + " + yn + "^q = 0");
    const FieldElement& base = xbc ? x : y;
    std::array<FieldElement, 3> r{base.inverse() + Rational(1), rhs.inverse() + Rational(1),
                                  (z + z.inverse()) / base + Rational(1)};
    for (int i = 0; i < 3; ++i)
        if (r[i].is_zero()) fail(ErrorCode::DegenerateRadicand, "radicand r" + std::to_string(i + 1) + " = 0");
    return RadicalTowerSpec{K, q, variant, x, y, z, rhs, r};
}

bool valuation_support_member(const RadicalTowerSpec& spec, const PrimeIdeal& P)
{
    for (auto& [id, u] : spec.elements())
        if (valuation(spec.K, P, u) != Ord(0)) return true;
    return false;
}

}  // namespace

RadicalTowerSpec make_xbc_spec(const NumberField& K, unsigned q, const FieldElement& x, const FieldElement& b,
                               const FieldElement& c)
{
    return make_spec(K, q, RadicalTowerSpec::Variant::XBC, x, b, c);
}

RadicalTowerSpec make_xda_spec(const NumberField& K, unsigned q, const FieldElement& x, const FieldElement& d,
                               const FieldElement& a)
{
    return make_spec(K, q, RadicalTowerSpec::Variant::XDA, x, d, a);
}

std::vector<PrimeIdeal> primes_of_interest(const RadicalTowerSpec& spec, const Integer& prime_bound)
{
    std::set<Integer> ps{Integer(spec.q)};
    for (auto& [id, u] : spec.elements()) {
        if (prime_bound == 0) {
            for (auto& p : rational_prime_support(u)) ps.insert(p);
            continue;
        }
        Integer D = u.denominator();
        Rational N = (u * Rational(D)).norm();
        for (Integer p = 2; p <= prime_bound; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t()))
            if (D % p == 0 || N.get_num() % p == 0) ps.insert(p);
    }
    std::set<PrimeIdeal> out;
    for (auto& p : ps)
        for (auto& P : splitting_type(spec.K, p))
            if (valuation_support_member(spec, P) || p == spec.q) out.insert(P);
    return {out.begin(), out.end()};
}

PrimeTower build_prime_tower(const RadicalTowerSpec& spec, const PrimeIdeal& P, std::array<int, 3> order)
{
    std::array<int, 3> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{0, 1, 2}) fail(ErrorCode::InvalidArgument, "layer order must permute 0,1,2");
    PrimeTower t{P, {}, {}, {}};
    auto ctx = make_local_context(spec.K, P, spec.q);
    std::vector<LocalPrime> nodes{make_local_prime(ctx, spec.elements())};
    for (int i : order) {
        std::string id = "r" + std::to_string(i + 1);
        t.layer_ids.push_back(id);
        std::vector<LayerKind> kinds;
        std::vector<LocalPrime> next;
        for (auto& n : nodes) {
            LayerResult res = classify_layer(n, id, spec.q);
            kinds.push_back(res.kind);
            for (auto& c : res.children) next.push_back(std::move(c));
        }
        t.kinds.push_back(std::move(kinds));
        nodes = std::move(next);
    }
    t.leaves = std::move(nodes);
    return t;
}

std::vector<PrimeTower> build_tower(const RadicalTowerSpec& spec, const std::vector<PrimeIdeal>& primes,
                                    std::array<int, 3> order)
{
    std::vector<PrimeTower> out;
    for (auto& P : primes) out.push_back(build_prime_tower(spec, P, order));
    return out;
}

const char* to_string(PropositionKind k)
{
    switch (k) {
    case PropositionKind::BadPrime: return "badprime";
    case PropositionKind::FixOrder: return "fixorder";
    case PropositionKind::BadPrimeQ: return "badprimeq";
    case PropositionKind::FixOrderQ: return "fixorderq";
    }
    return "?";
}

PropositionKind parse_proposition_kind(const std::string& s)
{
    for (auto k : {PropositionKind::BadPrime, PropositionKind::FixOrder, PropositionKind::BadPrimeQ,
                   PropositionKind::FixOrderQ})
        if (s == to_string(k)) return k;
    fail(ErrorCode::InvalidArgument, "unknown proposition kind '" + s + "'");
}

const char* to_string(Check::Status s)
{
    switch (s) {
    case Check::Status::Pass: return "pass";
    case Check::Status::Fail: return "fail";
    case Check::Status::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(PropositionReport::Status s)
{
    switch (s) {
    case PropositionReport::Status::Verified: return "Verified";
    case PropositionReport::Status::HypothesisFail: return "HypothesisFail";
    case PropositionReport::Status::Indeterminate: return "Indeterminate";
    }
    return "?";
}

namespace {

using CS = Check::Status;

CS from_bool(bool b) { return b ? CS::Pass : CS::Fail; }

std::string ord_str(const Ord& o) { return o.str(); }

// Conclusion evaluated at every leaf: Fail at any leaf wins, then Unknown.
template <class Fn>
Check over_leaves(int idx, std::string statement, const PrimeTower& t, Fn fn)
{
    Check c{idx, std::move(statement), CS::Pass, ""};
    std::ostringstream w;
    for (std::size_t i = 0; i < t.leaves.size(); ++i) {
        std::optional<bool> r = fn(t.leaves[i]);
        if (!r) {
            if (c.status == CS::Pass) c.status = CS::Unknown;
            w << "leaf " << i << ": unknown; ";
        } else if (!*r) {
            c.status = CS::Fail;
            w << "leaf " << i << ": fails; ";
        }
    }
    c.witness = w.str();
    if (c.witness.empty()) c.witness = "holds at all " + std::to_string(t.leaves.size()) + " primes of the top field";
    return c;
}

std::optional<bool> negate(std::optional<bool> b)
{
    if (!b) return std::nullopt;
    return !*b;
}

std::optional<bool> inert_at(const LocalPrime& lp, const std::string& id, unsigned q)
{
    LayerResult r = classify_layer(lp, id, q);
    if (r.kind == LayerKind::Inert) return true;
    if (r.kind == LayerKind::Indeterminate || r.kind == LayerKind::UnramifiedUnknown) return std::nullopt;
    return false;
}

}  // namespace

PropositionReport verify_proposition(PropositionKind kind, const RadicalTowerSpec& spec, const PrimeIdeal& target,
                                     bool strict)
{
    bool want_xbc = kind == PropositionKind::BadPrime || kind == PropositionKind::FixOrder;
    if (want_xbc != (spec.variant == RadicalTowerSpec::Variant::XBC))
        fail(ErrorCode::InvalidArgument, std::string(to_string(kind)) + " needs the " + (want_xbc ? "XBC" : "XDA") +
                                             " variant");
    const NumberField& K = spec.K;
    const long q = spec.q;
    PropositionReport rep{kind, target.str(), PropositionReport::Status::Verified, {}, {}, {}, {}};
    auto v = [&](const FieldElement& a) { return valuation(K, target, a); };
    Ord vx = v(spec.x), vy = v(spec.y), vz = v(spec.z);
    bool over_q = target.p == Integer(q);
    std::string Y = spec.y_name(), Z = spec.z_name();
    auto hyp = [&](int i, std::string s, CS st, std::string w) { rep.hypotheses.push_back({i, std::move(s), st, std::move(w)}); };

    switch (kind) {
    case PropositionKind::BadPrime:
        hyp(1, "P does not divide q", from_bool(!over_q), "p = " + target.p.get_str());
        if (vz != Ord(0))
            hyp(2, "c is not a q-th power modulo P", CS::Fail, "ord c = " + ord_str(vz));
        else
            hyp(2, "c is not a q-th power modulo P", from_bool(residue_nonqth_power(K, target, spec.z, Integer(q))),
                "residue of c = " + target.residue_field().str(residue(K, target, spec.z)));
        hyp(3, "ord x < 0", from_bool(vx < Ord(0)), "ord x = " + ord_str(vx));
        hyp(4, "ord b not divisible by q", from_bool(vy.value() % q != 0), "ord b = " + ord_str(vy));
        hyp(5, "q ord x < (q-1) ord b", from_bool(q * vx.value() < (q - 1) * vy.value()),
            std::to_string(q * vx.value()) + " vs " + std::to_string((q - 1) * vy.value()));
        if (strict)
            hyp(6, "ord b + q ord x < 0", from_bool(vy.value() + q * vx.value() < 0),
                std::to_string(vy.value() + q * vx.value()));
        break;
    case PropositionKind::FixOrder:
        hyp(1, "P does not divide q", from_bool(!over_q), "p = " + target.p.get_str());
        hyp(2, "P is not a pole of x", from_bool(vx >= Ord(0)), "ord x = " + ord_str(vx));
        break;
    case PropositionKind::BadPrimeQ: {
        long eq = over_q ? static_cast<long>(target.e) : 0;
        hyp(1, "P divides q", from_bool(over_q), "p = " + target.p.get_str());
        if (over_q && vz == Ord(0)) {
            auto ctx = make_local_context(K, target, spec.q);
            LocalPrime base = make_local_prime(ctx, spec.elements());
            LayerResult r = classify_layer(base, Z, spec.q);
            CS st = r.kind == LayerKind::Inert ? CS::Pass
                    : (r.kind == LayerKind::Indeterminate || r.kind == LayerKind::UnramifiedUnknown) ? CS::Unknown
                                                                                                      : CS::Fail;
            hyp(2, "P does not split in K(a^(1/q))", st, std::string(to_string(r.kind)) + ": " + r.rule);
        } else {
            hyp(2, "P does not split in K(a^(1/q))", over_q ? CS::Unknown : CS::Fail,
                over_q ? "a is not a unit at P; only the unramified inert rule certifies this" : "P does not divide q");
        }
        hyp(3, "ord x < 0", from_bool(vx < Ord(0)), "ord x = " + ord_str(vx));
        hyp(4, "ord d not divisible by q", from_bool(vy.value() % q != 0), "ord d = " + ord_str(vy));
        hyp(5, "ord d <= -3 ord q", from_bool(vy.value() <= -3 * eq),
            "ord d = " + ord_str(vy) + ", ord q = " + std::to_string(eq));
        hyp(6, "ord a = 0", from_bool(vz == Ord(0)), "ord a = " + ord_str(vz));
        hyp(7, "q ord x < (q-1) ord d", from_bool(q * vx.value() < (q - 1) * vy.value()),
            std::to_string(q * vx.value()) + " vs " + std::to_string((q - 1) * vy.value()));
        break;
    }
    case PropositionKind::FixOrderQ:
        hyp(1, "P is not a pole of d", from_bool(vy >= Ord(0)), "ord d = " + ord_str(vy));
        hyp(2, "P is not a pole of x", from_bool(vx >= Ord(0)), "ord x = " + ord_str(vx));
        break;
    }

    for (auto& h : rep.hypotheses)
        if (h.status == CS::Fail) rep.failed_hypotheses.push_back(h.index);
    if (!rep.failed_hypotheses.empty()) {
        rep.status = PropositionReport::Status::HypothesisFail;
        return rep;
    }
    for (auto& h : rep.hypotheses)
        if (h.status == CS::Unknown) rep.status = PropositionReport::Status::Indeterminate;
    if (rep.status != PropositionReport::Status::Verified) return rep;

    PrimeTower t = build_prime_tower(spec, target);
    for (std::size_t i = 0; i < t.leaves.size(); ++i)
        rep.traces[target.str() + "#" + std::to_string(i)] = t.leaves[i].trace;

    auto conc = [&](Check c) { rep.conclusions.push_back(std::move(c)); };
    auto neg_val = [&](const LocalPrime& lp) -> std::optional<bool> {
        return lp.value("x").val.value() < 0;
    };
    switch (kind) {
    case PropositionKind::BadPrime:
        conc(over_leaves(1, "ord x < 0", t, neg_val));
        conc(over_leaves(2, "c is not a q-th power modulo P_L", t,
                         [&](const LocalPrime& lp) { return negate(lp.residue_is_power("c", q)); }));
        conc(over_leaves(3, "ord(b x^q + b^q) not divisible by q", t,
                         [&](const LocalPrime& lp) { return negate(lp.valuation_divisible("rhs", q)); }));
        break;
    case PropositionKind::FixOrder:
        conc(over_leaves(1, "ord c divisible by q", t, [&](const LocalPrime& lp) { return lp.valuation_divisible("c", q); }));
        conc(over_leaves(2, "ord(b x^q + b^q) divisible by q", t,
                         [&](const LocalPrime& lp) { return lp.valuation_divisible("rhs", q); }));
        conc(over_leaves(3, "ord x divisible by q", t, [&](const LocalPrime& lp) { return lp.valuation_divisible("x", q); }));
        break;
    case PropositionKind::BadPrimeQ:
        conc(over_leaves(1, "ord x < 0", t, neg_val));
        conc(over_leaves(2, "P_F does not split in F(a^(1/q))", t,
                         [&](const LocalPrime& lp) { return inert_at(lp, "a", spec.q); }));
        conc(over_leaves(3, "ord(d x^q + d^q) not divisible by q", t,
                         [&](const LocalPrime& lp) { return negate(lp.valuation_divisible("rhs", q)); }));
        break;
    case PropositionKind::FixOrderQ:
        conc(over_leaves(1, "ord d divisible by q", t, [&](const LocalPrime& lp) { return lp.valuation_divisible("d", q); }));
        conc(over_leaves(2, "ord a divisible by q", t, [&](const LocalPrime& lp) { return lp.valuation_divisible("a", q); }));
        conc(over_leaves(3, "ord(d x^q + d^q) divisible by q", t,
                         [&](const LocalPrime& lp) { return lp.valuation_divisible("rhs", q); }));
        break;
    }
    for (auto& c : rep.conclusions) {
        if (c.status == CS::Fail)
            fail(ErrorCode::ConclusionViolation, std::string(to_string(kind)) + " conclusion " +
                                                     std::to_string(c.index) + " fails at " + target.str() + ": " +
                                                     c.witness);
        if (c.status == CS::Unknown) rep.status = PropositionReport::Status::Indeterminate;
    }
    return rep;
}

std::vector<PropositionReport> verify_all_primes(PropositionKind kind, const RadicalTowerSpec& spec, bool strict,
                                                const Integer& prime_bound)
{
    std::vector<PropositionReport> out;
    for (auto& P : primes_of_interest(spec, prime_bound)) {
        PropositionReport r = verify_proposition(kind, spec, P, strict);
        if (r.status != PropositionReport::Status::HypothesisFail) out.push_back(std::move(r));
    }
    return out;
}

void require_hypotheses(const PropositionReport& r)
{
    if (r.failed_hypotheses.empty()) return;
    std::ostringstream os;
    os << to_string(r.kind) << " hypotheses failed at " << r.prime << ":";
    for (int i : r.failed_hypotheses) os << " " << i;
    fail(ErrorCode::HypothesisFail, os.str());
}

}  // namespace normforge
