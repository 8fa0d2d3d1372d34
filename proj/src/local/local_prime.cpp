#include "normforge/local/local_prime.hpp"

#include "normforge/error.hpp"

#include <map>
#include <sstream>

namespace normforge {

const TrackedValue& LocalPrime::value(const std::string& id) const
{
    auto it = tracked.find(id);
    if (it == tracked.end()) fail(ErrorCode::MissingTrace, "element '" + id + "' is not tracked at " + ctx->P.str());
    return it->second;
}

std::optional<long> LocalPrime::current_valuation(const std::string& id) const
{
    const TrackedValue& t = value(id);
    if (t.val.is_infinite()) fail(ErrorCode::DegenerateRadicand, "element '" + id + "' is zero");
    if (t.val.value() == 0) return 0;
    if (!e_exact) return std::nullopt;
    return e_rel * t.val.value();
}

std::optional<bool> LocalPrime::valuation_divisible(const std::string& id, long t) const
{
    const TrackedValue& tv = value(id);
    if (tv.val.is_infinite()) fail(ErrorCode::DegenerateRadicand, "element '" + id + "' is zero");
    if ((e_rel * tv.val.value()) % t == 0) return true;
    if (!e_exact) return std::nullopt;
    return false;
}

std::optional<bool> LocalPrime::residue_is_power(const std::string& id, long t) const
{
    const TrackedValue& tv = value(id);
    if (!tv.unit_residue || !f_exact) return std::nullopt;
    if (tv.val.value() != 0 && !(e_rel == 1 && e_exact)) return std::nullopt;
    Integer N = residue_order();
    if ((N - 1) % t != 0) return true;
    return ctx->F.is_one(ctx->F.pow(*tv.unit_residue, (N - 1) / t));
}

Integer LocalPrime::residue_order() const { return ipow(ctx->F.order(), static_cast<unsigned long>(f_rel)); }

std::shared_ptr<const LocalContext> make_local_context(const NumberField& K, const PrimeIdeal& P, unsigned q)
{
    auto ctx = std::make_shared<LocalContext>(LocalContext{K, P, P.residue_field(), uniformizer(K, P), q, {}, {}});
    ctx->zeta = root_of_unity(K, q);
    if (ctx->zeta) ctx->lambda = *ctx->zeta - Rational(1);
    return ctx;
}

TrackedValue track_element(const LocalContext& ctx, const FieldElement& u)
{
    TrackedValue t;
    t.val = valuation(ctx.K, ctx.P, u);
    if (t.val.is_infinite()) return t;
    long v = t.val.value();
    FieldElement w = v == 0 ? u : u * ctx.pi.pow(-v);
    t.unit_residue = residue(ctx.K, ctx.P, w);
    t.w_minus_one = Ord::infinity();
    if (ctx.P.p == ctx.q) {
        FieldElement d = w - Rational(1);
        t.w_minus_one = valuation(ctx.K, ctx.P, d);
        if (ctx.lambda && !d.is_zero()) {
            FieldElement z = d / ctx.lambda->pow(static_cast<long>(ctx.q));
            if (valuation(ctx.K, ctx.P, z) >= Ord(0)) t.as_residue = residue(ctx.K, ctx.P, z);
        } else if (ctx.lambda) {
            t.as_residue = FiniteField::Elem{};
        }
    }
    return t;
}

LocalPrime make_local_prime(std::shared_ptr<const LocalContext> ctx, const std::map<std::string, FieldElement>& elements)
{
    LocalPrime lp;
    lp.ctx = std::move(ctx);
    for (auto& [id, u] : elements) lp.tracked[id] = track_element(*lp.ctx, u);
    return lp;
}

const char* to_string(LayerKind k)
{
    switch (k) {
    case LayerKind::Split: return "split";
    case LayerKind::Inert: return "inert";
    case LayerKind::Unramified: return "unramified";
    case LayerKind::UnramifiedUnknown: return "unramified-unknown";
    case LayerKind::TameRamified: return "tame-ramified";
    case LayerKind::WildRamified: return "wild-ramified";
    case LayerKind::Indeterminate: return "indeterminate";
    }
    return "?";
}

const char* to_string(LocalVerdict::Kind k)
{
    switch (k) {
    case LocalVerdict::Kind::Solvable: return "Solvable";
    case LocalVerdict::Kind::Unsolvable: return "Unsolvable";
    case LocalVerdict::Kind::Indeterminate: return "Indeterminate";
    }
    return "?";
}

namespace {

bool power_in_extension(const FiniteField& F, const FiniteField::Elem& a, long f_rel, const Integer& t)
{
    Integer N = ipow(F.order(), static_cast<unsigned long>(f_rel));
    if ((N - 1) % t != 0) return true;
    return F.is_one(F.pow(a, (N - 1) / t));
}

// class of u modulo t-th powers at the current level is represented by its K-level unit part
bool class_known(const LocalPrime& lp, const TrackedValue& tv, unsigned t)
{
    if (!tv.unit_residue) return false;
    if (lp.e_rel == 1 && lp.e_exact) return true;
    return tv.val.value() % static_cast<long>(t) == 0;
}

LocalPrime child_of(const LocalPrime& lp, long e_mul, long f_mul, const std::string& note)
{
    LocalPrime c = lp;
    c.e_rel *= e_mul;
    c.f_rel *= f_mul;
    c.trace.push_back(note);
    return c;
}

LayerResult indeterminate(const LocalPrime& lp, const std::string& why, bool unramified)
{
    LocalPrime c = lp;
    if (!unramified) c.e_exact = false;
    c.f_exact = false;
    c.trace.push_back("indeterminate: " + why);
    return {unramified ? LayerKind::UnramifiedUnknown : LayerKind::Indeterminate, why, {c}};
}

std::string label(const std::string& u, unsigned t, const std::string& what)
{
    std::ostringstream os;
    os << "radical " << u << "^(1/" << t << "): " << what;
    return os.str();
}

}  // namespace

LayerResult classify_layer(const LocalPrime& lp, const std::string& u, unsigned t)
{
    const TrackedValue& tv = lp.value(u);
    if (tv.val.is_infinite()) fail(ErrorCode::DegenerateRadicand, "radicand '" + u + "' is zero");
    if (t < 2) fail(ErrorCode::InvalidArgument, "radical degree must be at least 2");
    const LocalContext& ctx = *lp.ctx;
    Integer T(t);
    bool wild = lp.p() % T == 0;
    std::optional<long> v = lp.current_valuation(u);
    long vK = tv.val.value();

    if (wild && !(is_prime(T) && T == lp.p()))
        return indeterminate(lp, "residue characteristic divides a composite radical degree", false);

    if (!v) {
        if ((lp.e_rel * vK) % static_cast<long>(t) != 0) return indeterminate(lp, "ramification index unknown", false);
        v = 0;  // only the residue mod t matters below
    }
    long vv = *v;
    if (vv % static_cast<long>(t) != 0) {
        if (std::gcd(mod_floor(vv, t), static_cast<long>(t)) == 1) {
            std::string r = label(u, t, wild ? "totally ramified (wild), valuation prime to degree"
                                             : "totally ramified, valuation prime to degree");
            return {wild ? LayerKind::WildRamified : LayerKind::TameRamified, r, {child_of(lp, t, 1, r)}};
        }
        return indeterminate(lp, "valuation shares a factor with the radical degree", false);
    }

    // v ≡ 0 mod t
    if (!class_known(lp, tv, t)) return indeterminate(lp, "unit class lost in an earlier ramified layer", !wild);

    if (!wild) {
        if (!lp.f_exact) return indeterminate(lp, "residue degree unknown", true);
        const FiniteField& F = ctx.F;
        Integer o = F.order_of(*tv.unit_residue);
        Integer N = lp.residue_order();
        std::map<Integer, long> degs;
        for (unsigned s = 0; s < t; ++s) {
            Integer to = T * o;
            Integer m = to / gcd(Integer(1 + o * s), to);
            degs[multiplicative_order(N % m, m)]++;
        }
        LayerResult res;
        bool all_one = degs.size() == 1 && degs.begin()->first == 1;
        bool one_inert = degs.size() == 1 && degs.begin()->first == T;
        if (all_one) {
            std::string r = label(u, t, "splits completely, unit residue is a power");
            res.kind = LayerKind::Split;
            res.rule = r;
            for (unsigned i = 0; i < t; ++i) res.children.push_back(child_of(lp, 1, 1, r));
        } else if (one_inert) {
            std::string r = label(u, t, "inert, unit residue is not a power");
            res.kind = LayerKind::Inert;
            res.rule = r;
            res.children.push_back(child_of(lp, 1, t, r));
        } else {
            std::ostringstream os;
            os << "unramified with residue degrees";
            for (auto& [d, cnt] : degs) os << " " << d.get_str() << "^" << cnt / d.get_si();
            std::string r = label(u, t, os.str());
            res.kind = LayerKind::Unramified;
            res.rule = r;
            for (auto& [d, cnt] : degs)
                for (long i = 0; i < cnt / d.get_si(); ++i) res.children.push_back(child_of(lp, 1, d.get_si(), r));
        }
        return res;
    }

    // residue characteristic equals q = t
    long eK = static_cast<long>(ctx.P.e);
    long q = static_cast<long>(t);
    if (!ctx.zeta) return indeterminate(lp, "no q-th roots of unity in the base field at a prime above q", false);
    if (tv.w_minus_one >= Ord(3 * eK)) {
        std::string r = label(u, t, "splits completely, unit is 1 mod q^3");
        LayerResult res{LayerKind::Split, r, {}};
        for (long i = 0; i < q; ++i) res.children.push_back(child_of(lp, 1, 1, r));
        return res;
    }
    if (!tv.w_minus_one.is_infinite() && (q - 1) * tv.w_minus_one.value() >= q * eK && tv.as_residue) {
        if (!lp.f_exact) return indeterminate(lp, "residue degree unknown", true);
        u64 tr = ctx.F.trace(*tv.as_residue);
        u64 total = static_cast<u64>(mod_floor(static_cast<long>(tr) * lp.f_rel, q));
        if (total == 0) {
            std::string r = label(u, t, "splits completely, Artin-Schreier trace vanishes");
            LayerResult res{LayerKind::Split, r, {}};
            for (long i = 0; i < q; ++i) res.children.push_back(child_of(lp, 1, 1, r));
            return res;
        }
        std::string r = label(u, t, "inert, Artin-Schreier trace nonzero");
        return {LayerKind::Inert, r, {child_of(lp, 1, q, r)}};
    }
    return indeterminate(lp, "wild ramification not modelled", false);
}

std::vector<LocalPrime> extend_by_radical(const LocalPrime& lp, const std::string& u, unsigned q)
{
    return classify_layer(lp, u, q).children;
}

LocalVerdict local_norm_solvable(const LocalPrime& lp, const std::string& rhs, const std::string& c, unsigned q)
{
    const TrackedValue& tr = lp.value(rhs);
    if (tr.val.is_infinite()) return LocalVerdict::solvable("right-hand side is zero");
    LayerResult layer = classify_layer(lp, c, q);
    std::optional<long> vr = lp.current_valuation(rhs);
    long qq = static_cast<long>(q);
    switch (layer.kind) {
    case LayerKind::Split: return LocalVerdict::solvable("split layer");
    case LayerKind::Inert:
        if (!vr) {
            if (tr.val.value() % qq == 0) return LocalVerdict::solvable("inert layer, v(rhs) divisible by q; unit norms assumed");
            return LocalVerdict::indeterminate("inert layer with unknown ramification below");
        }
        if (*vr % qq == 0) return LocalVerdict::solvable("inert layer, v(rhs) divisible by q; unit norms assumed");
        return LocalVerdict::unsolvable("inert layer and v(rhs) = " + std::to_string(*vr) + " not divisible by q");
    case LayerKind::UnramifiedUnknown:
        if ((vr && *vr % qq == 0) || tr.val.value() % qq == 0)
            return LocalVerdict::solvable("unramified layer, v(rhs) divisible by q; unit norms assumed");
        return LocalVerdict::indeterminate("unramified layer with unknown splitting");
    case LayerKind::Unramified:
        if (!lp.ctx->zeta) return LocalVerdict::indeterminate("layer is not cyclic (no q-th roots of unity)");
        if (vr && *vr % qq == 0) return LocalVerdict::solvable("unramified layer, v(rhs) divisible by q");
        return LocalVerdict::indeterminate("unramified non-cyclic pattern");
    case LayerKind::TameRamified: {
        if (!lp.ctx->zeta) return LocalVerdict::indeterminate("layer is not cyclic (no q-th roots of unity)");
        if (!lp.f_exact) return LocalVerdict::indeterminate("residue degree unknown");
        const TrackedValue& tc = lp.value(c);
        // j with v(rhs) ≡ j v(c) (mod q), at K level
        long vc = mod_floor(tc.val.value(), qq), vrk = mod_floor(tr.val.value(), qq);
        long j = 0;
        while ((j * vc - vrk) % qq != 0) ++j;
        const FiniteField& F = lp.ctx->F;
        FiniteField::Elem uc = *tc.unit_residue;
        if (q % 2 == 0) uc = F.neg(uc);
        FiniteField::Elem target = F.mul(*tr.unit_residue, F.pow(F.inv(uc), j));
        if (power_in_extension(F, target, lp.f_rel, Integer(q)))
            return LocalVerdict::solvable("tame ramified layer, normalized unit residue is a q-th power");
        return LocalVerdict::unsolvable("tame ramified layer, normalized unit residue is not a q-th power");
    }
    case LayerKind::WildRamified: return LocalVerdict::indeterminate("wild ramified layer");
    case LayerKind::Indeterminate: return LocalVerdict::indeterminate(layer.rule);
    }
    return LocalVerdict::indeterminate("unreachable");
}

LocalVerdict archimedean_check(const NumberField& K, const FieldElement& c, const FieldElement& rhs, unsigned q,
                               const std::vector<FieldElement>& radicands)
{
    if (q != 2) return LocalVerdict::solvable("no real places in degree q > 2 layers");
    for (auto iv : K.real_roots()) {
        auto sign = [&](const FieldElement& a) { return sign_at_root(K.poly(), iv, a.poly()); };
        bool survives = true;
        for (auto& r : radicands)
            if (sign(r) <= 0) survives = false;
        if (!survives) continue;
        if (sign(c) < 0 && sign(rhs) < 0)
            return LocalVerdict::unsolvable("real place with c < 0 and rhs < 0");
    }
    return LocalVerdict::solvable("all real places compatible");
}

}  // namespace normforge
