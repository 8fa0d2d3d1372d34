#include "normforge/tree/factor_tree.hpp"

#include "normforge/error.hpp"
#include "normforge/local/local_prime.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace normforge {

std::vector<std::size_t> FactorTree::children(std::size_t id) const
{
    std::vector<std::size_t> out;
    int lv = nodes[id].level + 1;
    if (lv >= static_cast<int>(levels.size())) return out;
    for (std::size_t c : levels[lv])
        if (nodes[c].parent == id) out.push_back(c);
    return out;
}

int FactorTree::complete_depth() const
{
    int d = static_cast<int>(levels.size()) - 1;
    for (auto& n : nodes)
        if (n.truncated) d = std::min(d, n.level);
    return d;
}

const char* to_string(BoundednessCertificate::Kind k)
{
    switch (k) {
    case BoundednessCertificate::Kind::QUnboundedUpToDepth: return "qUnboundedUpToDepth";
    case BoundednessCertificate::Kind::QBounded: return "qBounded";
    case BoundednessCertificate::Kind::CompletelyQBounded: return "completelyQBounded";
    }
    return "?";
}

namespace {

Integer order_mod(const Integer& p, const Integer& N)
{
    Integer o = 1;
    for (auto& [r, k] : factor_integer(N)) o = lcm(o, multiplicative_order(p, ipow(r, k)));
    return o;
}

Integer phi_of(const Integer& N)
{
    Integer phi = 1;
    for (auto& [r, k] : factor_integer(N)) phi *= (r - 1) * ipow(r, k - 1);
    return phi;
}

long to_long(const Integer& n)
{
    if (!n.fits_slong_p()) fail(ErrorCode::InvalidArgument, "local degree exceeds machine range");
    return n.get_si();
}

std::size_t add_node(FactorTree& t, int level, std::optional<std::size_t> parent, long e, long f, std::string rule)
{
    std::size_t id = t.nodes.size();
    t.nodes.push_back({id, level, parent, e, f, std::move(rule), false});
    if (static_cast<int>(t.levels.size()) <= level) t.levels.resize(level + 1);
    t.levels[level].push_back(id);
    return id;
}

void check_conservation(const FactorTree& t)
{
    for (std::size_t L = 0; L < t.levels.size(); ++L) {
        bool complete = true;
        for (std::size_t M = 0; M < L; ++M)
            for (std::size_t id : t.levels[M])
                if (t.nodes[id].truncated) complete = false;
        if (!complete) break;
        Integer sum = 0;
        for (std::size_t id : t.levels[L]) sum += t.local_degree(id);
        if (sum != t.level_degrees[L])
            fail(ErrorCode::ConclusionViolation, "degree conservation fails at level " + std::to_string(L) + ": " +
                                                     sum.get_str() + " != " + t.level_degrees[L].get_str());
    }
}

FactorTree grow_cyclotomic(const TowerRecipe& r, FactorTree t, int D, std::size_t max_nodes)
{
    const Integer& p = t.p;
    add_node(t, 0, std::nullopt, 1, 1, "base");
    Integer N = 1, g_prev = 1;
    for (int k = 1; k <= D; ++k) {
        N = lcm(N, Integer(static_cast<unsigned long>(r.steps[k - 1].n)));
        Integer pa = 1, rest = N;
        while (rest % p == 0) {
            rest /= p;
            pa *= p;
        }
        Integer e = pa == 1 ? Integer(1) : phi_of(pa);
        Integer f = rest == 1 ? Integer(1) : order_mod(p, rest);
        Integer phi = phi_of(N);
        if (phi % (e * f) != 0) fail(ErrorCode::ConclusionViolation, "cyclotomic e*f does not divide phi(N)");
        Integer g = phi / (e * f);
        if (g % g_prev != 0) fail(ErrorCode::ConclusionViolation, "prime count does not grow multiplicatively");
        Integer per = g / g_prev;
        std::string rule = "zeta_" + N.get_str() + ": e=" + e.get_str() + " f=" + f.get_str() + " g=" + g.get_str();
        std::vector<std::size_t> parents = t.levels[k - 1];
        if (!t.representative_only && Integer(static_cast<unsigned long>(t.nodes.size())) +
                                              per * static_cast<unsigned long>(parents.size()) >
                                          static_cast<unsigned long>(max_nodes)) {
            t.representative_only = true;
            t.flags.push_back("node cap reached at level " + std::to_string(k) + "; one representative child per node");
        }
        long count = t.representative_only ? 1 : to_long(per);
        for (std::size_t par : parents)
            for (long c = 0; c < count; ++c) add_node(t, k, par, to_long(e), to_long(f), rule);
        t.flags.push_back("level " + std::to_string(k) + " " + rule);
        g_prev = g;
    }
    if (!t.representative_only) check_conservation(t);
    return t;
}

struct NodeState {
    std::optional<LocalPrime> lp;
    std::map<std::size_t, std::pair<Integer, long>> alpha;  // step -> (p-adic approximation, precision)
};

struct PolyFactorLocal {
    long degree;
    std::optional<std::pair<Integer, long>> root;
    bool eisenstein = false;  // totally ramified factor of this degree
};

bool eisenstein_at(const UniPoly& f, const Integer& p)
{
    for (std::size_t k = 0; k < f.deg(); ++k)
        if (f.coeff(k).get_num() % p != 0) return false;
    return f.coeff(0).get_num() % (p * p) != 0;
}

// Factorization of f over Q_p, when decidable.
std::optional<std::vector<PolyFactorLocal>> local_algebra(const RecipeStep& s, const Integer& p, std::string& rule)
{
    const UniPoly& f = s.poly;
    UniPoly df = f.derivative();
    auto it = s.split_roots.find(p);
    if (it != s.split_roots.end() && it->second.size() == f.deg()) {
        std::vector<PolyFactorLocal> out;
        std::vector<long> prec;
        bool ok = true;
        for (auto& r0 : it->second) {
            Ord kf = vp(f.eval(Rational(r0)), p), kd = vp(df.eval(Rational(r0)), p);
            if (kd.is_infinite()) { ok = false; break; }
            long k = kf.is_infinite() ? 1000 : kf.value() - kd.value();
            if (k <= kd.value()) { ok = false; break; }
            prec.push_back(k);
            out.push_back({1, std::make_pair(r0, k)});
        }
        for (std::size_t i = 0; ok && i < out.size(); ++i)
            for (std::size_t j = i + 1; j < out.size(); ++j)
                if (vp(Integer(out[i].root->first - out[j].root->first), p) >= std::min(prec[i], prec[j])) ok = false;
        if (ok) {
            rule = "splits completely over Q_" + p.get_str() + " (Hensel certificate)";
            return out;
        }
    }
    if (eisenstein_at(f, p)) {
        rule = "Eisenstein at " + p.get_str();
        return std::vector<PolyFactorLocal>{{static_cast<long>(f.deg()), std::nullopt, true}};
    }
    auto fac = factor_poly_mod_p(f, p);
    for (auto& g : fac)
        if (g.multiplicity != 1) {
            rule = "not squarefree mod " + p.get_str();
            return std::nullopt;
        }
    const unsigned m = 30;
    auto lifts = hensel_lift_factorization(f, p, m);
    std::vector<PolyFactorLocal> out;
    for (auto& g : lifts) {
        PolyFactorLocal pf{static_cast<long>(g.deg()), std::nullopt};
        if (g.deg() == 1) pf.root = std::make_pair(Integer(-g.coeff(0).get_num()), static_cast<long>(m));
        out.push_back(pf);
    }
    rule = "squarefree mod " + p.get_str() + ", unramified";
    return out;
}

unsigned context_prime(const TowerRecipe& r, const Integer& p)
{
    for (auto& s : r.steps)
        if (s.kind == RecipeStep::Kind::Radical && Integer(s.degree) % p == 0) return static_cast<unsigned>(p.get_ui());
    for (auto& s : r.steps)
        if (s.kind == RecipeStep::Kind::Radical)
            for (unsigned d = 2; d <= s.degree; ++d)
                if (s.degree % d == 0) return d;
    return 2;
}

// Bound below which the p-adic evaluation of the radicand at the node is exact.
std::optional<long> error_valuation(const LocalContext& ctx, const RadicandExpr& rad, const std::pair<Integer, long>& a)
{
    std::optional<long> mn;
    for (auto& c : rad.coeffs) {
        if (c.is_zero()) continue;
        long v = valuation(ctx.K, ctx.P, c).value();
        mn = mn ? std::min(*mn, v) : v;
    }
    if (!mn) return std::nullopt;
    return static_cast<long>(ctx.P.e) * a.second + *mn;
}

FactorTree grow_mixed(const TowerRecipe& r, FactorTree t, int D, std::size_t max_nodes)
{
    const Integer& p = t.p;
    const NumberField& K = r.anchor;
    unsigned cq = context_prime(r, p);
    std::map<std::string, FieldElement> anchored;
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const RecipeStep& s = r.steps[i];
        if (s.kind == RecipeStep::Kind::Radical && !s.radicand->alpha_step)
            anchored.emplace("s" + std::to_string(i), s.radicand->coeffs[0]);
    }
    std::vector<NodeState> st;
    auto local_at = [&](const PrimeIdeal& P) {
        return make_local_prime(make_local_context(K, P, cq), anchored);
    };

    add_node(t, 0, std::nullopt, 1, 1, "base");
    st.push_back({});
    std::size_t first = 0;
    if (r.steps[0].kind == RecipeStep::Kind::Radical) {
        st[0].lp = local_at(splitting_type(K, p)[0]);
    } else {
        first = 1;
        if (D >= 1) {
            for (auto& P : splitting_type(K, p)) {
                add_node(t, 1, 0, P.e, P.f, "prime " + P.str() + " of " + K.name());
                st.push_back({local_at(P), {}});
            }
        }
    }

    for (std::size_t i = first; static_cast<int>(i) < D; ++i) {
        const RecipeStep& s = r.steps[i];
        int lv = static_cast<int>(i) + 1;
        std::vector<std::size_t> parents = lv - 1 < static_cast<int>(t.levels.size()) ? t.levels[lv - 1]
                                                                                       : std::vector<std::size_t>{};
        if (parents.empty()) break;
        std::optional<std::vector<PolyFactorLocal>> alg;
        std::string alg_rule;
        if (s.kind == RecipeStep::Kind::Polynomial) alg = local_algebra(s, p, alg_rule);

        struct Pending {
            std::size_t parent;
            LocalPrime lp;
            std::map<std::size_t, std::pair<Integer, long>> alpha;
            std::string rule;
        };
        std::vector<Pending> pend;
        for (std::size_t par : parents) {
            if (t.nodes[par].truncated) continue;
            NodeState& ns = st[par];
            const LocalPrime& lp = *ns.lp;
            auto truncate = [&](const std::string& why) {
                t.nodes[par].truncated = true;
                t.flags.push_back("IndeterminateLayer below node " + std::to_string(par) + ": " + why);
            };
            if (s.kind == RecipeStep::Kind::Polynomial) {
                if (!alg) {
                    truncate(alg_rule);
                    continue;
                }
                if (alg->size() == 1 && alg->front().eisenstein) {
                    // an unramified node and a totally ramified extension of Q_p are linearly disjoint
                    if (lp.e() != 1) {
                        truncate("Eisenstein step over a ramified node");
                        continue;
                    }
                    LocalPrime child = lp;
                    child.e_rel *= alg->front().degree;
                    pend.push_back({par, child, ns.alpha, alg_rule + ", totally ramified"});
                    continue;
                }
                for (auto& fac : *alg) {
                    long cnt = std::gcd(fac.degree, lp.f());
                    long mult = fac.degree / cnt;
                    for (long c = 0; c < cnt; ++c) {
                        LocalPrime child = lp;
                        child.f_rel *= mult;
                        auto alpha = ns.alpha;
                        if (fac.root) alpha[i] = *fac.root;
                        pend.push_back({par, child, alpha, alg_rule + (mult > 1 ? ", f*" + std::to_string(mult) : "")});
                    }
                }
                continue;
            }
            LocalPrime cur = lp;
            std::string id = "s" + std::to_string(i);
            if (s.radicand->alpha_step) {
                auto a = ns.alpha.find(*s.radicand->alpha_step);
                if (a == ns.alpha.end()) {
                    truncate("radicand depends on a root not embedded in Q_" + p.get_str());
                    continue;
                }
                const LocalContext& ctx = *lp.ctx;
                FieldElement u = K.zero();
                Rational pw = 1;
                for (auto& c : s.radicand->coeffs) {
                    u = u + c * pw;
                    pw *= Rational(a->second.first);
                }
                auto margin = error_valuation(ctx, *s.radicand, a->second);
                TrackedValue tv = track_element(ctx, u);
                long need = 3 * lp.e() * static_cast<long>(s.degree) + 2;
                if (!margin || tv.val.is_infinite() || tv.val.value() + need >= *margin) {
                    truncate("root approximation too coarse");
                    continue;
                }
                long v = tv.val.value();
                if (ctx.P.p == ctx.q && tv.w_minus_one >= Ord(*margin - v)) {
                    tv.w_minus_one = Ord(*margin - v);
                    if (ctx.lambda) tv.as_residue = FiniteField::Elem{};
                }
                cur.tracked[id] = tv;
            }
            LayerResult res;
            try {
                res = classify_layer(cur, id, s.degree);
            } catch (const Error& e) {
                truncate(e.what());
                continue;
            }
            if (res.kind == LayerKind::Indeterminate || res.kind == LayerKind::UnramifiedUnknown) {
                truncate(std::string(to_string(res.kind)) + ": " + res.rule);
                continue;
            }
            for (auto& c : res.children) pend.push_back({par, c, ns.alpha, std::string(to_string(res.kind)) + ": " + res.rule});
        }
        if (t.nodes.size() + pend.size() > max_nodes) {
            for (std::size_t par : parents) t.nodes[par].truncated = true;
            t.flags.push_back("node cap reached at level " + std::to_string(lv));
            break;
        }
        for (auto& pn : pend) {
            add_node(t, lv, pn.parent, pn.lp.e(), pn.lp.f(), pn.rule);
            st.push_back({pn.lp, pn.alpha});
        }
    }
    check_conservation(t);
    return t;
}

}  // namespace

FactorTree grow_tree(const TowerRecipe& recipe, const Integer& p, int depth, std::size_t max_nodes)
{
    require_prime(p);
    if (depth < 0) fail(ErrorCode::InvalidArgument, "depth must be non-negative");
    FactorTree t;
    t.p = p;
    t.recipe = recipe.name;
    t.depth = depth;
    int D = std::min<int>(depth, static_cast<int>(recipe.steps.size()));
    if (D < depth) t.flags.push_back("recipe has only " + std::to_string(recipe.steps.size()) + " steps");
    auto deg = recipe.level_degrees();
    t.level_degrees.assign(deg.begin(), deg.begin() + D + 1);
    if (D == 0 || recipe.cyclotomic()) return grow_cyclotomic(recipe, std::move(t), D, max_nodes);
    TowerRecipe r = recipe;
    resolve_recipe(r);
    return grow_mixed(r, std::move(t), D, max_nodes);
}

BoundednessCertificate classify_prime(const FactorTree& tree, unsigned q, long threshold)
{
    require_prime(Integer(q));
    BoundednessCertificate c{BoundednessCertificate::Kind::QUnboundedUpToDepth, q, tree.complete_depth(), {}, -1, -1, {}, {}};
    const int D = c.depth;
    std::vector<long> ord(tree.nodes.size());
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) ord[i] = vp(Integer(tree.local_degree(i)), Integer(q));
    for (int L = 1; L <= D; ++L) {
        long m = -1;
        for (std::size_t id : tree.levels[L]) m = m < 0 ? ord[id] : std::min(m, ord[id]);
        c.min_order_sequence.push_back(m);
    }
    if (D < tree.depth) c.notes.push_back("examined to depth " + std::to_string(D) + " of " + std::to_string(tree.depth));
    if (tree.representative_only) c.notes.push_back("levels are Galois-symmetric; one branch per node examined");
    c.notes.push_back("hereditary condition checked along the recipe chain only");

    auto leftmost = [&]() {
        std::vector<std::size_t> path{0};
        while (static_cast<int>(path.size()) <= D) {
            auto ch = tree.children(path.back());
            if (ch.empty()) break;
            path.push_back(ch.front());
        }
        return path;
    };
    auto ancestor = [&](std::size_t id, int level) {
        while (tree.nodes[id].level > level) id = *tree.nodes[id].parent;
        return id;
    };

    if (D == 0) {
        c.kind = BoundednessCertificate::Kind::CompletelyQBounded;
        c.bounding_level = 0;
        c.bounding_order = 0;
        c.witness_path = {0};
        c.notes.push_back("depth 0: vacuous");
        return c;
    }
    for (int i = 0; i < D; ++i) {
        bool ok = true;
        for (int L = i + 1; L <= D && ok; ++L)
            for (std::size_t id : tree.levels[L])
                if (ord[id] != ord[ancestor(id, i)]) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        c.kind = BoundednessCertificate::Kind::CompletelyQBounded;
        c.bounding_level = i;
        c.bounding_order = 0;
        for (std::size_t id : tree.levels[i]) c.bounding_order = std::max(c.bounding_order, ord[id]);
        c.witness_path = leftmost();
        return c;
    }

    std::vector<std::size_t> path;
    std::function<bool(std::size_t)> dfs = [&](std::size_t id) {
        if (threshold >= 0 && ord[id] >= threshold) return false;
        path.push_back(id);
        if (tree.nodes[id].level == D) {
            if (ord[path[D - 1]] == ord[id]) return true;
        } else {
            for (std::size_t ch : tree.children(id))
                if (dfs(ch)) return true;
        }
        path.pop_back();
        return false;
    };
    if (dfs(0)) {
        int i = D - 1;
        while (i > 0 && ord[path[i - 1]] == ord[path[D]]) --i;
        c.kind = BoundednessCertificate::Kind::QBounded;
        c.bounding_level = i;
        c.bounding_order = ord[path[i]];
        c.witness_path = path;
        return c;
    }
    return c;
}

}  // namespace normforge
