#include "normforge/compiler/compiler.hpp"

#include "normforge/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace normforge {

namespace {

// Laplace expansion along rows, memoized on the set of used columns.
MPoly determinant(const std::vector<std::vector<MPoly>>& M)
{
    std::size_t n = M.size();
    std::map<std::uint64_t, MPoly> memo;
    std::function<MPoly(std::size_t, std::uint64_t)> rec = [&](std::size_t row, std::uint64_t used) -> MPoly {
        if (row == n) return MPoly::constant(1);
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        MPoly s;
        int sign = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (used >> j & 1) continue;
            if (!M[row][j].is_zero()) {
                MPoly t = M[row][j] * rec(row + 1, used | (std::uint64_t{1} << j));
                if (sign > 0) s += t;
                else s -= t;
            }
            sign = -sign;
        }
        memo.emplace(used, s);
        return s;
    };
    return rec(0, 0);
}

std::string poly_text(const MPoly& p, const std::vector<std::string>& names)
{
    std::string s = p.str(names);
    return p.size() > 1 ? "(" + s + ")" : s;
}

}  // namespace

MPoly coordinate_norm_poly(unsigned q)
{
    require_prime(Integer(q));
    if (q > 31) fail(ErrorCode::InvalidArgument, "q too large for the norm form");
    std::uint32_t C = q, Z = q + 1;
    std::vector<std::vector<MPoly>> M(q, std::vector<MPoly>(q));
    for (unsigned i = 0; i < q; ++i)
        for (unsigned j = 0; j < q; ++j)
            M[i][j] = i >= j ? MPoly::var(i - j) : MPoly::var(C) * MPoly::var(i + q - j);
    return determinant(M) - MPoly::var(Z);
}

const char* to_string(Variable::Role r)
{
    switch (r) {
    case Variable::Role::Existential: return "existential";
    case Variable::Role::Universal: return "universal";
    case Variable::Role::Free: return "free";
    case Variable::Role::Parameter: return "parameter";
    case Variable::Role::Auxiliary: return "auxiliary";
    }
    return "?";
}

std::uint32_t PolynomialSystem::add_var(std::string name, Variable::Role role, std::string provenance)
{
    if (find(name)) fail(ErrorCode::InvalidArgument, "variable '" + name + "' already registered");
    vars.push_back({std::move(name), role, std::move(provenance)});
    return static_cast<std::uint32_t>(vars.size() - 1);
}

std::optional<std::uint32_t> PolynomialSystem::find(const std::string& name) const
{
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

std::uint32_t PolynomialSystem::index(const std::string& name) const
{
    auto i = find(name);
    if (!i) fail(ErrorCode::InvalidArgument, "unknown variable '" + name + "'");
    return *i;
}

std::vector<std::string> PolynomialSystem::names() const
{
    std::vector<std::string> n;
    for (auto& v : vars) n.push_back(v.name);
    return n;
}

std::size_t PolynomialSystem::count(Variable::Role r) const
{
    return static_cast<std::size_t>(std::count_if(vars.begin(), vars.end(), [&](auto& v) { return v.role == r; }));
}

std::size_t PolynomialSystem::term_count() const
{
    std::size_t n = 0;
    for (auto& e : equations) n += e.size();
    return n;
}

void PolynomialSystem::add_equation(MPoly e, std::string why)
{
    equations.push_back(std::move(e));
    trace.push_back(std::move(why));
}

void PolynomialSystem::validate() const
{
    if (trace.size() != equations.size()) fail(ErrorCode::InvalidArgument, "trace does not cover every equation");
    auto check = [&](const MPoly& p) {
        for (auto v : p.variables())
            if (v >= vars.size()) fail(ErrorCode::InvalidArgument, "unregistered variable index " + std::to_string(v));
    };
    for (auto& e : equations) check(e);
    for (auto& a : nonzero)
        for (auto& p : a) check(p);
    for (auto& [k, ps] : named)
        for (auto& p : ps) check(p);
}

Layer radical_layer(std::string name, unsigned q, MPoly num, MPoly den, std::vector<std::string> expand)
{
    Layer L;
    L.name = std::move(name);
    L.degree = q;
    L.relation.assign(q, MPoly());
    L.relation[0] = std::move(num);
    L.den = std::move(den);
    L.expand = std::move(expand);
    return L;
}

Layer cyclotomic_layer(std::string name, unsigned q, std::vector<std::string> expand)
{
    require_prime(Integer(q));
    if (q == 2) fail(ErrorCode::InvalidArgument, "the square root of unity is rational");
    Layer L;
    L.name = std::move(name);
    L.degree = q - 1;
    L.relation.assign(q - 1, MPoly::constant(-1));  // Ξ^{q-1} = -(1 + Ξ + ... + Ξ^{q-2})
    L.den = MPoly::constant(1);
    L.expand = std::move(expand);
    return L;
}

namespace {

struct Reduced {
    std::vector<MPoly> coeffs;
    MPoly multiplier;   // coeffs = multiplier * E mod the relation
    std::string text;
};

bool is_radical(const Layer& L)
{
    for (std::size_t k = 1; k < L.relation.size(); ++k)
        if (!L.relation[k].is_zero()) return false;
    return true;
}

Reduced reduce(const MPoly& E, std::uint32_t G, const Layer& L, const std::vector<std::string>& names)
{
    unsigned n = L.degree;
    auto cs = E.coefficients_in(G);
    Reduced r;
    r.coeffs.assign(n, MPoly());
    if (L.den == MPoly::constant(1)) {
        for (std::size_t k = cs.size(); k-- > n;) {
            if (cs[k].is_zero()) continue;
            for (unsigned j = 0; j < n; ++j)
                if (!L.relation[j].is_zero()) cs[k - n + j] += cs[k] * L.relation[j];
            cs[k] = MPoly();
        }
        for (std::size_t k = 0; k < std::min<std::size_t>(n, cs.size()); ++k) r.coeffs[k] = cs[k];
        r.multiplier = MPoly::constant(1);
        r.text = "multiplier 1";
        return r;
    }
    if (!is_radical(L)) fail(ErrorCode::InvalidArgument, "non-radical relations need a unit denominator");
    std::size_t m = (cs.size() - 1) / n;
    std::vector<MPoly> np{MPoly::constant(1)}, dp{MPoly::constant(1)};
    for (std::size_t k = 1; k <= m; ++k) {
        np.push_back(np.back() * L.relation[0]);
        dp.push_back(dp.back() * L.den);
    }
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero()) continue;
        std::size_t h = k / n;
        r.coeffs[k % n] += cs[k] * np[h] * dp[m - h];
    }
    r.multiplier = dp[m];
    r.text = m ? "multiplier " + poly_text(L.den, names) + (m > 1 ? "^" + std::to_string(m) : "") : "multiplier 1";
    if (m && L.den.size() == 1) {
        // drop the common monomial factor in the denominator's variables
        std::set<std::uint32_t> dv = L.den.variables();
        std::map<std::uint32_t, std::uint32_t> g;
        bool any = false;
        for (auto& c : r.coeffs) {
            if (c.is_zero()) continue;
            auto mono = c.monomial_content(dv);
            std::map<std::uint32_t, std::uint32_t> cur(mono.begin(), mono.end());
            if (!any) g = cur;
            else
                for (auto& [v, e] : g) e = std::min(e, cur.count(v) ? cur[v] : 0u);
            any = true;
        }
        auto mm = r.multiplier.monomial_content(dv);
        std::map<std::uint32_t, std::uint32_t> cap(mm.begin(), mm.end());
        MPoly::Mono content;
        for (auto& [v, e] : g)
            if (std::min(e, cap[v])) content.push_back({v, std::min(e, cap[v])});
        if (!content.empty()) {
            for (auto& c : r.coeffs) c = c.divide_monomial(content);
            r.multiplier = r.multiplier.divide_monomial(content);
            r.text += " / " + mono_str(content, names);
        }
    }
    return r;
}

}  // namespace

PolynomialSystem descend_layer(const PolynomialSystem& sys, const Layer& L, std::size_t term_budget)
{
    if (L.degree < 2 || L.relation.size() != L.degree) fail(ErrorCode::InvalidArgument, "malformed layer");
    if (L.den.is_zero()) fail(ErrorCode::DegenerateLayer, "layer " + L.name + " has a zero denominator");
    if (is_radical(L) && L.relation[0].is_zero()) fail(ErrorCode::DegenerateLayer, "layer " + L.name + " has a zero radicand");

    PolynomialSystem out = sys;
    std::set<std::uint32_t> expanded;
    for (auto& nm : L.expand) expanded.insert(out.index(nm));
    for (auto& p : L.relation)
        for (auto v : p.variables())
            if (expanded.count(v)) fail(ErrorCode::InvalidArgument, "layer relation involves an expanded variable");
    for (auto v : L.den.variables())
        if (expanded.count(v)) fail(ErrorCode::InvalidArgument, "layer relation involves an expanded variable");

    std::uint32_t G = out.add_var("#" + L.name, Variable::Role::Auxiliary, "layer generator");
    std::map<std::uint32_t, MPoly> subst;
    for (auto v : expanded) {
        MPoly s;
        for (unsigned j = 0; j < L.degree; ++j) {
            std::uint32_t nv = out.add_var(out.vars[v].name + "_" + std::to_string(j), out.vars[v].role,
                                           L.name + " coordinate " + std::to_string(j) + " of " + out.vars[v].name);
            s += MPoly::var(nv) * MPoly::var(G, j);
        }
        subst[v] = s;
    }
    auto apply = [&](MPoly p) {
        for (auto& [v, s] : subst)
            if (p.degree_in(v)) p = p.substitute(v, s);
        return p;
    };
    std::vector<std::string> names = out.names();

    std::vector<MPoly> eqs;
    std::vector<std::string> tr;
    std::size_t terms = 0;
    for (std::size_t k = 0; k < out.equations.size(); ++k) {
        Reduced r = reduce(apply(out.equations[k]), G, L, names);
        for (unsigned i = 0; i < L.degree; ++i) {
            terms += r.coeffs[i].size();
            eqs.push_back(std::move(r.coeffs[i]));
            tr.push_back(L.name + ": coefficient of " + L.name + "^" + std::to_string(i) + " in [" + out.trace[k] +
                         "], " + r.text);
        }
        if (term_budget && terms > term_budget)
            fail(ErrorCode::SearchExhausted, "term budget exceeded while descending " + L.name);
    }
    auto collect = [&](const MPoly& p) {
        std::vector<MPoly> v;
        bool touches = false;
        for (auto x : p.variables()) touches = touches || expanded.count(x);
        if (!touches) return std::vector<MPoly>{p};
        for (auto& c : reduce(apply(p), G, L, names).coeffs)
            if (!c.is_zero()) v.push_back(c);
        return v;
    };
    std::vector<std::vector<MPoly>> nz;
    for (auto& atom : out.nonzero) {
        std::vector<MPoly> a;
        for (auto& p : atom)
            for (auto& c : collect(p)) a.push_back(c);
        nz.push_back(std::move(a));
    }
    std::map<std::string, std::vector<MPoly>> named;
    for (auto& [key, ps] : out.named) {
        if (ps.size() != 1) {
            bool touches = false;
            for (auto& p : ps)
                for (auto x : p.variables()) touches = touches || expanded.count(x);
            if (touches) fail(ErrorCode::InvalidArgument, "named expression expanded twice: " + key);
            named[key] = ps;
            continue;
        }
        bool touches = false;
        for (auto x : ps[0].variables()) touches = touches || expanded.count(x);
        if (!touches) {
            named[key] = ps;
            continue;
        }
        // coordinates, zeros kept so the position is meaningful
        named[key] = reduce(apply(ps[0]), G, L, names).coeffs;
    }

    // compact: drop the expanded variables and the generator
    std::vector<long> to(out.vars.size(), -1);
    PolynomialSystem res;
    for (std::size_t i = 0; i < out.vars.size(); ++i) {
        if (i == G || expanded.count(static_cast<std::uint32_t>(i))) continue;
        to[i] = static_cast<long>(res.vars.size());
        res.vars.push_back(out.vars[i]);
    }
    for (std::size_t k = 0; k < eqs.size(); ++k) res.add_equation(eqs[k].remap(to), std::move(tr[k]));
    for (auto& atom : nz) {
        std::vector<MPoly> a;
        for (auto& p : atom) a.push_back(p.remap(to));
        res.nonzero.push_back(std::move(a));
    }
    for (auto& [key, ps] : named)
        for (auto& p : ps) res.named[key].push_back(p.remap(to));
    res.history = out.history;
    std::string h = "descend " + L.name + " (degree " + std::to_string(L.degree) + ") expanding";
    for (auto& nm : L.expand) h += " " + nm;
    res.history.push_back(h);
    res.validate();
    return res;
}

std::vector<Rational> evaluate_system(const PolynomialSystem& sys, const std::map<std::string, Rational>& assignment)
{
    std::map<std::uint32_t, Rational> at;
    for (std::size_t i = 0; i < sys.vars.size(); ++i) {
        auto it = assignment.find(sys.vars[i].name);
        if (it == assignment.end())
            fail(ErrorCode::IncompleteAssignment, "no value for variable '" + sys.vars[i].name + "'");
        at[static_cast<std::uint32_t>(i)] = it->second;
    }
    std::vector<Rational> r;
    for (auto& e : sys.equations) r.push_back(e.eval(at));
    return r;
}

bool verify_witness(const PolynomialSystem& sys, const std::map<std::string, Rational>& assignment)
{
    for (auto& v : evaluate_system(sys, assignment))
        if (v != 0) return false;
    return true;
}

PolynomialSystem norm_equation_system(const NormSystemOptions& o)
{
    unsigned q = o.q;
    require_prime(Integer(q));
    PolynomialSystem s;
    for (unsigned i = 1; i <= q; ++i)
        s.add_var("U" + std::to_string(i), Variable::Role::Existential, "coordinate of y over the radical of " + o.z);
    std::uint32_t zi = s.add_var(o.z, o.yz_role, o.xda ? "radicand parameter" : "universally quantified radicand");
    std::uint32_t yi = s.add_var(o.y, o.yz_role, o.xda ? "pole parameter" : "universally quantified coefficient");
    std::uint32_t xi = s.add_var(o.x, Variable::Role::Free, "defined element");
    MPoly X = MPoly::var(xi), Y = MPoly::var(yi), Zc = MPoly::var(zi);
    MPoly rhs = Y * X.pow(q) + Y.pow(q);

    std::vector<long> to(q + 2);
    for (unsigned i = 0; i < q; ++i) to[i] = i;
    to[q] = zi;
    std::uint32_t tmp = static_cast<std::uint32_t>(s.vars.size());
    to[q + 1] = tmp;
    MPoly N = coordinate_norm_poly(q).remap(to).substitute(tmp, rhs);
    auto names = s.names();
    s.add_equation(N, "norm form N(U, " + o.z + ", " + rhs.str(names) + ")");
    s.history.push_back("Z := " + rhs.str(names));
    s.named["rhs"] = {rhs};
    s.named[o.x] = {X};
    s.named[o.y] = {Y};
    s.named[o.z] = {Zc};
    s.nonzero.push_back({Zc});
    s.nonzero.push_back({o.xda ? Y : X});
    s.nonzero.push_back({rhs});

    if (o.descend_radicals) {
        MPoly one = MPoly::constant(1);
        // indices move after each descent; rebuild the lower expressions from the carried names
        auto cur = [&](const std::string& k) { return s.named.at(k).at(0); };
        auto existential = [&] {
            std::vector<std::string> v;
            for (auto& var : s.vars)
                if (var.role == Variable::Role::Existential) v.push_back(var.name);
            return v;
        };
        const std::string base = o.xda ? o.y : o.x;
        MPoly Zb = cur(o.z), B0 = cur(base);
        s = descend_layer(s, radical_layer("G3", q, Zb * B0 + Zb * Zb + one, Zb * B0, existential()),
                          o.term_budget);
        MPoly R = cur("rhs");
        s = descend_layer(s, radical_layer("G2", q, R + one, R, existential()), o.term_budget);
        B0 = cur(base);
        s = descend_layer(s, radical_layer("G1", q, B0 + one, B0, existential()), o.term_budget);
    }
    if (o.descend_roots_of_unity && q > 2) {
        std::vector<std::string> ex;
        for (auto& var : s.vars)
            if (var.role != Variable::Role::Free) ex.push_back(var.name);
        s = descend_layer(s, cyclotomic_layer("XI", q, ex), o.term_budget);
    }
    s.validate();
    return s;
}

std::vector<Rational> kummer_power_witness(unsigned q, const Rational& w, const Rational& z)
{
    require_prime(Integer(q));
    if (w == 0) fail(ErrorCode::InvalidArgument, "w must be nonzero");
    // a_0 = (z + q - 1)/q, a_i w^i = (z - 1)/q
    std::vector<Rational> a(q);
    a[0] = (z + Rational(q - 1)) / Rational(q);
    Rational wp = 1;
    for (unsigned i = 1; i < q; ++i) {
        wp *= w;
        a[i] = (z - 1) / (Rational(q) * wp);
    }
    return a;
}

}  // namespace normforge
