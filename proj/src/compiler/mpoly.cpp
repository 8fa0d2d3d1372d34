#include "normforge/compiler/mpoly.hpp"

#include "normforge/error.hpp"

#include <algorithm>
#include <sstream>

namespace normforge {

MPoly::Mono mono_mul(const MPoly::Mono& a, const MPoly::Mono& b)
{
    MPoly::Mono r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
        else {
            r.push_back({a[i].first, a[i].second + b[j].second});
            ++i, ++j;
        }
    }
    return r;
}

std::string mono_str(const MPoly::Mono& m, const std::vector<std::string>& names)
{
    std::string s;
    for (auto& [v, e] : m) {
        if (!s.empty()) s += "*";
        s += v < names.size() ? names[v] : "v" + std::to_string(v);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

MPoly::MPoly(const Integer& c)
{
    if (c != 0) t_[{}] = c;
}

MPoly MPoly::var(std::uint32_t v, std::uint32_t e)
{
    MPoly p;
    if (e == 0) p.t_[{}] = 1;
    else p.t_[{{v, e}}] = 1;
    return p;
}

MPoly MPoly::monomial(const Mono& m, const Integer& c)
{
    MPoly p;
    if (c != 0) p.t_[m] = c;
    return p;
}

bool MPoly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

MPoly& MPoly::operator+=(const MPoly& o)
{
    for (auto& [m, c] : o.t_) {
        auto [it, fresh] = t_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o)
{
    for (auto& [m, c] : o.t_) {
        auto [it, fresh] = t_.try_emplace(m, -c);
        if (!fresh) {
            it->second -= c;
            if (it->second == 0) t_.erase(it);
        }
    }
    return *this;
}

MPoly MPoly::operator+(const MPoly& o) const
{
    MPoly r = *this;
    r += o;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const
{
    MPoly r = *this;
    r -= o;
    return r;
}

MPoly MPoly::operator-() const
{
    MPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

MPoly MPoly::operator*(const Integer& k) const
{
    if (k == 0) return {};
    MPoly r = *this;
    for (auto& [m, c] : r.t_) c *= k;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const
{
    MPoly r;
    if (is_zero() || o.is_zero()) return r;
    for (auto& [ma, ca] : t_)
        for (auto& [mb, cb] : o.t_) {
            Mono m = mono_mul(ma, mb);
            auto [it, fresh] = r.t_.try_emplace(std::move(m), ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    for (auto it = r.t_.begin(); it != r.t_.end();)
        it = it->second == 0 ? r.t_.erase(it) : std::next(it);
    return r;
}

MPoly MPoly::pow(unsigned e) const
{
    MPoly r = constant(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::uint32_t MPoly::degree_in(std::uint32_t v) const
{
    std::uint32_t d = 0;
    for (auto& [m, c] : t_)
        for (auto& [w, e] : m)
            if (w == v) d = std::max(d, e);
    return d;
}

std::uint32_t MPoly::total_degree() const
{
    std::uint32_t d = 0;
    for (auto& [m, c] : t_) {
        std::uint32_t s = 0;
        for (auto& [w, e] : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

std::vector<MPoly> MPoly::coefficients_in(std::uint32_t v) const
{
    std::vector<MPoly> out(degree_in(v) + 1);
    for (auto& [m, c] : t_) {
        std::uint32_t k = 0;
        Mono rest;
        rest.reserve(m.size());
        for (auto& pe : m) {
            if (pe.first == v) k = pe.second;
            else rest.push_back(pe);
        }
        out[k].t_.emplace(std::move(rest), c);
    }
    return out;
}

MPoly MPoly::substitute(std::uint32_t v, const MPoly& s) const
{
    auto cs = coefficients_in(v);
    MPoly r = cs.back();
    for (std::size_t k = cs.size() - 1; k-- > 0;) r = r * s + cs[k];
    return r;
}

MPoly MPoly::remap(const std::vector<long>& to) const
{
    MPoly r;
    for (auto& [m, c] : t_) {
        Mono n;
        for (auto& [v, e] : m) {
            if (v >= to.size() || to[v] < 0) fail(ErrorCode::InvalidArgument, "variable has no image under remap");
            n.push_back({static_cast<std::uint32_t>(to[v]), e});
        }
        std::sort(n.begin(), n.end());
        r.t_[n] += c;
    }
    return r;
}

std::set<std::uint32_t> MPoly::variables() const
{
    std::set<std::uint32_t> s;
    for (auto& [m, c] : t_)
        for (auto& [v, e] : m) s.insert(v);
    return s;
}

MPoly::Mono MPoly::monomial_content(const std::set<std::uint32_t>& vars) const
{
    if (t_.empty()) return {};
    std::map<std::uint32_t, std::uint32_t> g;
    for (auto v : vars) g[v] = UINT32_MAX;
    for (auto& [m, c] : t_) {
        for (auto& [v, cur] : g) {
            std::uint32_t e = 0;
            for (auto& pe : m)
                if (pe.first == v) e = pe.second;
            cur = std::min(cur, e);
        }
    }
    Mono out;
    for (auto& [v, e] : g)
        if (e > 0 && e != UINT32_MAX) out.push_back({v, e});
    return out;
}

MPoly MPoly::divide_monomial(const Mono& d) const
{
    MPoly r;
    for (auto& [m, c] : t_) {
        Mono n;
        std::size_t j = 0;
        for (auto& [v, e] : m) {
            std::uint32_t sub = 0;
            while (j < d.size() && d[j].first < v) ++j;
            if (j < d.size() && d[j].first == v) sub = d[j].second;
            if (sub > e) fail(ErrorCode::InvalidArgument, "monomial does not divide");
            if (e > sub) n.push_back({v, e - sub});
        }
        r.t_.emplace(std::move(n), c);
    }
    return r;
}

Rational MPoly::eval(const std::map<std::uint32_t, Rational>& at) const
{
    Rational s = 0;
    for (auto& [m, c] : t_) {
        Rational t = c;
        for (auto& [v, e] : m) {
            auto it = at.find(v);
            if (it == at.end()) fail(ErrorCode::IncompleteAssignment, "no value for variable " + std::to_string(v));
            Rational p = 1;
            for (std::uint32_t k = 0; k < e; ++k) p *= it->second;
            t *= p;
        }
        s += t;
    }
    return s;
}

MPoly::Complex MPoly::eval(const std::vector<Complex>& at) const
{
    Complex s = 0;
    for (auto& [m, c] : t_) {
        Complex t = static_cast<long double>(c.get_d());
        for (auto& [v, e] : m) {
            if (v >= at.size()) fail(ErrorCode::IncompleteAssignment, "no value for variable " + std::to_string(v));
            t *= std::pow(at[v], static_cast<int>(e));
        }
        s += t;
    }
    return s;
}

Integer MPoly::max_coefficient() const
{
    Integer m = 0;
    for (auto& [mono, c] : t_) m = std::max<Integer>(m, abs(c));
    return m;
}

std::string MPoly::str(const std::vector<std::string>& names) const
{
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        Integer a = abs(c);
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        first = false;
        if (m.empty()) os << a.get_str();
        else {
            if (a != 1) os << a.get_str() << "*";
            os << mono_str(m, names);
        }
    }
    return os.str();
}

}  // namespace normforge
