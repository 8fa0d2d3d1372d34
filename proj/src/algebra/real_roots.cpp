#include "normforge/algebra/real_roots.hpp"

#include "normforge/error.hpp"

#include <algorithm>
#include <cmath>

namespace normforge {

namespace {

std::vector<UniPoly> sturm_sequence(const UniPoly& f)
{
    std::vector<UniPoly> s{f, f.derivative()};
    while (!s.back().is_zero() && s.back().deg() > 0) {
        UniPoly r = -(s[s.size() - 2] % s.back());
        if (r.is_zero()) break;
        s.push_back(r);
    }
    if (s.back().is_zero()) s.pop_back();
    return s;
}

long variations(const std::vector<UniPoly>& s, const Rational& x)
{
    long v = 0;
    int last = 0;
    for (auto& p : s) {
        int sg = sgn(p.eval(x));
        if (sg == 0) continue;
        if (last && sg != last) ++v;
        last = sg;
    }
    return v;
}

Rational cauchy_bound(const UniPoly& f)
{
    Rational m = 0;
    for (std::size_t i = 0; i + 1 < f.coeffs().size(); ++i) m = std::max(m, Rational(abs(f.coeffs()[i] / f.lead())));
    return m + 1;
}

void isolate(const UniPoly& f, const std::vector<UniPoly>& s, const Rational& a, const Rational& b, long va, long vb,
             std::vector<RationalInterval>& out)
{
    long n = va - vb;
    if (n == 0) return;
    if (n == 1) { out.push_back({a, b}); return; }
    Rational m = (a + b) / 2;
    if (f.eval(m) == 0) {
        // exact rational root; isolate around it with non-root endpoints
        Rational d = (b - a) / 4;
        Rational l = m - d, r = m + d;
        while (f.eval(l) == 0 || f.eval(r) == 0 || variations(s, l) - variations(s, r) != 1) {
            d /= 2;
            l = m - d;
            r = m + d;
        }
        out.push_back({m, m});
        isolate(f, s, a, l, va, variations(s, l), out);
        isolate(f, s, r, b, variations(s, r), vb, out);
        return;
    }
    long vm = variations(s, m);
    isolate(f, s, a, m, va, vm, out);
    isolate(f, s, m, b, vm, vb, out);
}

}  // namespace

long sturm_count(const UniPoly& f, const Rational& a, const Rational& b)
{
    UniPoly g = squarefree_part(f);
    if (g.deg() == 0) return 0;
    auto s = sturm_sequence(g);
    return variations(s, a) - variations(s, b);
}

std::vector<RationalInterval> real_root_isolate(const UniPoly& f0)
{
    if (f0.is_zero()) fail(ErrorCode::InvalidArgument, "root isolation of zero polynomial");
    std::vector<RationalInterval> out;
    if (f0.deg() == 0) return out;
    UniPoly f = squarefree_part(f0);
    if (f.deg() == 1) {
        Rational r = -f.coeff(0) / f.coeff(1);
        return {{r, r}};
    }
    auto s = sturm_sequence(f);
    Rational B = cauchy_bound(f);
    isolate(f, s, -B, B, variations(s, -B), variations(s, B), out);
    std::sort(out.begin(), out.end(), [](const RationalInterval& x, const RationalInterval& y) { return x.lo < y.lo; });
    return out;
}

bool bisect_root(const UniPoly& f, RationalInterval& iv)
{
    if (iv.lo == iv.hi) return false;
    Rational m = (iv.lo + iv.hi) / 2;
    int sm = sgn(f.eval(m));
    if (sm == 0) { iv = {m, m}; return true; }
    int sl = sgn(f.eval(iv.lo));
    if (sl != sm) iv.hi = m;
    else iv.lo = m;
    return true;
}

RationalInterval refine_root(const UniPoly& f0, RationalInterval iv, const Rational& width)
{
    UniPoly f = squarefree_part(f0);
    while (iv.width() > width)
        if (!bisect_root(f, iv)) break;
    return iv;
}

RationalInterval interval_eval(const UniPoly& g, const RationalInterval& x)
{
    Rational lo = 0, hi = 0;
    for (std::size_t i = g.coeffs().size(); i-- > 0;) {
        Rational c[4] = {lo * x.lo, lo * x.hi, hi * x.lo, hi * x.hi};
        lo = *std::min_element(c, c + 4) + g.coeffs()[i];
        hi = *std::max_element(c, c + 4) + g.coeffs()[i];
    }
    return {lo, hi};
}

int sign_at_root(const UniPoly& f0, RationalInterval& iv, const UniPoly& g)
{
    if (iv.lo == iv.hi) return sgn(g.eval(iv.lo));
    UniPoly f = squarefree_part(f0);
    // when the sign of f at the interval ends is fixed, Sturm-based exact check on g at the root
    if (resultant(f, g) == 0) {
        UniPoly h = gcd(f, g);
        if (h.deg() > 0 && sturm_count(h, iv.lo, iv.hi) == 1) return 0;
    }
    for (int it = 0; it < 100000; ++it) {
        auto e = interval_eval(g, iv);
        if (e.lo > 0) return 1;
        if (e.hi < 0) return -1;
        if (!bisect_root(f, iv)) return sgn(g.eval(iv.lo));
    }
    fail(ErrorCode::PrecisionExhausted, "sign determination did not converge");
}

std::vector<std::complex<long double>> complex_roots(const UniPoly& f)
{
    using C = std::complex<long double>;
    std::size_t n = f.deg();
    std::vector<C> a(n + 1);
    for (std::size_t i = 0; i <= n; ++i) a[i] = C(f.coeffs()[i].get_d() / f.lead().get_d(), 0);
    std::vector<C> z(n);
    long double R = 0;
    for (std::size_t i = 0; i < n; ++i) R = std::max(R, std::abs(a[i]));
    R = 1 + R;
    for (std::size_t i = 0; i < n; ++i)
        z[i] = std::polar(R * 0.5L + 0.1L, 2.0L * 3.14159265358979323846L * i / n + 0.4L);
    auto eval = [&](C x, C& d) {
        C p = a[n], dp = 0;
        for (std::size_t i = n; i-- > 0;) {
            dp = dp * x + p;
            p = p * x + a[i];
        }
        d = dp;
        return p;
    };
    for (int it = 0; it < 2000; ++it) {
        long double mv = 0;
        for (std::size_t i = 0; i < n; ++i) {
            C d;
            C p = eval(z[i], d);
            if (p == C(0)) continue;
            C ratio = p / d;
            C s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s += C(1) / (z[i] - z[j]);
            C w = ratio / (C(1) - ratio * s);
            z[i] -= w;
            mv = std::max(mv, std::abs(w));
        }
        if (mv < 1e-17L) break;
    }
    std::sort(z.begin(), z.end(), [](const C& x, const C& y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return z;
}

}  // namespace normforge
