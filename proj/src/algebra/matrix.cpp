#include "normforge/algebra/matrix.hpp"

#include "normforge/error.hpp"

namespace normforge {

Rational determinant(QMatrix m)
{
    std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational inv = 1 / m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] * inv;
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

UniPoly charpoly(const QMatrix& a)
{
    // Faddeev-LeVerrier
    std::size_t n = a.size();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    QMatrix M(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        QMatrix N(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational s = 0;
                for (std::size_t l = 0; l < n; ++l)
                    if (a[i][l] != 0 && M[l][j] != 0) s += a[i][l] * M[l][j];
                N[i][j] = s;
            }
        for (std::size_t i = 0; i < n; ++i) N[i][i] += c[n - k + 1];
        M = N;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * M[l][i];
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return UniPoly(c);
}

std::vector<Rational> solve(QMatrix m, std::vector<Rational> b)
{
    std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) fail(ErrorCode::InvalidArgument, "singular linear system");
        std::swap(m[piv], m[c]);
        std::swap(b[piv], b[c]);
        Rational inv = 1 / m[c][c];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c] * inv;
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= m[i][i];
    return b;
}

}  // namespace normforge
