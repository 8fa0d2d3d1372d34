#ifndef NORMFORGE_TESTS_TOWER_HELPER_HPP
#define NORMFORGE_TESTS_TOWER_HELPER_HPP

#include "normforge/algebra/matrix.hpp"
#include "normforge/field/number_field.hpp"

#include <vector>

namespace testhelp {

using namespace normforge;

// Absolute defining polynomial of K(u_1^{1/t_1}, ..., u_r^{1/t_r}) with u_i in K,
// computed as the minimal polynomial of x + y_1 + 2 y_2 + ... in the tensor algebra.
inline UniPoly absolute_polynomial(const NumberField& K, const std::vector<std::pair<FieldElement, unsigned>>& layers,
                                   long shift = 1)
{
    std::size_t n = K.degree();
    std::vector<std::size_t> dims{n};
    std::size_t D = n;
    for (auto& l : layers) { dims.push_back(l.second); D *= l.second; }
    // element: vector over index (a, b_1..b_r); K-part represented via FieldElement per y-monomial
    std::size_t Y = D / n;
    using Elem = std::vector<FieldElement>;  // length Y
    auto decode = [&](std::size_t k) {
        std::vector<unsigned> b(layers.size());
        for (std::size_t i = 0; i < layers.size(); ++i) { b[i] = k % layers[i].second; k /= layers[i].second; }
        return b;
    };
    auto encode = [&](const std::vector<unsigned>& b) {
        std::size_t k = 0;
        for (std::size_t i = layers.size(); i-- > 0;) k = k * layers[i].second + b[i];
        return k;
    };
    auto mul = [&](const Elem& a, const Elem& c) {
        Elem r(Y, K.zero());
        for (std::size_t i = 0; i < Y; ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; j < Y; ++j) {
                if (c[j].is_zero()) continue;
                auto bi = decode(i), bj = decode(j);
                FieldElement coef = a[i] * c[j];
                std::vector<unsigned> b(layers.size());
                for (std::size_t l = 0; l < layers.size(); ++l) {
                    unsigned s = bi[l] + bj[l];
                    if (s >= layers[l].second) { s -= layers[l].second; coef = coef * layers[l].first; }
                    b[l] = s;
                }
                std::size_t k = encode(b);
                r[k] = r[k] + coef;
            }
        }
        return r;
    };
    Elem gamma(Y, K.zero());
    gamma[0] = K.theta();
    if (n == 1) gamma[0] = K.zero();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        std::vector<unsigned> b(layers.size(), 0);
        b[l] = 1;
        gamma[encode(b)] = K.from_rational(Rational(static_cast<long>(l) * shift + 1));
    }
    auto flat = [&](const Elem& e) {
        std::vector<Rational> v;
        for (auto& fe : e)
            for (auto& c : fe.coords()) v.push_back(c);
        return v;
    };
    Elem pw(Y, K.zero());
    pw[0] = K.one();
    std::vector<std::vector<Rational>> cols;
    for (std::size_t k = 0; k <= D; ++k) {
        cols.push_back(flat(pw));
        pw = mul(pw, gamma);
    }
    QMatrix M(D, std::vector<Rational>(D));
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) M[i][j] = cols[j][i];
    auto c = solve(M, cols[D]);
    std::vector<Rational> m(D + 1);
    for (std::size_t i = 0; i < D; ++i) m[i] = -c[i];
    m[D] = 1;
    return UniPoly(m);
}

}  // namespace testhelp

#endif
