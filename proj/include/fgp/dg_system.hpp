#pragma once

#include "fgp/poly.hpp"
#include "fgp/rational.hpp"
#include "fgp/types.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace fgp {

// Reduced two-pole system: F(x,y) = 0 = F(y,x), x = wp(rho_1), y = wp(rho_2).
template <class T>
struct DGSystem {
    AlphaVector alpha;
    std::array<T, 3> e;
    std::array<T, 4> weights;
    T g2;
    Poly<T> Pi;                 // prod (x - e_j)
    std::array<Poly<T>, 3> Pj;  // (x - e_k)^2 (x - e_l)^2
    std::array<T, 3> Ej;        // (e_j - e_k)(e_j - e_l)
    Poly<T> G1;                 // single-pole polynomial
    BiPoly<T> B;                // (12 y^2 - g2)(x - y) + 16 Pi(y)
    BiPoly<T> F;
};

template <class T>
DGSystem<T> build_system(const AlphaVector& alpha, const std::array<T, 3>& e, bool linear_weights = false)
{
    for (int j = 0; j < 3; ++j)
        if (e[j] == e[(j + 1) % 3])
            throw std::invalid_argument("build_system: coincident branch values");
    DGSystem<T> s;
    s.alpha = alpha;
    s.e = e;
    for (int i = 0; i < 4; ++i) {
        const T w = T(2 * alpha[i] + 1);
        s.weights[i] = linear_weights ? w : w * w;
    }
    s.g2 = T(2) * (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    s.Pi = Poly<T>::linear_root(e[0]) * Poly<T>::linear_root(e[1]) * Poly<T>::linear_root(e[2]);
    s.G1 = s.weights[0] * s.Pi * s.Pi;
    for (int j = 0; j < 3; ++j) {
        const int k = (j + 1) % 3, l = (j + 2) % 3;
        const Poly<T> q = Poly<T>::linear_root(e[k]) * Poly<T>::linear_root(e[l]);
        s.Pj[j] = q * q;
        s.Ej[j] = (e[j] - e[k]) * (e[j] - e[l]);
        s.G1 -= (s.weights[j + 1] * s.Ej[j]) * s.Pj[j];
    }

    const BiPoly<T> x = BiPoly<T>::in_x(Poly<T>(std::vector<T>{T(0), T(1)}));
    const BiPoly<T> y = BiPoly<T>::in_y(Poly<T>(std::vector<T>{T(0), T(1)}));
    const BiPoly<T> diff = x - y;
    const BiPoly<T> quad = BiPoly<T>::in_y(Poly<T>(std::vector<T>{T(0) - s.g2, T(0), T(12)}));
    s.B = quad * diff + T(16) * BiPoly<T>::in_y(s.Pi);
    const BiPoly<T> pi2 = BiPoly<T>::in_x(s.Pi * s.Pi);
    s.F = T(4) * (pi2 * s.B) - diff * diff * diff * BiPoly<T>::in_x(s.G1);
    return s;
}

// Coefficients of f(x + a, y + b).
template <class T>
BiPoly<T> shift(const BiPoly<T>& f, const T& a, const T& b)
{
    const std::size_t nx = f.rows(), ny = f.cols();
    BiPoly<T> out(nx ? nx - 1 : 0, ny ? ny - 1 : 0);
    std::vector<std::vector<T>> bx(nx, std::vector<T>(nx, T(0))), by(ny, std::vector<T>(ny, T(0)));
    // bx[i][p] = C(i,p) a^(i-p)
    for (std::size_t i = 0; i < nx; ++i) {
        T c = T(1);
        for (std::size_t p = i + 1; p-- > 0;) {
            bx[i][p] = c;
            c *= a;
        }
        for (std::size_t p = 0; p <= i; ++p) {
            T binom = T(1);
            for (std::size_t q = 0; q < p; ++q)
                binom = binom * T(int(i - q)) / T(int(q + 1));
            bx[i][p] *= binom;
        }
    }
    for (std::size_t j = 0; j < ny; ++j) {
        T c = T(1);
        for (std::size_t p = j + 1; p-- > 0;) {
            by[j][p] = c;
            c *= b;
        }
        for (std::size_t p = 0; p <= j; ++p) {
            T binom = T(1);
            for (std::size_t q = 0; q < p; ++q)
                binom = binom * T(int(j - q)) / T(int(q + 1));
            by[j][p] *= binom;
        }
    }
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            const T c = f.coeff(i, j);
            if (c == T(0))
                continue;
            for (std::size_t p = 0; p <= i; ++p)
                for (std::size_t q = 0; q <= j; ++q)
                    out.at(p, q) += c * bx[i][p] * by[j][q];
        }
    return out;
}

}  // namespace fgp
