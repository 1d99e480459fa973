#include "fgp/pic_lattice.hpp"

#include "fgp/plane_geometry.hpp"
#include "fgp/type_arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fgp {

namespace {

constexpr int kC0 = 0, kL = 1, kS = 2, kR = 6;

DivClass unit(int i)
{
    DivClass d;
    d.c[i] = 1;
    return d;
}

std::array<std::array<int, 10>, 10> build_gram()
{
    std::array<std::array<int, 10>, 10> g{};
    g[kC0][kC0] = -2;
    g[kC0][kL] = g[kL][kC0] = 1;
    for (int i = 0; i < 4; ++i) {
        g[kS + i][kS + i] = -1;
        g[kR + i][kR + i] = -2;
        g[kS + i][kR + i] = g[kR + i][kS + i] = 1;
    }
    return g;
}

// phi^* of the ten basis classes, written in (c, f, s_perp, r_perp).
std::array<PerpClass, 10> build_pullbacks()
{
    std::array<PerpClass, 10> p{};
    p[kC0].c[0] = 1;
    for (int i = 0; i < 4; ++i)
        p[kC0].c[2 + i] = -1;
    p[kL].c[1] = 2;
    for (int i = 0; i < 4; ++i) {
        p[kS + i].c[1] = 1;
        p[kS + i].c[2 + i] = -1;
        p[kS + i].c[6 + i] = -1;
        p[kR + i].c[6 + i] = 2;
    }
    return p;
}

// Solves gram * x = rhs over the rationals; requires an integral solution.
DivClass solve_gram(const std::array<Rational, 10>& rhs)
{
    const auto& g = gram_matrix();
    std::array<std::array<Rational, 11>, 10> m;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j)
            m[i][j] = g[i][j];
        m[i][10] = rhs[i];
    }
    for (int col = 0; col < 10; ++col) {
        int piv = col;
        while (piv < 10 && m[piv][col] == 0)
            ++piv;
        if (piv == 10)
            throw std::logic_error("singular intersection form");
        std::swap(m[piv], m[col]);
        for (int r = 0; r < 10; ++r) {
            if (r == col || m[r][col] == 0)
                continue;
            Rational f = m[r][col] / m[col][col];
            for (int j = col; j < 11; ++j)
                m[r][j] -= f * m[col][j];
        }
    }
    DivClass out;
    for (int i = 0; i < 10; ++i) {
        Rational x = m[i][10] / m[i][i];
        if (denominator(x) != 1)
            throw std::logic_error("invariant violation: non-integral divisor class");
        out.c[i] = static_cast<long long>(numerator(x));
    }
    return out;
}

}  // namespace

namespace basis {
DivClass C0() { return unit(kC0); }
DivClass l() { return unit(kL); }
DivClass S(int i) { return unit(kS + i); }
DivClass r(int i) { return unit(kR + i); }
DivClass s(int i) { return l() - 2 * S(i) - r(i); }
DivClass K()
{
    DivClass k = -2 * C0();
    for (int i = 0; i < 4; ++i)
        k = k - s(i);
    return k;
}
DivClass L() { return -1 * K(); }
}  // namespace basis

const std::array<std::string, 10>& basis_names()
{
    static const std::array<std::string, 10> n{"C0", "l", "S0", "S1", "S2", "S3", "r0", "r1", "r2", "r3"};
    return n;
}

const std::array<std::array<int, 10>, 10>& gram_matrix()
{
    static const auto g = build_gram();
    return g;
}

long long intersect(const DivClass& a, const DivClass& b)
{
    const auto& g = gram_matrix();
    long long s = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            s += a.c[i] * g[i][j] * b.c[j];
    return s;
}

long long intersect_perp(const PerpClass& a, const PerpClass& b)
{
    long long s = a.c[0] * b.c[1] + a.c[1] * b.c[0];
    for (int i = 2; i < 10; ++i)
        s -= a.c[i] * b.c[i];
    return s;
}

PerpClass pullback(const DivClass& d)
{
    static const auto pb = build_pullbacks();
    PerpClass out;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            out.c[j] += d.c[i] * pb[i].c[j];
    return out;
}

DivClass class_of_gamma(const TypeVector& nu)
{
    const int k = nu.cls();
    PerpClass target;
    target.c[0] = mu_stats(nu).n;
    target.c[1] = 1;
    target.c[2 + k] = -1;
    for (int i = 0; i < 4; ++i)
        target.c[6 + i] = -nu[i];
    std::array<Rational, 10> rhs;
    for (int m = 0; m < 10; ++m)
        rhs[m] = Rational(intersect_perp(target, pullback(unit(m))), 2);
    DivClass out = solve_gram(rhs);
    const PerpClass check = pullback(out);
    for (int i = 0; i < 10; ++i)
        if (check.c[i] != target.c[i])
            throw std::logic_error("invariant violation: pullback mismatch for " + nu.str());
    return out;
}

long long arithmetic_genus(const DivClass& d)
{
    long long t = intersect(d, d) + intersect(d, basis::K());
    if (t % 2 != 0)
        throw std::logic_error("invariant violation: odd adjunction numerator");
    return 1 + t / 2;
}

std::vector<LinearCore> decompose_linear_system(const TypeVector& mu, int d)
{
    if (mu.cls() != 0)
        throw std::invalid_argument("decompose_linear_system: " + mu.str() + " is not in class 0");
    if (d < 0)
        throw std::invalid_argument("decompose_linear_system: negative depth");
    const int n = degree_of(mu, d);
    const int top = int(std::sqrt(double(2 * n + 1))) + 1;
    std::vector<LinearCore> out;
    for (int a = 0; 2 * a <= top; ++a)
        for (int b = 0; 2 * b <= top; ++b)
            for (int c = 0; 2 * c <= top; ++c)
                for (int e = 0; 2 * e <= top; ++e) {
                    TypeVector nu(mu[0] + 2 * a, mu[1] + 2 * b, mu[2] + 2 * c, mu[3] + 2 * e);
                    const int nn = mu_stats(nu).n;
                    for (int k = 0; nn + 2 * k <= n; ++k)
                        out.push_back({nu, k});
                }
    std::sort(out.begin(), out.end(), [](const LinearCore& x, const LinearCore& y) {
        return std::make_pair(x.nu, x.e) < std::make_pair(y.nu, y.e);
    });
    return out;
}

bool is_contraction_data(const std::array<TypeVector, 4>& t)
{
    for (int i = 0; i < 4; ++i)
        if (t[i].cls() != i)
            return false;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            int d2 = 0;
            for (int c = 0; c < 4; ++c)
                d2 += (t[i][c] - t[j][c]) * (t[i][c] - t[j][c]);
            if (d2 != 2)
                return false;
        }
    for (int c = 0; c < 4; ++c)
        if (t[0][c] + t[1][c] + t[2][c] + t[3][c] <= 0)
            return false;
    return true;
}

DivClass contract(const DivClass& d, const TypeVector& mu)
{
    // Gram block of (Gamma_mu, s0) is [[-1, 1], [1, -2]], determinant 1.
    const DivClass g = class_of_gamma(mu);
    const DivClass s0 = basis::s(0);
    const long long p = intersect(d, g), q = intersect(d, s0);
    const long long a = -2 * p - q;
    const long long b = -p - q;
    return d - a * g - b * s0;
}

DelPezzoReport delpezzo_report(const TypeVector& mu)
{
    if (mu.cls() != 0)
        throw std::invalid_argument("delpezzo_report: " + mu.str() + " is not in class 0");
    const MuStats st = mu_stats(mu);
    DelPezzoReport rep;
    rep.mu = mu;
    rep.exceptional_curves = int(exceptional_neighbors(mu).size()) + 1;
    rep.positive_fibers = 3 + st.zeros;
    rep.pencil_reducibles = 1 + st.zeros;

    DivClass lmu = 2 * basis::C0(), rc, omega = 3 * basis::C0();
    for (int j = 1; j < 4; ++j) {
        lmu = lmu + basis::s(j);
        rc = rc + basis::s(j);
        omega = omega + basis::s(j);
    }
    for (int i = 0; i < 4; ++i)
        if (mu[i] == 0) {
            rc = rc + basis::r(i);
            omega = omega - basis::r(i);
        }
    rep.anticanonical = contract(lmu, mu);
    rep.R = 2 * rep.anticanonical;
    rep.R_c = contract(rc, mu);
    rep.Omega = contract(omega, mu);

    switch (st.zeros) {
    case 0:
        rep.omega_profile = "smooth genus 1";
        break;
    case 1:
        rep.omega_profile = "nodal rational";
        break;
    case 2: {
        rep.omega_profile = "line + conic";
        Quad v = mu.v();
        for (int i = 1; i < 4; ++i)
            if (v[i] == 0)
                v[i] = 1;
        rep.omega_components.emplace_back(v);
        break;
    }
    default:
        rep.omega_profile = "three lines";
        for (Quad eps : {Quad{0, 0, 1, 1}, Quad{0, 1, 0, 1}, Quad{0, 1, 1, 0}}) {
            Quad v = mu.v();
            for (int i = 0; i < 4; ++i)
                v[i] += eps[i];
            rep.omega_components.emplace_back(v);
        }
    }
    if (st.zeros <= 1)
        for (int j = 1; j < 4; ++j) {
            const int k = j % 3 + 1, l = (j + 1) % 3 + 1;
            if (mu[k] == mu[l])
                rep.inflection_points.push_back(j);
        }
    if (st.zeros == 0) {
        auto lj = j_invariant(mu);
        rep.lambda_j = std::make_pair(lj.lambda, lj.j);
    }
    return rep;
}

}  // namespace fgp
