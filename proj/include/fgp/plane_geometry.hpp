#pragma once

#include "fgp/poly.hpp"
#include "fgp/rational.hpp"
#include "fgp/types.hpp"

#include <array>
#include <climits>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgp {

template <class T>
using Point = std::array<T, 3>;

using Exponent = std::array<int, 3>;

template <class T>
struct PlaneCurve {
    int degree = 0;
    std::map<Exponent, T> coeffs;

    void add(int i, int j, int k, const T& c)
    {
        if (i + j + k != degree)
            throw std::invalid_argument("non-homogeneous monomial");
        coeffs[{i, j, k}] += c;
    }
    template <class U>
    U operator()(const Point<U>& p) const
    {
        U s = U(0);
        for (const auto& [e, c] : coeffs)
            s += U(c) * ipow(p[0], e[0]) * ipow(p[1], e[1]) * ipow(p[2], e[2]);
        return s;
    }
    template <class U>
    Point<U> gradient(const Point<U>& p) const
    {
        Point<U> g{U(0), U(0), U(0)};
        for (const auto& [e, c] : coeffs)
            for (int v = 0; v < 3; ++v) {
                if (e[v] == 0)
                    continue;
                U t = U(c) * U(e[v]);
                for (int w = 0; w < 3; ++w)
                    t *= ipow(p[w], w == v ? e[w] - 1 : e[w]);
                g[v] += t;
            }
        return g;
    }
    template <class U>
    static U ipow(const U& x, int k)
    {
        U r = U(1);
        for (int i = 0; i < k; ++i)
            r *= x;
        return r;
    }
};

using PlaneCurveQ = PlaneCurve<Rational>;
using PlaneCurveC = PlaneCurve<cd>;

inline bool negligible(const Rational& x, double) { return x == 0; }
inline bool negligible(const cd& x, double tol) { return std::abs(x) <= tol; }
inline double magnitude(const Rational& x) { return std::abs(x.convert_to<double>()); }
inline double magnitude(const cd& x) { return std::abs(x); }

template <class T>
Point<T> cross(const Point<T>& a, const Point<T>& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
bool proportional(const Point<T>& a, const Point<T>& b, double tol = 1e-9)
{
    const Point<T> c = cross(a, b);
    double s = 0;
    for (int i = 0; i < 3; ++i)
        s = std::max(s, magnitude(a[i]) * magnitude(b[(i + 1) % 3]) + magnitude(a[(i + 1) % 3]) * magnitude(b[i]));
    for (const auto& v : c)
        if (!negligible(v, tol * std::max(s, 1e-300)))
            return false;
    return true;
}

// Polynomial map s -> point; passes through the marked point at s = s0.
template <class T>
struct Branch {
    std::array<Poly<T>, 3> comps;
    T s0 = T(0);

    Point<T> at(const T& s) const { return {comps[0](s), comps[1](s), comps[2](s)}; }
};

template <class T>
Branch<T> line_branch(const Point<T>& p, const Point<T>& dir)
{
    Branch<T> b;
    for (int i = 0; i < 3; ++i)
        b.comps[i] = Poly<T>(std::vector<T>{p[i], dir[i]});
    return b;
}

template <class T>
T polar_form(const PlaneCurve<T>& conic, const Point<T>& u, const Point<T>& v)
{
    Point<T> w{u[0] + v[0], u[1] + v[1], u[2] + v[2]};
    return (conic(w) - conic(u) - conic(v)) / T(2);
}

// Rational parameterization of a smooth conic near p: second intersection of the
// line through p in direction d0 + s*d1; d0 must be tangent at p.
template <class T>
Branch<T> conic_branch(const PlaneCurve<T>& conic, const Point<T>& p, const Point<T>& d0, const Point<T>& d1)
{
    if (conic.degree != 2)
        throw std::invalid_argument("conic_branch: curve is not a conic");
    std::array<Poly<T>, 3> D;
    for (int i = 0; i < 3; ++i)
        D[i] = Poly<T>(std::vector<T>{d0[i], d1[i]});
    // Q(D) and B(p, D) as polynomials in s.
    Poly<T> q, b;
    for (const auto& [e, c] : conic.coeffs) {
        Poly<T> m = Poly<T>::constant(c);
        for (int v = 0; v < 3; ++v)
            m = m * D[v].pow(e[v]);
        q += m;
    }
    Point<T> gp = conic.gradient(p);
    for (int v = 0; v < 3; ++v)
        b += D[v] * (gp[v] / T(2));
    Branch<T> br;
    for (int i = 0; i < 3; ++i)
        br.comps[i] = q * p[i] - T(2) * b * D[i];
    return br;
}

// A tangent direction at a smooth point of a conic, not proportional to the point.
template <class T>
Point<T> conic_tangent_direction(const PlaneCurve<T>& conic, const Point<T>& p)
{
    const Point<T> g = conic.gradient(p);
    for (int i = 0; i < 3; ++i) {
        Point<T> e{T(0), T(0), T(0)};
        e[i] = T(1);
        Point<T> d = cross(g, e);
        if (!proportional(d, p) && !(negligible(d[0], 0) && negligible(d[1], 0) && negligible(d[2], 0)))
            return d;
    }
    throw std::invalid_argument("conic_tangent_direction: singular point");
}

template <class T>
Point<T> transverse_direction(const PlaneCurve<T>& conic, const Point<T>& p)
{
    const Point<T> g = conic.gradient(p);
    Point<T> best{T(1), T(0), T(0)};
    double bm = -1;
    for (int i = 0; i < 3; ++i)
        if (magnitude(g[i]) > bm) {
            bm = magnitude(g[i]);
            best = {T(0), T(0), T(0)};
            best[i] = T(1);
        }
    return best;
}

template <class T>
Branch<T> conic_branch_at(const PlaneCurve<T>& conic, const Point<T>& p)
{
    return conic_branch(conic, p, conic_tangent_direction(conic, p), transverse_direction(conic, p));
}

inline constexpr int kInfiniteMultiplicity = INT_MAX;

template <class T>
int intersection_multiplicity(const PlaneCurve<T>& curve, const Branch<T>& br, const Point<T>& p, double tol = 1e-9)
{
    if (!proportional(br.at(br.s0), p, tol))
        throw std::invalid_argument("intersection_multiplicity: branch does not pass through the point");
    Poly<T> f;
    for (const auto& [e, c] : curve.coeffs) {
        Poly<T> m = Poly<T>::constant(c);
        for (int v = 0; v < 3; ++v)
            m = m * br.comps[v].pow(e[v]);
        f += m;
    }
    // Taylor coefficients at s0 by repeated synthetic division.
    std::vector<T> taylor;
    Poly<T> cur = f;
    double scale = 0;
    for (const auto& c : f.coeffs())
        scale = std::max(scale, magnitude(c));
    while (!cur.is_zero()) {
        const T rem = cur(br.s0);
        taylor.push_back(rem);
        cur = cur.deflate(br.s0);
    }
    for (std::size_t k = 0; k < taylor.size(); ++k)
        if (!negligible(taylor[k], tol * std::max(scale, 1e-300)))
            return int(k);
    return kInfiniteMultiplicity;
}

template <class T>
Point<T> nodal_cubic_param(const T& u, const T& v)
{
    if (negligible(u, 0) && negligible(v, 0))
        throw std::invalid_argument("nodal_cubic_param: (u,v) = (0,0)");
    return {u * v * v, u * u * v, u * u * u + v * v * v};
}

template <class T>
PlaneCurve<T> nodal_cubic()
{
    PlaneCurve<T> k{3, {}};
    k.add(1, 1, 1, T(1));
    k.add(3, 0, 0, T(-1));
    k.add(0, 3, 0, T(-1));
    return k;
}

// x^2 + y^2 - 2 z^2
template <class T>
PlaneCurve<T> base_conic()
{
    PlaneCurve<T> c{2, {}};
    c.add(2, 0, 0, T(1));
    c.add(0, 2, 0, T(1));
    c.add(0, 0, 2, T(-2));
    return c;
}

// Lines y - z = 0 and y + z = 0.
template <class T>
PlaneCurve<T> line_h0()
{
    PlaneCurve<T> c{1, {}};
    c.add(0, 1, 0, T(1));
    c.add(0, 0, 1, T(-1));
    return c;
}
template <class T>
PlaneCurve<T> line_h3()
{
    PlaneCurve<T> c{1, {}};
    c.add(0, 1, 0, T(1));
    c.add(0, 0, 1, T(1));
    return c;
}

// Points of the base conic from lines through [1:1:1].
template <class T>
Point<T> base_conic_point(const T& t)
{
    return {t * t - T(2) * t - T(1), T(1) - T(2) * t - t * t, T(1) + t * t};
}

template <class T>
PlaneCurve<T> conic_c411(const Point<T>& q, double tol = 1e-9)
{
    const T& a = q[0];
    const T& b = q[1];
    const T& g = q[2];
    double scale = magnitude(a) * magnitude(a) + magnitude(b) * magnitude(b) + 2 * magnitude(g) * magnitude(g);
    if (!negligible(base_conic<T>()(q), tol * std::max(scale, 1e-300)))
        throw std::invalid_argument("conic_c411: point is not on the base conic");
    if (negligible(b - g, tol * std::max(magnitude(b) + magnitude(g), 1e-300)))
        throw std::invalid_argument("conic_c411: point lies on y = z");
    PlaneCurve<T> c{2, {}};
    c.add(2, 0, 0, (b - T(2) * g) * (b - T(2) * g));
    c.add(0, 2, 0, T(3) * b * b - T(4) * b * g + T(2) * g * g);
    c.add(1, 1, 0, T(2) * a * b);
    c.add(1, 0, 1, T(-4) * a * g);
    c.add(0, 1, 1, T(-4) * b * g);
    c.add(0, 0, 2, T(4) * b * (T(2) * g - b));
    return c;
}

template <class T>
Point<T> c411_h0_tangency(const Point<T>& q)
{
    const T w = T(2) * q[2] - q[1];
    return {q[0], w, w};
}

template <class T>
PlaneCurve<T> conic_c222(const T& c, double tol = 1e-12)
{
    if (negligible(c - T(1), tol) || negligible(c + T(1), tol))
        throw std::invalid_argument("conic_c222: parameter must differ from 1 and -1");
    PlaneCurve<T> k{2, {}};
    k.add(2, 0, 0, T(1));
    k.add(0, 2, 0, T(1) - c * c);
    k.add(1, 0, 1, T(-2) * c);
    k.add(0, 0, 2, T(2) * c * c - T(1));
    return k;
}

// c and s with 2c^2 - 1 = s^2, rational in t.
template <class T>
std::pair<T, T> c222_rational_parameter(const T& t)
{
    const T d = t * t - T(2);
    return {(t * t - T(2) * t + T(2)) / d, (T(4) * t - t * t - T(2)) / d};
}

struct JInvariant {
    Rational lambda;
    Rational j;
};
JInvariant j_invariant(const TypeVector& mu);
Rational j_from_lambda(const Rational& lambda);

int plucker_dual_degree(int d, int g, const std::vector<std::pair<int, int>>& sing);

struct SingularityBudget {
    int dual_degree;
    int cusps;
    int nodes;
    int triple_points;
    int delta_H;
    int genus;
};
SingularityBudget dual_budget(int zeros, int ones);

struct PatternClass {
    std::string kind;
    bool severi_member;
    int odd_terms;
    std::optional<int> geometric_genus;
    std::string singularities;
};
PatternClass classify_pattern(std::vector<int> pattern);
std::vector<std::vector<int>> partitions_of(int n);

struct DiscriminantProfile {
    int degree;
    int components;
    int genus;
    int nodes;
    int delta_m;
    std::string component_profile;
};
DiscriminantProfile discriminant_profile(const TypeVector& mu);

}  // namespace fgp
