#include "fgp/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fgp {

namespace {

std::pair<cd, cd> eval_with_derivative(const std::vector<cd>& c, cd z)
{
    cd p = 0, dp = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    return {p, dp};
}

double eval_abs_bound(const std::vector<cd>& c, double r)
{
    double s = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        s = s * r + std::abs(c[i]);
    return s;
}

}  // namespace

RootResult aberth_roots(const Poly<cd>& p, int max_iter)
{
    RootResult out;
    const int n = p.degree();
    if (n < 1) {
        out.converged = true;
        return out;
    }
    std::vector<cd> c = p.coeffs();
    const cd lead = c.back();
    for (auto& x : c)
        x /= lead;

    // Fujiwara bound for the initial circle.
    double bound = 0;
    for (int k = 1; k <= n; ++k) {
        double t = std::pow(std::abs(c[n - k]), 1.0 / k);
        if (k == n)
            t = std::pow(std::abs(c[0]) / 2, 1.0 / n);
        bound = std::max(bound, 2 * t);
    }
    if (bound == 0)
        bound = 1;
    const double r0 = 0.5 * bound;

    std::vector<cd> z(n);
    for (int k = 0; k < n; ++k) {
        double th = 2 * std::numbers::pi * k / n + 0.4;
        z[k] = std::polar(r0, th);
    }
    std::vector<bool> done(n, false);
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        int active = 0;
        for (int k = 0; k < n; ++k) {
            if (done[k])
                continue;
            auto [pv, dv] = eval_with_derivative(c, z[k]);
            double err = eval_abs_bound(c, std::abs(z[k])) * 4e-16 * (n + 1);
            if (std::abs(pv) <= err) {
                done[k] = true;
                continue;
            }
            ++active;
            cd w = pv / dv;
            cd s = 0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    s += 1.0 / (z[k] - z[j]);
            cd step = w / (1.0 - w * s);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                step = w;
            z[k] -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z[k])))
                done[k] = true;
        }
        if (active == 0)
            break;
    }
    out.iterations = iter;
    out.converged = std::all_of(done.begin(), done.end(), [](bool b) { return b; });

    // Newton polish against the unnormalized polynomial.
    for (auto& r : z) {
        for (int it = 0; it < 4; ++it) {
            auto [pv, dv] = eval_with_derivative(c, r);
            if (std::abs(dv) == 0)
                break;
            cd step = pv / dv;
            if (!std::isfinite(step.real()))
                break;
            cd cand = r - step;
            if (std::abs(eval_with_derivative(c, cand).first) < std::abs(pv))
                r = cand;
            else
                break;
        }
    }
    out.roots = std::move(z);
    return out;
}

std::vector<cd> poly_roots(const Poly<cd>& p)
{
    auto r = aberth_roots(p);
    if (!r.converged) {
        // clustered roots can need a longer run
        auto again = aberth_roots(p, 3000);
        if (!again.converged)
            throw std::runtime_error("root finder did not converge (degree " + std::to_string(p.degree()) + ")");
        return again.roots;
    }
    return r.roots;
}

std::vector<std::pair<cd, int>> cluster_roots(const std::vector<cd>& roots, double radius)
{
    std::vector<std::pair<cd, int>> out;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i])
            continue;
        cd sum = roots[i];
        int m = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!used[j] && std::abs(roots[j] - roots[i]) < radius) {
                used[j] = true;
                sum += roots[j];
                ++m;
            }
        out.push_back({sum / double(m), m});
    }
    return out;
}

}  // namespace fgp
