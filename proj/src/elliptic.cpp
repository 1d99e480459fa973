#include "fgp/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fgp {

namespace {

constexpr int kLaurentTerms = 48;
constexpr double kPi = std::numbers::pi;

std::pair<double, double> solve_real(cd z, cd u, cd v)
{
    // z = a*u + b*v with a, b real
    double det = u.real() * v.imag() - u.imag() * v.real();
    double a = (z.real() * v.imag() - z.imag() * v.real()) / det;
    double b = (u.real() * z.imag() - u.imag() * z.real()) / det;
    return {a, b};
}

void gauss_reduce(cd& u, cd& v)
{
    for (int it = 0; it < 200; ++it) {
        if (std::abs(v) < std::abs(u))
            std::swap(u, v);
        double m = std::round((v / u).real());
        if (m == 0)
            break;
        v -= m * u;
    }
    if ((v / u).imag() < 0)
        v = -v;
}

std::vector<cd> laurent_coefficients(cd g2, cd g3)
{
    std::vector<cd> c(kLaurentTerms + 1, 0.0);
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for (int k = 4; k <= kLaurentTerms; ++k) {
        cd s = 0;
        for (int m = 2; m <= k - 2; ++m)
            s += c[m] * c[k - m];
        c[k] = 3.0 / double((2 * k + 1) * (k - 3)) * s;
    }
    return c;
}

std::pair<cd, cd> eisenstein(cd tau)
{
    const cd q = std::exp(cd(0, 2 * kPi) * tau);
    cd e4 = 1, e6 = 1, qn = 1;
    for (int n = 1; n < 200; ++n) {
        qn *= q;
        if (std::abs(qn) * std::pow(double(n), 5) < 1e-18)
            break;
        double s3 = 0, s5 = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) {
                s3 += std::pow(double(d), 3);
                s5 += std::pow(double(d), 5);
            }
        e4 += 240.0 * s3 * qn;
        e6 -= 504.0 * s5 * qn;
    }
    return {e4, e6};
}

[[noreturn]] void throw_pole(cd z)
{
    std::ostringstream os;
    os << "pole: argument " << z << " is within the pole guard of a lattice point";
    throw std::domain_error(os.str());
}

double snap(double v)
{
    v -= std::floor(v);
    for (double t : {0.0, 0.5, 1.0})
        if (std::abs(v - t) < 1e-9)
            v = t;
    return v == 1.0 ? 0.0 : v;
}

}  // namespace

cd Lattice::branch_factor(int j) const
{
    int k = (j + 1) % 3, l = (j + 2) % 3;
    return (e[j] - e[k]) * (e[j] - e[l]);
}

cd reduce_mod_lattice(cd z, const Lattice& L)
{
    auto [a, b] = solve_real(z, L.lam1, L.lam2);
    z -= std::round(a) * L.lam1 + std::round(b) * L.lam2;
    cd best = z;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            cd c = z - double(i) * L.lam1 - double(j) * L.lam2;
            if (std::abs(c) < std::abs(best))
                best = c;
        }
    return best;
}

WpValues wp_all(cd z, const Lattice& L, const ToleranceConfig& tol)
{
    z = reduce_mod_lattice(z, L);
    if (std::abs(z) < tol.pole_guard * L.shortest())
        throw_pole(z);
    const cd lam = L.lam1;
    const cd g2n = L.g2 * std::pow(lam, 4);
    cd u = z / lam;
    int halvings = 0;
    while (std::abs(u) > tol.series_radius) {
        u *= 0.5;
        ++halvings;
    }
    const cd u2 = u * u;
    cd p = 1.0 / u2, p1 = -2.0 / (u2 * u), p2 = 6.0 / (u2 * u2);
    cd pw = 1;  // u^(2k-4)
    for (int k = 2; k <= kLaurentTerms; ++k) {
        const cd ck = L.laurent[k];
        const double a = 2 * k - 2;
        p2 += ck * a * (a - 1) * pw;
        p1 += ck * a * pw * u;
        pw *= u2;
        p += ck * pw;
    }
    for (int h = 0; h < halvings; ++h) {
        const cd f = p2 / (2.0 * p1);
        const cd p3 = 12.0 * p * p1;
        const cd fd = (p3 * p1 - p2 * p2) / (2.0 * p1 * p1);
        const cd np = -2.0 * p + f * f;
        const cd np1 = -p1 + f * fd;
        p = np;
        p1 = np1;
        p2 = 6.0 * p * p - g2n / 2.0;
    }
    const cd l2 = lam * lam;
    return {p / l2, p1 / (l2 * lam), p2 / (l2 * l2)};
}

cd wp(cd z, const Lattice& L, const ToleranceConfig& tol) { return wp_all(z, L, tol).p; }
cd wp_prime(cd z, const Lattice& L, const ToleranceConfig& tol) { return wp_all(z, L, tol).p1; }
cd wp_second(cd z, const Lattice& L, const ToleranceConfig& tol) { return wp_all(z, L, tol).p2; }

Lattice lattice_from_periods(cd omega_a, cd omega_b, const ToleranceConfig& tol)
{
    if (std::abs(omega_a) == 0 || std::abs(omega_b) == 0)
        throw std::invalid_argument("degenerate lattice");
    double im = (omega_b / omega_a).imag();
    if (std::abs(im) < 1e-12 * std::abs(omega_b / omega_a))
        throw std::invalid_argument("degenerate lattice");
    if (im < 0)
        std::swap(omega_a, omega_b);

    Lattice L;
    L.omega_a = omega_a;
    L.omega_b = omega_b;
    L.omegas = {cd(0), omega_a, omega_a + omega_b, omega_b};
    L.lam1 = 2.0 * omega_a;
    L.lam2 = 2.0 * omega_b;
    gauss_reduce(L.lam1, L.lam2);

    auto [e4, e6] = eisenstein(L.lam2 / L.lam1);
    const double pi4 = std::pow(kPi, 4), pi6 = std::pow(kPi, 6);
    L.g2 = 60.0 * (pi4 / 45.0) * e4 / std::pow(L.lam1, 4);
    L.g3 = 140.0 * (2.0 * pi6 / 945.0) * e6 / std::pow(L.lam1, 6);
    L.laurent = laurent_coefficients(L.g2 * std::pow(L.lam1, 4), L.g3 * std::pow(L.lam1, 6));
    for (int j = 0; j < 3; ++j)
        L.e[j] = wp(L.omegas[j + 1], L, tol);

    const double scale = std::max({std::abs(L.e[0]), std::abs(L.e[1]), std::abs(L.e[2])});
    if (std::abs(L.e[0] + L.e[1] + L.e[2]) > 1e-8 * scale)
        throw std::logic_error("lattice invariant violated: branch values do not sum to zero");
    for (int j = 0; j < 3; ++j)
        if (std::abs(L.e[j] - L.e[(j + 1) % 3]) < 1e-10 * scale)
            throw std::logic_error("lattice invariant violated: coincident branch values");
    return L;
}

std::pair<double, double> period_coordinates(cd z, const Lattice& L)
{
    return solve_real(z, 2.0 * L.omega_a, 2.0 * L.omega_b);
}

namespace {

cd from_coordinates(double s, double t, const Lattice& L)
{
    return s * 2.0 * L.omega_a + t * 2.0 * L.omega_b;
}

cd canonical_rep(cd z, const Lattice& L)
{
    auto [s, t] = period_coordinates(z, L);
    s = snap(s);
    t = snap(t);
    double sn = snap(-s), tn = snap(-t);
    if (std::make_pair(tn, sn) < std::make_pair(t, s))
        return from_coordinates(sn, tn, L);
    return from_coordinates(s, t, L);
}

cd parallelogram_rep(cd z, const Lattice& L)
{
    auto [s, t] = period_coordinates(z, L);
    return from_coordinates(snap(s), snap(t), L);
}

}  // namespace

cd invert_wp(cd x, const Lattice& L, std::optional<cd> sign_hint, const ToleranceConfig& tol)
{
    const double emax = std::max({std::abs(L.e[0]), std::abs(L.e[1]), std::abs(L.e[2])});
    const double scale = std::max({1.0, std::abs(x), emax});

    std::optional<cd> found;
    for (int j = 0; j < 3; ++j)
        if (std::abs(x - L.e[j]) <= 1e-13 * scale)
            found = L.omegas[j + 1];

    double best_res = INFINITY;
    if (!found) {
        std::vector<cd> starts;
        if (std::abs(x) > 4 * emax && std::abs(x) > 0)
            starts.push_back(1.0 / std::sqrt(x));
        for (int j = 0; j < 3; ++j) {
            cd t = std::sqrt((x - L.e[j]) / L.branch_factor(j));
            starts.push_back(L.omegas[j + 1] + t);
            starts.push_back(L.omegas[j + 1] - t);
        }
        const int g = 6;
        for (int a = 0; a < g; ++a)
            for (int b = 0; b < g; ++b)
                starts.push_back(from_coordinates((a + 0.5) / g, (b + 0.5) / g, L));

        const double step_cap = 0.25 * L.shortest();
        for (cd z : starts) {
            try {
                for (int it = 0; it < 80; ++it) {
                    WpValues v = wp_all(z, L, tol);
                    cd r = v.p - x;
                    double ar = std::abs(r) / std::max(1.0, std::abs(x));
                    best_res = std::min(best_res, ar);
                    if (ar < 1e-14) {
                        found = z;
                        break;
                    }
                    cd step = r / v.p1;
                    if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                        break;
                    if (std::abs(step) > step_cap)
                        step *= step_cap / std::abs(step);
                    z -= step;
                    if (it == 79 && ar < tol.invert_residual)
                        found = z;
                }
            } catch (const std::domain_error&) {
                continue;
            }
            if (found)
                break;
        }
    }
    if (!found) {
        std::ostringstream os;
        os << "invert_wp: Newton multistart did not converge for x = " << x << " (best relative residual "
           << best_res << ")";
        throw std::runtime_error(os.str());
    }
    cd z = *found;
    if (sign_hint) {
        cd d = 0;
        bool half_period = false;
        for (int j = 1; j < 4; ++j)
            if (std::abs(reduce_mod_lattice(z - L.omegas[j], L)) < 1e-12 * L.shortest())
                half_period = true;
        if (!half_period)
            d = wp_prime(z, L, tol);
        if (std::abs(-d - *sign_hint) < std::abs(d - *sign_hint))
            z = -z;
        return parallelogram_rep(z, L);
    }
    return canonical_rep(z, L);
}

IdentityResiduals check_addition_identities(cd z, cd w, const Lattice& L, const ToleranceConfig& tol)
{
    const WpValues vz = wp_all(z, L, tol);
    IdentityResiduals out{0, 0};
    for (int j = 0; j < 3; ++j) {
        const cd q = wp_prime(z - L.omegas[j + 1], L, tol);
        const cd d = vz.p - L.e[j];
        const cd E = L.branch_factor(j);
        const cd r = q * d * d + vz.p1 * E;
        const double s = std::abs(q) * std::norm(d) + std::abs(vz.p1 * E);
        out.first = std::max(out.first, s > 0 ? std::abs(r) / s : 0.0);
    }
    const cd pw = wp(w, L, tol);
    const cd a = wp_prime(z - w, L, tol) + wp_prime(z + w, L, tol);
    const cd d = vz.p - pw;
    const cd b = 12.0 * pw * pw - L.g2;
    const cd pi = L.cubic(pw);
    const cd r = 2.0 * a * d * d * d + vz.p1 * (b * d + 16.0 * pi);
    const double s = 2 * std::abs(a) * std::pow(std::abs(d), 3) +
                     std::abs(vz.p1) * (std::abs(b * d) + 16 * std::abs(pi));
    out.second = s > 0 ? std::abs(r) / s : 0.0;
    return out;
}

}  // namespace fgp
