#pragma once

#include "fgp/poly.hpp"
#include "fgp/tolerance.hpp"

#include <array>
#include <optional>
#include <vector>

namespace fgp {

struct Lattice {
    cd omega_a;  // half periods: 2*omega_a, 2*omega_b generate the lattice
    cd omega_b;
    cd g2;
    cd g3;
    std::array<cd, 3> e;       // e[j-1] = wp(omegas[j])
    std::array<cd, 4> omegas;  // 0, omega_a, omega_a + omega_b, omega_b

    // Gauss-reduced basis of the period lattice, Im(lam2/lam1) > 0.
    cd lam1;
    cd lam2;
    // Laurent coefficients c_2.. of wp for the rescaled lattice lam1^{-1} * Lattice.
    std::vector<cd> laurent;
    double shortest() const { return std::abs(lam1); }
    // E_j = (e_j - e_k)(e_j - e_l), j = 0,1,2 for the three branch values.
    cd branch_factor(int j) const;
    // Pi(x) = 4x^3 - g2 x - g3 divided by 4, i.e. prod (x - e_j).
    cd cubic(cd x) const { return (x - e[0]) * (x - e[1]) * (x - e[2]); }
};

Lattice lattice_from_periods(cd omega_a, cd omega_b, const ToleranceConfig& tol = default_tolerances());

struct WpValues {
    cd p;   // wp
    cd p1;  // wp'
    cd p2;  // wp''
};

// Nearest representative of z modulo the lattice.
cd reduce_mod_lattice(cd z, const Lattice& L);

WpValues wp_all(cd z, const Lattice& L, const ToleranceConfig& tol = default_tolerances());
cd wp(cd z, const Lattice& L, const ToleranceConfig& tol = default_tolerances());
cd wp_prime(cd z, const Lattice& L, const ToleranceConfig& tol = default_tolerances());
cd wp_second(cd z, const Lattice& L, const ToleranceConfig& tol = default_tolerances());

// Solves wp(z) = x. With a hint, the branch whose wp' is closest to the hint is chosen.
cd invert_wp(cd x, const Lattice& L, std::optional<cd> sign_hint = std::nullopt,
             const ToleranceConfig& tol = default_tolerances());

// Coordinates (s, t) with z = s*2*omega_a + t*2*omega_b.
std::pair<double, double> period_coordinates(cd z, const Lattice& L);

struct IdentityResiduals {
    double first;   // max over j of the half-period shift identity, relative
    double second;  // two-point addition identity, relative
};

IdentityResiduals check_addition_identities(cd z, cd w, const Lattice& L,
                                            const ToleranceConfig& tol = default_tolerances());

}  // namespace fgp
