#pragma once

#include "fgp/dg_system.hpp"
#include "fgp/elliptic.hpp"
#include "fgp/tolerance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fgp {

using DGSystemC = DGSystem<cd>;
using DGSystemQ = DGSystem<Rational>;

DGSystemC build_system(const AlphaVector& alpha, const Lattice& L, const ToleranceConfig& tol = default_tolerances());
DGSystemC to_complex(const DGSystemQ& s);

struct PotentialSpec {
    AlphaVector alpha;
    std::vector<cd> rhos;
    Lattice lattice;
};

// Left-hand sides of the pole equations, one per rho.
std::vector<cd> dg_residual(const PotentialSpec& spec, const ToleranceConfig& tol = default_tolerances());
// Same, each divided by the sum of the magnitudes of its terms.
std::vector<double> dg_residual_relative(const PotentialSpec& spec, const ToleranceConfig& tol = default_tolerances());

std::vector<cd> akm_residual(const std::vector<cd>& points, const Lattice& L,
                             const ToleranceConfig& tol = default_tolerances());

cd eval_potential(const PotentialSpec& spec, cd x, const ToleranceConfig& tol = default_tolerances());
int potential_degree(const PotentialSpec& spec);

struct DGSolution {
    std::vector<cd> xs;              // wp values of the poles
    std::vector<cd> rhos;            // lifted poles; empty when not lifted
    std::vector<double> residuals;   // relative pole-equation residuals after lifting
    double reduced_residual = 0;     // relative residual of the polynomial system
    int multiplicity = 1;
};

struct SolveReport {
    AlphaVector alpha;
    int depth = 0;
    std::vector<DGSolution> solutions;
    std::vector<std::string> warnings;
    std::string method;
    bool lifted = false;
    int count() const { return int(solutions.size()); }
};

// Polynomial-level solvers on the branch values only.
SolveReport solve_d1_x(const DGSystemC& sys, const ToleranceConfig& tol = default_tolerances());
SolveReport solve_d2_x(const DGSystemC& sys, const ToleranceConfig& tol = default_tolerances());

// Full solvers: polynomial solve, lift to poles, verify against the pole equations.
SolveReport solve_d1(const AlphaVector& alpha, const Lattice& L, const ToleranceConfig& tol = default_tolerances());
SolveReport solve_d2(const AlphaVector& alpha, const Lattice& L, const ToleranceConfig& tol = default_tolerances());

// Lowest total degree of F at (e_j, e_j), j = 1,2,3; cone holds the coefficients of
// x^a y^(m-a), a = 0..m, in the shifted variables.
struct DiagonalCone {
    int multiplicity;
    std::vector<cd> cone;
};
DiagonalCone diagonal_cone(const DGSystemC& sys, int j, double tol = 1e-10);
int diagonal_multiplicity(const DGSystemC& sys, int j, double tol = 1e-10);

}  // namespace fgp
