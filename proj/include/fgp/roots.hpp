#pragma once

#include "fgp/poly.hpp"

#include <vector>

namespace fgp {

struct RootResult {
    std::vector<cd> roots;
    bool converged = false;
    int iterations = 0;
};

// Simultaneous root finding (Aberth-Ehrlich) followed by Newton polishing.
RootResult aberth_roots(const Poly<cd>& p, int max_iter = 600);

// Roots with a convergence requirement; throws on failure.
std::vector<cd> poly_roots(const Poly<cd>& p);

// Groups roots closer than radius; returns representative and multiplicity.
std::vector<std::pair<cd, int>> cluster_roots(const std::vector<cd>& roots, double radius);

}  // namespace fgp
