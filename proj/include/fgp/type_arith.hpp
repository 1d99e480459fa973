#pragma once

#include "fgp/rational.hpp"
#include "fgp/types.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace fgp {

struct MuStats {
    int sum;      // mu^(1)
    int sum_sq;   // mu^(2)
    int n;        // (mu^(2) - 1) / 2
    int g;        // (mu^(1) - 1) / 2
    int zeros;    // I_0
    int ones;     // I_1
};

MuStats mu_stats(const TypeVector& mu);
int degree_of(const TypeVector& mu, int d);

AlphaVector c_map(int j, int k, const TypeVector& mu);

struct CMapPreimage {
    TypeVector mu;                            // lexicographically smallest preimage
    std::vector<std::pair<int, int>> pairs;   // all (j,k) with c_map(j,k,mu) = alpha
    std::vector<TypeVector> alternatives;     // other preimages (permutations of mu_1..mu_3)
};
CMapPreimage c_map_inverse(const AlphaVector& alpha);

// Preimage under a single c_map(j,k,.), if any; each map is injective.
std::optional<TypeVector> c_map_inverse_at(const AlphaVector& alpha, int j, int k);

Rational g_alpha(const AlphaVector& alpha);

TypeVector geiser(const TypeVector& mu, const TypeVector& nu);
std::vector<TypeVector> exceptional_neighbors(const TypeVector& mu);
Rational gamma_intersection(const TypeVector& nu, const TypeVector& sigma);

long long severi_count(const TypeVector& mu, int d);

struct ThetaLabel {
    int j = 0;
    int k = 0;
    std::vector<int> shifts;  // Weierstrass points p' over the listed half-periods
};

struct SpectralDatum {
    TypeVector nu;
    int degree_n;
    int genus_g;
    ThetaLabel theta;
    long long count;
};

std::vector<SpectralDatum> spectral_enumeration(const AlphaVector& alpha);

struct ThetaDivisor {
    int p_coeff;
    std::vector<int> half_periods;  // pulled back, each of degree n
    int degree;
};
ThetaDivisor theta_char(int j, int k, int n, int g);

using BaseKey = std::pair<Quad, int>;
using BaseCounts = std::map<BaseKey, long long>;

long long recursion_count(const TypeVector& mu, int d, const BaseCounts& base, const std::map<int, long long>& pot0);

// Base entries severi_count(nu, l) for every (nu, l < d) the recursion at (mu, d) touches.
BaseCounts standard_recursion_base(const TypeVector& mu, int d);
std::map<int, long long> standard_pot0();

// All mu in T_0 with entries <= bound.
std::vector<TypeVector> sweep_t0(int bound);

long long binomial(int n, int k);

}  // namespace fgp
