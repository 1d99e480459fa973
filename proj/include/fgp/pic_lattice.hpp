#pragma once

#include "fgp/rational.hpp"
#include "fgp/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fgp {

// Coefficients over (C0, l, S0..S3, r0..r3).
struct DivClass {
    std::array<long long, 10> c{};

    friend DivClass operator+(DivClass a, const DivClass& b)
    {
        for (int i = 0; i < 10; ++i)
            a.c[i] += b.c[i];
        return a;
    }
    friend DivClass operator-(DivClass a, const DivClass& b)
    {
        for (int i = 0; i < 10; ++i)
            a.c[i] -= b.c[i];
        return a;
    }
    friend DivClass operator*(long long k, DivClass a)
    {
        for (auto& x : a.c)
            x *= k;
        return a;
    }
    friend bool operator==(const DivClass&, const DivClass&) = default;
};

// Coefficients over (c, f, s0..s3, r0..r3) on the blown-up ruled surface.
struct PerpClass {
    std::array<long long, 10> c{};
};

namespace basis {
DivClass C0();
DivClass l();
DivClass S(int i);
DivClass r(int i);
DivClass s(int i);  // l - 2 S_i - r_i
DivClass K();       // -2 C0 - sum s_i
DivClass L();       // -K
}  // namespace basis

const std::array<std::string, 10>& basis_names();
const std::array<std::array<int, 10>, 10>& gram_matrix();

long long intersect(const DivClass& a, const DivClass& b);
long long intersect_perp(const PerpClass& a, const PerpClass& b);
PerpClass pullback(const DivClass& d);

DivClass class_of_gamma(const TypeVector& nu);
long long arithmetic_genus(const DivClass& d);

struct LinearCore {
    TypeVector nu;
    int e;
};
std::vector<LinearCore> decompose_linear_system(const TypeVector& mu, int d);

bool is_contraction_data(const std::array<TypeVector, 4>& t);

// Representative of a class on the contraction: orthogonal to Gamma_mu and s0.
DivClass contract(const DivClass& d, const TypeVector& mu);

struct DelPezzoReport {
    TypeVector mu;
    int exceptional_curves;
    int positive_fibers;
    int pencil_reducibles;
    DivClass anticanonical;  // L_mu
    DivClass R;
    DivClass R_c;
    DivClass Omega;
    std::string omega_profile;
    std::vector<TypeVector> omega_components;  // exceptional components of Omega
    std::vector<int> inflection_points;        // j in {1,2,3} with s_j an inflection of the cubic
    std::optional<std::pair<Rational, Rational>> lambda_j;
};

DelPezzoReport delpezzo_report(const TypeVector& mu);

}  // namespace fgp
