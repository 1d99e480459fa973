#include "doctest.h"

#include "fgp/pic_lattice.hpp"
#include "fgp/type_arith.hpp"

#include <Eigen/Dense>

#include <random>

using namespace fgp;

namespace {

std::vector<TypeVector> all_types(int bound)
{
    std::vector<TypeVector> out;
    for (int a = 0; a <= bound; ++a)
        for (int b = 0; b <= bound; ++b)
            for (int c = 0; c <= bound; ++c)
                for (int d = 0; d <= bound; ++d)
                    if ((a + b + c + d) % 2 == 1)
                        out.emplace_back(a, b, c, d);
    return out;
}

}  // namespace

TEST_CASE("gram matrix signature")
{
    Eigen::Matrix<double, 10, 10> G;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            G(i, j) = gram_matrix()[i][j];
    CHECK((G - G.transpose()).norm() == 0);
    const auto ev = Eigen::SelfAdjointEigenSolver<decltype(G)>(G).eigenvalues();
    int pos = 0, neg = 0;
    for (int i = 0; i < 10; ++i) {
        pos += ev(i) > 1e-9;
        neg += ev(i) < -1e-9;
    }
    CHECK(pos == 1);
    CHECK(neg == 9);
}

TEST_CASE("basic intersections")
{
    using namespace basis;
    CHECK(intersect(K(), K()) == 0);
    for (int i = 0; i < 4; ++i) {
        CHECK(intersect(s(i), s(i)) == -2);
        CHECK(intersect(L(), s(i)) == 0);
        for (int j = 0; j < 4; ++j)
            if (i != j)
                CHECK(intersect(s(i), s(j)) == 0);
    }
    CHECK(intersect(C0(), C0()) == -2);
    CHECK(intersect(C0(), l()) == 1);
    CHECK(intersect(S(1), r(1)) == 1);
    CHECK(intersect(S(1), r(2)) == 0);
}

TEST_CASE("class_of_gamma")
{
    const auto g = class_of_gamma({1, 0, 0, 0});
    CHECK(intersect(g, g) == -1);
    CHECK(intersect(g, basis::K()) == -1);
    CHECK(intersect(g, basis::s(0)) == 1);
    for (int j = 1; j < 4; ++j)
        CHECK(intersect(g, basis::s(j)) == 0);
    CHECK(intersect(class_of_gamma({0, 1, 0, 0}), basis::s(1)) == 1);
}

TEST_CASE("cross-module intersection oracle")
{
    const auto all = all_types(5);
    std::mt19937 rng(41);
    for (int i = 0; i < 200; ++i) {
        const auto& a = all[rng() % all.size()];
        const auto& b = all[rng() % all.size()];
        CHECK(Rational(intersect(class_of_gamma(a), class_of_gamma(b))) == gamma_intersection(a, b));
    }
    for (const auto& nu : all)
        CHECK(intersect(class_of_gamma(nu), basis::K()) == -1);
}

TEST_CASE("arithmetic genus")
{
    CHECK(arithmetic_genus(basis::L()) == 1);
    CHECK(arithmetic_genus(class_of_gamma({3, 2, 2, 2})) == 0);
    for (const auto& mu : all_types(5)) {
        if (mu.cls() != 0)
            continue;
        for (int d = 0; d <= 4; ++d)
            CHECK(arithmetic_genus(class_of_gamma(mu) + d * basis::L()) == d);
    }
}

TEST_CASE("linear system decomposition")
{
    const auto a = decompose_linear_system({3, 2, 2, 2}, 2);
    REQUIRE(a.size() == 3);
    for (const auto& c : a)
        CHECK(c.nu == TypeVector(3, 2, 2, 2));

    const auto b = decompose_linear_system({1, 0, 0, 0}, 2);
    bool has120 = false, has300 = false;
    for (const auto& c : b) {
        has120 = has120 || c.nu == TypeVector(1, 2, 0, 0);
        has300 = has300 || c.nu == TypeVector(3, 0, 0, 0);
    }
    CHECK(has120);
    CHECK(has300);

    const auto c = decompose_linear_system({1, 0, 0, 0}, 0);
    REQUIRE(c.size() == 1);
    CHECK(c[0].e == 0);
}

TEST_CASE("contraction data")
{
    const TypeVector mu(3, 2, 2, 2);
    CHECK(is_contraction_data({mu, TypeVector(4, 3, 2, 2), TypeVector(4, 2, 3, 2), TypeVector(4, 2, 2, 3)}));
    CHECK_FALSE(is_contraction_data({mu, mu, TypeVector(4, 2, 3, 2), TypeVector(4, 2, 2, 3)}));
    const TypeVector m(1, 0, 0, 0);
    CHECK(is_contraction_data({m, TypeVector(2, 1, 0, 0), TypeVector(2, 0, 1, 0), TypeVector(2, 0, 0, 1)}));
}

TEST_CASE("contraction is orthogonal to the contracted classes")
{
    const TypeVector mu(3, 2, 2, 2);
    const auto d = contract(basis::C0(), mu);
    CHECK(intersect(d, class_of_gamma(mu)) == 0);
    CHECK(intersect(d, basis::s(0)) == 0);
}

TEST_CASE("del Pezzo reports")
{
    const auto a = delpezzo_report({3, 2, 2, 2});
    CHECK(a.exceptional_curves == 25);
    CHECK(a.positive_fibers == 3);
    CHECK(a.pencil_reducibles == 1);
    CHECK(a.omega_profile == "smooth genus 1");
    CHECK(intersect(a.anticanonical, a.anticanonical) == 2);
    CHECK(intersect(a.Omega, a.anticanonical) == 3);
    CHECK(arithmetic_genus(a.Omega) == 1);
    CHECK(a.R == 2 * a.anticanonical);
    CHECK(a.lambda_j.has_value());

    const auto b = delpezzo_report({1, 0, 0, 2});
    CHECK(b.omega_profile == "line + conic");
    CHECK(b.positive_fibers == 5);
    CHECK(b.pencil_reducibles == 3);
    CHECK(b.exceptional_curves == 14);

    const auto c = delpezzo_report({1, 0, 0, 0});
    CHECK(c.omega_profile == "three lines");
    CHECK(c.exceptional_curves == 10);
    REQUIRE(c.omega_components.size() == 3);
    DivClass sum;
    for (const auto& nu : c.omega_components)
        sum = sum + contract(class_of_gamma(nu), {1, 0, 0, 0});
    CHECK(sum == c.Omega);
}
