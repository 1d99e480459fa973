#include "doctest.h"

#include "fgp/dg_solver.hpp"
#include "fgp/type_arith.hpp"

#include <random>

using namespace fgp;

namespace {

using Q = Rational;

const Lattice& acceptance_lattice()
{
    static const Lattice L = lattice_from_periods(2, cd(0.6, 1.7));
    return L;
}

DGSystemQ exact_system(const AlphaVector& a, Q e1, Q e2) { return build_system<Q>(a, {e1, e2, -e1 - e2}); }

BiPoly<Q> x_minus_y()
{
    return BiPoly<Q>::in_x(Poly<Q>({Q(0), Q(1)})) - BiPoly<Q>::in_y(Poly<Q>({Q(0), Q(1)}));
}

}  // namespace

TEST_CASE("closed-form G1")
{
    const auto s = exact_system({0, 0, 0, 0}, 1, 0);
    CHECK(s.G1 == Poly<Q>({Q(1), Q(0), Q(-5), Q(0), Q(-5), Q(0), Q(1)}));
    CHECK(s.F.degree_x() == 9);
    CHECK(s.F.degree_y() == 3);
    CHECK_THROWS_AS(build_system<Q>({0, 0, 0, 0}, {Q(1), Q(1), Q(-2)}), std::invalid_argument);
}

TEST_CASE("diagonal identity and bracket, exact")
{
    std::mt19937 rng(13);
    for (int i = 0; i < 20; ++i) {
        const Q e1(int(rng() % 21) - 10, int(rng() % 5) + 1), e2(int(rng() % 21) - 10, int(rng() % 5) + 1);
        if (e1 == e2 || e1 == -e1 - e2 || e2 == -e1 - e2)
            continue;
        const AlphaVector a(int(rng() % 5), int(rng() % 5), int(rng() % 5), int(rng() % 5));
        const auto s = exact_system(a, e1, e2);
        CHECK(s.F.diagonal() == Q(64) * s.Pi.pow(3));
        const auto d = x_minus_y();
        const auto bracket = Q(4) * (BiPoly<Q>::in_x(s.Pi * s.Pi) * s.B) - s.F;
        CHECK((bracket - d * d * d * BiPoly<Q>::in_x(s.G1)).is_zero());
    }
}

TEST_CASE("diagonal identity, float")
{
    const auto& L = acceptance_lattice();
    const auto s = build_system({4, 0, 0, 0}, L);
    const auto diff = s.F.diagonal() - cd(64) * s.Pi.pow(3);
    double worst = 0, top = 0;
    for (const cd& c : s.F.diagonal().coeffs())
        top = std::max(top, std::abs(c));
    for (const cd& c : diff.coeffs())
        worst = std::max(worst, std::abs(c));
    CHECK(worst < 1e-10 * top);
}

TEST_CASE("diagonal multiplicity three")
{
    const auto s = to_complex(exact_system({0, 0, 0, 0}, 1, 0));
    for (int j = 1; j <= 3; ++j) {
        const auto cone = diagonal_cone(s, j);
        CHECK(cone.multiplicity == 3);
        CHECK(cone.cone.size() == 4);
    }
    const auto& L = acceptance_lattice();
    const auto t = build_system({1, 2, 2, 2}, L);
    for (int j = 1; j <= 3; ++j)
        CHECK(diagonal_multiplicity(t, j) == 3);
    CHECK_THROWS(diagonal_cone(t, 0));
}

TEST_CASE("d = 1 closed form")
{
    const auto s = to_complex(exact_system({0, 0, 0, 0}, 1, 0));
    const auto rep = solve_d1_x(s);
    const double r2 = std::sqrt(2.0);
    const std::vector<cd> want{{0, 1}, {0, -1}, {1 + r2, 0}, {-1 - r2, 0}, {r2 - 1, 0}, {1 - r2, 0}};
    REQUIRE(rep.count() == 6);
    for (const cd& w : want) {
        double best = 1e9;
        for (const auto& sol : rep.solutions)
            best = std::min(best, std::abs(sol.xs[0] - w));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("d = 1 lifted solutions satisfy the pole equations")
{
    const auto& L = acceptance_lattice();
    const auto rep = solve_d1({1, 1, 1, 1}, L);
    CHECK(rep.count() == 6);
    CHECK(rep.warnings.empty());
    for (const auto& s : rep.solutions) {
        REQUIRE(s.rhos.size() == 1);
        CHECK(s.residuals[0] < 1e-8);
        PotentialSpec flipped{{1, 1, 1, 1}, {-s.rhos[0]}, L};
        PotentialSpec orig{{1, 1, 1, 1}, s.rhos, L};
        CHECK(std::abs(std::abs(dg_residual(flipped)[0]) - std::abs(dg_residual(orig)[0])) < 1e-9);
    }
}

TEST_CASE("d = 2 headline count")
{
    const auto& L = acceptance_lattice();
    for (const AlphaVector a : {AlphaVector(4, 0, 0, 0), AlphaVector(1, 2, 2, 2)}) {
        const auto rep = solve_d2(a, L);
        CHECK(rep.count() == 27);
        CHECK(rep.warnings.empty());
        for (const auto& s : rep.solutions) {
            CHECK(std::abs(s.xs[0] - s.xs[1]) > 1e-6);
            CHECK(std::max(s.residuals[0], s.residuals[1]) < 1e-8);
        }
    }
}

TEST_CASE("d = 2 symmetry and negative control")
{
    const auto& L = acceptance_lattice();
    const AlphaVector a(4, 0, 0, 0);
    const auto rep = solve_d2(a, L);
    REQUIRE(rep.count() > 0);
    const auto& s = rep.solutions.front();
    const PotentialSpec spec{a, s.rhos, L};
    const PotentialSpec swapped{a, {s.rhos[1], s.rhos[0]}, L};
    const PotentialSpec negated{a, {-s.rhos[0], s.rhos[1]}, L};
    for (const auto& other : {swapped, negated}) {
        const auto r = dg_residual_relative(other);
        CHECK(std::max(r[0], r[1]) < 1e-8);
    }
    PotentialSpec bumped = spec;
    bumped.rhos[0] += 1e-3;
    const auto r = dg_residual_relative(bumped);
    CHECK(std::max(r[0], r[1]) > 1e-4);
}

TEST_CASE("residual helpers")
{
    const auto& L = acceptance_lattice();
    CHECK(dg_residual({{0, 0, 0, 0}, {}, L}).empty());
    const cd x(0.3, 0.2);
    const auto akm = akm_residual({x, -x}, L);
    CHECK(std::abs(akm[0] + akm[1]) < 1e-9 * std::abs(akm[0]));
    CHECK_THROWS(akm_residual({x, x}, L));
    const auto rnd = akm_residual({cd(0.1, 0.3), cd(0.5, 0.1), cd(0.7, 0.9)}, L);
    CHECK(std::abs(rnd[0]) > 1e-3);
}

TEST_CASE("potential evaluation and degree")
{
    const auto& L = acceptance_lattice();
    CHECK(std::abs(eval_potential({{0, 0, 0, 0}, {}, L}, cd(0.3, 0.4))) == 0);
    const PotentialSpec p{{1, 2, 2, 2}, {cd(0.21, 0.33), cd(0.47, 0.12)}, L};
    const cd z(0.37, 0.58);
    CHECK(std::abs(eval_potential(p, z) - eval_potential(p, -z)) < 1e-9 * std::abs(eval_potential(p, z)));
    CHECK(potential_degree(p) == 14);
    CHECK(potential_degree(p) == degree_of({3, 2, 2, 2}, 2));
    CHECK(potential_degree({{0, 0, 0, 0}, {cd(0.1), cd(0.2)}, L}) == 4);
    CHECK(potential_degree({{4, 0, 0, 0}, {}, L}) == 10);

    // pole coefficient at omega_1 from a small circle
    const cd w = L.omegas[1];
    const double h = 1e-3;
    cd acc = 0;
    const int N = 64;
    for (int k = 0; k < N; ++k) {
        const cd t = std::polar(h, 2 * M_PI * k / N);
        acc += eval_potential(p, w + t) * t * t;
    }
    CHECK(std::abs(acc / double(N) - 6.0) < 1e-6 * 6.0);
}

TEST_CASE("linear weights change the system")
{
    const auto& L = acceptance_lattice();
    ToleranceConfig tol;
    tol.linear_weights = true;
    const auto s = build_system({2, 0, 0, 0}, L, tol);
    CHECK(std::abs(s.weights[0] - 5.0) < 1e-15);
    const auto r = solve_d1({2, 0, 0, 0}, L, tol);
    for (const auto& sol : r.solutions)
        CHECK(sol.residuals[0] < 1e-8);
}

TEST_CASE("count bound on random lattices")
{
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int l = 0; l < 3; ++l) {
        const auto L = lattice_from_periods(cd(1 + 0.4 * U(rng), 0.3 * U(rng)), cd(0.5 * U(rng), 1.3 + 0.5 * U(rng)));
        const AlphaVector a(int(rng() % 4), int(rng() % 4), int(rng() % 4), int(rng() % 4));
        CHECK(solve_d2(a, L).count() <= 27);
    }
}
