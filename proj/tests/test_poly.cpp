#include "doctest.h"

#include "fgp/dg_system.hpp"
#include "fgp/poly.hpp"
#include "fgp/rational.hpp"
#include "fgp/roots.hpp"

#include <algorithm>

using namespace fgp;

TEST_CASE("poly arithmetic and evaluation")
{
    const Poly<Rational> p({Rational(1), Rational(-3), Rational(0), Rational(2)});
    CHECK(p.degree() == 3);
    CHECK(p(Rational(2)) == Rational(11));
    CHECK(p.derivative() == Poly<Rational>({Rational(-3), Rational(0), Rational(6)}));
    const auto q = p * p - p * p;
    CHECK(q.is_zero());
    CHECK((p.pow(2))(Rational(2)) == Rational(121));
}

TEST_CASE("deflate removes a known root")
{
    const Poly<Rational> p = Poly<Rational>::linear_root(Rational(3)) * Poly<Rational>::linear_root(Rational(-1, 2));
    const auto d = p.deflate(Rational(3));
    CHECK(d == Poly<Rational>::linear_root(Rational(-1, 2)));
}

TEST_CASE("aberth finds roots of a product")
{
    const std::vector<cd> want{{1, 0}, {-2, 0}, {0, 1}, {0, -1}, {0.5, 0.25}};
    Poly<cd> p = Poly<cd>::constant(1);
    for (const cd& r : want)
        p = p * Poly<cd>::linear_root(r);
    const auto got = poly_roots(p);
    REQUIRE(got.size() == want.size());
    for (const cd& r : want) {
        const double best = std::abs(*std::min_element(got.begin(), got.end(), [&](cd a, cd b) {
            return std::abs(a - r) < std::abs(b - r);
        }) - r);
        CHECK(best < 1e-12);
    }
}

TEST_CASE("cluster_roots reports multiplicity")
{
    const auto c = cluster_roots({{1, 0}, {1 + 1e-9, 0}, {2, 0}}, 1e-6);
    REQUIRE(c.size() == 2);
    int total = 0;
    for (auto [r, m] : c)
        total += m;
    CHECK(total == 3);
}

TEST_CASE("bivariate restrictions")
{
    // f = x^2 y + 3 x - y^2
    BiPoly<Rational> f(2, 2);
    f.at(2, 1) = 1;
    f.at(1, 0) = 3;
    f.at(0, 2) = -1;
    CHECK(f.degree_x() == 2);
    CHECK(f.degree_y() == 2);
    CHECK(f(Rational(2), Rational(5)) == Rational(4 * 5 + 6 - 25));
    CHECK(f.swapped()(Rational(5), Rational(2)) == f(Rational(2), Rational(5)));
    CHECK(f.diagonal()(Rational(3)) == f(Rational(3), Rational(3)));
    CHECK(f.at_x(Rational(2))(Rational(5)) == f(Rational(2), Rational(5)));
    const auto g = shift(f, Rational(1), Rational(-2));
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            CHECK(g(Rational(a), Rational(b)) == f(Rational(a + 1), Rational(b - 2)));
}
