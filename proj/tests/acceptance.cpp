// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "fgp/dg_solver.hpp"
#include "fgp/pic_lattice.hpp"
#include "fgp/plane_geometry.hpp"
#include "fgp/type_arith.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace fgp;
using Q = Rational;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why)
    {
        if (ok)
            detail = why;
        ok = false;
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& ex) {
        o.fail(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs > budget_s)
        o.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(budget_s) + " s");
    std::printf("%s criterion %2d  %-52s %8.2f s%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                o.ok ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.ok;
}

Lattice random_lattice(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(-1, 1);
    return lattice_from_periods(cd(1 + 0.5 * U(rng), 0.4 * U(rng)), cd(0.6 * U(rng), 1.3 + 0.7 * U(rng)));
}

Q random_rational(std::mt19937_64& rng) { return Q(int(rng() % 41) - 20, int(rng() % 9) + 1); }

BiPoly<Q> x_minus_y()
{
    return BiPoly<Q>::in_x(Poly<Q>({Q(0), Q(1)})) - BiPoly<Q>::in_y(Poly<Q>({Q(0), Q(1)}));
}

std::string show(cd z)
{
    std::ostringstream os;
    os << z;
    return os.str();
}

}  // namespace

int main()
{
    std::mt19937_64 rng(20240611);
    const Lattice headline = lattice_from_periods(2, cd(0.6, 1.7));
    const auto sweep = sweep_t0(6);

    criterion(1, "addition identities on random lattices", 5, [&] {
        Outcome o;
        std::uniform_real_distribution<double> U(-1.2, 1.2);
        for (int l = 0; l < 5; ++l) {
            const Lattice L = random_lattice(rng);
            for (int i = 0; i < 100; ++i) {
                const cd z(U(rng), U(rng)), w(U(rng), U(rng));
                const auto r = check_addition_identities(z, w, L);
                if (!(r.first < 1e-9 && r.second < 1e-9))
                    o.fail("z=" + show(z) + " w=" + show(w) + " residual " + std::to_string(std::max(r.first, r.second)));
            }
        }
        return o;
    });

    criterion(2, "diagonal identity and bracket, exact and float", 0, [&] {
        Outcome o;
        int done = 0;
        while (done < 20) {
            const Q e1 = random_rational(rng), e2 = random_rational(rng), e3 = -e1 - e2;
            if (e1 == e2 || e1 == e3 || e2 == e3)
                continue;
            ++done;
            const AlphaVector a(int(rng() % 5), int(rng() % 5), int(rng() % 5), int(rng() % 5));
            const auto s = build_system<Q>(a, {e1, e2, e3});
            const auto d = x_minus_y();
            if (!(s.F.diagonal() == Q(64) * s.Pi.pow(3)))
                o.fail("diagonal identity, e1=" + e1.str() + " e2=" + e2.str());
            const auto rest = Q(4) * (BiPoly<Q>::in_x(s.Pi * s.Pi) * s.B) - s.F - d * d * d * BiPoly<Q>::in_x(s.G1);
            if (!rest.is_zero())
                o.fail("bracket, e1=" + e1.str() + " e2=" + e2.str());

            const auto c = to_complex(s);
            const auto diff = c.F.diagonal() - cd(64) * c.Pi.pow(3);
            double top = 0, worst = 0;
            for (const cd& v : c.F.diagonal().coeffs())
                top = std::max(top, std::abs(v));
            for (const cd& v : diff.coeffs())
                worst = std::max(worst, std::abs(v));
            if (worst >= 1e-10 * top)
                o.fail("float diagonal identity " + std::to_string(worst / top));
        }
        for (const AlphaVector a : {AlphaVector(4, 0, 0, 0), AlphaVector(1, 2, 2, 2)}) {
            const auto c = build_system(a, headline);
            const auto diff = c.F.diagonal() - cd(64) * c.Pi.pow(3);
            double top = 0, worst = 0;
            for (const cd& v : c.F.diagonal().coeffs())
                top = std::max(top, std::abs(v));
            for (const cd& v : diff.coeffs())
                worst = std::max(worst, std::abs(v));
            if (worst >= 1e-10 * top)
                o.fail("float diagonal identity on the headline lattice");
        }
        return o;
    });

    criterion(3, "d = 1 closed-form root set", 0, [&] {
        Outcome o;
        const auto rep = solve_d1_x(to_complex(build_system<Q>({0, 0, 0, 0}, {Q(1), Q(0), Q(-1)})));
        const double r2 = std::sqrt(2.0);
        const std::vector<cd> want{{0, 1}, {0, -1}, {1 + r2, 0}, {-1 - r2, 0}, {r2 - 1, 0}, {1 - r2, 0}};
        if (rep.count() != 6)
            o.fail("found " + std::to_string(rep.count()) + " roots");
        for (const cd& w : want) {
            double best = 1e9;
            for (const auto& s : rep.solutions)
                best = std::min(best, std::abs(s.xs[0] - w));
            if (best >= 1e-9)
                o.fail("missing " + show(w));
        }
        return o;
    });

    criterion(4, "d = 2 headline count 27, both weight vectors", 120, [&] {
        Outcome o;
        for (const AlphaVector a : {AlphaVector(4, 0, 0, 0), AlphaVector(1, 2, 2, 2)}) {
            const auto rep = solve_d2(a, headline);
            if (rep.count() != 27)
                o.fail(a.str() + ": " + std::to_string(rep.count()) + " pairs");
            if (!rep.lifted)
                o.fail(a.str() + ": not lifted");
            for (const auto& s : rep.solutions)
                if (s.residuals.size() != 2 || std::max(s.residuals[0], s.residuals[1]) >= 1e-8)
                    o.fail(a.str() + ": residual too large");
        }
        return o;
    });

    criterion(5, "d = 2 count never exceeds 27", 0, [&] {
        Outcome o;
        for (int l = 0; l < 10; ++l) {
            const Lattice L = random_lattice(rng);
            for (int i = 0; i < 5; ++i) {
                const AlphaVector a(int(rng() % 5), int(rng() % 5), int(rng() % 5), int(rng() % 5));
                const int n = solve_d2(a, L).count();
                if (n > 27)
                    o.fail(a.str() + ": " + std::to_string(n));
            }
        }
        return o;
    });

    criterion(6, "severi formula and recursion over the sweep", 10, [&] {
        Outcome o;
        if (sweep.size() < 200)
            o.fail("sweep has only " + std::to_string(sweep.size()) + " types");
        for (const auto& mu : sweep) {
            const auto st = mu_stats(mu);
            const long long sev = severi_count(mu, 2);
            if (sev != 27 - 14 * st.zeros + 2 * st.zeros * st.zeros - 3 * st.ones)
                o.fail("formula at " + mu.str());
            if (recursion_count(mu, 2, standard_recursion_base(mu, 2), standard_pot0()) != sev)
                o.fail("recursion at " + mu.str());
        }
        if (severi_count({1, 0, 0, 0}, 2) != 0 || severi_count({1, 0, 0, 2}, 2) != 4 ||
            severi_count({3, 2, 2, 2}, 2) != 27)
            o.fail("spot values");
        return o;
    });

    criterion(7, "spectral strata sum to 27 with genus spread", 0, [&] {
        Outcome o;
        for (const auto& mu : sweep)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 4; ++k) {
                    const auto a = c_map(j, k, mu);
                    const Q g = g_alpha(a);
                    long long total = 0;
                    for (const auto& s : spectral_enumeration(a)) {
                        total += s.count;
                        if (Q(s.genus_g) < g || Q(s.genus_g) > g + 2)
                            o.fail(a.str() + ": genus " + std::to_string(s.genus_g));
                    }
                    if (total != 27)
                        o.fail(a.str() + ": total " + std::to_string(total));
                }
        return o;
    });

    criterion(8, "intersection oracle, K^2 = 0, arithmetic genus", 0, [&] {
        Outcome o;
        std::vector<TypeVector> all;
        for (int a = 0; a <= 5; ++a)
            for (int b = 0; b <= 5; ++b)
                for (int c = 0; c <= 5; ++c)
                    for (int d = 0; d <= 5; ++d)
                        if ((a + b + c + d) % 2)
                            all.emplace_back(a, b, c, d);
        for (int i = 0; i < 200; ++i) {
            const auto& n = all[rng() % all.size()];
            const auto& s = all[rng() % all.size()];
            if (Q(intersect(class_of_gamma(n), class_of_gamma(s))) != gamma_intersection(n, s))
                o.fail(n.str() + " . " + s.str());
        }
        if (intersect(basis::K(), basis::K()) != 0)
            o.fail("K^2 != 0");
        for (const auto& mu : all) {
            if (mu.cls() != 0)
                continue;
            for (int d = 0; d <= 4; ++d)
                if (arithmetic_genus(class_of_gamma(mu) + d * basis::L()) != d)
                    o.fail("genus at " + mu.str() + " d=" + std::to_string(d));
        }
        return o;
    });

    criterion(9, "Geiser involution, sum rule, neighbour census", 0, [&] {
        Outcome o;
        const std::array<std::size_t, 4> census{24, 18, 13, 9};
        for (const auto& mu : sweep) {
            const auto st = mu_stats(mu);
            const auto nb = exceptional_neighbors(mu);
            const std::set<TypeVector> set(nb.begin(), nb.end());
            if (nb.size() != census[st.zeros] || set.size() != nb.size())
                o.fail("census at " + mu.str() + ": " + std::to_string(nb.size()));
            if (delpezzo_report(mu).exceptional_curves != int(census[st.zeros]) + 1)
                o.fail("exceptional curve count at " + mu.str());
            for (const auto& nu : nb) {
                const auto im = geiser(mu, nu);
                if (!set.count(im) || !(geiser(mu, im) == nu))
                    o.fail("involution at " + mu.str() + ", " + nu.str());
                if (mu_stats(nu).n + mu_stats(im).n != st.sum_sq + 1)
                    o.fail("sum rule at " + mu.str() + ", " + nu.str());
            }
        }
        return o;
    });

    criterion(10, "dual curve singularity budget", 0, [&] {
        Outcome o;
        int valid = 0;
        for (int z = 0; z <= 4; ++z)
            for (int one = 0; one <= 4; ++one) {
                SingularityBudget b;
                try {
                    b = dual_budget(z, one);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                ++valid;
                if ((b.dual_degree - 1) * (b.dual_degree - 2) / 2 - b.genus !=
                    b.nodes + b.cusps + 3 * b.triple_points + b.delta_H)
                    o.fail("delta sum at (" + std::to_string(z) + "," + std::to_string(one) + ")");
            }
        if (valid == 0)
            o.fail("no valid (I0, I1)");
        for (const auto& mu : sweep) {
            const auto st = mu_stats(mu);
            if (dual_budget(st.zeros, st.ones).nodes != severi_count(mu, 2))
                o.fail("nodes at " + mu.str());
        }
        return o;
    });

    criterion(11, "conic certificates c411 and c222, exact", 0, [&] {
        Outcome o;
        int n = 0;
        while (n < 20) {
            const Q t = random_rational(rng);
            const auto q = base_conic_point(t);
            if (q[1] == q[2])
                continue;
            ++n;
            const auto C = conic_c411(q);
            if (intersection_multiplicity(C, conic_branch_at(base_conic<Q>(), q), q) != 4)
                o.fail("c411 contact order at t=" + t.str());
            const auto tp = c411_h0_tangency(q);
            const Point<Q> dir = proportional(tp, Point<Q>{1, 0, 0}) ? Point<Q>{0, 1, 1} : Point<Q>{1, 0, 0};
            if (intersection_multiplicity(C, line_branch(tp, dir), tp) != 2)
                o.fail("c411 H0 tangency at t=" + t.str());
        }
        n = 0;
        while (n < 20) {
            const Q t = random_rational(rng);
            if (t * t == 2)
                continue;
            const auto [c, sq] = c222_rational_parameter(t);
            if (c == 1 || c == -1)
                continue;
            ++n;
            const auto K = conic_c222(c);
            const Point<Q> a{c, 1, 1}, b{c, -1, 1}, p1{1, sq, c}, p2{1, -sq, c};
            const bool ok = intersection_multiplicity(K, line_branch(a, Point<Q>{1, 0, 0}), a) == 2 &&
                            intersection_multiplicity(K, line_branch(b, Point<Q>{1, 0, 0}), b) == 2 &&
                            intersection_multiplicity(K, conic_branch_at(base_conic<Q>(), p1), p1) == 2 &&
                            intersection_multiplicity(K, conic_branch_at(base_conic<Q>(), p2), p2) == 2;
            if (!ok)
                o.fail("c222 at c=" + c.str());
        }
        return o;
    });

    criterion(12, "c_map round trip and weight identities", 0, [&] {
        Outcome o;
        int checked = 0;
        for (const auto& mu : sweep_t0(15)) {
            const auto st = mu_stats(mu);
            if (st.sum > 15)
                continue;
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 4; ++k) {
                    const auto a = c_map(j, k, mu);
                    const auto back = c_map_inverse_at(a, j, k);
                    if (!back || !(*back == mu))
                        o.fail("round trip at " + mu.str());
                    long long sq = 0;
                    for (int x : a.a())
                        sq += x * (x + 1);
                    if (sq != st.sum_sq - 1)
                        o.fail("weight sum at " + mu.str());
                    if (g_alpha(a) != Q(st.g))
                        o.fail("genus at " + mu.str());
                    ++checked;
                }
        }
        if (checked < 1000)
            o.fail("only " + std::to_string(checked) + " cases");
        return o;
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures ? 1 : 0;
}
