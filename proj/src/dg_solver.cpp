#include "fgp/dg_solver.hpp"

#include "fgp/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

namespace fgp {

namespace {

double emax(const std::array<cd, 3>& e)
{
    return std::max({1.0, std::abs(e[0]), std::abs(e[1]), std::abs(e[2])});
}

BiPoly<cd> d_dx(const BiPoly<cd>& f)
{
    if (f.rows() <= 1)
        return BiPoly<cd>(0, 0);
    BiPoly<cd> r(f.rows() - 2, f.cols() - 1);
    for (std::size_t i = 1; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j)
            r.at(i - 1, j) = double(i) * f.coeff(i, j);
    return r;
}

BiPoly<cd> d_dy(const BiPoly<cd>& f) { return d_dx(f.swapped()).swapped(); }

BiPoly<double> abs_coeffs(const BiPoly<cd>& f)
{
    return f.map<double>([](const cd& c) { return std::abs(c); });
}

struct PairSystem {
    const DGSystemC& sys;
    BiPoly<cd> fx, fy;
    BiPoly<double> fabs;

    explicit PairSystem(const DGSystemC& s) : sys(s), fx(d_dx(s.F)), fy(d_dy(s.F)), fabs(abs_coeffs(s.F)) {}

    double relative(cd x, cd y) const
    {
        const double a = std::abs(sys.F(x, y)) / std::max(fabs(std::abs(x), std::abs(y)), 1e-300);
        const double b = std::abs(sys.F(y, x)) / std::max(fabs(std::abs(y), std::abs(x)), 1e-300);
        return std::max(a, b);
    }

    // Newton on (F(x,y), F(y,x)); returns false on breakdown.
    bool polish(cd& x, cd& y, int iters = 60) const
    {
        for (int it = 0; it < iters; ++it) {
            const cd f1 = sys.F(x, y), f2 = sys.F(y, x);
            const cd a = fx(x, y), b = fy(x, y);
            const cd c = fy(y, x), d = fx(y, x);
            const cd det = a * d - b * c;
            if (std::abs(det) == 0 || !std::isfinite(std::abs(det)))
                return false;
            const cd dx = (d * f1 - b * f2) / det;
            const cd dy = (a * f2 - c * f1) / det;
            if (!std::isfinite(std::abs(dx)) || !std::isfinite(std::abs(dy)))
                return false;
            x -= dx;
            y -= dy;
            if (std::abs(dx) + std::abs(dy) <= 1e-15 * (std::abs(x) + std::abs(y) + 1e-300))
                break;
        }
        return true;
    }
};

bool near_branch(cd x, const std::array<cd, 3>& e, double radius)
{
    for (const cd& v : e)
        if (std::abs(x - v) < radius)
            return true;
    return false;
}

struct PairCandidate {
    cd x, y;
    double res;
};

// Unordered dedupe with multiplicity; output sorted canonically.
std::vector<DGSolution> cluster_pairs(const std::vector<PairCandidate>& cands, double radius)
{
    std::vector<DGSolution> out;
    std::vector<int> hits;
    for (const auto& c : cands) {
        bool merged = false;
        for (std::size_t k = 0; k < out.size(); ++k) {
            const cd ox = out[k].xs[0], oy = out[k].xs[1];
            const bool same = (std::abs(ox - c.x) < radius && std::abs(oy - c.y) < radius) ||
                              (std::abs(ox - c.y) < radius && std::abs(oy - c.x) < radius);
            if (same) {
                ++hits[k];
                if (c.res < out[k].reduced_residual) {
                    out[k].xs = {c.x, c.y};
                    out[k].reduced_residual = c.res;
                }
                merged = true;
                break;
            }
        }
        if (!merged) {
            DGSolution s;
            s.xs = {c.x, c.y};
            s.reduced_residual = c.res;
            out.push_back(s);
            hits.push_back(1);
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k].multiplicity = hits[k];
    for (auto& s : out) {
        auto key = [](cd z) { return std::make_tuple(std::round(z.real() * 1e6), std::round(z.imag() * 1e6)); };
        if (key(s.xs[1]) < key(s.xs[0]))
            std::swap(s.xs[0], s.xs[1]);
    }
    std::sort(out.begin(), out.end(), [](const DGSolution& a, const DGSolution& b) {
        auto k = [](const DGSolution& s) {
            return std::make_tuple(s.xs[0].real(), s.xs[0].imag(), s.xs[1].real(), s.xs[1].imag());
        };
        return k(a) < k(b);
    });
    return out;
}

// Newton on the pole equations themselves, starting from the lifted poles.
void polish_rhos(PotentialSpec& spec, const ToleranceConfig& tol)
{
    const auto& L = spec.lattice;
    const std::size_t d = spec.rhos.size();
    std::array<double, 4> w;
    for (int i = 0; i < 4; ++i) {
        const double v = 2 * spec.alpha[i] + 1;
        w[i] = tol.linear_weights ? v : v * v;
    }
    auto worst = [&](const PotentialSpec& sp) {
        const auto r = dg_residual_relative(sp, tol);
        return *std::max_element(r.begin(), r.end());
    };
    double best = worst(spec);
    for (int it = 0; it < 8 && best > 1e-14; ++it) {
        Eigen::VectorXcd f(d);
        Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(d, d);
        const auto res = dg_residual(spec, tol);
        for (std::size_t l = 0; l < d; ++l) {
            f(l) = res[l];
            for (int i = 0; i < 4; ++i)
                J(l, l) += w[i] * wp_second(spec.rhos[l] - L.omegas[i], L, tol);
            for (std::size_t k = 0; k < d; ++k) {
                if (k == l)
                    continue;
                const cd minus = wp_second(spec.rhos[l] - spec.rhos[k], L, tol);
                const cd plus = wp_second(spec.rhos[l] + spec.rhos[k], L, tol);
                J(l, l) += 8.0 * (minus + plus);
                J(l, k) += 8.0 * (plus - minus);
            }
        }
        const Eigen::VectorXcd step = J.fullPivLu().solve(f);
        PotentialSpec next = spec;
        for (std::size_t l = 0; l < d; ++l)
            next.rhos[l] -= step(l);
        double r;
        try {
            r = worst(next);
        } catch (const std::domain_error&) {
            break;
        }
        if (!(r < best))
            break;
        best = r;
        spec = std::move(next);
    }
}

struct LiftOutcome {
    int rejected = 0;
    double best_rejected = std::numeric_limits<double>::infinity();
    std::vector<std::string> errors;
};

LiftOutcome lift(SolveReport& rep, const Lattice& L, const ToleranceConfig& tol)
{
    LiftOutcome out;
    std::vector<DGSolution> kept;
    for (auto s : rep.solutions) {
        PotentialSpec spec{rep.alpha, {}, L};
        try {
            for (const cd& x : s.xs)
                spec.rhos.push_back(invert_wp(x, L, std::nullopt, tol));
            polish_rhos(spec, tol);
            s.residuals = dg_residual_relative(spec, tol);
        } catch (const std::exception& ex) {
            out.errors.push_back(std::string("lift failed: ") + ex.what());
            ++out.rejected;
            continue;
        }
        const double worst = *std::max_element(s.residuals.begin(), s.residuals.end());
        if (!(worst <= tol.dg_residual)) {
            ++out.rejected;
            out.best_rejected = std::min(out.best_rejected, worst);
            continue;
        }
        for (std::size_t l = 0; l < s.xs.size(); ++l) {
            spec.rhos[l] = reduce_mod_lattice(spec.rhos[l], L);
            s.xs[l] = wp(spec.rhos[l], L, tol);
        }
        s.rhos = spec.rhos;
        kept.push_back(s);
    }
    rep.solutions = std::move(kept);
    rep.lifted = true;
    return out;
}

}  // namespace

DGSystemC build_system(const AlphaVector& alpha, const Lattice& L, const ToleranceConfig& tol)
{
    return build_system<cd>(alpha, L.e, tol.linear_weights);
}

DGSystemC to_complex(const DGSystemQ& s)
{
    auto c = [](const Rational& q) { return cd(q.convert_to<double>(), 0); };
    DGSystemC r;
    r.alpha = s.alpha;
    for (int j = 0; j < 3; ++j) {
        r.e[j] = c(s.e[j]);
        r.Ej[j] = c(s.Ej[j]);
        r.Pj[j] = s.Pj[j].map<cd>(c);
    }
    for (int i = 0; i < 4; ++i)
        r.weights[i] = c(s.weights[i]);
    r.g2 = c(s.g2);
    r.Pi = s.Pi.map<cd>(c);
    r.G1 = s.G1.map<cd>(c);
    r.B = s.B.map<cd>(c);
    r.F = s.F.map<cd>(c);
    return r;
}

std::vector<double> dg_residual_relative(const PotentialSpec& spec, const ToleranceConfig& tol)
{
    const auto& L = spec.lattice;
    std::vector<double> out;
    for (std::size_t l = 0; l < spec.rhos.size(); ++l) {
        cd sum = 0;
        double scale = 0;
        auto add = [&](cd t) {
            sum += t;
            scale += std::abs(t);
        };
        for (std::size_t k = 0; k < spec.rhos.size(); ++k) {
            if (k == l)
                continue;
            add(8.0 * wp_prime(spec.rhos[l] - spec.rhos[k], L, tol));
            add(8.0 * wp_prime(spec.rhos[l] + spec.rhos[k], L, tol));
        }
        for (int i = 0; i < 4; ++i) {
            const double w = 2 * spec.alpha[i] + 1;
            add((tol.linear_weights ? w : w * w) * wp_prime(spec.rhos[l] - L.omegas[i], L, tol));
        }
        out.push_back(scale > 0 ? std::abs(sum) / scale : 0.0);
    }
    return out;
}

std::vector<cd> dg_residual(const PotentialSpec& spec, const ToleranceConfig& tol)
{
    const auto& L = spec.lattice;
    std::vector<cd> out;
    for (std::size_t l = 0; l < spec.rhos.size(); ++l) {
        cd sum = 0;
        for (std::size_t k = 0; k < spec.rhos.size(); ++k)
            if (k != l)
                sum += 8.0 * (wp_prime(spec.rhos[l] - spec.rhos[k], L, tol) +
                              wp_prime(spec.rhos[l] + spec.rhos[k], L, tol));
        for (int i = 0; i < 4; ++i) {
            const double w = 2 * spec.alpha[i] + 1;
            sum += (tol.linear_weights ? w : w * w) * wp_prime(spec.rhos[l] - L.omegas[i], L, tol);
        }
        out.push_back(sum);
    }
    return out;
}

std::vector<cd> akm_residual(const std::vector<cd>& points, const Lattice& L, const ToleranceConfig& tol)
{
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (std::abs(reduce_mod_lattice(points[i] - points[j], L)) < tol.pole_guard * L.shortest())
                throw std::invalid_argument("akm_residual: coincident points modulo the lattice");
    std::vector<cd> out(points.size(), 0.0);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i)
                out[i] += wp_prime(points[j] - points[i], L, tol);
    return out;
}

cd eval_potential(const PotentialSpec& spec, cd x, const ToleranceConfig& tol)
{
    const auto& L = spec.lattice;
    cd u = 0;
    for (int i = 0; i < 4; ++i)
        if (spec.alpha[i] != 0)
            u += double(spec.alpha[i] * (spec.alpha[i] + 1)) * wp(x - L.omegas[i], L, tol);
    for (const cd& r : spec.rhos)
        u += 2.0 * (wp(x - r, L, tol) + wp(x + r, L, tol));
    return u;
}

int potential_degree(const PotentialSpec& spec)
{
    int s = 0;
    for (int a : spec.alpha.a())
        s += a * (a + 1);
    if (s % 2 != 0)
        throw std::logic_error("internal error: odd pole-coefficient sum");
    return s / 2 + 2 * int(spec.rhos.size());
}

SolveReport solve_d1_x(const DGSystemC& sys, const ToleranceConfig& tol)
{
    SolveReport rep;
    rep.alpha = sys.alpha;
    rep.depth = 1;
    rep.method = "univariate roots";
    const double scale = emax(sys.e);
    std::vector<cd> roots;
    try {
        roots = poly_roots(sys.G1);
    } catch (const std::exception& ex) {
        rep.warnings.push_back(ex.what());
        roots = aberth_roots(sys.G1, 5000).roots;
    }
    for (auto [x, m] : cluster_roots(roots, tol.dedupe_radius * scale)) {
        if (near_branch(x, sys.e, tol.branch_exclusion * scale))
            continue;
        DGSolution s;
        s.xs = {x};
        s.multiplicity = m;
        double denom = 0;
        for (std::size_t i = sys.G1.coeffs().size(); i-- > 0;)
            denom = denom * std::abs(x) + std::abs(sys.G1.coeffs()[i]);
        s.reduced_residual = std::abs(sys.G1(x)) / std::max(denom, 1e-300);
        if (m > 1)
            rep.warnings.push_back("clustered root with multiplicity " + std::to_string(m));
        rep.solutions.push_back(s);
    }
    std::sort(rep.solutions.begin(), rep.solutions.end(), [](const DGSolution& a, const DGSolution& b) {
        return std::make_pair(a.xs[0].real(), a.xs[0].imag()) < std::make_pair(b.xs[0].real(), b.xs[0].imag());
    });
    return rep;
}

namespace {

// Res_y(F(x,y), F(y,x)) / Pi(x)^9 sampled on a circle, interpolated, and solved.
std::vector<cd> resultant_x_roots(const DGSystemC& sys, const ToleranceConfig& tol, double radius,
                                  std::vector<std::string>& notes)
{
    const BiPoly<cd> G = sys.F.swapped();
    std::array<Poly<cd>, 4> a;
    std::array<Poly<cd>, 10> b;
    for (int j = 0; j < 4; ++j)
        a[j] = sys.F.y_coeff(j);
    for (int i = 0; i < 10; ++i)
        b[i] = G.y_coeff(i);

    const int N = std::max(tol.resultant_samples, 91);
    const double R = radius * std::max({std::abs(sys.e[0]), std::abs(sys.e[1]), std::abs(sys.e[2])});
    std::vector<cd> vals(N);
    Eigen::MatrixXcd S(12, 12);
    for (int k = 0; k < N; ++k) {
        const cd x = std::polar(R, 2 * std::numbers::pi * k / N + 0.1);
        S.setZero();
        for (int r = 0; r < 9; ++r)
            for (int j = 0; j < 4; ++j)
                S(r, r + j) = a[3 - j](x);
        for (int r = 0; r < 3; ++r)
            for (int i = 0; i < 10; ++i)
                S(9 + r, r + i) = b[9 - i](x);
        const cd det = S.partialPivLu().determinant();
        vals[k] = det / std::pow(sys.Pi(x), 9);
    }
    // coefficients of Q(R t e^{0.1 i})
    std::vector<cd> coef(N);
    double top = 0;
    for (int m = 0; m < N; ++m) {
        cd s = 0;
        for (int k = 0; k < N; ++k)
            s += vals[k] * std::polar(1.0, -2 * std::numbers::pi * double(k) * m / N);
        coef[m] = s / double(N);
        top = std::max(top, std::abs(coef[m]));
    }
    int deg = 0;
    for (int m = 0; m < N; ++m)
        if (std::abs(coef[m]) > 1e-9 * top)
            deg = m;
    if (deg > 54) {
        std::ostringstream os;
        os << "interpolated resultant has numerical degree " << deg << " (expected at most 54)";
        notes.push_back(os.str());
        deg = 54;
    }
    coef.resize(deg + 1);
    const cd rot = std::polar(R, 0.1);
    std::vector<cd> roots;
    for (const cd& t : aberth_roots(Poly<cd>(coef), 2000).roots)
        roots.push_back(t * rot);
    return roots;
}

}  // namespace

namespace {

class PairSearch {
public:
    PairSearch(const DGSystemC& sys, const ToleranceConfig& tol) : sys_(sys), tol_(tol), ps_(sys), scale_(emax(sys.e)) {}

    static constexpr std::array<double, 6> kRadii{1.0, 1.5, 0.7, 2.5, 4.0, 8.0};
    static constexpr int kStages = int(kRadii.size()) + 2;

    // Runs the next seeding stage; false once all are used.
    bool advance()
    {
        if (stage_ >= kStages)
            return false;
        if (stage_ < int(kRadii.size())) {
            for (const cd& x : resultant_x_roots(sys_, tol_, kRadii[stage_] * tol_.resultant_radius, notes_))
                from_x(x);
        } else {
            // coarse grid near the branch values, then a finer and wider one
            const bool coarse = stage_ == int(kRadii.size());
            const int g = coarse ? tol_.newton_grid : 3 * tol_.newton_grid;
            const double rad = (coarse ? 3.0 : 6.0) * scale_;
            for (int i = 0; i < g; ++i)
                for (int j = 0; j < g; ++j) {
                    const cd x(rad * (2.0 * (i + 0.5) / g - 1), rad * (2.0 * (j + 0.5) / g - 1));
                    if (std::abs(x) <= rad)
                        from_x(x);
                }
        }
        ++stage_;
        return true;
    }

    std::vector<DGSolution> pairs() const
    {
        auto out = cluster_pairs(cands_, tol_.dedupe_radius * scale_);
        for (auto& s : out)
            s.multiplicity = 1;
        return out;
    }

    std::string method() const { return stage_ > int(kRadii.size()) ? "resultant+newton" : "resultant"; }
    const std::vector<std::string>& notes() const { return notes_; }
    double scale() const { return scale_; }

private:
    void consider(cd x, cd y)
    {
        if (!ps_.polish(x, y))
            return;
        const double res = ps_.relative(x, y);
        if (!(res < 1e-10))
            return;
        if (std::abs(x - y) < tol_.dedupe_radius * scale_)
            return;
        if (near_branch(x, sys_.e, tol_.branch_exclusion * scale_) ||
            near_branch(y, sys_.e, tol_.branch_exclusion * scale_))
            return;
        // Newton creeps toward the singular points (e_j, e_j) without reaching them.
        const double halo = std::sqrt(tol_.branch_exclusion) * scale_;
        for (const cd& v : sys_.e)
            if (std::abs(x - v) < halo && std::abs(y - v) < halo)
                return;
        cands_.push_back({x, y, res});
    }

    void from_x(cd x)
    {
        const Poly<cd> cubic = sys_.F.at_x(x);
        if (cubic.degree() < 1)
            return;
        for (const cd& y : aberth_roots(cubic).roots)
            consider(x, y);
    }

    const DGSystemC& sys_;
    const ToleranceConfig& tol_;
    PairSystem ps_;
    double scale_;
    int stage_ = 0;
    std::vector<PairCandidate> cands_;
    std::vector<std::string> notes_;
};

std::vector<DGSolution> dedupe_lifted(std::vector<DGSolution> sols, double radius)
{
    std::vector<DGSolution> out;
    for (auto& s : sols) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const DGSolution& o) {
            return (std::abs(o.xs[0] - s.xs[0]) < radius && std::abs(o.xs[1] - s.xs[1]) < radius) ||
                   (std::abs(o.xs[0] - s.xs[1]) < radius && std::abs(o.xs[1] - s.xs[0]) < radius);
        });
        if (!dup)
            out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

SolveReport solve_d2_x(const DGSystemC& sys, const ToleranceConfig& tol)
{
    SolveReport rep;
    rep.alpha = sys.alpha;
    rep.depth = 2;
    PairSearch search(sys, tol);
    while (search.advance())
        if (int(search.pairs().size()) >= 27)
            break;
    rep.solutions = search.pairs();
    rep.method = search.method();
    if (rep.count() < 27)
        rep.warnings.insert(rep.warnings.end(), search.notes().begin(), search.notes().end());
    if (rep.count() > 27)
        rep.warnings.push_back("more than 27 polynomial pairs found; some may be spurious");
    return rep;
}

SolveReport solve_d1(const AlphaVector& alpha, const Lattice& L, const ToleranceConfig& tol)
{
    SolveReport rep = solve_d1_x(build_system(alpha, L, tol), tol);
    const LiftOutcome lo = lift(rep, L, tol);
    rep.warnings.insert(rep.warnings.end(), lo.errors.begin(), lo.errors.end());
    if (lo.rejected > 0) {
        std::ostringstream os;
        os << lo.rejected << " root(s) failed the pole equations (best relative residual " << lo.best_rejected << ")";
        rep.warnings.push_back(os.str());
    }
    return rep;
}

SolveReport solve_d2(const AlphaVector& alpha, const Lattice& L, const ToleranceConfig& tol)
{
    const DGSystemC sys = build_system(alpha, L, tol);
    PairSearch search(sys, tol);
    SolveReport rep;
    LiftOutcome lo;
    while (search.advance()) {
        rep = SolveReport{};
        rep.alpha = alpha;
        rep.depth = 2;
        rep.solutions = search.pairs();
        lo = lift(rep, L, tol);
        rep.solutions = dedupe_lifted(std::move(rep.solutions), tol.dedupe_radius * search.scale());
        if (rep.count() >= 27)
            break;
    }
    rep.method = search.method();
    std::sort(rep.solutions.begin(), rep.solutions.end(), [](const DGSolution& a, const DGSolution& b) {
        return std::make_tuple(a.xs[0].real(), a.xs[0].imag(), a.xs[1].real(), a.xs[1].imag()) <
               std::make_tuple(b.xs[0].real(), b.xs[0].imag(), b.xs[1].real(), b.xs[1].imag());
    });
    if (rep.count() != 27) {
        std::ostringstream os;
        os << "certified " << rep.count() << " of 27 pairs; " << lo.rejected
           << " candidate(s) failed the pole equations (best relative residual " << lo.best_rejected << ")";
        rep.warnings.push_back(os.str());
        rep.warnings.insert(rep.warnings.end(), lo.errors.begin(), lo.errors.end());
        rep.warnings.insert(rep.warnings.end(), search.notes().begin(), search.notes().end());
    }
    return rep;
}

DiagonalCone diagonal_cone(const DGSystemC& sys, int j, double tol)
{
    if (j < 1 || j > 3)
        throw std::invalid_argument("diagonal_cone: index must be 1, 2 or 3");
    const cd e = sys.e[j - 1];
    const BiPoly<cd> s = shift(sys.F, e, e);
    double top = 0;
    for (std::size_t a = 0; a < s.rows(); ++a)
        for (std::size_t b = 0; b < s.cols(); ++b)
            top = std::max(top, std::abs(s.coeff(a, b)));
    const int maxdeg = int(s.rows() + s.cols());
    for (int m = 0; m <= maxdeg; ++m) {
        std::vector<cd> cone;
        bool nonzero = false;
        for (int a = 0; a <= m; ++a) {
            const cd c = s.coeff(a, m - a);
            cone.push_back(c);
            if (std::abs(c) > tol * top)
                nonzero = true;
        }
        if (nonzero)
            return {m, cone};
    }
    return {-1, {}};
}

int diagonal_multiplicity(const DGSystemC& sys, int j, double tol) { return diagonal_cone(sys, j, tol).multiplicity; }

}  // namespace fgp
