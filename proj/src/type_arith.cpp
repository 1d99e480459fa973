#include "fgp/type_arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace fgp {

namespace {

void require_t0(const TypeVector& mu, const char* where)
{
    if (mu.cls() != 0)
        throw std::invalid_argument(std::string(where) + ": " + mu.str() + " is not in class 0");
}

int half_abs(int t) { return (std::abs(2 * t + 1) - 1) / 2; }

}  // namespace

MuStats mu_stats(const TypeVector& mu)
{
    MuStats s{0, 0, 0, 0, 0, 0};
    for (int x : mu.v()) {
        s.sum += x;
        s.sum_sq += x * x;
        s.zeros += x == 0;
        s.ones += x == 1;
    }
    if (s.sum_sq % 2 == 0)
        throw std::logic_error("invariant violation: even square sum for " + mu.str());
    s.n = (s.sum_sq - 1) / 2;
    s.g = (s.sum - 1) / 2;
    return s;
}

int degree_of(const TypeVector& mu, int d)
{
    if (d < 0)
        throw std::invalid_argument("degree_of: negative depth");
    return mu_stats(mu).n + 2 * d;
}

AlphaVector c_map(int j, int k, const TypeVector& mu)
{
    require_t0(mu, "c_map");
    if (j < 0 || j > 1 || k < 0 || k > 3)
        throw std::invalid_argument("c_map: (j,k) must lie in Z2 x Z4");
    const int g = mu_stats(mu).g;
    Quad base{};
    if (j == 0) {
        base[0] = g;
        for (int i = 1; i < 4; ++i)
            base[i] = half_abs(g - mu[0] - mu[i]);
    } else {
        for (int i = 0; i < 4; ++i)
            base[i] = half_abs(g - mu[i]);
    }
    Quad out{};
    for (int i = 0; i < 4; ++i)
        out[i] = base[(i + k) % 4];
    return AlphaVector(out);
}

namespace {

int square_target(const AlphaVector& alpha)
{
    int target = 1;
    for (int a : alpha.a())
        target += a * (a + 1);
    return target;
}

std::vector<TypeVector> candidates(const AlphaVector& alpha)
{
    const int target = square_target(alpha);
    std::vector<TypeVector> out;
    for (const TypeVector& mu : sweep_t0(int(std::sqrt(double(target))) + 1))
        if (mu_stats(mu).sum_sq == target)
            out.push_back(mu);
    return out;
}

}  // namespace

CMapPreimage c_map_inverse(const AlphaVector& alpha)
{
    std::vector<CMapPreimage> hits;
    for (const TypeVector& mu : candidates(alpha)) {
        CMapPreimage pre{mu, {}, {}};
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k)
                if (c_map(j, k, mu) == alpha)
                    pre.pairs.push_back({j, k});
        if (!pre.pairs.empty())
            hits.push_back(pre);
    }
    if (hits.empty())
        throw std::logic_error("internal error: c_map_inverse found no preimage for " + alpha.str());
    CMapPreimage out = hits.front();
    for (std::size_t i = 1; i < hits.size(); ++i)
        out.alternatives.push_back(hits[i].mu);
    return out;
}

std::optional<TypeVector> c_map_inverse_at(const AlphaVector& alpha, int j, int k)
{
    std::optional<TypeVector> found;
    for (const TypeVector& mu : candidates(alpha))
        if (c_map(j, k, mu) == alpha) {
            if (found)
                throw std::logic_error("internal error: c_map(" + std::to_string(j) + "," + std::to_string(k) +
                                       ") is not injective at " + alpha.str());
            found = mu;
        }
    return found;
}

Rational g_alpha(const AlphaVector& alpha)
{
    const auto& a = alpha.a();
    const int M = *std::max_element(a.begin(), a.end());
    const int m = *std::min_element(a.begin(), a.end());
    const int S = a[0] + a[1] + a[2] + a[3];
    // S + 1 - (1 + (-1)^S)(m + 1/2)
    const Rational second = S % 2 ? Rational(S + 1) : Rational(S + 1) - 2 * (Rational(m) + Rational(1, 2));
    return std::max(Rational(2 * M), second) / 2;
}

TypeVector geiser(const TypeVector& mu, const TypeVector& nu)
{
    require_t0(mu, "geiser");
    Quad r{};
    for (int i = 0; i < 4; ++i)
        r[i] = std::abs(2 * mu[i] - nu[i]);
    return TypeVector(r);
}

std::vector<TypeVector> exceptional_neighbors(const TypeVector& mu)
{
    require_t0(mu, "exceptional_neighbors");
    std::vector<TypeVector> out;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int si : {-1, 1})
                for (int sj : {-1, 1}) {
                    Quad v = mu.v();
                    v[i] += si;
                    v[j] += sj;
                    if (v[i] >= 0 && v[j] >= 0)
                        out.emplace_back(v);
                }
    std::sort(out.begin(), out.end());
    return out;
}

Rational gamma_intersection(const TypeVector& nu, const TypeVector& sigma)
{
    int d2 = 0;
    for (int i = 0; i < 4; ++i)
        d2 += (nu[i] - sigma[i]) * (nu[i] - sigma[i]);
    return Rational(d2 - (nu.cls() == sigma.cls() ? 4 : 2), 4);
}

long long severi_count(const TypeVector& mu, int d)
{
    require_t0(mu, "severi_count");
    const MuStats s = mu_stats(mu);
    switch (d) {
    case 0:
        return 1;
    case 1:
        return 6 - 2 * s.zeros;
    case 2:
        return 27 - 14 * s.zeros + 2 * s.zeros * s.zeros - 3 * s.ones;
    default:
        throw std::invalid_argument("unsupported depth " + std::to_string(d) +
                                    " for severi_count; use recursion_count with explicit base data");
    }
}

std::vector<SpectralDatum> spectral_enumeration(const AlphaVector& alpha)
{
    const CMapPreimage pre = c_map_inverse(alpha);
    const TypeVector& mu = pre.mu;
    const MuStats s = mu_stats(mu);
    const int g = s.g;
    const int n = s.n + 4;
    const auto [j, k] = pre.pairs.front();

    auto shifted = [&](std::initializer_list<int> idx) {
        Quad v = mu.v();
        for (int i : idx)
            v[i] += 2;
        return TypeVector(v);
    };

    std::vector<SpectralDatum> out;
    out.push_back({mu, n, g, {j, k, {}}, severi_count(mu, 2)});
    for (int i = 0; i < 4; ++i) {
        if (mu[i] == 0) {
            TypeVector nu = shifted({i});
            out.push_back({nu, n, g + 1, {j, k, {i}}, 2 * severi_count(nu, 1)});
        } else if (mu[i] == 1) {
            out.push_back({shifted({i}), n, g + 1, {j, k, {i}}, 3});
        }
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (mu[a] == 0 && mu[b] == 0)
                out.push_back({shifted({a, b}), n, g + 2, {j, k, {a, b}}, 4});
    return out;
}

ThetaDivisor theta_char(int j, int k, int n, int g)
{
    if (n < 0 || g < 0)
        throw std::invalid_argument("theta_char: n and g must be non-negative");
    if (j < 0 || j > 1 || k < 0 || k > 3)
        throw std::invalid_argument("theta_char: (j,k) must lie in Z2 x Z4");
    ThetaDivisor t;
    if (j == 0) {
        t.p_coeff = g - 1 - 2 * n;
        t.half_periods = {k, 0};
    } else {
        t.p_coeff = g - 1 - n;
        t.half_periods = {k};
    }
    t.degree = t.p_coeff + n * int(t.half_periods.size());
    return t;
}

long long binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

namespace {

template <class Fn>
void for_each_gamma(const TypeVector& mu, int d, Fn fn)
{
    const int top = int(std::sqrt(double(std::max(d, 0)))) + 1;
    for (int a = 0; a <= top; ++a)
        for (int b = 0; b <= top; ++b)
            for (int c = 0; c <= top; ++c)
                for (int e = 0; e <= top; ++e) {
                    Quad gm{a, b, c, e};
                    if (gm == Quad{0, 0, 0, 0})
                        continue;
                    int cost = 0;
                    for (int i = 0; i < 4; ++i)
                        cost += mu[i] * gm[i] + gm[i] * gm[i];
                    if (cost > d)
                        continue;
                    Quad nu{};
                    for (int i = 0; i < 4; ++i)
                        nu[i] = mu[i] + 2 * gm[i];
                    fn(gm, nu, d - cost);
                }
}

}  // namespace

long long recursion_count(const TypeVector& mu, int d, const BaseCounts& base, const std::map<int, long long>& pot0)
{
    auto p = pot0.find(d);
    if (p == pot0.end())
        throw std::invalid_argument("recursion_count: no potential count supplied for depth " + std::to_string(d));
    long long total = p->second;
    std::vector<std::string> missing;
    for_each_gamma(mu, d, [&](const Quad& gm, const Quad& nu, int l) {
        auto it = base.find({nu, l});
        if (it == base.end()) {
            missing.push_back(TypeVector(nu).str() + "@" + std::to_string(l));
            return;
        }
        long long w = 1;
        for (int i = 0; i < 4; ++i)
            w *= binomial(nu[i], gm[i]);
        total -= it->second * w;
    });
    if (!missing.empty()) {
        std::string msg = "recursion_count: missing base entries";
        for (const auto& m : missing)
            msg += " " + m;
        throw std::invalid_argument(msg);
    }
    return total;
}

BaseCounts standard_recursion_base(const TypeVector& mu, int d)
{
    BaseCounts base;
    for_each_gamma(mu, d, [&](const Quad&, const Quad& nu, int l) {
        if (l <= 2)
            base[{nu, l}] = severi_count(TypeVector(nu), l);
    });
    return base;
}

std::map<int, long long> standard_pot0() { return {{0, 1}, {1, 6}, {2, 27}}; }

std::vector<TypeVector> sweep_t0(int bound)
{
    std::vector<TypeVector> out;
    for (int a = 0; a <= bound; ++a)
        for (int b = 0; b <= bound; ++b)
            for (int c = 0; c <= bound; ++c)
                for (int d = 0; d <= bound; ++d) {
                    if ((a + b + c + d) % 2 == 0)
                        continue;
                    TypeVector mu(a, b, c, d);
                    if (mu.cls() == 0)
                        out.push_back(mu);
                }
    return out;
}

}  // namespace fgp
