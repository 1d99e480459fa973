#include "fgp/plane_geometry.hpp"

#include "fgp/type_arith.hpp"

#include <algorithm>
#include <functional>

namespace fgp {

Rational j_from_lambda(const Rational& lambda)
{
    if (lambda == 0 || lambda == 1)
        throw std::domain_error("degenerate cross-ratio");
    const Rational a = lambda * lambda - lambda + 1;
    const Rational b = lambda * (lambda - 1);
    return 256 * a * a * a / (b * b);
}

JInvariant j_invariant(const TypeVector& mu)
{
    const MuStats s = mu_stats(mu);
    if (s.zeros > 0)
        throw std::domain_error("Omega not elliptic: " + mu.str() + " has a vanishing entry");
    Rational lambda = 1;
    for (int i = 0; i < 4; ++i)
        lambda *= Rational(2 * mu[i]) / Rational(s.sum - 2 * mu[i]);
    return {lambda, j_from_lambda(lambda)};
}

int plucker_dual_degree(int d, int g, const std::vector<std::pair<int, int>>& sing)
{
    if (d < 2)
        throw std::invalid_argument("plucker_dual_degree: degree must be at least 2");
    int drop = 0;
    for (auto [m, nu] : sing)
        drop += m - nu;
    return 2 * d - (2 - 2 * g) - drop;
}

SingularityBudget dual_budget(int zeros, int ones)
{
    if (zeros < 0 || zeros > 3 || ones < 0 || zeros + ones > 4)
        throw std::invalid_argument("dual_budget: (I0, I1) out of range");
    SingularityBudget b;
    b.dual_degree = 12 - 2 * zeros;
    b.cusps = 18 - 6 * zeros;
    b.nodes = 27 - 14 * zeros + 2 * zeros * zeros - 3 * ones;
    b.triple_points = ones;
    b.delta_H = 9;
    b.genus = 1 - zeros;
    const int lhs = (b.dual_degree - 1) * (b.dual_degree - 2) / 2 - b.genus;
    const int rhs = b.nodes + b.cusps + 3 * b.triple_points + b.delta_H;
    if (lhs != rhs)
        throw std::logic_error("invariant violation: delta sum " + std::to_string(lhs) + " != " + std::to_string(rhs));
    return b;
}

PatternClass classify_pattern(std::vector<int> p)
{
    int sum = 0;
    for (int x : p) {
        if (x <= 0)
            throw std::invalid_argument("classify_pattern: entries must be positive");
        sum += x;
    }
    if (sum != 6)
        throw std::invalid_argument("classify_pattern: entries must sum to 6");
    std::sort(p.begin(), p.end(), std::greater<>());
    const int odd = int(std::count_if(p.begin(), p.end(), [](int x) { return x % 2; }));
    using V = std::vector<int>;
    PatternClass c{"not-classified", odd == 2, odd, std::nullopt, ""};
    if (p == V{2, 2, 1, 1})
        c = {"two-nodes", true, odd, 0, "two nodes"};
    else if (p == V{3, 2, 1})
        c = {"node+cusp", true, odd, 0, "a node and a cusp"};
    else if (p == V{3, 3})
        c = {"two-cusps", true, odd, 0, "two cusps"};
    else if (p == V{4, 1, 1})
        c = {"tacnode", true, odd, 0, "a tacnode"};
    else if (p == V{5, 1})
        c = {"higher-cusp", true, odd, 0, "a higher cusp"};
    else if (p == V{1, 1, 1, 1, 1, 1})
        c = {"genus-2-smooth", false, odd, 2, "none"};
    else if (p == V{2, 1, 1, 1, 1})
        c = {"genus-1-node", false, odd, 1, "a node"};
    else if (p == V{3, 1, 1, 1})
        c = {"genus-1-cusp", false, odd, 1, "a cusp"};
    else if (p == V{2, 2, 2} || p == V{4, 2} || p == V{6})
        c = {"reduced-not-rational", false, odd, std::nullopt, "non-rational"};
    return c;
}

std::vector<std::vector<int>> partitions_of(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(left, cap); k >= 1; --k) {
            cur.push_back(k);
            rec(left - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

DiscriminantProfile discriminant_profile(const TypeVector& mu)
{
    if (mu.cls() != 0)
        throw std::invalid_argument("discriminant_profile: " + mu.str() + " is not in class 0");
    const int z = mu_stats(mu).zeros;
    static const char* kProfiles[] = {"irreducible sextic", "irreducible sextic", "conic + rational quartic",
                                      "three smooth conics"};
    return {6, std::max(1, z), 1 - z, z, 9, kProfiles[z]};
}

}  // namespace fgp
