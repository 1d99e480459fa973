#include "fgp/cli.hpp"

#include "fgp/dg_solver.hpp"
#include "fgp/pic_lattice.hpp"
#include "fgp/plane_geometry.hpp"
#include "fgp/type_arith.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace fgp {

namespace {

using json = nlohmann::json;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum Exit { kOk = 0, kInvalid = 1, kWarning = 2, kVerifyFailed = 3, kInternal = 4 };

// ---- parsing helpers

std::vector<std::string> split(const std::string& s, char sep = ',')
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        out.push_back(tok);
    }
    return out;
}

double to_double(const std::string& s)
{
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InputError("not a number: '" + s + "'");
    }
    if (used != s.size())
        throw InputError("not a number: '" + s + "'");
    return v;
}

// Accepts "1.5", "2i", "-0.3+1.2i", "1e-3-2e-2i".
cd to_complex(const std::string& s)
{
    if (s.empty())
        throw InputError("empty complex value");
    if (s.back() != 'i')
        return {to_double(s), 0};
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    auto imag = [](const std::string& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return to_double(t);
    };
    if (cut == std::string::npos)
        return {0, imag(body)};
    return {to_double(body.substr(0, cut)), imag(body.substr(cut))};
}

Quad to_quad(const std::vector<int>& v, const char* what)
{
    if (v.size() != 4)
        throw InputError(std::string(what) + " needs exactly four entries");
    return {v[0], v[1], v[2], v[3]};
}

std::vector<int> ints_from(const std::string& s)
{
    std::vector<int> out;
    for (const auto& t : split(s)) {
        const double v = to_double(t);
        if (v != std::floor(v))
            throw InputError("not an integer: '" + t + "'");
        out.push_back(int(v));
    }
    return out;
}

// ---- JSON helpers

json cjson(cd z) { return json::array({z.real(), z.imag()}); }

json quad_json(const Quad& q) { return json(std::vector<int>(q.begin(), q.end())); }

json lattice_json(const Lattice& L)
{
    json e = json::array();
    for (const cd& v : L.e)
        e.push_back(cjson(v));
    return {{"omega_a", cjson(L.omega_a)}, {"omega_b", cjson(L.omega_b)}, {"g2", cjson(L.g2)}, {"g3", cjson(L.g3)},
            {"e", e}};
}

json datum_json(const SpectralDatum& s)
{
    return {{"nu", quad_json(s.nu.v())},
            {"n", s.degree_n},
            {"g", s.genus_g},
            {"theta", {{"j", s.theta.j}, {"k", s.theta.k}, {"shifts", s.theta.shifts}}},
            {"count", s.count}};
}

json class_json(const DivClass& d) { return json(std::vector<long long>(d.c.begin(), d.c.end())); }

// ---- CSV

class Csv {
public:
    explicit Csv(const std::string& path) : path_(path) {}
    void header(std::vector<std::string> h) { header_ = std::move(h); }
    void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }
    void write() const
    {
        if (path_.empty())
            return;
        std::ofstream f(path_);
        if (!f)
            throw InputError("cannot write CSV file '" + path_ + "'");
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i)
                f << (i ? "," : "") << r[i];
            f << "\n";
        };
        line(header_);
        for (const auto& r : rows_)
            line(r);
    }

private:
    std::string path_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string num(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// ---- options, merged from flags and the JSON config

struct Options {
    std::string config_path;
    std::string csv_path;
    std::string alpha, mu, periods, e, base_path, suite;
    std::vector<std::string> z;
    int d = -1;
    bool linear_weights = false;
    std::uint64_t seed = default_tolerances().seed;
};

class Resolved {
public:
    Resolved(const Options& o, const CLI::App& sub, const json& cfg) : o_(o), sub_(sub), cfg_(cfg) {}

    std::size_t given(const std::string& flag) const
    {
        const CLI::Option* opt = sub_.get_option_no_throw(flag);
        return opt ? opt->count() : 0;
    }

    std::optional<Quad> quad(const std::string& flag, const std::string& key, const std::string& value) const
    {
        if (given(flag))
            return to_quad(ints_from(value), key.c_str());
        if (cfg_.contains(key))
            return to_quad(cfg_.at(key).get<std::vector<int>>(), key.c_str());
        return std::nullopt;
    }
    std::optional<Quad> alpha() const { return quad("--alpha", "alpha", o_.alpha); }
    std::optional<Quad> mu() const { return quad("--mu", "mu", o_.mu); }

    std::optional<int> depth() const
    {
        if (given("--d"))
            return o_.d;
        if (cfg_.contains("d"))
            return cfg_.at("d").get<int>();
        return std::nullopt;
    }

    std::optional<std::array<double, 4>> periods() const
    {
        std::vector<double> v;
        if (given("--periods"))
            for (const auto& t : split(o_.periods))
                v.push_back(to_double(t));
        else if (cfg_.contains("periods"))
            v = cfg_.at("periods").get<std::vector<double>>();
        else
            return std::nullopt;
        if (v.size() != 4)
            throw InputError("periods needs four numbers: re_a,im_a,re_b,im_b");
        return std::array<double, 4>{v[0], v[1], v[2], v[3]};
    }

    std::optional<std::array<cd, 3>> branch_values() const
    {
        std::vector<cd> v;
        if (given("--e")) {
            for (const auto& t : split(o_.e))
                v.push_back(to_complex(t));
        } else if (cfg_.contains("e")) {
            for (const auto& item : cfg_.at("e"))
                v.push_back(item.is_array() ? cd(item.at(0).get<double>(), item.at(1).get<double>())
                                            : cd(item.get<double>(), 0));
        } else {
            return std::nullopt;
        }
        if (v.size() != 3)
            throw InputError("e needs three branch values");
        const double s = std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]);
        if (std::abs(v[0] + v[1] + v[2]) > 1e-9 * std::max(1.0, s))
            throw InputError("branch values must sum to zero");
        for (int j = 0; j < 3; ++j)
            if (std::abs(v[j] - v[(j + 1) % 3]) <= 1e-12 * std::max(1.0, s))
                throw InputError("branch values must be distinct");
        return std::array<cd, 3>{v[0], v[1], v[2]};
    }

    std::string csv() const
    {
        if (!o_.csv_path.empty())
            return o_.csv_path;
        return cfg_.value("csv", std::string());
    }

    ToleranceConfig tolerances() const
    {
        ToleranceConfig t;
        if (cfg_.contains("tolerances")) {
            const auto& j = cfg_.at("tolerances");
            static const std::set<std::string> known{
                "series_radius", "pole_guard",    "invert_residual",  "identity_residual", "dg_residual",
                "dedupe_radius", "branch_exclusion", "certificate",   "resultant_samples", "resultant_radius",
                "newton_grid"};
            for (auto it = j.begin(); it != j.end(); ++it)
                if (!known.count(it.key()))
                    throw InputError("unknown tolerance '" + it.key() + "'");
            t.series_radius = j.value("series_radius", t.series_radius);
            t.pole_guard = j.value("pole_guard", t.pole_guard);
            t.invert_residual = j.value("invert_residual", t.invert_residual);
            t.identity_residual = j.value("identity_residual", t.identity_residual);
            t.dg_residual = j.value("dg_residual", t.dg_residual);
            t.dedupe_radius = j.value("dedupe_radius", t.dedupe_radius);
            t.branch_exclusion = j.value("branch_exclusion", t.branch_exclusion);
            t.certificate = j.value("certificate", t.certificate);
            t.resultant_samples = j.value("resultant_samples", t.resultant_samples);
            t.resultant_radius = j.value("resultant_radius", t.resultant_radius);
            t.newton_grid = j.value("newton_grid", t.newton_grid);
        }
        t.linear_weights = given("--linear-weights") ? o_.linear_weights
                                                          : cfg_.value("linear_weights", false);
        t.seed = given("--seed") ? o_.seed : cfg_.value("seed", t.seed);
        return t;
    }

    const Options& raw() const { return o_; }
    const json& config() const { return cfg_; }

private:
    const Options& o_;
    const CLI::App& sub_;
    const json& cfg_;
};

Lattice lattice_from(const std::array<double, 4>& p, const ToleranceConfig& tol)
{
    return lattice_from_periods(cd(p[0], p[1]), cd(p[2], p[3]), tol);
}

TypeVector t0_vector(const Quad& q)
{
    TypeVector mu(q);
    if (mu.cls() != 0)
        throw InputError("mu " + mu.str() + " is not in class 0 (need one parity pattern with index 0 distinguished)");
    return mu;
}

// ---- subcommands

int cmd_solve(const Resolved& r, std::ostream& out)
{
    const ToleranceConfig tol = r.tolerances();
    const auto a = r.alpha();
    const auto m = r.mu();
    if (a.has_value() == m.has_value())
        throw InputError("solve needs exactly one of --alpha or --mu");
    const AlphaVector alpha = a ? AlphaVector(*a) : c_map(1, 0, t0_vector(*m));
    const auto d = r.depth();
    if (!d || *d < 0 || *d > 2)
        throw InputError("solve needs --d in {0, 1, 2}");
    const auto periods = r.periods();
    const auto evals = r.branch_values();
    if (periods && evals)
        throw InputError("give either --periods or --e, not both");
    if (*d > 0 && !periods && !evals)
        throw InputError("solve with d > 0 needs a lattice (--periods or --e)");

    json rep;
    rep["alpha"] = quad_json(alpha.a());
    if (m)
        rep["alpha_from_mu"] = quad_json(*m);
    rep["d"] = *d;
    std::optional<Lattice> L;
    if (periods) {
        L = lattice_from(*periods, tol);
        rep["lattice"] = lattice_json(*L);
    } else if (evals) {
        json e = json::array();
        for (const cd& v : *evals)
            e.push_back(cjson(v));
        rep["lattice"] = {{"e", e}};
    }
    rep["weights"] = tol.linear_weights ? "linear" : "squared";
    json notices = json::array();

    SolveReport sr;
    sr.alpha = alpha;
    sr.depth = *d;
    if (*d == 0) {
        sr.solutions.push_back(DGSolution{});
        sr.method = "none";
    } else if (L) {
        sr = *d == 1 ? solve_d1(alpha, *L, tol) : solve_d2(alpha, *L, tol);
    } else {
        const auto sys = build_system<cd>(alpha, *evals, tol.linear_weights);
        sr = *d == 1 ? solve_d1_x(sys, tol) : solve_d2_x(sys, tol);
        notices.push_back("lattice given by branch values only: solutions are not lifted to poles");
    }

    Csv csv(r.csv());
    std::vector<std::string> head;
    for (int l = 1; l <= *d; ++l)
        for (const char* c : {"re_x", "im_x"})
            head.push_back(std::string(c) + std::to_string(l));
    for (int l = 1; l <= *d; ++l)
        for (const char* c : {"re_rho", "im_rho"})
            head.push_back(std::string(c) + std::to_string(l));
    for (int l = 1; l <= *d; ++l)
        head.push_back("residual" + std::to_string(l));
    head.push_back("reduced_residual");
    csv.header(head);

    json sols = json::array();
    static const char* names[] = {"x", "y"};
    for (const auto& s : sr.solutions) {
        json js;
        std::vector<std::string> row;
        for (std::size_t l = 0; l < s.xs.size(); ++l) {
            js[names[l]] = cjson(s.xs[l]);
            row.push_back(num(s.xs[l].real()));
            row.push_back(num(s.xs[l].imag()));
        }
        for (std::size_t l = 0; l < s.rhos.size(); ++l)
            js["rho" + std::to_string(l + 1)] = cjson(s.rhos[l]);
        for (std::size_t l = 0; l < std::size_t(*d); ++l) {
            const cd rho = l < s.rhos.size() ? s.rhos[l] : cd(NAN, NAN);
            row.push_back(num(rho.real()));
            row.push_back(num(rho.imag()));
        }
        if (*d > 0) {
            js["residuals"] = s.residuals;
            js["reduced_residual"] = s.reduced_residual;
            js["multiplicity"] = s.multiplicity;
        } else {
            js["rhos"] = json::array();
        }
        for (std::size_t l = 0; l < std::size_t(*d); ++l)
            row.push_back(l < s.residuals.size() ? num(s.residuals[l]) : "");
        row.push_back(num(s.reduced_residual));
        csv.row(row);
        sols.push_back(js);
    }
    rep["count"] = sr.count();
    rep["method"] = sr.method;
    rep["lifted"] = sr.lifted;
    rep["solutions"] = sols;
    rep["warnings"] = sr.warnings;
    rep["notices"] = notices;

    const auto inv = c_map_inverse(alpha);
    json derived;
    derived["mu"] = quad_json(inv.mu.v());
    json pairs = json::array();
    for (auto [j, k] : inv.pairs)
        pairs.push_back({j, k});
    derived["pairs"] = pairs;
    derived["g_alpha"] = g_alpha(alpha).convert_to<double>();
    derived["degree_n"] = potential_degree(PotentialSpec{alpha, std::vector<cd>(*d), {}});
    if (*d == 2) {
        json strata = json::array();
        for (const auto& s : spectral_enumeration(alpha))
            strata.push_back(datum_json(s));
        derived["strata"] = strata;
    }
    rep["derived"] = derived;

    csv.write();
    out << rep.dump(2) << "\n";
    return sr.warnings.empty() ? kOk : kWarning;
}

int cmd_count(const Resolved& r, std::ostream& out)
{
    const auto a = r.alpha();
    const auto m = r.mu();
    if (a.has_value() == m.has_value())
        throw InputError("count needs exactly one of --alpha or --mu");
    const auto d = r.depth();
    if (!d || *d < 0)
        throw InputError("count needs --d >= 0");
    const TypeVector mu = m ? t0_vector(*m) : c_map_inverse(AlphaVector(*a)).mu;

    json rep;
    rep["mu"] = quad_json(mu.v());
    rep["d"] = *d;
    if (*d > 2) {
        try {
            recursion_count(mu, *d, standard_recursion_base(mu, *d), standard_pot0());
        } catch (const std::exception& ex) {
            throw InputError(std::string("no base data for d >= 3: ") + ex.what() +
                             " (use the recursion subcommand with --base)");
        }
    }
    const long long sev = severi_count(mu, *d);
    const long long rec = recursion_count(mu, *d, standard_recursion_base(mu, *d), standard_pot0());
    rep["severi_count"] = sev;
    rep["recursion_count"] = rec;

    Csv csv(r.csv());
    csv.header({"nu0", "nu1", "nu2", "nu3", "n", "g", "theta_j", "theta_k", "count"});
    if (a) {
        rep["alpha"] = quad_json(*a);
        long long total = standard_pot0().at(std::min(*d, 2));
        if (*d == 2) {
            json strata = json::array();
            total = 0;
            for (const auto& s : spectral_enumeration(AlphaVector(*a))) {
                strata.push_back(datum_json(s));
                total += s.count;
                csv.row({std::to_string(s.nu[0]), std::to_string(s.nu[1]), std::to_string(s.nu[2]),
                         std::to_string(s.nu[3]), std::to_string(s.degree_n), std::to_string(s.genus_g),
                         std::to_string(s.theta.j), std::to_string(s.theta.k), std::to_string(s.count)});
            }
            rep["strata"] = strata;
        }
        rep["count"] = total;
    } else {
        rep["count"] = sev;
        csv.row({std::to_string(mu[0]), std::to_string(mu[1]), std::to_string(mu[2]), std::to_string(mu[3]),
                 std::to_string(degree_of(mu, *d)), std::to_string(mu_stats(mu).g), "", "", std::to_string(sev)});
    }
    csv.write();
    out << rep.dump(2) << "\n";
    return kOk;
}

int cmd_spectral(const Resolved& r, std::ostream& out)
{
    const auto a = r.alpha();
    const auto m = r.mu();
    if (a.has_value() == m.has_value())
        throw InputError("spectral needs exactly one of --alpha or --mu");
    const AlphaVector alpha = a ? AlphaVector(*a) : c_map(1, 0, t0_vector(*m));
    const auto inv = c_map_inverse(alpha);
    json rep;
    rep["alpha"] = quad_json(alpha.a());
    rep["mu"] = quad_json(inv.mu.v());
    json alts = json::array();
    for (const auto& t : inv.alternatives)
        alts.push_back(quad_json(t.v()));
    rep["alternative_mu"] = alts;
    rep["g_alpha"] = g_alpha(alpha).convert_to<double>();
    json strata = json::array();
    long long total = 0;
    Csv csv(r.csv());
    csv.header({"nu0", "nu1", "nu2", "nu3", "n", "g", "theta_j", "theta_k", "shifts", "count"});
    for (const auto& s : spectral_enumeration(alpha)) {
        strata.push_back(datum_json(s));
        total += s.count;
        std::string shifts;
        for (int v : s.theta.shifts)
            shifts += (shifts.empty() ? "" : " ") + std::to_string(v);
        csv.row({std::to_string(s.nu[0]), std::to_string(s.nu[1]), std::to_string(s.nu[2]), std::to_string(s.nu[3]),
                 std::to_string(s.degree_n), std::to_string(s.genus_g), std::to_string(s.theta.j),
                 std::to_string(s.theta.k), shifts, std::to_string(s.count)});
    }
    rep["strata"] = strata;
    rep["total"] = total;
    csv.write();
    out << rep.dump(2) << "\n";
    return kOk;
}

int cmd_exceptional(const Resolved& r, std::ostream& out)
{
    const auto m = r.mu();
    if (!m)
        throw InputError("exceptional needs --mu");
    const TypeVector mu = t0_vector(*m);
    json rep;
    rep["mu"] = quad_json(mu.v());
    rep["basis"] = basis_names();
    json nb = json::array();
    Csv csv(r.csv());
    csv.header({"nu0", "nu1", "nu2", "nu3", "n", "geiser0", "geiser1", "geiser2", "geiser3", "geiser_n"});
    for (const auto& nu : exceptional_neighbors(mu)) {
        const auto im = geiser(mu, nu);
        const int n = (mu_stats(nu).sum_sq - 1) / 2, ni = (mu_stats(im).sum_sq - 1) / 2;
        nb.push_back({{"nu", quad_json(nu.v())},
                      {"n", n},
                      {"class", class_json(class_of_gamma(nu))},
                      {"geiser", quad_json(im.v())},
                      {"geiser_n", ni}});
        csv.row({std::to_string(nu[0]), std::to_string(nu[1]), std::to_string(nu[2]), std::to_string(nu[3]),
                 std::to_string(n), std::to_string(im[0]), std::to_string(im[1]), std::to_string(im[2]),
                 std::to_string(im[3]), std::to_string(ni)});
    }
    rep["neighbors"] = nb;
    rep["exceptional_curves"] = nb.size() + 1;

    const auto dp = delpezzo_report(mu);
    json rp;
    rp["exceptional_curves"] = dp.exceptional_curves;
    rp["positive_fibers"] = dp.positive_fibers;
    rp["pencil_reducibles"] = dp.pencil_reducibles;
    rp["anticanonical"] = class_json(dp.anticanonical);
    rp["R"] = class_json(dp.R);
    rp["R_c"] = class_json(dp.R_c);
    rp["Omega"] = class_json(dp.Omega);
    rp["omega_profile"] = dp.omega_profile;
    json comps = json::array();
    for (const auto& c : dp.omega_components)
        comps.push_back(quad_json(c.v()));
    rp["omega_components"] = comps;
    rp["inflection_points"] = dp.inflection_points;
    if (dp.lambda_j) {
        rp["lambda"] = dp.lambda_j->first.str();
        rp["j"] = dp.lambda_j->second.str();
    }
    rep["delpezzo"] = rp;
    csv.write();
    out << rep.dump(2) << "\n";
    return kOk;
}

int cmd_recursion(const Resolved& r, std::ostream& out)
{
    const auto m = r.mu();
    if (!m)
        throw InputError("recursion needs --mu");
    const auto d = r.depth();
    if (!d || *d < 0)
        throw InputError("recursion needs --d >= 0");
    const TypeVector mu = t0_vector(*m);
    BaseCounts base = standard_recursion_base(mu, *d);
    auto pot0 = standard_pot0();

    std::string base_path = r.raw().base_path;
    if (base_path.empty())
        base_path = r.config().value("base", std::string());
    if (!base_path.empty()) {
        std::ifstream f(base_path);
        if (!f)
            throw InputError("cannot read base file '" + base_path + "'");
        json b;
        try {
            b = json::parse(f);
            const json entries = b.value("base", json::array());
            for (const auto& e : entries)
                base[{to_quad(e.at("nu").get<std::vector<int>>(), "nu"), e.at("l").get<int>()}] =
                    e.at("count").get<long long>();
            const json extra = b.value("pot0", json::object());
            for (const auto& [k, v] : extra.items())
                pot0[std::stoi(k)] = v.get<long long>();
        } catch (const json::exception& ex) {
            throw InputError(std::string("bad base file: ") + ex.what());
        }
    }
    long long count;
    try {
        count = recursion_count(mu, *d, base, pot0);
    } catch (const std::exception& ex) {
        throw InputError(ex.what());
    }
    json rep{{"mu", quad_json(mu.v())}, {"d", *d}, {"count", count}};
    if (*d <= 2)
        rep["severi_count"] = severi_count(mu, *d);
    Csv csv(r.csv());
    csv.header({"mu0", "mu1", "mu2", "mu3", "d", "count"});
    csv.row({std::to_string(mu[0]), std::to_string(mu[1]), std::to_string(mu[2]), std::to_string(mu[3]),
             std::to_string(*d), std::to_string(count)});
    csv.write();
    out << rep.dump(2) << "\n";
    return kOk;
}

int cmd_wp_eval(const Resolved& r, std::ostream& out)
{
    const ToleranceConfig tol = r.tolerances();
    const auto p = r.periods();
    if (!p)
        throw InputError("wp-eval needs --periods");
    const Lattice L = lattice_from(*p, tol);
    std::vector<cd> zs;
    for (const auto& s : r.raw().z) {
        const auto parts = split(s);
        if (parts.size() == 2)
            zs.emplace_back(to_double(parts[0]), to_double(parts[1]));
        else if (parts.size() == 1)
            zs.push_back(to_complex(parts[0]));
        else
            throw InputError("--z takes re,im or a complex literal");
    }
    if (zs.empty() && r.config().contains("z"))
        for (const auto& item : r.config().at("z"))
            zs.emplace_back(item.at(0).get<double>(), item.at(1).get<double>());
    json vals = json::array();
    Csv csv(r.csv());
    csv.header({"re_z", "im_z", "re_wp", "im_wp", "re_wp1", "im_wp1", "re_wp2", "im_wp2"});
    for (const cd& z : zs) {
        WpValues v;
        try {
            v = wp_all(z, L, tol);
        } catch (const std::domain_error& ex) {
            throw InputError(ex.what());
        }
        vals.push_back({{"z", cjson(z)}, {"wp", cjson(v.p)}, {"wp_prime", cjson(v.p1)}, {"wp_second", cjson(v.p2)}});
        csv.row({num(z.real()), num(z.imag()), num(v.p.real()), num(v.p.imag()), num(v.p1.real()), num(v.p1.imag()),
                 num(v.p2.real()), num(v.p2.imag())});
    }
    csv.write();
    out << json{{"lattice", lattice_json(L)}, {"values", vals}}.dump(2) << "\n";
    return kOk;
}

// ---- verify suites

class Suite {
public:
    void check(const std::string& name, long long cases, std::vector<std::string> failures)
    {
        const bool ok = failures.empty();
        if (failures.size() > 5)
            failures.resize(5);
        checks_.push_back({{"name", name}, {"cases", cases}, {"passed", ok}, {"failures", failures}});
        passed_ = passed_ && ok;
    }
    json report(const std::string& suite) const { return {{"suite", suite}, {"passed", passed_}, {"checks", checks_}}; }
    bool passed() const { return passed_; }
    const json& checks() const { return checks_; }

private:
    json checks_ = json::array();
    bool passed_ = true;
};

std::vector<Lattice> random_lattices(std::mt19937_64& rng, int n, const ToleranceConfig& tol)
{
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<Lattice> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lattice_from_periods(cd(1 + 0.5 * U(rng), 0.4 * U(rng)), cd(0.6 * U(rng), 1.3 + 0.7 * U(rng)), tol));
    return out;
}

Rational random_rational(std::mt19937_64& rng)
{
    return Rational(int(rng() % 41) - 20, int(rng() % 9) + 1);
}

void suite_identities(Suite& s, const ToleranceConfig& tol)
{
    std::mt19937_64 rng(tol.seed);
    std::uniform_real_distribution<double> U(-1.2, 1.2);
    std::vector<std::string> fails;
    long long n = 0;
    for (const auto& L : random_lattices(rng, 5, tol))
        for (int i = 0; i < 100; ++i, ++n) {
            const cd z(U(rng), U(rng)), w(U(rng), U(rng));
            const auto r = check_addition_identities(z, w, L, tol);
            if (!(r.first < tol.identity_residual && r.second < tol.identity_residual)) {
                std::ostringstream os;
                os << "z=" << z << " w=" << w << " residuals " << r.first << ", " << r.second;
                fails.push_back(os.str());
            }
        }
    s.check("addition identities", n, fails);

    fails.clear();
    n = 0;
    for (int i = 0; i < 20; ++i) {
        const Rational e1 = random_rational(rng), e2 = random_rational(rng);
        const Rational e3 = -e1 - e2;
        if (e1 == e2 || e1 == e3 || e2 == e3)
            continue;
        ++n;
        const AlphaVector a(int(rng() % 5), int(rng() % 5), int(rng() % 5), int(rng() % 5));
        const auto sys = build_system<Rational>(a, {e1, e2, e3});
        const BiPoly<Rational> d = BiPoly<Rational>::in_x(Poly<Rational>({Rational(0), Rational(1)})) -
                                   BiPoly<Rational>::in_y(Poly<Rational>({Rational(0), Rational(1)}));
        const bool diag = sys.F.diagonal() == Rational(64) * sys.Pi.pow(3);
        const auto bracket = Rational(4) * (BiPoly<Rational>::in_x(sys.Pi * sys.Pi) * sys.B) - sys.F -
                             d * d * d * BiPoly<Rational>::in_x(sys.G1);
        if (!diag || !bracket.is_zero())
            fails.push_back("e=(" + e1.str() + "," + e2.str() + "," + e3.str() + ") alpha=" + a.str());
    }
    s.check("diagonal identity and bracket (exact)", n, fails);

    fails.clear();
    const auto sys = to_complex(build_system<Rational>({0, 0, 0, 0}, {Rational(1), Rational(0), Rational(-1)}));
    for (int j = 1; j <= 3; ++j)
        if (diagonal_multiplicity(sys, j) != 3)
            fails.push_back("branch " + std::to_string(j));
    s.check("diagonal multiplicity three", 3, fails);
}

void suite_counts(Suite& s, const ToleranceConfig&)
{
    const auto sweep = sweep_t0(6);
    std::vector<std::string> fails;
    for (const auto& mu : sweep) {
        const long long r = recursion_count(mu, 2, standard_recursion_base(mu, 2), standard_pot0());
        if (r != severi_count(mu, 2))
            fails.push_back(mu.str() + ": recursion " + std::to_string(r));
    }
    s.check("recursion reproduces severi_count", (long long)sweep.size(), fails);

    fails.clear();
    long long n = 0;
    for (const auto& mu : sweep)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k, ++n) {
                const auto a = c_map(j, k, mu);
                const double g = g_alpha(a).convert_to<double>();
                long long total = 0;
                bool spread = true;
                for (const auto& d : spectral_enumeration(a)) {
                    total += d.count;
                    spread = spread && d.genus_g >= g && d.genus_g <= g + 2;
                }
                if (total != 27 || !spread)
                    fails.push_back(a.str() + ": total " + std::to_string(total));
            }
    s.check("spectral enumeration sums to 27", n, fails);

    fails.clear();
    n = 0;
    for (const auto& mu : sweep_t0(15)) {
        const auto st = mu_stats(mu);
        if (st.sum > 15)
            continue;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k, ++n) {
                const auto a = c_map(j, k, mu);
                const auto back = c_map_inverse_at(a, j, k);
                long long sq = 0;
                for (int x : a.a())
                    sq += x * (x + 1);
                if (!back || !(*back == mu) || sq != st.sum_sq - 1 || g_alpha(a) != st.g)
                    fails.push_back(mu.str() + " via (" + std::to_string(j) + "," + std::to_string(k) + ")");
            }
    }
    s.check("c_map round trip", n, fails);

    fails.clear();
    for (const auto& mu : sweep) {
        const auto st = mu_stats(mu);
        if (dual_budget(st.zeros, st.ones).nodes != severi_count(mu, 2))
            fails.push_back(mu.str());
    }
    s.check("dual budget nodes equal severi_count", (long long)sweep.size(), fails);
}

void suite_appendix_b(Suite& s, const ToleranceConfig& tol)
{
    using Q = Rational;
    std::mt19937_64 rng(tol.seed);
    std::vector<std::string> fails;
    int n = 0;
    while (n < 20) {
        const Q t = random_rational(rng);
        const auto q = base_conic_point(t);
        if (q[1] == q[2])
            continue;
        ++n;
        const auto C = conic_c411(q);
        const int m = intersection_multiplicity(C, conic_branch_at(base_conic<Q>(), q), q);
        const auto tp = c411_h0_tangency(q);
        const Point<Q> dir = proportional(tp, Point<Q>{1, 0, 0}) ? Point<Q>{0, 1, 1} : Point<Q>{1, 0, 0};
        const int mh = intersection_multiplicity(C, line_branch(tp, dir), tp);
        if (m != 4 || mh != 2)
            fails.push_back("t=" + t.str() + " multiplicities " + std::to_string(m) + ", " + std::to_string(mh));
    }
    s.check("c411 certificates", n, fails);

    fails.clear();
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
        const int m1 = intersection_multiplicity(K, line_branch(a, Point<Q>{1, 0, 0}), a);
        const int m2 = intersection_multiplicity(K, line_branch(b, Point<Q>{1, 0, 0}), b);
        const int m3 = intersection_multiplicity(K, conic_branch_at(base_conic<Q>(), p1), p1);
        const int m4 = intersection_multiplicity(K, conic_branch_at(base_conic<Q>(), p2), p2);
        if (m1 != 2 || m2 != 2 || m3 != 2 || m4 != 2)
            fails.push_back("c=" + c.str());
    }
    s.check("c222 triple tangency", n, fails);

    fails.clear();
    const auto j = j_invariant({2, 1, 1, 1});
    if (j.lambda != Q(32, 27) || j.j != Q(702595369, 72900))
        fails.push_back("j(2,1,1,1) = " + j.j.str());
    s.check("j invariant example", 1, fails);

    fails.clear();
    std::set<std::vector<int>> two_odd;
    for (const auto& p : partitions_of(6))
        if (classify_pattern(p).odd_terms == 2)
            two_odd.insert(p);
    if (two_odd != std::set<std::vector<int>>{{5, 1}, {4, 1, 1}, {3, 3}, {3, 2, 1}, {2, 2, 1, 1}})
        fails.push_back("two-odd-term census differs");
    s.check("partition census", (long long)partitions_of(6).size(), fails);
}

void suite_lattice(Suite& s, const ToleranceConfig& tol)
{
    std::mt19937_64 rng(tol.seed);
    std::vector<std::string> fails;
    for (const auto& L : random_lattices(rng, 20, tol)) {
        const double sc = std::max({1.0, std::abs(L.e[0]), std::abs(L.e[1]), std::abs(L.e[2])});
        bool ok = std::abs(L.e[0] + L.e[1] + L.e[2]) < 1e-9 * sc;
        for (int j = 1; j <= 3; ++j) {
            const auto v = wp_all(L.omegas[j], L, tol);
            ok = ok && std::abs(v.p - L.e[j - 1]) < 1e-9 * sc && std::abs(v.p1) < 1e-7 * sc;
        }
        if (!ok) {
            std::ostringstream os;
            os << "omega_a=" << L.omega_a << " omega_b=" << L.omega_b;
            fails.push_back(os.str());
        }
    }
    s.check("lattice invariants", 20, fails);

    fails.clear();
    if (intersect(basis::K(), basis::K()) != 0)
        fails.push_back("K^2 != 0");
    s.check("canonical class square", 1, fails);

    fails.clear();
    std::vector<TypeVector> all;
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b)
            for (int c = 0; c <= 5; ++c)
                for (int d = 0; d <= 5; ++d)
                    if ((a + b + c + d) % 2)
                        all.emplace_back(a, b, c, d);
    for (int i = 0; i < 200; ++i) {
        const auto& a = all[rng() % all.size()];
        const auto& b = all[rng() % all.size()];
        if (Rational(intersect(class_of_gamma(a), class_of_gamma(b))) != gamma_intersection(a, b))
            fails.push_back(a.str() + " . " + b.str());
    }
    s.check("intersections match the closed form", 200, fails);

    fails.clear();
    long long n = 0;
    for (const auto& mu : all) {
        if (mu.cls() != 0)
            continue;
        for (int d = 0; d <= 4; ++d, ++n)
            if (arithmetic_genus(class_of_gamma(mu) + d * basis::L()) != d)
                fails.push_back(mu.str() + " d=" + std::to_string(d));
    }
    s.check("arithmetic genus of the linear systems", n, fails);

    fails.clear();
    const std::array<std::size_t, 4> census{24, 18, 13, 9};
    const auto sweep = sweep_t0(6);
    for (const auto& mu : sweep) {
        const auto nb = exceptional_neighbors(mu);
        const std::set<TypeVector> set(nb.begin(), nb.end());
        bool ok = nb.size() == census[mu_stats(mu).zeros];
        for (const auto& nu : nb) {
            const auto im = geiser(mu, nu);
            ok = ok && set.count(im) && geiser(mu, im) == nu &&
                 mu_stats(nu).n + mu_stats(im).n == mu_stats(mu).sum_sq + 1;
        }
        if (!ok)
            fails.push_back(mu.str());
    }
    s.check("Geiser involution and neighbour census", (long long)sweep.size(), fails);
}

int cmd_verify(const Resolved& r, std::ostream& out)
{
    const ToleranceConfig tol = r.tolerances();
    std::string suite = r.raw().suite;
    if (suite.empty())
        suite = r.config().value("suite", std::string());
    Suite s;
    if (suite == "identities")
        suite_identities(s, tol);
    else if (suite == "counts")
        suite_counts(s, tol);
    else if (suite == "appendixB")
        suite_appendix_b(s, tol);
    else if (suite == "lattice")
        suite_lattice(s, tol);
    else
        throw InputError("unknown suite '" + suite + "' (identities, counts, appendixB, lattice)");

    Csv csv(r.csv());
    csv.header({"check", "cases", "passed"});
    for (const auto& c : s.checks())
        csv.row({c["name"].get<std::string>(), std::to_string(c["cases"].get<long long>()),
                 c["passed"].get<bool>() ? "1" : "0"});
    csv.write();
    out << s.report(suite).dump(2) << "\n";
    return s.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Even elliptic finite-gap potentials: solving, counting and verification"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON config file; flags override it");
        sub->add_option("--csv", o.csv_path, "also write a flat CSV table to this path");
    };
    auto add_lattice = [&](CLI::App* sub) {
        sub->add_option("--periods", o.periods, "half periods re_a,im_a,re_b,im_b");
        sub->add_option("--e", o.e, "branch values e1,e2,e3 (sum zero); skips lifting");
        sub->add_flag("--linear-weights", o.linear_weights, "use (2a+1) instead of (2a+1)^2 as weights");
        sub->add_option("--seed", o.seed, "seed for randomized checks");
    };

    auto* solve = app.add_subcommand("solve", "solve the reduced pole equations for d = 0, 1, 2");
    add_common(solve);
    add_lattice(solve);
    solve->add_option("--alpha", o.alpha, "a0,a1,a2,a3");
    solve->add_option("--mu", o.mu, "type vector; alpha = c_map(1,0,mu)");
    solve->add_option("--d", o.d, "number of pole pairs");

    auto* count = app.add_subcommand("count", "Severi and potential counts");
    add_common(count);
    count->add_option("--alpha", o.alpha, "a0,a1,a2,a3");
    count->add_option("--mu", o.mu, "type vector in class 0");
    count->add_option("--d", o.d, "depth");

    auto* spectral = app.add_subcommand("spectral", "stratified spectral data for d = 2");
    add_common(spectral);
    spectral->add_option("--alpha", o.alpha, "a0,a1,a2,a3");
    spectral->add_option("--mu", o.mu, "type vector; alpha = c_map(1,0,mu)");

    auto* exceptional = app.add_subcommand("exceptional", "exceptional curves and del Pezzo data for a type");
    add_common(exceptional);
    exceptional->add_option("--mu", o.mu, "type vector in class 0");

    auto* recursion = app.add_subcommand("recursion", "evaluate the recursive count");
    add_common(recursion);
    recursion->add_option("--mu", o.mu, "type vector in class 0");
    recursion->add_option("--d", o.d, "depth");
    recursion->add_option("--base", o.base_path, "JSON with extra base counts and pot0 values");

    auto* verify = app.add_subcommand("verify", "run an invariant suite");
    add_common(verify);
    verify->add_option("suite", o.suite, "identities | counts | appendixB | lattice");
    verify->add_option("--seed", o.seed, "seed for randomized checks");

    auto* wpe = app.add_subcommand("wp-eval", "evaluate wp, wp', wp''");
    add_common(wpe);
    wpe->add_option("--periods", o.periods, "half periods re_a,im_a,re_b,im_b");
    wpe->add_option("--z", o.z, "evaluation point re,im (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream so, se;
        const int code = app.exit(e, so, se);
        out << so.str();
        err << se.str();
        return code == 0 ? kOk : kInvalid;
    }

    try {
        json cfg = json::object();
        if (!o.config_path.empty()) {
            std::ifstream f(o.config_path);
            if (!f)
                throw InputError("cannot read config file '" + o.config_path + "'");
            try {
                cfg = json::parse(f);
            } catch (const json::exception& ex) {
                throw InputError(std::string("bad config file: ") + ex.what());
            }
            if (!cfg.is_object())
                throw InputError("config file must hold a JSON object");
        }
        const CLI::App* sub = app.get_subcommands().front();
        const Resolved r(o, *sub, cfg);
        try {
            if (sub == solve)
                return cmd_solve(r, out);
            if (sub == count)
                return cmd_count(r, out);
            if (sub == spectral)
                return cmd_spectral(r, out);
            if (sub == exceptional)
                return cmd_exceptional(r, out);
            if (sub == recursion)
                return cmd_recursion(r, out);
            if (sub == verify)
                return cmd_verify(r, out);
            return cmd_wp_eval(r, out);
        } catch (const json::exception& ex) {
            throw InputError(std::string("bad config value: ") + ex.what());
        }
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return kInvalid;
    } catch (const std::domain_error& ex) {
        err << "error: " << ex.what() << "\n";
        return kInvalid;
    } catch (const std::exception& ex) {
        err << "internal error: " << ex.what() << "\n";
        return kInternal;
    }
}

}  // namespace fgp
