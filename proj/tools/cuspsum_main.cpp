// Command-line front end: coefficient caching, experiment drivers, and
// CSV/JSON emission for plotting. Exit codes: 0 success, 1 criterion
// failure, 2 usage error, 3 resource error.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "cuspsum/acceptance.hpp"
#include "cuspsum/bounds.hpp"
#include "cuspsum/coefficients.hpp"
#include "cuspsum/moments.hpp"
#include "cuspsum/spacing.hpp"
#include "cuspsum/sums.hpp"
#include "cuspsum/voronoi.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string hex_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

// JSON policy: every floating-point value appears in decimal and hex forms.
void put_number(json& j, const std::string& key, double v) {
    j[key] = v;
    j[key + "_hex"] = hex_double(v);
}

void put_complex(json& j, const std::string& key, std::complex<double> z) {
    json inner;
    put_number(inner, "re", z.real());
    put_number(inner, "im", z.imag());
    put_number(inner, "abs", std::abs(z));
    j[key] = inner;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::ostream& open_out(std::optional<std::ofstream>& holder,
                       const std::string& path) {
    if (path.empty()) return std::cout;
    holder.emplace(path);
    if (!*holder) throw std::runtime_error("cannot open output file " + path);
    return *holder;
}

struct CacheOptions {
    std::string cache_path;
    long long n_max = 0;       // explicit table size request
    long long budget = cuspsum::kDefaultNMaxBudget;
};

void add_cache_flags(CLI::App* cmd, CacheOptions& opts) {
    cmd->add_option("--cache", opts.cache_path,
                    "coefficient cache file (loaded if present, else written)");
    cmd->add_option("--n-max", opts.n_max, "coefficient table size to generate");
    cmd->add_option("--budget", opts.budget, "hard cap on n_max");
}

std::string default_cache_path(long long n_max) {
    const char* dir = std::getenv("CUSPSUM_CACHE_DIR");
    if (!dir || !*dir) return {};
    return (fs::path(dir) / ("coeffs-" + std::to_string(n_max) + ".txt")).string();
}

// Loads the cache if present and long enough, else generates (and saves when
// a cache path is known).
cuspsum::CoefficientTable resolve_table(const CacheOptions& opts,
                                        long long needed) {
    long long n_max = std::max(needed, opts.n_max);
    std::string path = opts.cache_path.empty() ? default_cache_path(n_max)
                                               : opts.cache_path;
    if (!path.empty() && fs::exists(path)) {
        auto t = cuspsum::load_cache(path);
        if (t.n_max < needed)
            throw std::invalid_argument("cache " + path + " has n_max " +
                                        std::to_string(t.n_max) +
                                        " but the command needs " +
                                        std::to_string(needed));
        return t;
    }
    auto t = cuspsum::generate_delta_coefficients(n_max, opts.budget);
    if (!path.empty()) cuspsum::save_cache(t, path);
    return t;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

int run_check_all(const CacheOptions& cache, const std::string& criteria,
                  int threads, const std::string& self_path) {
    std::vector<int> ids;
    if (criteria == "all" || criteria.empty()) {
        ids = cuspsum::all_acceptance_ids();
    } else {
        for (double v : parse_list(criteria)) ids.push_back(static_cast<int>(v));
    }
    long long needed = cuspsum::acceptance_required_n_max(ids);
    auto table = resolve_table(cache, needed);

    cuspsum::AcceptanceContext ctx;
    ctx.table = &table;
    ctx.threads = threads;
    ctx.cli_path = self_path;

    auto results = cuspsum::run_acceptance(ids, ctx);
    int failures = 0;
    for (const auto& r : results) {
        std::cout << cuspsum::format_result_line(r) << "\n";
        if (!r.pass) ++failures;
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                                : "FAILED CRITERIA: " + std::to_string(failures))
              << " (" << results.size() - failures << "/" << results.size()
              << " passed)\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cusp form exponential sum laboratory"};
    app.set_config("--config", "", "read options from a config file");
    app.require_subcommand(1);

    int exit_code = 0;

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate and cache coefficients");
    struct {
        long long n_max = 100000;
        long long budget = cuspsum::kDefaultNMaxBudget;
        std::string out;
    } gen_opts;
    gen->add_option("--n-max", gen_opts.n_max, "table size")->required();
    gen->add_option("--budget", gen_opts.budget, "hard cap on n_max");
    gen->add_option("--out", gen_opts.out, "cache file path");
    gen->callback([&] {
        auto t = cuspsum::generate_delta_coefficients(gen_opts.n_max,
                                                      gen_opts.budget);
        std::string path = gen_opts.out.empty()
                               ? default_cache_path(gen_opts.n_max)
                               : gen_opts.out;
        if (path.empty())
            path = "coeffs-" + std::to_string(gen_opts.n_max) + ".txt";
        cuspsum::save_cache(t, path);
        json j;
        j["command"] = "gen";
        j["n_max"] = t.n_max;
        j["weight"] = t.weight;
        j["cache"] = path;
        emit(j);
    });

    // ---- validate ----
    auto* validate = app.add_subcommand("validate", "check table invariants");
    struct {
        std::string cache;
    } val_opts;
    validate->add_option("--cache", val_opts.cache, "cache file")->required();
    validate->callback([&] {
        auto t = cuspsum::load_cache(val_opts.cache);
        auto report = cuspsum::validate_table(t);
        json j;
        j["command"] = "validate";
        j["n_max"] = t.n_max;
        j["violations"] = json::array();
        for (const auto& v : report.violations) {
            json e;
            e["witness"] = v.witness;
            e["detail"] = v.detail;
            e["warning"] = v.warning;
            j["violations"].push_back(e);
        }
        j["ok"] = !report.has_errors();
        emit(j);
        if (report.has_errors()) exit_code = 1;
    });

    // ---- sum ----
    auto* sum = app.add_subcommand("sum", "direct twisted sums");
    struct {
        std::string kind = "short";
        double x = 1.0;
        double delta = 1.0;
        long long h = 0, k = 1;
        CacheOptions cache;
    } sum_opts;
    sum->add_option("--kind", sum_opts.kind, "short or long")
        ->check(CLI::IsMember({"short", "long"}));
    sum->add_option("--x", sum_opts.x, "left endpoint")->required();
    sum->add_option("--delta", sum_opts.delta, "window length (short sums)");
    sum->add_option("--h", sum_opts.h, "twist numerator")->required();
    sum->add_option("--k", sum_opts.k, "twist denominator")->required();
    add_cache_flags(sum, sum_opts.cache);
    sum->callback([&] {
        auto twist = cuspsum::make_twist(sum_opts.h, sum_opts.k);
        json j;
        j["command"] = "sum";
        j["kind"] = sum_opts.kind;
        put_number(j, "x", sum_opts.x);
        j["h"] = twist.h;
        j["k"] = twist.k;
        if (sum_opts.kind == "short") {
            long long needed = static_cast<long long>(
                std::ceil(sum_opts.x + sum_opts.delta)) + 1;
            auto t = resolve_table(sum_opts.cache, needed);
            auto spec = cuspsum::make_short_sum_spec(
                std::max(1.0, sum_opts.x), sum_opts.delta, twist);
            put_number(j, "Delta", sum_opts.delta);
            put_complex(j, "value",
                        cuspsum::short_sum_direct(sum_opts.x, spec, t));
        } else {
            long long needed =
                static_cast<long long>(std::ceil(sum_opts.x)) + 1;
            auto t = resolve_table(sum_opts.cache, needed);
            put_complex(j, "value",
                        cuspsum::long_sum_direct(sum_opts.x, twist, t));
        }
        emit(j);
    });

    // ---- voronoi ----
    auto* voronoi = app.add_subcommand("voronoi",
                                       "truncated main term and error profile");
    struct {
        double x = 1e4;
        long long h = 0, k = 1;
        std::string N_list;
        double N = 0.0;
        double max_ratio = 1.0;
        std::string out;
        CacheOptions cache;
    } vor_opts;
    voronoi->add_option("--x", vor_opts.x)->required();
    voronoi->add_option("--h", vor_opts.h)->required();
    voronoi->add_option("--k", vor_opts.k)->required();
    voronoi->add_option("--N", vor_opts.N, "single truncation length");
    voronoi->add_option("--N-list", vor_opts.N_list,
                        "comma list of N values for an error profile");
    voronoi->add_option("--max-ratio", vor_opts.max_ratio, "allow N up to ratio*x");
    voronoi->add_option("--out", vor_opts.out, "CSV output path (default stdout)");
    add_cache_flags(voronoi, vor_opts.cache);
    voronoi->callback([&] {
        auto twist = cuspsum::make_twist(vor_opts.h, vor_opts.k);
        json j;
        j["command"] = "voronoi";
        put_number(j, "x", vor_opts.x);
        j["h"] = twist.h;
        j["k"] = twist.k;
        if (!vor_opts.N_list.empty()) {
            auto Ns = parse_list(vor_opts.N_list);
            long long needed = static_cast<long long>(std::ceil(
                std::max(vor_opts.x, Ns.empty() ? 1.0 : Ns.back()))) + 1;
            auto t = resolve_table(vor_opts.cache, needed);
            auto prof = cuspsum::error_profile(vor_opts.x, twist, Ns, t,
                                               vor_opts.max_ratio);
            std::optional<std::ofstream> holder;
            cuspsum::export_csv(prof, open_out(holder, vor_opts.out));
            put_number(j, "fitted_slope", prof.fitted_slope);
            j["points"] = prof.N_values.size();
            if (!vor_opts.out.empty()) emit(j);
        } else {
            long long needed = static_cast<long long>(
                std::ceil(std::max(vor_opts.x, vor_opts.N))) + 1;
            auto t = resolve_table(vor_opts.cache, needed);
            auto spec = cuspsum::make_voronoi_spec(vor_opts.x, vor_opts.N, twist,
                                                   vor_opts.max_ratio);
            put_number(j, "N", vor_opts.N);
            put_complex(j, "main_term", cuspsum::voronoi_main_term(spec, t));
            put_complex(j, "direct", cuspsum::long_sum_direct(vor_opts.x, twist, t));
            emit(j);
        }
    });

    // ---- moment ----
    auto* moment = app.add_subcommand("moment", "exact A-th moment integral");
    struct {
        double M = 0, delta = 0, A = 2;
        long long h = 0, k = 1;
        int threads = 1;
        std::string export_step;
        CacheOptions cache;
    } mom_opts;
    moment->add_option("--M", mom_opts.M)->required();
    moment->add_option("--delta", mom_opts.delta, "window length")->required();
    moment->add_option("--k", mom_opts.k)->required();
    moment->add_option("--h", mom_opts.h)->required();
    moment->add_option("--A", mom_opts.A, "moment order");
    moment->add_option("--threads", mom_opts.threads);
    moment->add_option("--export-step", mom_opts.export_step,
                       "write the step function CSV here");
    add_cache_flags(moment, mom_opts.cache);
    moment->callback([&] {
        auto twist = cuspsum::make_twist(mom_opts.h, mom_opts.k);
        auto spec = cuspsum::make_short_sum_spec(mom_opts.M, mom_opts.delta, twist);
        auto ms = cuspsum::make_moment_spec(mom_opts.A, spec);
        long long needed = static_cast<long long>(
            std::ceil(2.0 * mom_opts.M + mom_opts.delta)) + 1;
        auto t = resolve_table(mom_opts.cache, needed);
        auto sf = cuspsum::build_step_function(spec, t, mom_opts.threads);
        auto mr = cuspsum::exact_moment(sf, ms.A, mom_opts.threads);
        if (!mom_opts.export_step.empty()) {
            std::ofstream out(mom_opts.export_step);
            cuspsum::export_csv(sf, out);
        }
        json j;
        j["command"] = "moment";
        put_number(j, "M", mom_opts.M);
        put_number(j, "Delta", mom_opts.delta);
        j["k"] = twist.k;
        j["h"] = twist.h;
        put_number(j, "A", mom_opts.A);
        put_number(j, "value", mr.value);
        put_number(j, "max_abs", mr.max_abs);
        put_number(j, "argmax", mr.argmax);
        j["plateau_count"] = mr.plateau_count;
        put_number(j, "conjecture_ratio", cuspsum::conjecture_probe(sf));
        emit(j);
    });

    // ---- ladder ----
    auto* ladder = app.add_subcommand("ladder", "moment growth fit over an M ladder");
    struct {
        double A = 2;
        std::string M_list;
        double delta_coeff = 1.0, delta_exp = 0.0;
        long long h = 0, k = 1;
        int threads = 1;
        std::string out;
        CacheOptions cache;
    } lad_opts;
    ladder->add_option("--A", lad_opts.A)->required();
    ladder->add_option("--M-list", lad_opts.M_list, "comma list of M values")
        ->required();
    ladder->add_option("--delta-coeff", lad_opts.delta_coeff, "Delta = c*M^e: c");
    ladder->add_option("--delta-exp", lad_opts.delta_exp, "Delta = c*M^e: e");
    ladder->add_option("--k", lad_opts.k)->required();
    ladder->add_option("--h", lad_opts.h)->required();
    ladder->add_option("--threads", lad_opts.threads);
    ladder->add_option("--out", lad_opts.out, "CSV output path (default stdout)");
    add_cache_flags(ladder, lad_opts.cache);
    ladder->callback([&] {
        auto Ms = parse_list(lad_opts.M_list);
        auto twist = cuspsum::make_twist(lad_opts.h, lad_opts.k);
        cuspsum::DeltaRule rule{lad_opts.delta_coeff, lad_opts.delta_exp};
        long long needed = 1;
        for (double M : Ms)
            needed = std::max(needed, static_cast<long long>(
                                          std::ceil(2.0 * M + rule.delta(M))) + 1);
        auto t = resolve_table(lad_opts.cache, needed);
        auto fit = cuspsum::moment_growth_fit(lad_opts.A, rule, twist, Ms, t,
                                              lad_opts.threads);
        std::optional<std::ofstream> holder;
        cuspsum::export_csv(fit, open_out(holder, lad_opts.out));
        json j;
        j["command"] = "ladder";
        put_number(j, "A", lad_opts.A);
        put_number(j, "slope", fit.slope);
        j["points"] = fit.rows.size();
        if (!lad_opts.out.empty()) emit(j);
    });

    // ---- census ----
    auto* census = app.add_subcommand("census", "large-value census");
    struct {
        double M = 0, delta = 0;
        long long h = 0, k = 1;
        double V = 0.0;
        double percentile = 99.0;
        double delta_knob = 0.05;
        int threads = 1;
        std::string out;
        CacheOptions cache;
    } cen_opts;
    census->add_option("--M", cen_opts.M)->required();
    census->add_option("--delta", cen_opts.delta)->required();
    census->add_option("--k", cen_opts.k)->required();
    census->add_option("--h", cen_opts.h)->required();
    census->add_option("--V", cen_opts.V, "threshold (overrides --percentile)");
    census->add_option("--percentile", cen_opts.percentile,
                       "length-weighted percentile of |S| used for V");
    census->add_option("--delta-knob", cen_opts.delta_knob, "bound's delta knob");
    census->add_option("--threads", cen_opts.threads);
    census->add_option("--out", cen_opts.out, "CSV output path (default stdout)");
    add_cache_flags(census, cen_opts.cache);
    census->callback([&] {
        auto twist = cuspsum::make_twist(cen_opts.h, cen_opts.k);
        auto spec = cuspsum::make_short_sum_spec(cen_opts.M, cen_opts.delta, twist);
        long long needed = static_cast<long long>(
            std::ceil(2.0 * cen_opts.M + cen_opts.delta)) + 1;
        auto t = resolve_table(cen_opts.cache, needed);
        auto sf = cuspsum::build_step_function(spec, t, cen_opts.threads);
        double V = cen_opts.V > 0.0
                       ? cen_opts.V
                       : std::max(1.0, cuspsum::abs_percentile(
                                           sf, cen_opts.percentile));
        auto result = cuspsum::large_value_census(sf, V, cen_opts.delta_knob);
        std::optional<std::ofstream> holder;
        cuspsum::export_csv(result, sf, open_out(holder, cen_opts.out));
        json j;
        j["command"] = "census";
        put_number(j, "V", V);
        j["R"] = result.R;
        put_number(j, "bound_rhs", result.bound_rhs);
        if (!cen_opts.out.empty()) emit(j);
    });

    // ---- spacing ----
    auto* spacing = app.add_subcommand("spacing", "square-root spacing counts");
    struct {
        double L = 0, delta = 0, omega = 2.0;
        double k = 1.0, M = 1.0, theta = 0.05;
        std::string algorithm = "auto";
        std::string out;
    } spa_opts;
    spacing->add_option("--L", spa_opts.L)->required();
    spacing->add_option("--delta", spa_opts.delta, "closeness threshold")->required();
    spacing->add_option("--omega", spa_opts.omega, "root power (default 2)");
    spacing->add_option("--k", spa_opts.k, "corollary bound context");
    spacing->add_option("--M", spa_opts.M, "corollary bound context");
    spacing->add_option("--theta", spa_opts.theta, "corollary bound context");
    spacing->add_option("--algorithm", spa_opts.algorithm)
        ->check(CLI::IsMember({"auto", "brute", "pairsum"}));
    spacing->add_option("--out", spa_opts.out, "CSV output path (default stdout)");
    spacing->callback([&] {
        auto q = cuspsum::make_spacing_query(spa_opts.L, spa_opts.delta,
                                             spa_opts.omega, spa_opts.k,
                                             spa_opts.M, spa_opts.theta);
        cuspsum::SpacingCount c;
        if (spa_opts.algorithm == "brute" ||
            (spa_opts.algorithm == "auto" && q.L <= 24.0))
            c = cuspsum::spacing_count_bruteforce(q);
        else
            c = cuspsum::spacing_count_pairsum(q);
        std::optional<std::ofstream> holder;
        cuspsum::export_csv(q, c, open_out(holder, spa_opts.out));
    });

    // ---- bounds ----
    auto* bounds = app.add_subcommand("bounds", "theorem RHS calculators");
    bounds->require_subcommand(1);
    struct {
        double k = 1, M = 1, delta_len = 1, V = 1, V0 = 1, A = 2, Amp = 1;
        double alpha = 0, beta = 1, gamma = 0;
        double p = 0.5, q = 0.5;
        double eps = 0.05, delta_knob = 0.05;
        std::string process;
    } b;

    auto add_pair_flags = [&](CLI::App* cmd) {
        cmd->add_option("--p", b.p, "exponent pair p");
        cmd->add_option("--q", b.q, "exponent pair q");
    };

    auto* thm1 = bounds->add_subcommand("thm1", "fourth-moment RHS");
    thm1->add_option("--k", b.k)->required();
    thm1->add_option("--M", b.M)->required();
    thm1->add_option("--delta-len", b.delta_len, "window length")->required();
    thm1->add_option("--eps", b.eps);
    thm1->callback([&] {
        auto res = cuspsum::thm1_rhs(b.k, b.M, b.delta_len, b.eps);
        json j;
        j["theorem"] = "thm1";
        json in;
        put_number(in, "k", b.k);
        put_number(in, "M", b.M);
        put_number(in, "Delta", b.delta_len);
        put_number(in, "eps", b.eps);
        j["inputs"] = in;
        j["branch"] = cuspsum::to_string(res.branch);
        j["flags"] = json::array();
        put_number(j, "value", res.value);
        emit(j);
    });

    auto* thm2 = bounds->add_subcommand("thm2", "large-value RHS");
    thm2->add_option("--k", b.k)->required();
    thm2->add_option("--M", b.M)->required();
    thm2->add_option("--delta-len", b.delta_len)->required();
    thm2->add_option("--V", b.V)->required();
    thm2->add_option("--delta-knob", b.delta_knob);
    add_pair_flags(thm2);
    thm2->callback([&] {
        auto res = cuspsum::thm2_rhs(b.k, b.M, b.delta_len, b.V,
                                     {b.p, b.q}, b.delta_knob);
        json j;
        j["theorem"] = "thm2";
        json in;
        put_number(in, "k", b.k);
        put_number(in, "M", b.M);
        put_number(in, "Delta", b.delta_len);
        put_number(in, "V", b.V);
        put_number(in, "p", b.p);
        put_number(in, "q", b.q);
        put_number(in, "delta_knob", b.delta_knob);
        j["inputs"] = in;
        j["branch"] = "single";
        j["flags"] = res.flags;
        put_number(j, "value", res.value);
        emit(j);
    });

    auto add_params_flags = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", b.alpha);
        cmd->add_option("--beta", b.beta);
        cmd->add_option("--gamma", b.gamma);
        cmd->add_option("--V0", b.V0);
        cmd->add_option("--A", b.A)->required();
        cmd->add_option("--k", b.k)->required();
        cmd->add_option("--M", b.M)->required();
        cmd->add_option("--delta-len", b.delta_len);
        cmd->add_option("--eps", b.eps);
        add_pair_flags(cmd);
    };

    auto emit_three_term = [&](const char* name, const cuspsum::ThreeTermBound& res) {
        json j;
        j["theorem"] = name;
        json in;
        put_number(in, "alpha", b.alpha);
        put_number(in, "beta", b.beta);
        put_number(in, "gamma", b.gamma);
        put_number(in, "V0", b.V0);
        put_number(in, "A", b.A);
        put_number(in, "k", b.k);
        put_number(in, "M", b.M);
        put_number(in, "Delta", b.delta_len);
        put_number(in, "p", b.p);
        put_number(in, "q", b.q);
        put_number(in, "eps", b.eps);
        j["inputs"] = in;
        j["branch"] = json::array({b.A <= 4.0 ? "Phi:low" : "Phi:high"});
        j["flags"] = res.flags;
        put_number(j, "main", res.main);
        put_number(j, "Phi", res.Phi);
        put_number(j, "Psi", res.Psi);
        put_number(j, "value", res.total());
        emit(j);
    };

    auto* thm3 = bounds->add_subcommand("thm3", "general moment RHS");
    add_params_flags(thm3);
    thm3->callback([&] {
        cuspsum::BoundParams params;
        params.alpha = b.alpha;
        params.beta = b.beta;
        params.gamma = b.gamma;
        params.V0 = b.V0;
        params.A = b.A;
        params.k = b.k;
        params.M = b.M;
        params.Delta = b.delta_len;
        params.eps_knob = b.eps;
        emit_three_term("thm3", cuspsum::thm3_rhs(params, {b.p, b.q}));
    });

    auto* thm4 = bounds->add_subcommand("thm4", "high-moment example RHS");
    thm4->add_option("--k", b.k)->required();
    thm4->add_option("--M", b.M)->required();
    thm4->add_option("--A", b.A)->required();
    thm4->add_option("--eps", b.eps);
    thm4->callback([&] {
        auto res = cuspsum::thm4_rhs(b.k, b.M, b.A, b.eps);
        json j;
        j["theorem"] = "thm4";
        json in;
        put_number(in, "k", b.k);
        put_number(in, "M", b.M);
        put_number(in, "A", b.A);
        put_number(in, "eps", b.eps);
        j["inputs"] = in;
        j["branch"] = "single";
        j["flags"] = res.flags;
        put_number(j, "value", res.value);
        emit(j);
    });

    auto* thm5 = bounds->add_subcommand("thm5", "untwisted moment RHS");
    thm5->add_option("--M", b.M)->required();
    thm5->add_option("--delta-len", b.delta_len)->required();
    thm5->add_option("--A", b.A)->required();
    thm5->add_option("--eps", b.eps);
    thm5->callback([&] {
        auto res = cuspsum::thm5_rhs(b.M, b.delta_len, b.A, b.eps);
        json j;
        j["theorem"] = "thm5";
        json in;
        put_number(in, "M", b.M);
        put_number(in, "Delta", b.delta_len);
        put_number(in, "A", b.A);
        put_number(in, "eps", b.eps);
        j["inputs"] = in;
        j["branch"] = "case" + std::to_string(res.case_line);
        j["flags"] = res.flags;
        put_number(j, "value", res.value);
        emit(j);
    });

    auto* longsum = bounds->add_subcommand("longsum", "long-sum moment RHS");
    add_params_flags(longsum);
    longsum->callback([&] {
        cuspsum::BoundParams params;
        params.alpha = b.alpha;
        params.beta = b.beta;
        params.A = b.A;
        params.k = b.k;
        params.M = b.M;
        params.eps_knob = b.eps;
        emit_three_term("longsum", cuspsum::longsum_moment_rhs(params, {b.p, b.q}));
    });

    auto* ep = bounds->add_subcommand("ep", "exponent-pair A/B processes");
    ep->add_option("--p", b.p)->required();
    ep->add_option("--q", b.q)->required();
    ep->add_option("--process", b.process, "string of A/B steps, e.g. AAB")
        ->required();
    ep->callback([&] {
        cuspsum::ExponentPair pair{b.p, b.q};
        for (char c : b.process) {
            if (c == 'A')
                pair = cuspsum::ep_process_A(pair);
            else if (c == 'B')
                pair = cuspsum::ep_process_B(pair);
            else
                throw std::invalid_argument("ep: process steps must be A or B");
        }
        json j;
        j["theorem"] = "exponent-pair";
        j["process"] = b.process;
        put_number(j, "p", pair.p);
        put_number(j, "q", pair.q);
        emit(j);
    });

    auto* expsum = bounds->add_subcommand("expsum", "plain exponential sum bound");
    expsum->add_option("--amp", b.Amp)->required();
    expsum->add_option("--M", b.M)->required();
    expsum->add_option("--delta-len", b.delta_len)->required();
    add_pair_flags(expsum);
    expsum->callback([&] {
        double v = cuspsum::plain_expsum_bound({b.p, b.q}, b.Amp, b.M, b.delta_len);
        json j;
        j["theorem"] = "plain-expsum";
        json in;
        put_number(in, "Amp", b.Amp);
        put_number(in, "M", b.M);
        put_number(in, "Delta", b.delta_len);
        put_number(in, "p", b.p);
        put_number(in, "q", b.q);
        j["inputs"] = in;
        put_number(j, "value", v);
        emit(j);
    });

    // ---- check-all ----
    auto* check = app.add_subcommand("check-all", "run the acceptance suite");
    struct {
        CacheOptions cache;
        std::string criteria = "all";
        int threads = 4;
    } chk_opts;
    add_cache_flags(check, chk_opts.cache);
    check->add_option("--criteria", chk_opts.criteria,
                      "comma list of criterion ids, or 'all'");
    check->add_option("--threads", chk_opts.threads);
    std::string self = argv && argv[0] ? argv[0] : "";
    check->callback([&] {
        exit_code = run_check_all(chk_opts.cache, chk_opts.criteria,
                                  chk_opts.threads, self);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    } catch (const cuspsum::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
