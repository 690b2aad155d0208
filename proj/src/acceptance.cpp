#include "cuspsum/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cuspsum/bounds.hpp"
#include "cuspsum/moments.hpp"
#include "cuspsum/spacing.hpp"
#include "cuspsum/sums.hpp"
#include "cuspsum/voronoi.hpp"

namespace cuspsum {

namespace {

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

std::vector<long long> log_checkpoints(double lo, double hi, int count) {
    std::vector<long long> pts;
    for (int i = 0; i < count; ++i) {
        double t = static_cast<double>(i) / (count - 1);
        long long v = static_cast<long long>(
            std::llround(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))));
        if (pts.empty() || v > pts.back()) pts.push_back(v);
    }
    return pts;
}

// ---- C1: series engine vs Hecke-recursion-plus-multiplicativity oracle ----
CriterionResult c1_coefficient_exactness(const AcceptanceContext& ctx) {
    CriterionResult r{1, "coefficient-exactness", false, ""};
    const long long N = 100000;
    auto oracle = hecke_reconstruct(*ctx.table);
    for (long long n = 1; n <= N; ++n) {
        if (ctx.table->tau[n] != oracle[n]) {
            r.detail = fmt("first mismatch at n=%lld", n);
            return r;
        }
    }
    r.pass = true;
    r.detail = fmt("series tau(n) equals Hecke/multiplicativity oracle for n <= %lld", N);
    return r;
}

// ---- C2: Deligne bound, zero violations ----
CriterionResult c2_deligne(const AcceptanceContext& ctx) {
    CriterionResult r{2, "deligne-bound", false, ""};
    const long long N = 100000;
    auto d = divisor_count_sieve(N);
    long long viol = 0, worst_n = 1;
    double worst = 0.0;
    for (long long n = 1; n <= N; ++n) {
        double ratio = std::abs(ctx.table->a[n]) / static_cast<double>(d[n]);
        if (ratio > worst) {
            worst = ratio;
            worst_n = n;
        }
        if (std::abs(ctx.table->a[n]) > static_cast<double>(d[n])) ++viol;
    }
    r.pass = (viol == 0);
    r.detail = fmt("violations=%lld, max |a(n)|/d(n) = %.6f at n=%lld", viol,
                   worst, worst_n);
    return r;
}

// ---- C3: Rankin-Selberg residual slope ----
CriterionResult c3_rankin_selberg(const AcceptanceContext& ctx) {
    CriterionResult r{3, "rankin-selberg-residual", false, ""};
    auto pts = log_checkpoints(1e3, 1e5, 9);
    auto fit = rankin_selberg_scan(*ctx.table, pts);
    r.pass = fit.residual_exponent < 1.0;
    r.detail = fmt("A_hat=%.6f, residual slope=%.4f (require < 1.0)", fit.A_hat,
                   fit.residual_exponent);
    return r;
}

// ---- C4: Wilton-Jutila running max of |prefix|/sqrt(x) ----
CriterionResult c4_wilton_jutila(const AcceptanceContext& ctx) {
    CriterionResult r{4, "wilton-jutila-runmax", false, ""};
    const long long N = 100000;
    auto grid = log_checkpoints(10, N, 25);
    std::vector<double> gx, gy;
    ComplexSum prefix;
    double runmax = 0.0;
    size_t gi = 0;
    for (long long n = 1; n <= N; ++n) {
        prefix.add({ctx.table->a[n], 0.0});
        double ratio = std::abs(prefix.value()) / std::sqrt(static_cast<double>(n));
        runmax = std::max(runmax, ratio);
        while (gi < grid.size() && grid[gi] == n) {
            gx.push_back(static_cast<double>(n));
            gy.push_back(runmax);
            ++gi;
        }
    }
    double slope = fit_loglog(gx, gy).slope;
    r.pass = slope <= 0.05;
    r.detail = fmt("max |prefix|/sqrt(x) = %.4f, runmax slope=%.4f (require <= 0.05)",
                   runmax, slope);
    return r;
}

// ---- C5: Voronoi truncation error slope ----
CriterionResult c5_voronoi(const AcceptanceContext& ctx) {
    CriterionResult r{5, "voronoi-truncation-slope", false, ""};
    const double x = 1e4;
    const double Ns[] = {16, 64, 256, 1024, 4096};
    std::ostringstream detail;
    bool ok = true;
    for (auto [h, k] : {std::pair<long long, long long>{1, 1}, {2, 5}}) {
        auto prof = error_profile(x, make_twist(h, k), Ns, *ctx.table);
        bool in_window = prof.fitted_slope >= -0.7 && prof.fitted_slope <= -0.3;
        ok = ok && in_window;
        detail << fmt("k=%lld slope=%.4f%s", k, prof.fitted_slope,
                      in_window ? "" : " OUTSIDE [-0.7,-0.3]");
        detail << (k == 1 ? "; " : "");
    }
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// ---- C6: exact moment vs from-scratch plateau oracle ----

// Independent oracle: rebuild every breakpoint, recompute every plateau from
// scratch with the direct window sum, integrate plainly.
struct OracleMoment {
    double value;
    double max_abs;
};

OracleMoment oracle_moment(const ShortSumSpec& spec, double A,
                           const CoefficientTable& t) {
    const double M = spec.M, D = spec.Delta;
    std::vector<double> bks{M, 2.0 * M};
    for (long long n = static_cast<long long>(std::ceil(M));
         n <= static_cast<long long>(std::floor(2.0 * M)); ++n)
        bks.push_back(static_cast<double>(n));
    for (long long n = 1; n <= static_cast<long long>(std::ceil(2.0 * M + D)) + 1;
         ++n) {
        double p = static_cast<double>(n) - D;
        if (p >= M && p <= 2.0 * M) bks.push_back(p);
    }
    std::sort(bks.begin(), bks.end());
    bks.erase(std::unique(bks.begin(), bks.end()), bks.end());

    OracleMoment om{0.0, 0.0};
    for (size_t i = 0; i + 1 < bks.size(); ++i) {
        double len = bks[i + 1] - bks[i];
        if (len <= 0.0) continue;
        double mid = 0.5 * (bks[i] + bks[i + 1]);
        double mag = std::abs(short_sum_direct(mid, spec, t));
        om.value += len * std::pow(mag, A);
        om.max_abs = std::max(om.max_abs, mag);
    }
    return om;
}

CriterionResult c6_moment_oracle(const AcceptanceContext& ctx) {
    CriterionResult r{6, "exact-moment-oracle", false, ""};
    std::mt19937_64 rng(6180339887ULL);
    std::uniform_int_distribution<long long> m_dist(100, 1000);
    std::uniform_real_distribution<double> d_dist(1.0, 50.0);
    std::uniform_int_distribution<long long> k_dist(1, 5);

    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        long long k = k_dist(rng);
        long long h = 1;
        if (k > 1) {
            std::uniform_int_distribution<long long> h_dist(1, k - 1);
            do h = h_dist(rng); while (gcd_ll(h, k) != 1);
        }
        auto spec = make_short_sum_spec(static_cast<double>(m_dist(rng)),
                                        d_dist(rng), make_twist(h, k));
        double A = (trial % 2 == 0) ? 2.0 : 4.0;
        auto mr = exact_moment(make_moment_spec(A, spec), *ctx.table, 1);
        auto om = oracle_moment(spec, A, *ctx.table);
        double rel = std::abs(mr.value - om.value) /
                     std::max({1e-300, std::abs(om.value), std::abs(mr.value)});
        worst = std::max(worst, rel);
    }
    r.pass = worst <= 1e-9;
    r.detail = fmt("20 random instances, worst relative diff = %.3g (require <= 1e-9)",
                   worst);
    return r;
}

// ---- C7/C8: moment growth ladder slopes ----
CriterionResult ladder_slope(int id, const char* name, double A, double limit,
                             const AcceptanceContext& ctx) {
    CriterionResult r{id, name, false, ""};
    std::vector<double> Ms;
    for (int e = 12; e <= 17; ++e) Ms.push_back(std::pow(2.0, e));
    auto fit = moment_growth_fit(A, DeltaRule{1.0, 0.4}, make_twist(1, 1), Ms,
                                 *ctx.table, ctx.threads);
    r.pass = fit.slope <= limit;
    r.detail = fmt("A=%.0f, Delta=M^0.4, k=1, M=2^12..2^17: slope=%.4f (require <= %.2f)",
                   A, fit.slope, limit);
    return r;
}

// ---- C9: spacing counts ----
CriterionResult c9_spacing(const AcceptanceContext&) {
    CriterionResult r{9, "spacing-counts", false, ""};

    // pair-sum vs brute force, exact equality
    const double deltas[] = {1e-6, 1e-3, 0.1};
    for (long long L = 1; L <= 32; ++L) {
        for (double d : deltas) {
            auto q = make_spacing_query(static_cast<double>(L), d);
            auto bf = spacing_count_bruteforce(q);
            auto ps = spacing_count_pairsum(q);
            if (bf.count != ps.count) {
                r.detail = fmt("mismatch at L=%lld delta=%g: brute=%lld pairsum=%lld",
                               L, d, bf.count, ps.count);
                return r;
            }
        }
    }

    auto pinned = spacing_count_bruteforce(make_spacing_query(2.0, 1e-9));
    if (pinned.count != 6) {
        r.detail = fmt("L=2 delta=1e-9 count=%lld (expected 6)", pinned.count);
        return r;
    }

    // corollary ratio trend: threshold k M^{theta-1/2}, so delta = T / sqrt(L)
    const double k = 1.0, M = 1e6, theta = 0.05;
    const double T = k * std::pow(M, theta - 0.5);
    std::vector<double> Ls, ratios;
    std::ostringstream counts;
    for (double L : {64.0, 128.0, 256.0, 512.0, 1024.0}) {
        auto q = make_spacing_query(L, T / std::sqrt(L), 2.0, k, M, theta);
        auto c = spacing_count_pairsum(q);
        Ls.push_back(L);
        ratios.push_back(static_cast<double>(c.count) / c.bound_corollary);
        counts << fmt(" L=%g:%lld", L, c.count);
    }
    double slope = fit_loglog(Ls, ratios).slope;
    r.pass = slope <= 0.2;
    r.detail = fmt("brute==pairsum for L<=32; L=2 count=6; ratio slope=%.4f "
                   "(require <= 0.2); counts:%s",
                   slope, counts.str().c_str());
    return r;
}

// ---- C10: large-value census vs the large-value bound ----
CriterionResult c10_census(const AcceptanceContext& ctx) {
    CriterionResult r{10, "large-value-census", false, ""};
    auto spec = make_short_sum_spec(1e4, 50.0, make_twist(1, 1));
    auto sf = build_step_function(spec, *ctx.table, ctx.threads);
    double V = std::max(1.0, abs_percentile(sf, 99.0));
    auto census = large_value_census(sf, V, 0.05, kPairHalfHalf);

    // re-check the census invariants against the step function
    bool invariants = true;
    for (size_t i = 0; i < census.points.size(); ++i) {
        if (std::abs(sf.value_at(census.points[i])) < V) invariants = false;
        if (i > 0 && census.points[i] - census.points[i - 1] < V)
            invariants = false;
    }
    r.pass = invariants && census.R <= census.bound_rhs;
    r.detail = fmt("V(99th pct)=%.4f, R=%lld, bound=%.6g, invariants %s", V,
                   census.R, census.bound_rhs, invariants ? "hold" : "VIOLATED");
    return r;
}

// ---- C11: Bombieri inequality sweep ----
CriterionResult c11_bombieri(const AcceptanceContext&) {
    CriterionResult r{11, "bombieri-inequality", false, ""};
    std::mt19937_64 rng(271828182845ULL);
    std::uniform_int_distribution<int> dim_dist(1, 8), count_dist(1, 8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    long long violations = 0;
    double worst_margin = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        int N = dim_dist(rng), R = count_dist(rng);
        std::vector<std::complex<double>> xi(N);
        for (auto& z : xi) z = {u(rng), u(rng)};
        std::vector<std::vector<std::complex<double>>> phis(R);
        for (auto& phi : phis) {
            phi.resize(N);
            for (auto& z : phi) z = {u(rng), u(rng)};
        }
        auto res = bombieri_check(xi, phis);
        if (res.lhs > res.rhs * (1.0 + 1e-12)) ++violations;
        if (res.rhs > 0.0)
            worst_margin = std::max(worst_margin, res.lhs / res.rhs);
    }
    r.pass = (violations == 0);
    r.detail = fmt("10^4 instances, violations=%lld, max lhs/rhs=%.6f",
                   violations, worst_margin);
    return r;
}

// ---- C12: branch continuity of the RHS calculators ----
CriterionResult c12_branch_continuity(const AcceptanceContext&) {
    CriterionResult r{12, "branch-continuity", false, ""};
    std::ostringstream bad;
    auto check = [&](const char* what, double lo_val, double hi_val) {
        double rel = std::abs(lo_val - hi_val) /
                     std::max({1e-300, std::abs(lo_val), std::abs(hi_val)});
        if (!(rel <= 1e-9)) bad << what << " rel=" << rel << "; ";
    };
    auto bump = [](double v) { return std::nextafter(v, 1e300); };

    // thm1 at the shared boundary k = M^{-1/2} Delta
    {
        double M = 1e4, D = 1e3, kb = D / std::sqrt(M);
        auto b1 = thm1_rhs(kb, M, D, 0.05);
        auto b2 = thm1_rhs(bump(kb), M, D, 0.05);
        check("thm1@k=M^{-1/2}Delta", b1.value, b2.value);
    }
    // thm3 Phi at A=4
    {
        BoundParams bp;
        bp.alpha = 0.0; bp.beta = 1.0 / 6.0; bp.gamma = 1.0 / 3.0;
        bp.k = 2.0; bp.M = 1e4; bp.Delta = std::pow(bp.M, 5.0 / 12.0);
        bp.V0 = 3.0;
        bp.A = 4.0;
        auto lo = thm3_rhs(bp, kPairHalfHalf);
        bp.A = bump(4.0);
        auto hi = thm3_rhs(bp, kPairHalfHalf);
        check("thm3Phi@A=4", lo.Phi, hi.Phi);
    }
    // thm3 Psi at A = 2q/p+3+3/p with V0 matched to the pointwise bound
    {
        BoundParams bp;
        bp.alpha = 0.0; bp.beta = 1.0 / 6.0; bp.gamma = 1.0 / 3.0;
        bp.k = 2.0; bp.M = 1e4; bp.Delta = std::pow(bp.M, 5.0 / 12.0);
        bp.V0 = std::pow(bp.k, bp.alpha) * std::pow(bp.Delta, bp.beta) *
                std::pow(bp.M, bp.gamma);
        const auto& e = kPairHalfHalf;
        double split = 2.0 * e.q / e.p + 3.0 + 3.0 / e.p;
        bp.A = split;
        auto lo = thm3_rhs(bp, e);
        bp.A = bump(split);
        auto hi = thm3_rhs(bp, e);
        check("thm3Psi@A=2q/p+3+3/p", lo.Psi, hi.Psi);
    }
    // longsum Phi at A=2
    {
        BoundParams bp;
        bp.alpha = 0.0; bp.beta = 0.5;
        bp.k = 3.0; bp.M = 1e4;
        bp.A = 2.0;
        auto lo = longsum_moment_rhs(bp, kPairWeylVdC);
        bp.A = bump(2.0);
        auto hi = longsum_moment_rhs(bp, kPairWeylVdC);
        check("longsumPhi@A=2", lo.Phi, hi.Phi);
    }
    // longsum Psi at A = 1+(1+2q)/p with the beta=1/2 pointwise bound
    {
        BoundParams bp;
        bp.alpha = 0.0; bp.beta = 0.5;
        bp.k = 3.0; bp.M = 1e4;
        const auto& e = kPairWeylVdC;
        double split = 1.0 + (1.0 + 2.0 * e.q) / e.p;
        bp.A = split;
        auto lo = longsum_moment_rhs(bp, e);
        bp.A = bump(split);
        auto hi = longsum_moment_rhs(bp, e);
        check("longsumPsi@A=1+(1+2q)/p", lo.Psi, hi.Psi);
    }
    // thm5 at Delta = M^{7/24} (A < 8)
    {
        double M = 1e4, A = 6.0, Db = std::pow(M, 7.0 / 24.0);
        auto lo = thm5_rhs(M, Db, A, 0.05);
        auto hi = thm5_rhs(M, bump(Db), A, 0.05);
        check("thm5@Delta=M^{7/24}", lo.value, hi.value);
    }
    // thm5 at Delta = M^{4/9-11/(9A)} (A > 8)
    {
        double M = 1e4, A = 10.0;
        double Db = std::pow(M, 4.0 / 9.0 - 11.0 / (9.0 * A));
        auto lo = thm5_rhs(M, Db, A, 0.05);
        auto hi = thm5_rhs(M, bump(Db), A, 0.05);
        check("thm5@Delta=M^{4/9-11/(9A)}", lo.value, hi.value);
    }
    // thm5 at A=8 with Delta matched to the common split M^{7/24}
    {
        double M = 1e4, Db = std::pow(M, 7.0 / 24.0);
        auto lo = thm5_rhs(M, Db, 8.0, 0.05);
        auto hi = thm5_rhs(M, Db, bump(8.0), 0.05);
        check("thm5@A=8", lo.value, hi.value);
    }

    r.pass = bad.str().empty();
    r.detail = r.pass ? "all case-split boundaries continuous to 1e-9 relative"
                      : bad.str();
    return r;
}

// ---- C13: determinism ----

bool run_twice_identical(const std::string& cmd) {
    namespace fs = std::filesystem;
    auto tmp = fs::temp_directory_path();
    auto f1 = tmp / "cuspsum_det_1.out";
    auto f2 = tmp / "cuspsum_det_2.out";
    auto read_all = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    std::string c1 = cmd + " > " + f1.string() + " 2>&1";
    std::string c2 = cmd + " > " + f2.string() + " 2>&1";
    if (std::system(c1.c_str()) != 0) return false;
    if (std::system(c2.c_str()) != 0) return false;
    bool same = read_all(f1) == read_all(f2);
    fs::remove(f1);
    fs::remove(f2);
    return same;
}

CriterionResult c13_determinism(const AcceptanceContext& ctx) {
    CriterionResult r{13, "determinism", false, ""};
    std::ostringstream detail;

    // parallel vs single-threaded moment sweep
    auto spec = make_short_sum_spec(1e4, 50.0, make_twist(2, 5));
    auto m1 = exact_moment(make_moment_spec(4.0, spec), *ctx.table, 1);
    auto m4 = exact_moment(make_moment_spec(4.0, spec), *ctx.table, 4);
    double rel = std::abs(m1.value - m4.value) /
                 std::max({1e-300, m1.value, m4.value});
    bool threads_ok = rel <= 1e-9;
    detail << fmt("threads 1 vs 4 rel diff = %.3g", rel);

    // in-process artifact determinism
    auto small = generate_delta_coefficients(2000);
    std::ostringstream s1, s2;
    save_cache(small, s1);
    save_cache(small, s2);
    bool cache_ok = s1.str() == s2.str();

    std::ostringstream csv1, csv2;
    auto sf = build_step_function(make_short_sum_spec(100.0, 7.5, make_twist(1, 3)),
                                  *ctx.table, 1);
    export_csv(sf, csv1);
    export_csv(sf, csv2);
    bool csv_ok = csv1.str() == csv2.str();

    bool cli_ok = true;
    if (!ctx.cli_path.empty()) {
        namespace fs = std::filesystem;
        auto tmp = fs::temp_directory_path();
        auto cache = (tmp / "cuspsum_det_cache.txt").string();
        auto g1 = (tmp / "cuspsum_det_g1.txt").string();
        auto g2 = (tmp / "cuspsum_det_g2.txt").string();
        std::string gen1 = ctx.cli_path + " gen --n-max 2200 --out " + g1;
        std::string gen2 = ctx.cli_path + " gen --n-max 2200 --out " + g2;
        cli_ok = std::system((gen1 + " > /dev/null 2>&1").c_str()) == 0 &&
                 std::system((gen2 + " > /dev/null 2>&1").c_str()) == 0;
        if (cli_ok) {
            std::ifstream a(g1, std::ios::binary), b(g2, std::ios::binary);
            std::ostringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            cli_ok = sa.str() == sb.str() && !sa.str().empty();
            fs::copy_file(g1, cache, fs::copy_options::overwrite_existing);
        }
        cli_ok = cli_ok &&
                 run_twice_identical(ctx.cli_path +
                                     " moment --M 1000 --delta 20 --k 3 --h 1 "
                                     "--A 2 --cache " + cache) &&
                 run_twice_identical(ctx.cli_path + " spacing --L 8 --delta 0.001") &&
                 run_twice_identical(ctx.cli_path +
                                     " bounds thm1 --k 1 --M 10000 "
                                     "--delta-len 100 --eps 0");
        fs::remove(g1);
        fs::remove(g2);
        fs::remove(cache);
        detail << (cli_ok ? "; CLI reruns byte-identical"
                          : "; CLI rerun MISMATCH");
    } else {
        detail << "; CLI path not provided, in-process artifacts only";
    }

    r.pass = threads_ok && cache_ok && csv_ok && cli_ok;
    if (!cache_ok) detail << "; cache bytes differ";
    if (!csv_ok) detail << "; step CSV bytes differ";
    r.detail = detail.str();
    return r;
}

}  // namespace

long long acceptance_required_n_max(std::span<const int> ids) {
    long long need = 0;
    for (int id : ids) {
        long long n = 0;
        switch (id) {
            case 1: case 2: case 3: case 4: case 5: n = 100000; break;
            case 6: n = 2100; break;
            case 7: case 8: {
                double M = std::pow(2.0, 17);
                n = static_cast<long long>(std::ceil(2.0 * M + std::pow(M, 0.4))) + 2;
                break;
            }
            case 10: case 13: n = 20100; break;
            default: n = 1; break;
        }
        need = std::max(need, n);
    }
    return std::max<long long>(need, 1);
}

std::vector<int> all_acceptance_ids() {
    std::vector<int> ids(kAcceptanceCriteria);
    for (int i = 0; i < kAcceptanceCriteria; ++i) ids[i] = i + 1;
    return ids;
}

std::vector<CriterionResult> run_acceptance(std::span<const int> ids,
                                            const AcceptanceContext& ctx) {
    if (!ctx.table) throw std::invalid_argument("run_acceptance: no table");
    if (ctx.table->n_max < acceptance_required_n_max(ids))
        throw std::invalid_argument("run_acceptance: table too short for criteria");

    std::vector<CriterionResult> out;
    for (int id : ids) {
        switch (id) {
            case 1: out.push_back(c1_coefficient_exactness(ctx)); break;
            case 2: out.push_back(c2_deligne(ctx)); break;
            case 3: out.push_back(c3_rankin_selberg(ctx)); break;
            case 4: out.push_back(c4_wilton_jutila(ctx)); break;
            case 5: out.push_back(c5_voronoi(ctx)); break;
            case 6: out.push_back(c6_moment_oracle(ctx)); break;
            case 7: out.push_back(ladder_slope(7, "second-moment-slope", 2.0, 1.5, ctx)); break;
            case 8: out.push_back(ladder_slope(8, "fourth-moment-slope", 4.0, 1.95, ctx)); break;
            case 9: out.push_back(c9_spacing(ctx)); break;
            case 10: out.push_back(c10_census(ctx)); break;
            case 11: out.push_back(c11_bombieri(ctx)); break;
            case 12: out.push_back(c12_branch_continuity(ctx)); break;
            case 13: out.push_back(c13_determinism(ctx)); break;
            default:
                throw std::invalid_argument("run_acceptance: unknown criterion " +
                                            std::to_string(id));
        }
    }
    return out;
}

std::string format_result_line(const CriterionResult& r) {
    return fmt("[%s] C%02d %s: %s", r.pass ? "PASS" : "FAIL", r.id,
               r.name.c_str(), r.detail.c_str());
}

}  // namespace cuspsum
