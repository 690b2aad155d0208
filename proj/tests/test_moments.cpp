#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cuspsum/moments.hpp"
#include "test_tables.hpp"

using namespace cuspsum;

namespace {

// Independent oracle: rebuild breakpoints, recompute plateaus from scratch.
double oracle_moment(const ShortSumSpec& spec, double A,
                     const CoefficientTable& t) {
    const double M = spec.M, D = spec.Delta;
    std::vector<double> bks{M, 2.0 * M};
    for (long long n = static_cast<long long>(std::ceil(M));
         n <= static_cast<long long>(std::floor(2.0 * M)); ++n)
        bks.push_back(static_cast<double>(n));
    for (long long n = 1;
         n <= static_cast<long long>(std::ceil(2.0 * M + D)) + 1; ++n) {
        double p = static_cast<double>(n) - D;
        if (p >= M && p <= 2.0 * M) bks.push_back(p);
    }
    std::sort(bks.begin(), bks.end());
    bks.erase(std::unique(bks.begin(), bks.end()), bks.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < bks.size(); ++i) {
        double len = bks[i + 1] - bks[i];
        if (len <= 0.0) continue;
        double mid = 0.5 * (bks[i] + bks[i + 1]);
        total += len * std::pow(std::abs(short_sum_direct(mid, spec, t)), A);
    }
    return total;
}

CoefficientTable zero_table(long long n_max) {
    CoefficientTable z;
    z.weight = 12;
    z.n_max = n_max;
    z.tau.assign(n_max + 1, mpz_class(0));
    z.a.assign(n_max + 1, 0.0);
    return z;
}

}  // namespace

TEST_SUITE("moments") {

TEST_CASE("zero table gives zero moment") {
    auto z = zero_table(400);
    auto ms = make_moment_spec(2.0, make_short_sum_spec(100.0, 5.0, make_twist(1, 1)));
    auto r = exact_moment(ms, z);
    CHECK(r.value == 0.0);
    CHECK(r.max_abs == 0.0);
}

TEST_CASE("matches the from-scratch plateau oracle") {
    const auto& t = table_small();
    for (auto [M, D, h, k, A] :
         {std::tuple<double, double, long long, long long, double>{100.0, 5.0, 1, 1, 2.0},
          {100.0, 5.0, 1, 1, 4.0},
          {120.0, 17.5, 2, 5, 2.0},
          {80.0, 3.25, 1, 3, 4.0}}) {
        auto spec = make_short_sum_spec(M, D, make_twist(h, k));
        auto got = exact_moment(make_moment_spec(A, spec), t);
        double want = oracle_moment(spec, A, t);
        REQUIRE(got.value ==
                doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("pointwise power inequality between A=2 and A=4") {
    const auto& t = table_small();
    auto spec = make_short_sum_spec(100.0, 5.0, make_twist(1, 1));
    auto m2 = exact_moment(make_moment_spec(2.0, spec), t);
    auto m4 = exact_moment(make_moment_spec(4.0, spec), t);
    CHECK(m4.value <= m2.value * m2.max_abs * m2.max_abs * (1.0 + 1e-12));
    CHECK(m4.value <= spec.M * std::pow(m4.max_abs, 4.0) * (1.0 + 1e-9));
}

TEST_CASE("domain splitting at a breakpoint is exact") {
    const auto& t = table_small();
    auto spec = make_short_sum_spec(100.0, 7.5, make_twist(1, 2));
    auto sf = build_step_function(spec, t);
    auto full = exact_moment(sf, 3.0);
    // pick the breakpoint nearest 1.5 M
    double b = *std::min_element(
        sf.breakpoints.begin(), sf.breakpoints.end(), [&](double x, double y) {
            return std::abs(x - 150.0) < std::abs(y - 150.0);
        });
    double left = moment_over_range(sf, 3.0, sf.domain_lo(), b);
    double right = moment_over_range(sf, 3.0, b, sf.domain_hi());
    CHECK(full.value == doctest::Approx(left + right).epsilon(1e-12));
}

TEST_CASE("coefficient scaling moves the moment by c^A and keeps argmax") {
    const auto& t = table_small();
    auto scaled = t;
    const double c = 2.5;
    for (auto& v : scaled.a) v *= c;
    auto spec = make_short_sum_spec(100.0, 5.0, make_twist(1, 1));
    for (double A : {2.0, 4.0}) {
        auto base = exact_moment(make_moment_spec(A, spec), t);
        auto big = exact_moment(make_moment_spec(A, spec), scaled);
        CHECK(big.value ==
              doctest::Approx(base.value * std::pow(c, A)).epsilon(1e-9));
        CHECK(big.argmax == base.argmax);
    }
}

TEST_CASE("parallel reduction agrees with serial") {
    const auto& t = table_20k();
    auto spec = make_short_sum_spec(3000.0, 42.75, make_twist(1, 4));
    auto sf = build_step_function(spec, t);
    auto s1 = exact_moment(sf, 4.0, 1);
    auto s3 = exact_moment(sf, 4.0, 3);
    CHECK(s1.value == doctest::Approx(s3.value).epsilon(1e-12));
    CHECK(s1.max_abs == s3.max_abs);
}

TEST_CASE("census on an empty exceedance set") {
    const auto& t = table_small();
    auto sf = build_step_function(make_short_sum_spec(100.0, 2.0, make_twist(1, 1)), t);
    double vmax = 0.0;
    for (auto p : sf.plateaus) vmax = std::max(vmax, std::abs(p));
    auto census = large_value_census(sf, vmax + 1.0);
    CHECK(census.R == 0);
    CHECK(census.points.empty());
}

TEST_CASE("constant synthetic step function census arithmetic") {
    // |S| = 2V everywhere on [M, 2M]: greedy picks M, M+V, ..., floor(M/V)+1 points
    const double M = 100.0, V = 7.0;
    StepFunction sf;
    sf.spec = make_short_sum_spec(M, 10.0, make_twist(1, 1));
    sf.breakpoints = {M, 1.5 * M, 2.0 * M};
    sf.plateaus = {{2.0 * V, 0.0}, {2.0 * V, 0.0}};
    auto census = large_value_census(sf, V);
    CHECK(census.R == static_cast<long long>(M / V) + 1);
}

TEST_CASE("census points satisfy both invariants") {
    const auto& t = table_20k();
    auto spec = make_short_sum_spec(1000.0, 20.0, make_twist(1, 1));
    auto sf = build_step_function(spec, t);
    double V = std::max(1.0, abs_percentile(sf, 95.0));
    auto census = large_value_census(sf, V);
    for (size_t i = 0; i < census.points.size(); ++i) {
        CHECK(std::abs(sf.value_at(census.points[i])) >= V);
        if (i > 0) CHECK(census.points[i] - census.points[i - 1] >= V);
    }
    CHECK(census.R == static_cast<long long>(census.points.size()));
    CHECK(census.bound_rhs > 0.0);
}

TEST_CASE("length-weighted percentile") {
    StepFunction sf;
    sf.spec = make_short_sum_spec(100.0, 10.0, make_twist(1, 1));
    sf.breakpoints = {100.0, 199.0, 200.0};
    sf.plateaus = {{1.0, 0.0}, {5.0, 0.0}};  // lengths 99 and 1
    CHECK(abs_percentile(sf, 50.0) == 1.0);
    CHECK(abs_percentile(sf, 99.9) == 5.0);
    CHECK_THROWS_AS(abs_percentile(sf, 101.0), std::invalid_argument);
}

TEST_CASE("conjecture probe") {
    auto z = zero_table(400);
    auto sfz = build_step_function(make_short_sum_spec(100.0, 9.0, make_twist(1, 1)), z);
    CHECK(conjecture_probe(sfz) == 0.0);

    const auto& t = table_20k();
    auto sf = build_step_function(make_short_sum_spec(1e4, 100.0, make_twist(1, 1)), t);
    double ratio = conjecture_probe(sf);
    CHECK(ratio > 0.0);
    CHECK(ratio < 100.0);
    MESSAGE("conjecture probe ratio at M=1e4, Delta=100, k=1: ", ratio);
}

TEST_CASE("growth fit guards") {
    auto z = zero_table(3000);
    std::vector<double> Ms{256.0, 512.0, 1024.0};
    CHECK_THROWS_AS(
        moment_growth_fit(2.0, DeltaRule{1.0, 0.4}, make_twist(1, 1), Ms, z),
        std::invalid_argument);

    const auto& t = table_20k();
    CHECK_THROWS_AS(
        moment_growth_fit(2.0, DeltaRule{2.0, 1.0}, make_twist(1, 1), Ms, t),
        std::invalid_argument);  // Delta = 2M > M: infeasible rule
    std::vector<double> two{256.0, 512.0};
    CHECK_THROWS_AS(
        moment_growth_fit(2.0, DeltaRule{1.0, 0.4}, make_twist(1, 1), two, t),
        std::invalid_argument);
}

TEST_CASE("growth fit on a small ladder has a sane slope") {
    const auto& t = table_20k();
    std::vector<double> Ms{512.0, 1024.0, 2048.0, 4096.0};
    auto fit = moment_growth_fit(2.0, DeltaRule{1.0, 0.4}, make_twist(1, 1), Ms, t);
    CHECK(fit.rows.size() == 4);
    CHECK(fit.slope > 0.5);
    CHECK(fit.slope < 2.5);
    std::ostringstream os;
    export_csv(fit, os);
    CHECK(os.str().rfind("M,Delta,k,A,value,max_abs,argmax\n", 0) == 0);
}

}  // TEST_SUITE
