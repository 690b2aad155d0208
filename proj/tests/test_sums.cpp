#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cuspsum/sums.hpp"
#include "test_tables.hpp"

using namespace cuspsum;

namespace {

double window_abs_mass(double x, const ShortSumSpec& spec,
                       const CoefficientTable& t) {
    double s = 0.0;
    long long lo = std::max<long long>(1, static_cast<long long>(std::ceil(x)));
    long long hi = static_cast<long long>(std::floor(x + spec.Delta));
    for (long long n = lo; n <= hi; ++n) s += std::abs(t.a[n]);
    return s;
}

}  // namespace

TEST_SUITE("sums") {

TEST_CASE("make_twist") {
    auto t1 = make_twist(1, 1);
    CHECK(t1.h_bar == 0);
    auto t2 = make_twist(3, 5);
    CHECK(t2.h_bar == 2);
    auto t3 = make_twist(-1, 3);  // reduced representative 2, inverse 2
    CHECK(t3.h == 2);
    CHECK(t3.h_bar == 2);
    CHECK_THROWS_AS(make_twist(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_twist(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_twist(1, 0), std::invalid_argument);
}

TEST_CASE("twist table periodicity is exact") {
    TwistTable tw(make_twist(3, 7));
    for (long long n = 0; n < 40; ++n) {
        CHECK(tw.forward(n) == tw.forward(n + 7));
        CHECK(tw.dual(n) == tw.dual(n + 7));
    }
}

TEST_CASE("short_sum_direct hand examples") {
    const auto& t = table_small();
    auto s1 = short_sum_direct(2.0, make_short_sum_spec(2.0, 1.0, make_twist(1, 1)), t);
    CHECK(s1.real() == doctest::Approx(t.a[2] + t.a[3]).epsilon(1e-15));
    CHECK(s1.imag() == 0.0);

    // e(2*1/2) = 1, e(3*1/2) = -1
    auto s2 = short_sum_direct(2.0, make_short_sum_spec(2.0, 1.0, make_twist(1, 2)), t);
    CHECK(s2.real() == doctest::Approx(t.a[2] - t.a[3]).epsilon(1e-15));

    auto s3 = short_sum_direct(2.5, make_short_sum_spec(2.5, 0.4, make_twist(1, 1)), t);
    CHECK(s3 == std::complex<double>{0.0, 0.0});
}

TEST_CASE("long_sum_direct hand examples") {
    const auto& t = table_small();
    auto twist = make_twist(2, 5);
    TwistTable tw(twist);
    auto v = long_sum_direct(1.0, twist, t);
    CHECK(std::abs(v - t.a[1] * tw.forward(1)) < 1e-15);

    auto u = long_sum_direct(3.0, make_twist(1, 1), t);
    CHECK(u.real() == doctest::Approx(t.a[1] + t.a[2] + t.a[3]).epsilon(1e-15));
}

TEST_CASE("conjugate twist gives the conjugate sum") {
    const auto& t = table_small();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> xs(50.0, 100.0);
    auto spec_p = make_short_sum_spec(50.0, 20.0, make_twist(3, 7));
    auto spec_m = make_short_sum_spec(50.0, 20.0, make_twist(-3, 7));
    for (int i = 0; i < 200; ++i) {
        double x = xs(rng);
        auto vp = short_sum_direct(x, spec_p, t);
        auto vm = short_sum_direct(x, spec_m, t);
        double scale = 1.0 + window_abs_mass(x, spec_p, t);
        CHECK(std::abs(vm - std::conj(vp)) <= 1e-12 * scale);
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_short_sum_spec(0.5, 0.2, make_twist(1, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_short_sum_spec(10.0, 11.0, make_twist(1, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_short_sum_spec(10.0, 0.0, make_twist(1, 1)),
                    std::invalid_argument);
    CHECK_NOTHROW(make_short_sum_spec(10.0, 0.5, make_twist(1, 1)));
}

TEST_CASE("table-too-short errors") {
    const auto& t = table_small();
    auto spec = make_short_sum_spec(590.0, 20.0, make_twist(1, 1));
    CHECK_THROWS_AS(short_sum_direct(590.0, spec, t), std::invalid_argument);
    CHECK_THROWS_AS(long_sum_direct(601.0, make_twist(1, 1), t),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_step_function(spec, t), std::invalid_argument);
}

TEST_CASE("zero table gives zero plateaus") {
    CoefficientTable z;
    z.weight = 12;
    z.n_max = 400;
    z.tau.assign(401, mpz_class(0));
    z.a.assign(401, 0.0);
    auto sf = build_step_function(make_short_sum_spec(100.0, 5.0, make_twist(1, 1)), z);
    for (auto p : sf.plateaus) CHECK(p == std::complex<double>{0.0, 0.0});
}

TEST_CASE("integer Delta gives integer breakpoints") {
    const auto& t = table_small();
    auto sf = build_step_function(make_short_sum_spec(100.0, 5.0, make_twist(1, 1)), t);
    // n and n - Delta are both integers: breakpoints are exactly 100..200
    REQUIRE(sf.breakpoints.size() == 101);
    for (size_t i = 0; i < sf.breakpoints.size(); ++i)
        CHECK(sf.breakpoints[i] == 100.0 + static_cast<double>(i));
    CHECK(sf.breakpoints.size() <= 2 * (100 + 1));
}

TEST_CASE("plateaus match the direct sum at interval midpoints") {
    const auto& t = table_small();
    for (auto [M, D, h, k] :
         {std::tuple<double, double, long long, long long>{100.0, 5.0, 1, 1},
          {50.5, 7.3, 2, 5},
          {120.0, 0.7, 1, 3}}) {
        auto spec = make_short_sum_spec(M, D, make_twist(h, k));
        auto sf = build_step_function(spec, t);
        for (size_t i = 0; i + 1 < sf.breakpoints.size(); ++i) {
            double mid = 0.5 * (sf.breakpoints[i] + sf.breakpoints[i + 1]);
            auto direct = short_sum_direct(mid, spec, t);
            double scale = 1.0 + window_abs_mass(mid, spec, t);
            REQUIRE(std::abs(sf.plateaus[i] - direct) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("1000 random x agree with the direct sum") {
    const auto& t = table_20k();
    auto spec = make_short_sum_spec(5000.0, 37.25, make_twist(3, 8));
    auto sf = build_step_function(spec, t);
    std::mt19937_64 rng(20250101);
    std::uniform_real_distribution<double> xs(5000.0, 10000.0);
    for (int i = 0; i < 1000; ++i) {
        double x = xs(rng);
        auto direct = short_sum_direct(x, spec, t);
        double scale = 1.0 + window_abs_mass(x, spec, t);
        REQUIRE(std::abs(sf.value_at(x) - direct) <= 1e-9 * scale);
    }
}

TEST_CASE("partitioned sweep matches the single-threaded sweep") {
    const auto& t = table_20k();
    auto spec = make_short_sum_spec(4000.0, 61.5, make_twist(1, 4));
    auto sf1 = build_step_function(spec, t, 1);
    auto sf4 = build_step_function(spec, t, 4);
    REQUIRE(sf1.breakpoints == sf4.breakpoints);
    for (size_t i = 0; i < sf1.plateaus.size(); ++i)
        REQUIRE(std::abs(sf1.plateaus[i] - sf4.plateaus[i]) <= 1e-10);
}

TEST_CASE("value_at rejects points outside the domain") {
    const auto& t = table_small();
    auto sf = build_step_function(make_short_sum_spec(100.0, 5.0, make_twist(1, 1)), t);
    CHECK_THROWS_AS(sf.value_at(99.0), std::invalid_argument);
    CHECK_THROWS_AS(sf.value_at(201.0), std::invalid_argument);
    CHECK_NOTHROW(sf.value_at(100.0));
    CHECK_NOTHROW(sf.value_at(200.0));
}

TEST_CASE("csv export shape") {
    const auto& t = table_small();
    auto sf = build_step_function(make_short_sum_spec(100.0, 2.5, make_twist(1, 2)), t);
    std::ostringstream os;
    export_csv(sf, os);
    std::string s = os.str();
    size_t lines = std::count(s.begin(), s.end(), '\n');
    CHECK(lines == sf.plateaus.size() + 1);
    CHECK(s.rfind("x_left,x_right,re,im\n", 0) == 0);
}

}  // TEST_SUITE
