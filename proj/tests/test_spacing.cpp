#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cuspsum/spacing.hpp"

using namespace cuspsum;

TEST_SUITE("spacing") {

TEST_CASE("single-integer range") {
    auto q = make_spacing_query(1.0, 0.5);
    CHECK(spacing_count_bruteforce(q).count == 1);
    CHECK(spacing_count_pairsum(q).count == 1);
}

TEST_CASE("L=2 enumerations") {
    // integers {3,4}: only multiset-equal quadruples have discrepancy 0
    auto tight = make_spacing_query(2.0, 1e-9);
    CHECK(spacing_count_bruteforce(tight).count == 6);
    CHECK(spacing_count_pairsum(tight).count == 6);

    // threshold above the max possible discrepancy counts everything
    auto loose = make_spacing_query(2.0, 10.0);
    CHECK(spacing_count_bruteforce(loose).count == 16);
    CHECK(spacing_count_pairsum(loose).count == 16);
}

TEST_CASE("pairsum equals brute force on fractional L and a delta grid") {
    for (double L : {1.5, 2.5, 7.25, 15.75, 31.5}) {
        for (double d : {1e-6, 1e-2, 0.5}) {
            auto q = make_spacing_query(L, d);
            auto bf = spacing_count_bruteforce(q);
            auto ps = spacing_count_pairsum(q);
            REQUIRE(bf.count == ps.count);
        }
    }
}

TEST_CASE("pairsum equals brute force for omega = 3") {
    for (double d : {1e-5, 1e-3, 0.25}) {
        auto q = make_spacing_query(8.0, d, 3.0);
        CHECK(spacing_count_bruteforce(q).count ==
              spacing_count_pairsum(q).count);
    }
}

TEST_CASE("count is monotone in delta") {
    long long prev = -1;
    for (double d : {1e-6, 1e-3, 0.1, 10.0}) {
        auto c = spacing_count_pairsum(make_spacing_query(16.0, d)).count;
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("diagonal lower bound") {
    for (double L : {4.0, 9.0, 20.0}) {
        long long m = static_cast<long long>(std::floor(2.0 * L)) -
                      static_cast<long long>(std::floor(L));
        auto c = spacing_count_pairsum(make_spacing_query(L, 1e-9)).count;
        CHECK(c >= 2 * m * m - m);
    }
}

TEST_CASE("count never exceeds the total number of quadruples") {
    for (double L : {3.0, 10.5, 24.0}) {
        long long m = static_cast<long long>(std::floor(2.0 * L)) -
                      static_cast<long long>(std::floor(L));
        auto c = spacing_count_pairsum(make_spacing_query(L, 100.0)).count;
        CHECK(c == m * m * m * m);
    }
}

TEST_CASE("omega=2 specialization matches a direct threshold count") {
    // delta = k M^{theta-1/2} / sqrt(L) makes the cutoff k M^{theta-1/2}
    const double L = 4.0, k = 1.0, M = 100.0, theta = 0.05;
    const double T = k * std::pow(M, theta - 0.5);
    auto q = make_spacing_query(L, T / std::sqrt(L), 2.0, k, M, theta);
    auto lib = spacing_count_pairsum(q);

    long long direct = 0;
    long long lo = static_cast<long long>(L) + 1, hi = static_cast<long long>(2 * L);
    for (long long a = lo; a <= hi; ++a)
        for (long long b = lo; b <= hi; ++b)
            for (long long c = lo; c <= hi; ++c)
                for (long long d = lo; d <= hi; ++d) {
                    double disc = std::sqrt(static_cast<double>(a)) +
                                  std::sqrt(static_cast<double>(b)) -
                                  std::sqrt(static_cast<double>(c)) -
                                  std::sqrt(static_cast<double>(d));
                    if (std::abs(disc) < T) ++direct;
                }
    CHECK(lib.count == direct);
}

TEST_CASE("corollary_rhs substitution values") {
    CHECK(corollary_rhs(1.0, 1.0, 1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(corollary_rhs(4.0, 1.0, 1.0, 0.5) == doctest::Approx(144.0).epsilon(1e-15));
    double expect = std::pow(100.0, 3.5) * 3.0 * std::pow(1e6, 0.05 - 0.5) + 1e4;
    CHECK(corollary_rhs(100.0, 3.0, 1e6, 0.05) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(69857.87).epsilon(1e-4));
}

TEST_CASE("bounds populated on results") {
    auto q = make_spacing_query(8.0, 0.01, 2.0, 2.0, 1e4, 0.05);
    auto c = spacing_count_pairsum(q);
    CHECK(c.bound_rs == doctest::Approx(0.01 * std::pow(8.0, 4.0) + 64.0));
    CHECK(c.bound_corollary ==
          doctest::Approx(corollary_rhs(8.0, 2.0, 1e4, 0.05)));
}

TEST_CASE("budget and validation errors") {
    CHECK_THROWS_AS(spacing_count_bruteforce(make_spacing_query(201.0, 0.1)),
                    resource_error);
    CHECK_THROWS_AS(spacing_count_pairsum(make_spacing_query(10001.0, 0.1)),
                    resource_error);
    CHECK_THROWS_AS(make_spacing_query(0.4, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_spacing_query(2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_spacing_query(2.0, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("csv export") {
    auto q = make_spacing_query(2.0, 1e-9);
    auto c = spacing_count_bruteforce(q);
    std::ostringstream os;
    export_csv(q, c, os);
    CHECK(os.str().rfind("L,delta,omega,count,bound_rs,bound_corollary\n", 0) == 0);
    CHECK(os.str().find(",6,") != std::string::npos);
}

}  // TEST_SUITE
