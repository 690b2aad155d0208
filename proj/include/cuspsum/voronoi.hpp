#ifndef CUSPSUM_VORONOI_HPP
#define CUSPSUM_VORONOI_HPP

#include <complex>
#include <iosfwd>
#include <span>

#include "cuspsum/sums.hpp"

namespace cuspsum {

// Truncation spec for the main-term series. N may be any real >= 0; N < 1
// yields the empty sum. max_ratio bounds N/x (default: N <= x).
struct VoronoiSpec {
    double x;
    double N;
    RationalTwist twist;
    double max_ratio = 1.0;
};

VoronoiSpec make_voronoi_spec(double x, double N, RationalTwist twist,
                              double max_ratio = 1.0);

// (k^{1/2} x^{1/4} / (pi sqrt 2)) sum_{n<=N} a(n) e(-n hbar/k) n^{-3/4}
//   cos(4 pi sqrt(nx)/k - pi/4).
// Returned as a complex number: for k > 1 the series is genuinely complex
// (it tracks the complex long sum); for k = 1 the imaginary part is a
// diagnostic that must vanish to rounding, so it is reported, not dropped.
std::complex<double> voronoi_main_term(const VoronoiSpec& spec,
                                       const CoefficientTable& t);

struct VoronoiErrorProfile {
    std::vector<double> N_values;
    std::vector<double> errors;  // |long_sum_direct(x) - main_term(N)|
    double fitted_slope = 0.0;   // log-log slope of error vs N
};

VoronoiErrorProfile error_profile(double x, const RationalTwist& twist,
                                  std::span<const double> N_values,
                                  const CoefficientTable& t,
                                  double max_ratio = 1.0);

// |cos(2xi - pi/4) - cos(2eta - pi/4) - 2 sin(xi-eta) cos(xi+eta+pi/4)|
double trig_difference_identity_check(double xi, double eta);

// CSV export: N,error per profile row.
void export_csv(const VoronoiErrorProfile& p, std::ostream& out);

}  // namespace cuspsum

#endif
