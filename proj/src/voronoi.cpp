#include "cuspsum/voronoi.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace cuspsum {

VoronoiSpec make_voronoi_spec(double x, double N, RationalTwist twist,
                              double max_ratio) {
    if (!(x >= 1.0)) throw std::invalid_argument("VoronoiSpec: x must be >= 1");
    if (!(N >= 0.0)) throw std::invalid_argument("VoronoiSpec: N must be >= 0");
    if (static_cast<double>(twist.k) > x)
        throw std::invalid_argument("VoronoiSpec: k must be <= x");
    if (N > max_ratio * x)
        throw std::invalid_argument("VoronoiSpec: N exceeds max_ratio * x");
    return {x, N, twist, max_ratio};
}

std::complex<double> voronoi_main_term(const VoronoiSpec& spec,
                                       const CoefficientTable& t) {
    const long long terms = static_cast<long long>(std::floor(spec.N));
    if (terms > t.n_max)
        throw std::invalid_argument("voronoi_main_term: N exceeds table length");
    if (terms < 1) return {0.0, 0.0};  // empty sum

    const double x = spec.x;
    const double k = static_cast<double>(spec.twist.k);
    const double quarter_pi = std::numbers::pi / 4.0;
    TwistTable tw(spec.twist);
    ComplexSum acc;
    for (long long n = 1; n <= terms; ++n) {
        double osc = std::cos(4.0 * std::numbers::pi * std::sqrt(n * x) / k -
                              quarter_pi);
        double amp = t.a[n] * std::pow(static_cast<double>(n), -0.75) * osc;
        acc.add(amp * tw.dual(n));
    }
    double prefac = std::sqrt(k) * std::pow(x, 0.25) /
                    (std::numbers::pi * std::numbers::sqrt2);
    return prefac * acc.value();
}

VoronoiErrorProfile error_profile(double x, const RationalTwist& twist,
                                  std::span<const double> N_values,
                                  const CoefficientTable& t, double max_ratio) {
    if (N_values.size() < 3)
        throw std::invalid_argument("error_profile: need >= 3 N values");
    for (size_t i = 1; i < N_values.size(); ++i)
        if (N_values[i] < N_values[i - 1])
            throw std::invalid_argument("error_profile: N values must ascend");

    std::complex<double> direct = long_sum_direct(x, twist, t);
    VoronoiErrorProfile prof;
    prof.N_values.assign(N_values.begin(), N_values.end());
    prof.errors.reserve(N_values.size());
    for (double N : N_values) {
        auto spec = make_voronoi_spec(x, N, twist, max_ratio);
        prof.errors.push_back(std::abs(direct - voronoi_main_term(spec, t)));
    }
    prof.fitted_slope = fit_loglog(prof.N_values, prof.errors).slope;
    return prof;
}

double trig_difference_identity_check(double xi, double eta) {
    const double quarter_pi = std::numbers::pi / 4.0;
    double lhs = std::cos(2.0 * xi - quarter_pi) - std::cos(2.0 * eta - quarter_pi);
    double rhs = 2.0 * std::sin(xi - eta) * std::cos(xi + eta + quarter_pi);
    return std::abs(lhs - rhs);
}

void export_csv(const VoronoiErrorProfile& p, std::ostream& out) {
    out << "N,error\n";
    char buf[80];
    for (size_t i = 0; i < p.N_values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.N_values[i],
                      p.errors[i]);
        out << buf;
    }
}

}  // namespace cuspsum
