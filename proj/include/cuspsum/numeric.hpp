#ifndef CUSPSUM_NUMERIC_HPP
#define CUSPSUM_NUMERIC_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuspsum {

// Thrown when an input exceeds a configured memory/loop budget.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Neumaier-compensated accumulator. The compensation term is carried
// separately so that adding and later removing the same value keeps the
// running error bounded by a few ulps of the largest partial sum.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
    void reset() { sum = comp = 0.0; }
};

struct ComplexSum {
    CompensatedSum re, im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    void sub(std::complex<double> z) { add(-z); }
    std::complex<double> value() const { return {re.value(), im.value()}; }
    void reset() { re.reset(); im.reset(); }
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares y ~ slope*x + intercept. Requires >= 2 points.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

// log-log slope fit. Points with y <= 0 are dropped; requires >= 2
// surviving points, otherwise returns slope 0.
LineFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

// Least-squares slope of y ~ s*x through the origin.
double through_origin_slope(std::span<const double> xs, std::span<const double> ys);

long long gcd_ll(long long a, long long b);

// Modular inverse of h mod k for coprime inputs, result in [0,k).
long long mod_inverse(long long h, long long k);

}  // namespace cuspsum

#endif
