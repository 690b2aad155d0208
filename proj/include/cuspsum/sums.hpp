#ifndef CUSPSUM_SUMS_HPP
#define CUSPSUM_SUMS_HPP

#include <complex>
#include <iosfwd>
#include <vector>

#include "cuspsum/coefficients.hpp"

namespace cuspsum {

// Reduced rational twist h/k with the inverse of h modulo k.
// h is stored as the representative in [0,k).
struct RationalTwist {
    long long h = 0;
    long long k = 1;
    long long h_bar = 0;
};

RationalTwist make_twist(long long h, long long k);

struct ShortSumSpec {
    double M;
    double Delta;
    RationalTwist twist;
};

// Validates 1 <= M and 0 < Delta <= M. Delta < 1 is allowed here so that
// empty-window edge cases are testable; theorem drivers enforce Delta >= 1.
ShortSumSpec make_short_sum_spec(double M, double Delta, RationalTwist twist);

// Table of the k roots of unity. All twist factors are looked up through
// exact residue arithmetic, so e((n+k)h/k) == e(nh/k) holds exactly.
class TwistTable {
public:
    explicit TwistTable(const RationalTwist& t);

    // e(n h/k)
    std::complex<double> forward(long long n) const {
        return roots_[static_cast<size_t>((n % k_) * h_ % k_)];
    }
    // e(-n h_bar/k), the dual-side twist
    std::complex<double> dual(long long n) const {
        long long r = (-(n % k_) * h_bar_) % k_;
        if (r < 0) r += k_;
        return roots_[static_cast<size_t>(r)];
    }

private:
    long long k_, h_, h_bar_;
    std::vector<std::complex<double>> roots_;
};

// sum_{x <= n <= x+Delta} a(n) e(n h/k), compensated; closed window.
std::complex<double> short_sum_direct(double x, const ShortSumSpec& spec,
                                      const CoefficientTable& t);

// sum_{n <= x} a(n) e(n h/k), compensated.
std::complex<double> long_sum_direct(double x, const RationalTwist& twist,
                                     const CoefficientTable& t);

// The short sum as an exact step function of the left endpoint x on
// [M, 2M]. Breakpoints are the points n and n - Delta (n integer) falling
// in the domain, plus the domain endpoints; plateaus hold the window sum on
// each open interval between consecutive breakpoints. Values at the
// breakpoints themselves are measure-zero for the integrals downstream;
// point queries use the half-open convention [b_i, b_{i+1}).
struct StepFunction {
    ShortSumSpec spec;
    std::vector<double> breakpoints;
    std::vector<std::complex<double>> plateaus;

    double domain_lo() const { return breakpoints.front(); }
    double domain_hi() const { return breakpoints.back(); }
    std::complex<double> value_at(double x) const;
    size_t interval_index(double x) const;
};

// Event-driven sweep: entering event at x = n - Delta inserts the term for
// n, leaving event at x = n removes it. The window sum is re-synced from
// scratch every 2^16 events to bound drift. threads > 1 partitions the
// event list; each partition starts from a from-scratch window sum, so the
// result is deterministic for a fixed thread count and matches the
// single-threaded sweep within the stated tolerance.
StepFunction build_step_function(const ShortSumSpec& spec,
                                 const CoefficientTable& t, int threads = 1);

// CSV export: x_left,x_right,re,im per plateau.
void export_csv(const StepFunction& sf, std::ostream& out);

}  // namespace cuspsum

#endif
