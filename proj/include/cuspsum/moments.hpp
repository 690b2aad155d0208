#ifndef CUSPSUM_MOMENTS_HPP
#define CUSPSUM_MOMENTS_HPP

#include <iosfwd>

#include "cuspsum/bounds.hpp"
#include "cuspsum/sums.hpp"

namespace cuspsum {

struct MomentSpec {
    double A;  // moment order, >= 1
    ShortSumSpec spec;
};

MomentSpec make_moment_spec(double A, ShortSumSpec spec);

struct MomentResult {
    double value = 0.0;
    long long plateau_count = 0;
    double max_abs = 0.0;
    double argmax = 0.0;  // representative x (interval midpoint) of the max
};

// int_M^{2M} |S(x)|^A dx as the exact sum over plateaus of
// length * |plateau|^A. No quadrature error; the only inaccuracy is the
// plateau values' own tolerance. threads parallelizes the plateau
// reduction deterministically (fixed partition per thread count).
MomentResult exact_moment(const StepFunction& sf, double A, int threads = 1);
MomentResult exact_moment(const MomentSpec& ms, const CoefficientTable& t,
                          int threads = 1);

// Same integral restricted to [lo, hi] within the domain; boundary
// subintervals are clipped exactly.
double moment_over_range(const StepFunction& sf, double A, double lo, double hi);

// Delta = coeff * M^exponent
struct DeltaRule {
    double coeff = 1.0;
    double exponent = 0.0;

    double delta(double M) const;
};

struct MomentLadderRow {
    double M, Delta;
    long long k;
    double A;
    double value, max_abs, argmax;
};

struct MomentGrowthFit {
    double slope = 0.0;
    std::vector<MomentLadderRow> rows;
};

// Exact moments along an ascending M ladder with Delta tied to M by the
// rule and the twist held fixed; log-log slope of value vs M. Rules whose
// Delta leaves (0, M] at some ladder point are rejected up front, and an
// all-zero value column is reported as a degenerate-fit error.
MomentGrowthFit moment_growth_fit(double A, const DeltaRule& rule,
                                  const RationalTwist& twist,
                                  std::span<const double> M_ladder,
                                  const CoefficientTable& t, int threads = 1);

struct LargeValueCensus {
    double V = 0.0;
    std::vector<double> points;  // ascending, pairwise >= V apart
    long long R = 0;
    double bound_rhs = 0.0;      // thm2_rhs at the census parameters
};

// Greedy left-to-right selection: scan plateaus, take the leftmost
// admissible x with |S(x)| >= V, then skip to x + V. The greedy family has
// cardinality within a factor 2 of any maximal V-separated family.
LargeValueCensus large_value_census(const StepFunction& sf, double V,
                                    double delta_knob = 0.05,
                                    const ExponentPair& e = kPairHalfHalf);

// Length-weighted percentile (0..100) of |S| over the domain.
double abs_percentile(const StepFunction& sf, double percentile);

// max |S| / min(Delta^{1/2}, k^{1/2} M^{1/4}); reported, never asserted.
double conjecture_probe(const StepFunction& sf);

// CSV exports: ladder rows `M,Delta,k,A,value,max_abs,argmax`;
// census points `x,abs_S`.
void export_csv(const MomentGrowthFit& fit, std::ostream& out);
void export_csv(const LargeValueCensus& census, const StepFunction& sf,
                std::ostream& out);

}  // namespace cuspsum

#endif
