#ifndef CUSPSUM_SPACING_HPP
#define CUSPSUM_SPACING_HPP

#include <iosfwd>

#include "cuspsum/numeric.hpp"

namespace cuspsum {

// Count quadruples (a,b,c,d) of integers in (L,2L]^4 with
// |a^{1/omega} + b^{1/omega} - c^{1/omega} - d^{1/omega}| < delta * L^{1/omega}.
struct SpacingQuery {
    double L;
    double delta;
    double omega = 2.0;
    // corollary context for the reported bound values
    double k = 1.0;
    double M = 1.0;
    double theta = 0.05;
};

SpacingQuery make_spacing_query(double L, double delta, double omega = 2.0,
                                double k = 1.0, double M = 1.0,
                                double theta = 0.05);

struct SpacingCount {
    long long count = 0;
    double bound_rs = 0.0;         // delta L^4 + L^2
    double bound_corollary = 0.0;  // L^{7/2} k M^{theta-1/2} + L^2
};

inline constexpr double kBruteForceMaxL = 200.0;
inline constexpr double kPairSumMaxL = 10000.0;

// O(L^4) reference loop. Threshold comparisons within a small guard band of
// the cutoff are re-evaluated in 113-bit arithmetic so counts are
// deterministic exact integers.
SpacingCount spacing_count_bruteforce(const SpacingQuery& q);

// Same count in O(L^2 log L): sort the pair values a^{1/omega}+b^{1/omega},
// then window-count with prefix sums; entries near a window edge go through
// the same guarded comparison the brute force uses, so the two algorithms
// agree exactly.
SpacingCount spacing_count_pairsum(const SpacingQuery& q);

// L^{7/2} k M^{theta-1/2} + L^2 (epsilon dropped).
double corollary_rhs(double L, double k, double M, double theta);

// CSV export: L,delta,omega,count,bound_rs,bound_corollary.
void export_csv(const SpacingQuery& q, const SpacingCount& c, std::ostream& out);

}  // namespace cuspsum

#endif
