#ifndef CUSPSUM_BOUNDS_HPP
#define CUSPSUM_BOUNDS_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace cuspsum {

// Exponent pair <p,q> with 0 < p <= 1/2 and 1/2 <= q <= 1.
struct ExponentPair {
    double p;
    double q;
};

inline constexpr ExponentPair kPairHalfHalf{0.5, 0.5};
inline constexpr ExponentPair kPairWeylVdC{4.0 / 18.0, 11.0 / 18.0};

bool exponent_pair_valid(const ExponentPair& e);

// A-process: (p,q) -> (p/(2p+2), (p+q+1)/(2p+2)); B-process: (q-1/2, p+1/2).
// Throws if the result leaves the admissible box.
ExponentPair ep_process_A(const ExponentPair& e);
ExponentPair ep_process_B(const ExponentPair& e);

// Amp^p M^{q-p/2} + M^{1/2}/Amp, the exponent-pair bound for
// sum_{M<=n<=M+Delta} e(Amp sqrt(n)).
double plain_expsum_bound(const ExponentPair& e, double Amp, double M,
                          double Delta);

struct BombieriResult {
    double lhs;  // sum_r |<xi|phi_r>|^2
    double rhs;  // ||xi||^2 max_r sum_s |<phi_r|phi_s>|
};

BombieriResult bombieri_check(
    std::span<const std::complex<double>> xi,
    std::span<const std::vector<std::complex<double>>> phis);

// Free parameters shared by the theorem RHS calculators. alpha/beta/gamma
// are the exponents of a pointwise short-sum bound k^alpha Delta^beta
// M^gamma; the knobs are the paper-style arbitrarily small exponents.
struct BoundParams {
    double alpha = 0.0;
    double beta = 1.0;
    double gamma = 0.0;
    double V0 = 1.0;
    double A = 2.0;
    double k = 1.0;
    double M = 1.0;
    double Delta = 1.0;
    double delta_knob = 0.05;
    double theta_knob = 0.05;
    double eps_knob = 0.05;
};

enum class Thm1Branch { branch1, branch2, not_covered };

struct Thm1Result {
    Thm1Branch branch;
    double value;  // NaN when not covered
};

const char* to_string(Thm1Branch b);

// Fourth-moment bound: k^2 M^{2+eps} when k <= M^{-1/2}Delta and
// k <= M^{1/4}; M^{1+eps} Delta^2 when M^{-1/2}Delta <= k <= M^{-1/4}Delta^{2/3}.
// On the shared boundary both formulas agree; the first branch wins.
Thm1Result thm1_rhs(double k, double M, double Delta, double eps_knob);

struct FlaggedValue {
    double value;
    std::vector<std::string> flags;  // precondition violations, informational
};

// Large-value bound:
// k^2 M^{1+7d} Delta^2 V^{-5}
//   + k^{2q/p} Delta^{2+2/p} M^{1+q/p+d(6+5/p+2q/p)} V^{-2q/p-4-3/p}.
FlaggedValue thm2_rhs(double k, double M, double Delta, double V,
                      const ExponentPair& e, double delta_knob);

struct ThreeTermBound {
    double main;
    double Phi;
    double Psi;
    std::vector<std::string> flags;

    double total() const { return main + Phi + Psi; }
};

// Short-sum moment bound M^{1+eps} V0^A + Phi + Psi with the case splits at
// A = 4 (Phi) and A = 2q/p + 3 + 3/p (Psi).
ThreeTermBound thm3_rhs(const BoundParams& params, const ExponentPair& e);

// k^2 M^{11/6 + 29(A-4)/72 + eps}; requires A >= 11, M^{1/9} << k << M^{7/18},
// Delta ~ M^{5/12} (violations flagged, value still computed).
FlaggedValue thm4_rhs(double k, double M, double A, double eps_knob);

struct Thm5Result {
    double value;
    int case_line;  // 1..4 as listed in the source theorem
    std::vector<std::string> flags;
};

// Untwisted moment bound for M^{1/5} << Delta << M^{4/9}, 4 <= A <= 11,
// with case splits at A = 8 and Delta = M^{7/24} / M^{4/9-11/(9A)}.
Thm5Result thm5_rhs(double M, double Delta, double A, double eps_knob);

// Long-sum moment bound k^{A/2} M^{A/4+1} + Phi + Psi with case splits at
// A = 2 (Phi) and A = 1 + (1+2q)/p (Psi). Here params.beta plays the role
// of the long-sum pointwise exponent: sum_{n<=x} << k^alpha x^{beta+eps}.
ThreeTermBound longsum_moment_rhs(const BoundParams& params,
                                  const ExponentPair& e);

}  // namespace cuspsum

#endif
