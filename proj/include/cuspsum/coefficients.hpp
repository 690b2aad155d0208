#ifndef CUSPSUM_COEFFICIENTS_HPP
#define CUSPSUM_COEFFICIENTS_HPP

#include <gmpxx.h>

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cuspsum/numeric.hpp"

namespace cuspsum {

enum class TableSource { generated, loaded };

// Exact integer coefficients tau(n) of a weight-kappa eigenform together
// with the normalized real values a(n) = tau(n) / n^{(kappa-1)/2}.
// Entries are 1-based; index 0 is unused.
struct CoefficientTable {
    int weight = 12;
    long long n_max = 0;
    std::vector<mpz_class> tau;
    std::vector<double> a;
    TableSource source = TableSource::generated;
};

inline constexpr long long kDefaultNMaxBudget = 2'000'000;

// tau(n) for n <= n_max via the q-expansion of q*prod(1-q^n)^24:
// the cube prod(1-q^n)^3 = sum_j (-1)^j (2j+1) q^{j(j+1)/2} is sparse with
// O(sqrt(n_max)) terms, and the 24th power is reached by seven
// sparse-by-dense truncated multiplications, O(n_max^{3/2}) word ops total.
CoefficientTable generate_delta_coefficients(long long n_max,
                                             long long budget = kDefaultNMaxBudget);

long long divisor_count(long long n);

// d(1..n_max); d[0] = 0.
std::vector<long long> divisor_count_sieve(long long n_max);

// smallest-prime-factor sieve, spf[0] = spf[1] = 0.
std::vector<int> smallest_prime_factor_sieve(long long n_max);

enum class ViolationKind {
    leading_one,       // tau(1) != 1 or a(1) != 1
    deligne,           // |a(n)| > d(n)
    multiplicativity,  // tau(mn) != tau(m) tau(n), gcd(m,n)=1
    hecke,             // tau(p)tau(p^j) != tau(p^{j+1}) + p^{kappa-1} tau(p^{j-1})
    normalization,     // a(n) inconsistent with tau(n)/n^{(kappa-1)/2}
};

struct Violation {
    ViolationKind kind;
    long long witness = 0;  // offending index n (or p^{j+1} for Hecke)
    std::string detail;
    bool warning = false;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool empty() const { return violations.empty(); }
    bool has_errors() const;
    bool contains(ViolationKind kind, long long witness) const;
};

// Checks the table invariants. Multiplicativity and Hecke checks run on the
// exact integers; Deligne runs on the normalized doubles. For loaded tables
// the Hecke/multiplicativity findings are demoted to warnings so that
// non-eigenform input is rejected only on Deligne/normalization failure.
ValidationReport validate_table(const CoefficientTable& t);

// Rebuilds tau(1..n_max) from the table's prime values tau(p) alone, using
// the Hecke recursion at prime powers and multiplicativity elsewhere.
// Independent of the series engine; used as its oracle.
std::vector<mpz_class> hecke_reconstruct(const CoefficientTable& t);

struct RankinSelbergFit {
    double A_hat = 0.0;
    double residual_exponent = 0.0;
};

// Fits sum_{n<=M} |a(n)|^2 ~ A_hat * M through the origin over the given
// checkpoints, then fits the log-log slope of the absolute residuals.
RankinSelbergFit rankin_selberg_scan(const CoefficientTable& t,
                                     std::span<const long long> checkpoints);

// Cache file: header `cuspsum-coeffs v1 weight=<k> n_max=<N>`, then one line
// per n: `n,<tau decimal>,<a hexfloat>`. Hexfloat round-trips bit-exactly.
void save_cache(const CoefficientTable& t, std::ostream& out);
void save_cache(const CoefficientTable& t, const std::filesystem::path& path);
CoefficientTable load_cache(std::istream& in);
CoefficientTable load_cache(const std::filesystem::path& path);

}  // namespace cuspsum

#endif
