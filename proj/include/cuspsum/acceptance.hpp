#ifndef CUSPSUM_ACCEPTANCE_HPP
#define CUSPSUM_ACCEPTANCE_HPP

#include <span>
#include <string>
#include <vector>

#include "cuspsum/coefficients.hpp"

namespace cuspsum {

inline constexpr int kAcceptanceCriteria = 13;

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured values, thresholds, witnesses
};

struct AcceptanceContext {
    const CoefficientTable* table = nullptr;
    std::string cli_path;  // enables the CLI byte-determinism check when set
    int threads = 4;
};

// Largest coefficient index any of the given criteria touches.
long long acceptance_required_n_max(std::span<const int> ids);

// Runs the given criteria (1-based ids) against the shared table and
// returns one result per id, in order. The table must cover
// acceptance_required_n_max(ids).
std::vector<CriterionResult> run_acceptance(std::span<const int> ids,
                                            const AcceptanceContext& ctx);

std::vector<int> all_acceptance_ids();

// "[PASS] C07 second-moment-slope: ..." one line per result.
std::string format_result_line(const CriterionResult& r);

}  // namespace cuspsum

#endif
