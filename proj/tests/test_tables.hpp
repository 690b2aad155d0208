#ifndef CUSPSUM_TEST_TABLES_HPP
#define CUSPSUM_TEST_TABLES_HPP

#include "cuspsum/coefficients.hpp"

// Shared generated tables; built once per test run.
inline const cuspsum::CoefficientTable& table_small() {
    static const auto t = cuspsum::generate_delta_coefficients(600);
    return t;
}

inline const cuspsum::CoefficientTable& table_20k() {
    static const auto t = cuspsum::generate_delta_coefficients(20100);
    return t;
}

#endif
