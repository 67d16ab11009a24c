#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace csra {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(n!), table-backed. Grows on demand; thread_local so lookups are lock-free.
inline double log_factorial(int n) {
    thread_local std::vector<double> table{0.0, 0.0};
    if (n < 0) return kNegInf;
    if (static_cast<std::size_t>(n) >= table.size()) {
        std::size_t old = table.size();
        table.resize(std::max<std::size_t>(n + 1, old * 2));
        for (std::size_t i = old; i < table.size(); ++i)
            table[i] = table[i - 1] + std::log(static_cast<double>(i));
    }
    return table[n];
}

// log C(n,k); -inf outside the support.
inline double log_binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return kNegInf;
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// H_n = sum_{h=1}^n 1/h, table-backed direct summation.
inline double harmonic(int n) {
    thread_local std::vector<double> table{0.0};
    if (n < 0) return 0.0;
    if (static_cast<std::size_t>(n) >= table.size()) {
        std::size_t old = table.size();
        table.resize(std::max<std::size_t>(n + 1, old * 2));
        for (std::size_t i = old; i < table.size(); ++i)
            table[i] = table[i - 1] + 1.0 / static_cast<double>(i);
    }
    return table[n];
}

}  // namespace csra
