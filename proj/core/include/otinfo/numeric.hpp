#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace otinfo {

/// Max-shift stabilized ln(sum_i exp(x_i)). Entries equal to -infinity are
/// skipped; returns -infinity when all entries are.
inline double log_sum_exp(const std::vector<double>& xs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : xs) mx = std::max(mx, x);
    if (mx == -std::numeric_limits<double>::infinity()) return mx;
    double sum = 0.0;
    for (double x : xs) {
        if (x == -std::numeric_limits<double>::infinity()) continue;
        sum += std::exp(x - mx);
    }
    return mx + std::log(sum);
}

}  // namespace otinfo
