#include "rhm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rhm/errors.hpp"

namespace rhm {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double rank = q * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = std::min(lo + 1, n - 1);
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SummaryStats summarize(const std::vector<double>& values) {
    if (values.empty()) throw config_error("cannot summarize an empty list");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    SummaryStats s;
    s.n = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.5);
    s.q3 = quantile_sorted(sorted, 0.75);
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    return s;
}

BoxplotData boxplot_data(const std::vector<double>& values) {
    if (values.empty()) throw config_error("cannot compute a boxplot of an empty list");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    BoxplotData b;
    b.q1 = quantile_sorted(sorted, 0.25);
    b.median = quantile_sorted(sorted, 0.5);
    b.q3 = quantile_sorted(sorted, 0.75);
    const double iqr = b.q3 - b.q1;
    const double lo_fence = b.q1 - 1.5 * iqr;
    const double hi_fence = b.q3 + 1.5 * iqr;
    b.low_whisker = b.q1;
    b.high_whisker = b.q3;
    for (double v : sorted) {
        if (v < lo_fence || v > hi_fence) {
            b.outliers.push_back(v);
        } else {
            b.low_whisker = std::min(b.low_whisker, v);
            b.high_whisker = std::max(b.high_whisker, v);
        }
    }
    return b;
}

}  // namespace rhm
