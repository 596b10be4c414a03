#pragma once

#include <optional>
#include <vector>

namespace rhm {

/// Seven-number distribution summary. Quartiles use linear interpolation
/// at rank (n-1)*q; sd is the sample standard deviation (divisor n-1),
/// undefined for a single value.
struct SummaryStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::optional<double> sd;
    std::size_t n = 0;
};

/// Five-number box summary with the 1.5*IQR whisker rule.
struct BoxplotData {
    double low_whisker = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double high_whisker = 0.0;
    std::vector<double> outliers;
};

SummaryStats summarize(const std::vector<double>& values);
BoxplotData boxplot_data(const std::vector<double>& values);

/// Interpolated quantile at rank (n-1)*q of an already sorted vector.
double quantile_sorted(const std::vector<double>& sorted, double q);

}  // namespace rhm
