#pragma once

#include <cmath>
#include <map>
#include <string>

namespace rhm {

/// A log10 likelihood-ratio estimate tagged with the method that
/// produced it and method-specific diagnostics.
struct WoeEstimate {
    std::string method;
    double log10_lr = 0.0;
    std::map<std::string, double> diagnostics;
    std::string note;

    double lr() const { return std::pow(10.0, log10_lr); }
};

}  // namespace rhm
