#include "rhm/disclap.hpp"

#include <cmath>

#include "rhm/errors.hpp"

namespace rhm {

double pmf(const DiscreteLaplace& d, int x) {
    return std::exp(log_pmf(d, x));
}

double log_pmf(const DiscreteLaplace& d, int x) {
    const double dist = std::abs(static_cast<double>(x) - d.y);
    return std::log1p(-d.p) - std::log1p(d.p) + dist * std::log(d.p);
}

double mean_abs_deviation(double p) {
    if (!(p > 0.0 && p < 1.0)) throw config_error("dispersion must lie in (0,1)");
    return 2.0 * p / (1.0 - p * p);
}

double mle_dispersion(double m) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
        throw config_error("mean absolute deviation must be finite and non-negative");
    }
    if (m == 0.0) return kDispersionMin;
    // (sqrt(1+m^2)-1)/m, written to avoid cancellation for small m
    const double p = m / (std::sqrt(1.0 + m * m) + 1.0);
    if (p < kDispersionMin) return kDispersionMin;
    if (p > 1.0 - kDispersionMin) return 1.0 - kDispersionMin;
    return p;
}

int sample(const DiscreteLaplace& d, Rng& rng) {
    const double mode_mass = (1.0 - d.p) / (1.0 + d.p);
    const double u = uniform01(rng);
    const double s = uniform01(rng);  // always consumed, keeps the stream layout fixed
    if (u < mode_mass) return d.y;
    // magnitude ~ geometric on {1,2,...} with success probability 1-p
    double v = uniform01(rng);
    if (v <= 0.0) v = 0x1.0p-53;
    const int g = static_cast<int>(std::ceil(std::log(v) / std::log(d.p)));
    const int mag = g < 1 ? 1 : g;
    return s < 0.5 ? d.y - mag : d.y + mag;
}

}  // namespace rhm
