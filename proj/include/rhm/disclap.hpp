#pragma once

#include "rhm/rng.hpp"

namespace rhm {

/// Dispersion clamp: keeps log-likelihoods finite when a cluster sits
/// entirely on its mode.
inline constexpr double kDispersionMin = 1e-9;

/// Two-sided geometric law on the integers with mode y:
/// f(x) = ((1-p)/(1+p)) p^|x-y|.
struct DiscreteLaplace {
    double p;  // dispersion, in (0,1)
    int y;     // location (modal allele)
};

double pmf(const DiscreteLaplace& d, int x);
double log_pmf(const DiscreteLaplace& d, int x);

/// E|X - y| = 2p/(1-p^2).
double mean_abs_deviation(double p);

/// Maximum-likelihood dispersion for observed mean absolute deviation m:
/// the root of m(1-p^2) = 2p, i.e. p = (sqrt(1+m^2)-1)/m, clamped to
/// [kDispersionMin, 1-kDispersionMin].
double mle_dispersion(double m);

int sample(const DiscreteLaplace& d, Rng& rng);

}  // namespace rhm
