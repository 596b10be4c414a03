#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rhm/disclap.hpp"
#include "rhm/haplotype.hpp"
#include "rhm/woe.hpp"

namespace rhm {

/// A c-subpopulation, r-locus discrete Laplace mixture: weights tau plus
/// per-component, per-locus dispersion/location grids.
struct MixtureModel {
    Eigen::VectorXd tau;  // c weights, sum to 1
    Eigen::MatrixXd p;    // c x r dispersions
    Eigen::MatrixXi y;    // c x r modal alleles

    int components() const { return static_cast<int>(tau.size()); }
    int loci() const { return static_cast<int>(p.cols()); }

    DiscreteLaplace locus(int j, int k) const { return {p(j, k), y(j, k)}; }
};

struct EmConfig {
    int max_iterations = 500;
    double rel_tol = 1e-8;
    int c_min = 1;
    int c_max = 0;  // 0: auto, min(10, N/10, distinct types)
    std::uint64_t seed = 0;
    bool add_profile_to_db = true;
};

struct FittedMixture {
    MixtureModel model;
    double loglik = 0.0;
    double bic_value = 0.0;
    std::vector<double> loglik_trace;
    bool converged = false;
    int iterations = 0;
};

double mixture_log_pmf(const MixtureModel& model, const Haplotype& x);
double mixture_pmf(const MixtureModel& model, const Haplotype& x);

/// EM fit with PAM-initialised centres. The M-step uses the exact
/// conditional MLEs of the mixture density: responsibility-weighted
/// integer medians for y (lower median on ties) and the closed-form
/// dispersion root for p.
FittedMixture em_fit(const Database& db, int c, const EmConfig& cfg);

/// -2*loglik + k*ln(n), k = (c-1) + 2*c*r.
double bic(const FittedMixture& fit, Eigen::Index n);

/// Fits every c in the configured range and returns the minimum-BIC fit,
/// ties broken toward smaller c.
FittedMixture select_model(const Database& db, const EmConfig& cfg);

/// Effective candidate range for db under cfg (inclusive).
std::pair<int, int> resolve_c_range(const Database& db, const EmConfig& cfg);

/// Plug-in weight of evidence log10(1/f_x) with f_x the mixture
/// probability of x under the BIC-selected fit. By default x is
/// appended to the database before fitting.
WoeEstimate woe_dl(const Database& db, const Haplotype& x, const EmConfig& cfg);
WoeEstimate woe_dl(const Database& db, const Haplotype& x, const EmConfig& cfg,
                   FittedMixture* fit_out);

/// Human-readable fit report (weights, per-locus tables, BIC, trace tail).
std::string describe_fit(const FittedMixture& fit);

}  // namespace rhm
