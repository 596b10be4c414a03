#pragma once

#include <string>

#include "rhm/haplotype.hpp"
#include "rhm/rng.hpp"
#include "rhm/woe.hpp"

namespace rhm {

/// Probability that the next observation is a new type (theta1), and
/// that it is new and then immediately repeated (theta2), both with
/// respect to a sample of size n_basis.
struct ThetaPair {
    double theta1 = 0.0;
    double theta2 = 0.0;
    Eigen::Index n_basis = 0;
};

/// Exhaustive ground-truth type/probability table.
class Population {
  public:
    Population() = default;
    Population(Eigen::MatrixXi types, Eigen::VectorXd probs);

    Eigen::Index type_count() const { return types_.rows(); }
    Eigen::Index locus_count() const { return types_.cols(); }
    const Eigen::MatrixXi& types() const { return types_; }
    const Eigen::VectorXd& probs() const { return probs_; }
    Haplotype type(Eigen::Index s) const { return types_.row(s); }

    /// Probability of haplotype h; zero if h is not a population type.
    double frequency(const Haplotype& h) const;

    /// One i.i.d. draw (inverse CDF on the type table).
    Haplotype draw(Rng& rng) const;

    /// Marginalises onto a subset of loci (0-based column indices),
    /// merging types that become identical.
    Population project(const std::vector<int>& loci) const;

  private:
    Eigen::MatrixXi types_;
    Eigen::VectorXd probs_;
    Eigen::VectorXd cdf_;
    std::map<Haplotype, double, HaplotypeLess> index_;
};

/// Rows of `allele_1,...,allele_r,count`; probabilities are counts
/// normalised by their total.
Population load_population(const std::string& text);
std::string serialize_population(const Population& pop, Eigen::Index total_count);

/// Unbiased estimator N1/N of theta1.
double theta1_hat(const FrequencySpectrum& spec);

/// Unbiased estimator 2*N2/(N(N-1)) of theta2.
double theta2_hat(const FrequencySpectrum& spec);

/// Generalisation N_m / C(N,m), reducing to the two above at m=1,2.
double theta_m_hat(const FrequencySpectrum& spec, int m);

/// Closed form sum_s p_s^m (1-p_s)^(n-m): probability that the n-th draw
/// is a new type immediately repeated m-1 more times.
double theta_exact(const Population& pop, Eigen::Index n, int m);

/// Singleton/doubleton weight-of-evidence estimator
/// log10((N-1)*N1 / (2*N2)).
WoeEstimate woe_gg(const FrequencySpectrum& spec);

/// True counterpart log10(theta1/theta2) for a known population.
double woe_gg_true(const Population& pop, Eigen::Index n);

/// Brenner's kappa likelihood-ratio estimate N^2/(N-N1).
double brenner_kappa(const FrequencySpectrum& spec);

}  // namespace rhm
