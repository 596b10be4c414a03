#include "rhm/good_turing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rhm/errors.hpp"

namespace rhm {

Population::Population(Eigen::MatrixXi types, Eigen::VectorXd probs)
    : types_(std::move(types)), probs_(std::move(probs)) {
    if (types_.rows() != probs_.size() || types_.rows() < 1) {
        throw config_error("population needs one probability per type");
    }
    double total = 0.0;
    cdf_.resize(probs_.size());
    for (Eigen::Index s = 0; s < probs_.size(); ++s) {
        if (!(probs_[s] > 0.0)) throw config_error("population probabilities must be positive");
        total += probs_[s];
        cdf_[s] = total;
    }
    // accumulation noise grows with the type count; 1e-12 applies to
    // modest tables
    const double tol = std::max(1e-12, static_cast<double>(probs_.size()) *
                                           std::numeric_limits<double>::epsilon());
    if (std::abs(total - 1.0) > tol) {
        throw config_error("population probabilities sum to " + std::to_string(total));
    }
    cdf_[probs_.size() - 1] = 1.0;
    for (Eigen::Index s = 0; s < types_.rows(); ++s) {
        if (!index_.emplace(types_.row(s), probs_[s]).second) {
            throw config_error("duplicate haplotype in population table");
        }
    }
}

double Population::frequency(const Haplotype& h) const {
    auto it = index_.find(h);
    return it == index_.end() ? 0.0 : it->second;
}

Haplotype Population::draw(Rng& rng) const {
    const double u = uniform01(rng);
    const auto* begin = cdf_.data();
    const auto* pos = std::upper_bound(begin, begin + cdf_.size(), u);
    const Eigen::Index s = std::min<Eigen::Index>(pos - begin, cdf_.size() - 1);
    return types_.row(s);
}

Population Population::project(const std::vector<int>& loci) const {
    if (loci.empty()) throw config_error("locus subset is empty");
    for (int k : loci) {
        if (k < 0 || k >= locus_count()) {
            throw config_error("locus index " + std::to_string(k + 1) + " out of range");
        }
    }
    std::map<Haplotype, double, HaplotypeLess> merged;
    for (Eigen::Index s = 0; s < type_count(); ++s) {
        Haplotype h(static_cast<Eigen::Index>(loci.size()));
        for (std::size_t j = 0; j < loci.size(); ++j) h[static_cast<Eigen::Index>(j)] = types_(s, loci[j]);
        merged[h] += probs_[s];
    }
    Eigen::MatrixXi types(static_cast<Eigen::Index>(merged.size()),
                          static_cast<Eigen::Index>(loci.size()));
    Eigen::VectorXd probs(static_cast<Eigen::Index>(merged.size()));
    Eigen::Index s = 0;
    for (const auto& [h, p] : merged) {
        types.row(s) = h;
        probs[s] = p;
        ++s;
    }
    probs /= probs.sum();
    return Population(std::move(types), std::move(probs));
}

Population load_population(const std::string& text) {
    const Database raw = parse_database(text);  // alleles plus trailing count column
    if (raw.locus_count() < 2) {
        throw parse_error("population rows need at least one allele and a count");
    }
    const Eigen::Index r = raw.locus_count() - 1;
    std::map<Haplotype, long long, HaplotypeLess> counts;
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
        const int count = raw.records()(i, r);
        if (count < 1) {
            throw parse_error("row " + std::to_string(i + 1) + ": count must be positive");
        }
        counts[raw.records().row(i).head(r)] += count;
    }
    long long total = 0;
    for (const auto& [h, c] : counts) total += c;
    Eigen::MatrixXi types(static_cast<Eigen::Index>(counts.size()), r);
    Eigen::VectorXd probs(static_cast<Eigen::Index>(counts.size()));
    Eigen::Index s = 0;
    for (const auto& [h, c] : counts) {
        types.row(s) = h;
        probs[s] = static_cast<double>(c) / static_cast<double>(total);
        ++s;
    }
    probs /= probs.sum();
    return Population(std::move(types), std::move(probs));
}

std::string serialize_population(const Population& pop, Eigen::Index total_count) {
    std::ostringstream out;
    for (Eigen::Index s = 0; s < pop.type_count(); ++s) {
        for (Eigen::Index k = 0; k < pop.locus_count(); ++k) out << pop.types()(s, k) << ',';
        out << static_cast<long long>(std::llround(pop.probs()[s] * static_cast<double>(total_count)))
            << '\n';
    }
    return out.str();
}

double theta1_hat(const FrequencySpectrum& spec) {
    if (spec.n < 1) throw config_error("empty spectrum");
    return static_cast<double>(spec.singletons()) / static_cast<double>(spec.n);
}

double theta2_hat(const FrequencySpectrum& spec) {
    if (spec.n < 2) throw config_error("theta2 needs a sample of at least 2");
    const double n = static_cast<double>(spec.n);
    return 2.0 * spec.doubletons() / (n * (n - 1.0));
}

double theta_m_hat(const FrequencySpectrum& spec, int m) {
    if (m < 1 || m > spec.n) {
        throw config_error("multiplicity " + std::to_string(m) + " out of range for n=" +
                           std::to_string(spec.n));
    }
    double binom = 1.0;  // C(n, m)
    for (int i = 1; i <= m; ++i) {
        binom *= static_cast<double>(spec.n - m + i) / static_cast<double>(i);
    }
    return static_cast<double>(spec.count(m)) / binom;
}

double theta_exact(const Population& pop, Eigen::Index n, int m) {
    if (m < 1 || n < m) throw config_error("need n >= m >= 1");
    double acc = 0.0;
    for (Eigen::Index s = 0; s < pop.type_count(); ++s) {
        const double p = pop.probs()[s];
        acc += std::pow(p, m) * std::pow(1.0 - p, static_cast<double>(n - m));
    }
    return acc;
}

WoeEstimate woe_gg(const FrequencySpectrum& spec) {
    if (spec.n < 2) throw config_error("estimator needs a sample of at least 2");
    const double n1 = spec.singletons();
    const double n2 = spec.doubletons();
    const double n = static_cast<double>(spec.n);
    if (n2 == 0.0) {
        throw undefined_estimator("no doubletons: likelihood-ratio estimate is infinite");
    }
    if (n1 == 0.0) {
        throw undefined_estimator("no singletons: likelihood-ratio estimate is zero");
    }
    WoeEstimate est;
    est.method = "gg";
    est.log10_lr = std::log10((n - 1.0) * n1 / (2.0 * n2));
    est.diagnostics["N"] = n;
    est.diagnostics["N1"] = n1;
    est.diagnostics["N2"] = n2;
    // variant replacing N-1 by N
    est.diagnostics["log10_lr_napprox"] = std::log10(n * n1 / (2.0 * n2));
    est.note = "theta1(N+1) approximated by theta1(N)";
    return est;
}

double woe_gg_true(const Population& pop, Eigen::Index n) {
    if (n < 2) throw config_error("need n >= 2");
    const double t1 = theta_exact(pop, n, 1);
    const double t2 = theta_exact(pop, n, 2);
    if (t2 <= 0.0) throw undefined_estimator("theta2 is zero for this population");
    if (t1 <= 0.0) throw undefined_estimator("theta1 is zero for this population");
    return std::log10(t1 / t2);
}

double brenner_kappa(const FrequencySpectrum& spec) {
    if (spec.n < 1) throw config_error("empty spectrum");
    const double n = static_cast<double>(spec.n);
    const double n1 = spec.singletons();
    if (n1 >= n) {
        throw undefined_estimator("all records are singletons: kappa estimate is infinite");
    }
    return n * n / (n - n1);
}

}  // namespace rhm
