#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rhm/good_turing.hpp"
#include "rhm/mixture.hpp"
#include "rhm/stats.hpp"

namespace rhm {

enum class Method { DiscreteLaplace, GeneralizedGood, Kappa, Naive };

std::string method_name(Method m);

/// Error-quantification experiment: repeatedly sample a small database
/// plus an unseen matching haplotype from a ground-truth population and
/// compare each method's estimate with the known true value.
struct ExperimentConfig {
    // ground truth: either a synthetic mixture or an explicit population
    std::optional<MixtureModel> synthetic;
    Eigen::Index population_size = 20000;
    std::optional<Population> population;

    Eigen::Index db_size = 100;
    int replicates = 1000;
    std::vector<int> loci;  // 0-based subset; empty keeps all loci
    int max_rejection_factor = 10;
    std::uint64_t seed = 0;
    std::vector<Method> methods = {Method::DiscreteLaplace, Method::GeneralizedGood,
                                   Method::Kappa};
    EmConfig em;
};

struct MethodOutcome {
    std::optional<double> estimate;
    std::optional<double> error;  // estimate - truth, when both are defined
    std::string status = "ok";
};

struct ReplicateRecord {
    int index = 0;
    bool scenario_ok = false;
    std::string scenario_status = "ok";
    std::optional<double> truth_dl;  // log10(1/f_x) from the population
    int n1 = 0;
    int n2 = 0;
    std::vector<std::pair<Method, MethodOutcome>> outcomes;
};

struct MethodSummary {
    std::optional<SummaryStats> estimates;
    std::optional<SummaryStats> errors;
    int n_effective = 0;
    int n_excluded = 0;
};

struct ExperimentResult {
    std::vector<ReplicateRecord> records;
    std::optional<double> truth_gg;  // log10(theta1/theta2), constant per experiment
    std::optional<SummaryStats> truth_dl_summary;
    std::vector<std::pair<Method, MethodSummary>> summaries;
};

/// Draws P haplotypes from the mixture and returns their empirical
/// frequencies as the ground-truth population.
Population synth_population(const MixtureModel& spec, Eigen::Index population_size,
                            std::uint64_t seed);

struct MatchScenario {
    Database db;
    Haplotype profile;
    bool ok = false;
    int attempts = 0;
};

/// N i.i.d. draws plus rejection sampling for a haplotype absent from
/// them. A blown rejection budget is reported, not thrown.
MatchScenario sample_match_scenario(const Population& pop, Eigen::Index n, int max_attempts,
                                    Rng& rng);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// result emission (byte-stable given identical results)
std::string records_csv(const ExperimentResult& result);
std::string summary_json(const ExperimentResult& result);
std::string boxplot_csv(const ExperimentResult& result);
std::string summary_table(const ExperimentResult& result);

}  // namespace rhm
