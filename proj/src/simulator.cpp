#include "rhm/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rhm/errors.hpp"

namespace rhm {

namespace {

// fixed-format doubles so repeated runs emit identical bytes
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string opt_fmt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string{};
}

bool uses_dl_truth(Method m) {
    return m == Method::DiscreteLaplace || m == Method::Naive;
}

nlohmann::json stats_json(const SummaryStats& s) {
    nlohmann::json j{{"min", s.min},   {"q1", s.q1}, {"median", s.median}, {"mean", s.mean},
                     {"q3", s.q3},     {"max", s.max}, {"n", s.n}};
    if (s.sd) j["sd"] = *s.sd;
    return j;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::DiscreteLaplace: return "dl";
        case Method::GeneralizedGood: return "gg";
        case Method::Kappa: return "kappa";
        case Method::Naive: return "naive";
    }
    return "?";
}

Population synth_population(const MixtureModel& spec, Eigen::Index population_size,
                            std::uint64_t seed) {
    if (population_size < 1) throw config_error("population size must be positive");
    const int c = spec.components();
    const int r = spec.loci();
    if (c < 1 || r < 1) throw config_error("mixture needs at least one component and one locus");
    if (std::abs(spec.tau.sum() - 1.0) > 1e-9) throw config_error("mixture weights must sum to 1");

    Rng rng(seed);
    Eigen::VectorXd cdf(c);
    double acc = 0.0;
    for (int j = 0; j < c; ++j) {
        acc += spec.tau[j];
        cdf[j] = acc;
    }
    std::map<Haplotype, long long, HaplotypeLess> counts;
    Haplotype h(r);
    for (Eigen::Index i = 0; i < population_size; ++i) {
        const double u = uniform01(rng);
        int j = 0;
        while (j + 1 < c && u >= cdf[j]) ++j;
        for (int k = 0; k < r; ++k) h[k] = sample(spec.locus(j, k), rng);
        ++counts[h];
    }
    Eigen::MatrixXi types(static_cast<Eigen::Index>(counts.size()), r);
    Eigen::VectorXd probs(static_cast<Eigen::Index>(counts.size()));
    Eigen::Index s = 0;
    for (const auto& [hap, cnt] : counts) {
        types.row(s) = hap;
        probs[s] = static_cast<double>(cnt) / static_cast<double>(population_size);
        ++s;
    }
    probs /= probs.sum();
    return Population(std::move(types), std::move(probs));
}

MatchScenario sample_match_scenario(const Population& pop, Eigen::Index n, int max_attempts,
                                    Rng& rng) {
    MatchScenario sc;
    Eigen::MatrixXi records(n, pop.locus_count());
    std::set<Haplotype, HaplotypeLess> seen;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Haplotype h = pop.draw(rng);
        records.row(i) = h;
        seen.insert(h);
    }
    sc.db = Database(std::move(records));
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        sc.attempts = attempt;
        const Haplotype x = pop.draw(rng);
        if (!seen.count(x)) {
            sc.profile = x;
            sc.ok = true;
            return sc;
        }
    }
    return sc;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.replicates < 1) throw config_error("replicates must be at least 1");
    if (cfg.db_size < 2) throw config_error("database size must be at least 2");
    if (cfg.methods.empty()) throw config_error("no methods enabled");

    Population pop = cfg.population
                         ? *cfg.population
                         : synth_population(cfg.synthetic ? *cfg.synthetic
                                                          : throw config_error(
                                                                "no population source configured"),
                                            cfg.population_size, derive_seed(cfg.seed, ~0ULL));
    if (!cfg.loci.empty()) pop = pop.project(cfg.loci);

    ExperimentResult result;
    try {
        result.truth_gg = woe_gg_true(pop, cfg.db_size);
    } catch (const undefined_estimator&) {
        result.truth_gg.reset();
    }

    const int max_attempts = cfg.max_rejection_factor * static_cast<int>(cfg.db_size);
    result.records.reserve(static_cast<std::size_t>(cfg.replicates));

    for (int rep = 0; rep < cfg.replicates; ++rep) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(rep)));
        ReplicateRecord rec;
        rec.index = rep;
        MatchScenario sc = sample_match_scenario(pop, cfg.db_size, max_attempts, rng);
        rec.scenario_ok = sc.ok;
        if (!sc.ok) {
            rec.scenario_status = "rejection budget exhausted after " +
                                  std::to_string(sc.attempts) + " attempts";
            for (Method m : cfg.methods) {
                rec.outcomes.emplace_back(m, MethodOutcome{{}, {}, rec.scenario_status});
            }
            result.records.push_back(std::move(rec));
            continue;
        }

        const double fx = pop.frequency(sc.profile);
        rec.truth_dl = -std::log10(fx);
        const FrequencySpectrum spec = frequency_spectrum(sc.db);
        rec.n1 = spec.singletons();
        rec.n2 = spec.doubletons();

        for (Method m : cfg.methods) {
            MethodOutcome out;
            try {
                switch (m) {
                    case Method::DiscreteLaplace:
                        out.estimate = woe_dl(sc.db, sc.profile, cfg.em).log10_lr;
                        break;
                    case Method::GeneralizedGood:
                        out.estimate = woe_gg(spec).log10_lr;
                        break;
                    case Method::Kappa:
                        out.estimate = std::log10(brenner_kappa(spec));
                        break;
                    case Method::Naive: {
                        const double f = relative_frequency(sc.db, sc.profile);
                        if (f == 0.0) {
                            out.status = "undefined: profile unseen, relative frequency 0";
                        } else {
                            out.estimate = -std::log10(f);
                        }
                        break;
                    }
                }
            } catch (const undefined_estimator& e) {
                out.status = std::string("undefined: ") + e.what();
            } catch (const fit_error& e) {
                out.status = std::string("fit failed: ") + e.what();
            }
            if (out.estimate) {
                const auto truth = uses_dl_truth(m) ? rec.truth_dl : result.truth_gg;
                if (truth) out.error = *out.estimate - *truth;
            }
            rec.outcomes.emplace_back(m, std::move(out));
        }
        result.records.push_back(std::move(rec));
    }

    // summaries, in the configured method order
    std::vector<double> truths;
    for (const auto& rec : result.records) {
        if (rec.truth_dl) truths.push_back(*rec.truth_dl);
    }
    if (!truths.empty()) result.truth_dl_summary = summarize(truths);

    for (Method m : cfg.methods) {
        MethodSummary summary;
        std::vector<double> ests, errs;
        for (const auto& rec : result.records) {
            for (const auto& [mm, out] : rec.outcomes) {
                if (mm != m) continue;
                if (out.estimate) {
                    ests.push_back(*out.estimate);
                    ++summary.n_effective;
                } else {
                    ++summary.n_excluded;
                }
                if (out.error) errs.push_back(*out.error);
            }
        }
        if (!ests.empty()) summary.estimates = summarize(ests);
        if (!errs.empty()) summary.errors = summarize(errs);
        result.summaries.emplace_back(m, std::move(summary));
    }
    return result;
}

std::string records_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "replicate,method,estimate,truth,error,N1,N2,status\n";
    for (const auto& rec : result.records) {
        for (const auto& [m, outcome] : rec.outcomes) {
            const auto truth = uses_dl_truth(m) ? rec.truth_dl : result.truth_gg;
            out << rec.index << ',' << method_name(m) << ',' << opt_fmt(outcome.estimate) << ','
                << opt_fmt(truth) << ',' << opt_fmt(outcome.error) << ',' << rec.n1 << ','
                << rec.n2 << ",\"" << outcome.status << "\"\n";
        }
    }
    return out.str();
}

std::string summary_json(const ExperimentResult& result) {
    nlohmann::json j;
    if (result.truth_gg) j["truth_gg"] = *result.truth_gg;
    if (result.truth_dl_summary) j["truth_dl"] = stats_json(*result.truth_dl_summary);
    for (const auto& [m, summary] : result.summaries) {
        nlohmann::json jm;
        jm["n_effective"] = summary.n_effective;
        jm["n_excluded"] = summary.n_excluded;
        if (summary.estimates) jm["estimate"] = stats_json(*summary.estimates);
        if (summary.errors) jm["error"] = stats_json(*summary.errors);
        j["methods"][method_name(m)] = std::move(jm);
    }
    return j.dump(2) + "\n";
}

std::string boxplot_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "method,metric,low_whisker,q1,median,q3,high_whisker,outliers\n";
    auto emit = [&](const std::string& name, const std::string& metric,
                    const std::vector<double>& values) {
        if (values.empty()) return;
        const BoxplotData b = boxplot_data(values);
        out << name << ',' << metric << ',' << fmt(b.low_whisker) << ',' << fmt(b.q1) << ','
            << fmt(b.median) << ',' << fmt(b.q3) << ',' << fmt(b.high_whisker);
        for (double v : b.outliers) out << ',' << fmt(v);
        out << '\n';
    };
    std::vector<double> truths;
    for (const auto& rec : result.records) {
        if (rec.truth_dl) truths.push_back(*rec.truth_dl);
    }
    emit("truth_dl", "truth", truths);
    for (const auto& [m, summary] : result.summaries) {
        std::vector<double> ests, errs;
        for (const auto& rec : result.records) {
            for (const auto& [mm, outcome] : rec.outcomes) {
                if (mm != m) continue;
                if (outcome.estimate) ests.push_back(*outcome.estimate);
                if (outcome.error) errs.push_back(*outcome.error);
            }
        }
        emit(method_name(m), "estimate", ests);
        emit(method_name(m), "error", errs);
    }
    return out.str();
}

std::string summary_table(const ExperimentResult& result) {
    std::ostringstream out;
    char buf[160];
    auto row = [&](const std::string& label, const SummaryStats& s) {
        std::snprintf(buf, sizeof(buf), "%-14s %8.3f %8.3f %8.3f %8.3f %8.3f %8.3f ", label.c_str(),
                      s.min, s.q1, s.median, s.mean, s.q3, s.max);
        out << buf;
        if (s.sd) {
            std::snprintf(buf, sizeof(buf), "%8.3f\n", *s.sd);
            out << buf;
        } else {
            out << "       -\n";
        }
    };
    std::snprintf(buf, sizeof(buf), "%-14s %8s %8s %8s %8s %8s %8s %8s\n", "", "Min", "1st Qu.",
                  "Median", "Mean", "3rd Qu.", "Max", "s.d.");
    out << buf;
    if (result.truth_dl_summary) row("truth_dl", *result.truth_dl_summary);
    if (result.truth_gg) {
        std::snprintf(buf, sizeof(buf), "%-14s %8.3f (constant)\n", "truth_gg", *result.truth_gg);
        out << buf;
    }
    for (const auto& [m, summary] : result.summaries) {
        if (summary.estimates) row(method_name(m), *summary.estimates);
        if (summary.errors) row(method_name(m) + "_error", *summary.errors);
        if (summary.n_excluded > 0) {
            out << method_name(m) << ": " << summary.n_excluded << " of "
                << summary.n_effective + summary.n_excluded << " replicates excluded\n";
        }
    }
    return out.str();
}

}  // namespace rhm
