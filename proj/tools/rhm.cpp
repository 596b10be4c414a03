#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rhm/config.hpp"
#include "rhm/errors.hpp"
#include "rhm/simulator.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitUndefined = 3;
constexpr int kExitFit = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rhm::parse_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rhm::parse_error("cannot write '" + path + "'");
    out << content;
}

rhm::Haplotype parse_profile(const std::string& text) {
    const rhm::Database one = rhm::parse_database(text);
    return one.record(0);
}

void print_estimate(const rhm::WoeEstimate& est) {
    std::cout << "method: " << est.method << "\n"
              << "woe_log10: " << est.log10_lr << "\n"
              << "lr: " << est.lr() << "\n";
    for (const auto& [key, value] : est.diagnostics) {
        std::cout << key << ": " << value << "\n";
    }
    if (!est.note.empty()) std::cout << "note: " << est.note << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Weight-of-evidence estimation for the rare haplotype match problem"};
    app.require_subcommand(1);

    // spectrum
    std::string spectrum_db;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "Frequency spectrum (m,N_m) of a database");
    cmd_spectrum->add_option("database", spectrum_db, "haplotype database file")->required();

    // estimate
    std::string est_db, est_profile, est_method = "gg";
    rhm::EmConfig est_em;
    auto* cmd_estimate = app.add_subcommand("estimate", "Weight of evidence for a matching profile");
    cmd_estimate->add_option("database", est_db, "haplotype database file")->required();
    cmd_estimate->add_option("--profile", est_profile, "matching haplotype, e.g. '14,30'")
        ->required();
    cmd_estimate->add_option("--method", est_method, "dl, gg, kappa or naive")
        ->check(CLI::IsMember({"dl", "gg", "kappa", "naive"}));
    cmd_estimate->add_option("--c-min", est_em.c_min, "smallest candidate component count");
    cmd_estimate->add_option("--c-max", est_em.c_max, "largest candidate count (0 = auto)");
    cmd_estimate->add_option("--seed", est_em.seed, "random seed");
    cmd_estimate->add_flag("--no-add-profile", "fit without appending the profile to the database");

    // fit-disclap
    std::string fit_db;
    rhm::EmConfig fit_em;
    auto* cmd_fit = app.add_subcommand("fit-disclap", "Fit the discrete Laplace mixture");
    cmd_fit->add_option("database", fit_db, "haplotype database file")->required();
    cmd_fit->add_option("--c-min", fit_em.c_min, "smallest candidate component count");
    cmd_fit->add_option("--c-max", fit_em.c_max, "largest candidate count (0 = auto)");
    cmd_fit->add_option("--seed", fit_em.seed, "random seed");

    // simulate
    std::string sim_config, sim_out = ".";
    std::uint64_t sim_seed = 0;
    auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo error-quantification run");
    cmd_simulate->add_option("--config", sim_config, "experiment config file")->required();
    cmd_simulate->add_option("--seed", sim_seed, "master seed")->required();
    cmd_simulate->add_option("--out", sim_out, "output directory");

    // synth-pop
    std::string pop_config, pop_out;
    std::uint64_t pop_seed = 0;
    auto* cmd_synth = app.add_subcommand("synth-pop", "Synthesize a ground-truth population file");
    cmd_synth->add_option("--config", pop_config, "config with a synthetic [population] section")
        ->required();
    cmd_synth->add_option("--seed", pop_seed, "random seed")->required();
    cmd_synth->add_option("--out", pop_out, "output population file")->required();

    CLI11_PARSE(app, argc, argv);

    if (cmd_spectrum->parsed()) {
        const auto db = rhm::parse_database(read_file(spectrum_db));
        std::cout << rhm::spectrum_csv(rhm::frequency_spectrum(db));
        return 0;
    }

    if (cmd_estimate->parsed()) {
        const auto db = rhm::parse_database(read_file(est_db));
        const auto x = parse_profile(est_profile);
        est_em.add_profile_to_db = cmd_estimate->count("--no-add-profile") == 0;
        if (est_method == "dl") {
            print_estimate(rhm::woe_dl(db, x, est_em));
        } else if (est_method == "naive") {
            const double f = rhm::relative_frequency(db, x);
            if (f == 0.0) {
                throw rhm::undefined_estimator(
                    "profile unseen in the database: relative frequency is 0");
            }
            rhm::WoeEstimate est;
            est.method = "naive";
            est.log10_lr = -std::log10(f);
            est.diagnostics["relative_frequency"] = f;
            print_estimate(est);
        } else {
            const auto spec = rhm::frequency_spectrum(db);
            if (rhm::relative_frequency(db, x) > 0.0) {
                std::cerr << "warning: profile occurs in the database; this is not a rare-match "
                             "scenario\n";
            }
            if (est_method == "gg") {
                print_estimate(rhm::woe_gg(spec));
            } else {
                const double kappa = rhm::brenner_kappa(spec);
                rhm::WoeEstimate est;
                est.method = "kappa";
                est.log10_lr = std::log10(kappa);
                est.diagnostics["N"] = static_cast<double>(spec.n);
                est.diagnostics["N1"] = spec.singletons();
                print_estimate(est);
            }
        }
        return 0;
    }

    if (cmd_fit->parsed()) {
        const auto db = rhm::parse_database(read_file(fit_db));
        const auto [lo, hi] = rhm::resolve_c_range(db, fit_em);
        std::cout << "c,bic,loglik,converged\n";
        rhm::FittedMixture best;
        bool have = false;
        for (int c = lo; c <= hi; ++c) {
            rhm::EmConfig one = fit_em;
            one.c_min = one.c_max = c;
            try {
                auto fit = rhm::select_model(db, one);
                std::cout << c << ',' << fit.bic_value << ',' << fit.loglik << ','
                          << (fit.converged ? 1 : 0) << "\n";
                if (!have || fit.bic_value < best.bic_value) {
                    best = std::move(fit);
                    have = true;
                }
            } catch (const rhm::fit_error& e) {
                throw rhm::fit_error("c=" + std::to_string(c) + ": " + e.what());
            }
        }
        std::cout << "\nselected model\n" << rhm::describe_fit(best);
        return 0;
    }

    if (cmd_simulate->parsed()) {
        auto spec = rhm::parse_experiment_config(read_file(sim_config));
        if (!spec.population_file.empty()) {
            fs::path pop_path(spec.population_file);
            if (pop_path.is_relative()) pop_path = fs::path(sim_config).parent_path() / pop_path;
            spec.cfg.population = rhm::load_population(read_file(pop_path.string()));
        }
        spec.cfg.seed = sim_seed;
        const auto result = rhm::run_experiment(spec.cfg);
        fs::create_directories(sim_out);
        write_file((fs::path(sim_out) / "records.csv").string(), rhm::records_csv(result));
        write_file((fs::path(sim_out) / "summary.json").string(), rhm::summary_json(result));
        write_file((fs::path(sim_out) / "boxplot.csv").string(), rhm::boxplot_csv(result));
        std::cout << rhm::summary_table(result);
        return 0;
    }

    if (cmd_synth->parsed()) {
        const auto spec = rhm::parse_experiment_config(read_file(pop_config));
        if (!spec.cfg.synthetic) {
            throw rhm::config_error("synth-pop needs a synthetic [population] section");
        }
        const auto pop = rhm::synth_population(*spec.cfg.synthetic, spec.cfg.population_size,
                                               pop_seed);
        write_file(pop_out, rhm::serialize_population(pop, spec.cfg.population_size));
        std::cout << "wrote " << pop.type_count() << " types to " << pop_out << "\n";
        return 0;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const rhm::undefined_estimator& e) {
        std::cerr << "estimator undefined: " << e.what() << "\n";
        return kExitUndefined;
    } catch (const rhm::fit_error& e) {
        std::cerr << "fit failed: " << e.what() << "\n";
        return kExitFit;
    } catch (const rhm::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitIo;
    } catch (const rhm::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
