#include "rhm/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rhm/errors.hpp"
#include "rhm/pam.hpp"

namespace rhm {

namespace {

double logsumexp_row(const Eigen::RowVectorXd& v) {
    const double m = v.maxCoeff();
    if (!std::isfinite(m)) return m;
    return m + std::log((v.array() - m).exp().sum());
}

// Per-record component log-densities: L(i,j) = log tau_j + sum_k log f(x_ik).
Eigen::MatrixXd component_loglik(const Database& db, const MixtureModel& model) {
    const Eigen::Index n = db.size();
    const int c = model.components();
    const int r = model.loci();
    Eigen::VectorXd base(c);
    Eigen::MatrixXd logp = model.p.array().log();
    for (int j = 0; j < c; ++j) {
        double b = std::log(model.tau[j]);
        for (int k = 0; k < r; ++k) b += std::log1p(-model.p(j, k)) - std::log1p(model.p(j, k));
        base[j] = b;
    }
    Eigen::MatrixXd out(n, c);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (int j = 0; j < c; ++j) {
            double acc = base[j];
            for (int k = 0; k < r; ++k) {
                acc += std::abs(db.records()(i, k) - model.y(j, k)) * logp(j, k);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

// Smallest value whose cumulative weight reaches half the total, scanning
// records in the pre-sorted locus order.
int weighted_lower_median(const Database& db, int k, const std::vector<Eigen::Index>& order,
                          const Eigen::VectorXd& w) {
    const double half = 0.5 * w.sum();
    double acc = 0.0;
    for (Eigen::Index idx : order) {
        acc += w[idx];
        if (acc >= half - 1e-15) return db.records()(idx, k);
    }
    return db.records()(order.back(), k);
}

}  // namespace

double mixture_log_pmf(const MixtureModel& model, const Haplotype& x) {
    if (x.size() != model.loci()) {
        throw config_error("haplotype has " + std::to_string(x.size()) + " loci, model has " +
                           std::to_string(model.loci()));
    }
    Eigen::RowVectorXd terms(model.components());
    for (int j = 0; j < model.components(); ++j) {
        double acc = std::log(model.tau[j]);
        for (int k = 0; k < model.loci(); ++k) acc += log_pmf(model.locus(j, k), x[k]);
        terms[j] = acc;
    }
    return logsumexp_row(terms);
}

double mixture_pmf(const MixtureModel& model, const Haplotype& x) {
    return std::exp(mixture_log_pmf(model, x));
}

FittedMixture em_fit(const Database& db, int c, const EmConfig& cfg) {
    const Eigen::Index n = db.size();
    const int r = static_cast<int>(db.locus_count());
    if (c < 1) throw fit_error("component count must be at least 1");
    if (c > n) throw fit_error("more components than records");
    if (cfg.max_iterations < 1) throw config_error("max_iterations must be at least 1");
    if (!(cfg.rel_tol > 0.0)) throw config_error("rel_tol must be positive");

    // initial centres and hard assignment
    const Eigen::MatrixXi medoids = pam_init(db, c);
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        int best = 0;
        int best_d = std::numeric_limits<int>::max();
        for (int j = 0; j < c; ++j) {
            const int d = (db.records().row(i) - medoids.row(j)).cwiseAbs().sum();
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        assign[static_cast<std::size_t>(i)] = best;
    }

    MixtureModel model;
    model.tau.resize(c);
    model.p.resize(c, r);
    model.y = medoids;
    for (int j = 0; j < c; ++j) {
        double cnt = 0.0;
        Eigen::VectorXd mad = Eigen::VectorXd::Zero(r);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (assign[static_cast<std::size_t>(i)] != j) continue;
            cnt += 1.0;
            for (int k = 0; k < r; ++k) mad[k] += std::abs(db.records()(i, k) - medoids(j, k));
        }
        model.tau[j] = cnt / static_cast<double>(n);
        for (int k = 0; k < r; ++k) model.p(j, k) = mle_dispersion(cnt > 0 ? mad[k] / cnt : 0.0);
    }

    // per-locus record orders, fixed for the whole fit
    std::vector<std::vector<Eigen::Index>> order(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) {
        auto& ord = order[static_cast<std::size_t>(k)];
        ord.resize(static_cast<std::size_t>(n));
        std::iota(ord.begin(), ord.end(), Eigen::Index{0});
        std::stable_sort(ord.begin(), ord.end(), [&](Eigen::Index a, Eigen::Index b) {
            return db.records()(a, k) < db.records()(b, k);
        });
    }

    FittedMixture fit;
    std::vector<bool> reseeded(static_cast<std::size_t>(c), false);
    double prev_ll = -std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        const Eigen::MatrixXd comp_ll = component_loglik(db, model);
        Eigen::VectorXd row_ll(n);
        for (Eigen::Index i = 0; i < n; ++i) row_ll[i] = logsumexp_row(comp_ll.row(i));
        const double ll = row_ll.sum();
        fit.loglik_trace.push_back(ll);
        fit.iterations = iter + 1;
        if (iter > 0 && std::abs(ll - prev_ll) < cfg.rel_tol * (std::abs(prev_ll) + 1e-12)) {
            fit.converged = true;
            break;
        }
        prev_ll = ll;

        Eigen::MatrixXd resp(n, c);
        for (Eigen::Index i = 0; i < n; ++i) {
            resp.row(i) = (comp_ll.row(i).array() - row_ll[i]).exp();
        }
        const Eigen::VectorXd mass = resp.colwise().sum();

        bool did_reseed = false;
        for (int j = 0; j < c; ++j) {
            if (mass[j] >= 1e-12) continue;
            if (reseeded[static_cast<std::size_t>(j)]) {
                throw fit_error("component " + std::to_string(j + 1) +
                                " emptied twice during EM (c=" + std::to_string(c) + ")");
            }
            reseeded[static_cast<std::size_t>(j)] = true;
            Eigen::Index worst = 0;
            row_ll.minCoeff(&worst);
            model.y.row(j) = db.records().row(worst);
            model.p.row(j).setConstant(0.5);
            model.tau[j] = 1.0 / static_cast<double>(n);
            model.tau /= model.tau.sum();
            did_reseed = true;
        }
        if (did_reseed) continue;  // redo the E-step with the reseeded component

        // M-step
        model.tau = mass / static_cast<double>(n);
        for (int j = 0; j < c; ++j) {
            const Eigen::VectorXd w = resp.col(j);
            for (int k = 0; k < r; ++k) {
                const int y = weighted_lower_median(db, k, order[static_cast<std::size_t>(k)], w);
                double mad = 0.0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    mad += w[i] * std::abs(db.records()(i, k) - y);
                }
                model.y(j, k) = y;
                model.p(j, k) = mle_dispersion(mad / mass[j]);
            }
        }
    }

    fit.model = model;
    fit.loglik = fit.loglik_trace.back();
    fit.bic_value = bic(fit, n);
    return fit;
}

double bic(const FittedMixture& fit, Eigen::Index n) {
    const int c = fit.model.components();
    const int r = fit.model.loci();
    const double k = (c - 1) + 2.0 * c * r;
    return -2.0 * fit.loglik + k * std::log(static_cast<double>(n));
}

std::pair<int, int> resolve_c_range(const Database& db, const EmConfig& cfg) {
    const int distinct = static_cast<int>(db.type_counts().size());
    int hi = cfg.c_max;
    if (hi == 0) {
        hi = std::min<int>({10, std::max<int>(1, static_cast<int>(db.size() / 10)), distinct});
    }
    const int lo = cfg.c_min;
    if (lo < 1 || lo > hi) {
        throw config_error("invalid component range " + std::to_string(lo) + ".." +
                           std::to_string(hi));
    }
    return {lo, hi};
}

FittedMixture select_model(const Database& db, const EmConfig& cfg) {
    const auto [lo, hi] = resolve_c_range(db, cfg);
    FittedMixture best;
    bool have = false;
    std::string failures;
    for (int c = lo; c <= hi; ++c) {
        try {
            FittedMixture fit = em_fit(db, c, cfg);
            if (!have || fit.bic_value < best.bic_value) {
                best = std::move(fit);
                have = true;
            }
        } catch (const fit_error& e) {
            failures += std::string(failures.empty() ? "" : "; ") + "c=" + std::to_string(c) +
                        ": " + e.what();
        }
    }
    if (!have) throw fit_error("every candidate failed: " + failures);
    return best;
}

WoeEstimate woe_dl(const Database& db, const Haplotype& x, const EmConfig& cfg) {
    return woe_dl(db, x, cfg, nullptr);
}

WoeEstimate woe_dl(const Database& db, const Haplotype& x, const EmConfig& cfg,
                   FittedMixture* fit_out) {
    if (db.size() < 1) throw config_error("empty database");
    if (x.size() != db.locus_count()) {
        throw config_error("profile has " + std::to_string(x.size()) + " loci, database has " +
                           std::to_string(db.locus_count()));
    }
    const Database fitted_db = cfg.add_profile_to_db ? db.with_appended(x) : db;
    FittedMixture fit = select_model(fitted_db, cfg);
    const double log_fx = mixture_log_pmf(fit.model, x);

    WoeEstimate est;
    est.method = "dl";
    est.log10_lr = -log_fx / std::log(10.0);
    est.diagnostics["f_x"] = std::exp(log_fx);
    est.diagnostics["c"] = fit.model.components();
    est.diagnostics["bic"] = fit.bic_value;
    est.diagnostics["loglik"] = fit.loglik;
    est.diagnostics["iterations"] = fit.iterations;
    est.diagnostics["converged"] = fit.converged ? 1.0 : 0.0;
    if (fit_out) *fit_out = std::move(fit);
    return est;
}

std::string describe_fit(const FittedMixture& fit) {
    std::ostringstream out;
    const int c = fit.model.components();
    const int r = fit.model.loci();
    out << "components: " << c << "\n"
        << "loglik: " << fit.loglik << "\n"
        << "bic: " << fit.bic_value << "\n"
        << "iterations: " << fit.iterations << (fit.converged ? " (converged)" : " (max reached)")
        << "\n";
    for (int j = 0; j < c; ++j) {
        out << "component " << j + 1 << ": tau=" << fit.model.tau[j] << "\n";
        out << "  y:";
        for (int k = 0; k < r; ++k) out << ' ' << fit.model.y(j, k);
        out << "\n  p:";
        for (int k = 0; k < r; ++k) out << ' ' << fit.model.p(j, k);
        out << "\n";
    }
    return out.str();
}

}  // namespace rhm
