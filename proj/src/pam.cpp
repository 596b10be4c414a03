#include "rhm/pam.hpp"

#include <limits>
#include <vector>

#include "rhm/errors.hpp"

namespace rhm {

namespace {

struct DistinctTypes {
    Eigen::MatrixXi types;   // D x r, lexicographically sorted
    Eigen::VectorXd weight;  // multiplicity of each type
};

DistinctTypes collect_distinct(const Database& db) {
    auto counts = db.type_counts();
    DistinctTypes out;
    out.types.resize(static_cast<Eigen::Index>(counts.size()), db.locus_count());
    out.weight.resize(static_cast<Eigen::Index>(counts.size()));
    Eigen::Index i = 0;
    for (const auto& [h, m] : counts) {
        out.types.row(i) = h;
        out.weight[i] = m;
        ++i;
    }
    return out;
}

Eigen::MatrixXd manhattan_matrix(const Eigen::MatrixXi& types) {
    const Eigen::Index d = types.rows();
    Eigen::MatrixXd dist(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        dist(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < d; ++j) {
            const double v = (types.row(i) - types.row(j)).cwiseAbs().sum();
            dist(i, j) = v;
            dist(j, i) = v;
        }
    }
    return dist;
}

}  // namespace

Eigen::MatrixXi pam_init(const Database& db, int c) {
    if (db.size() < 1) throw config_error("PAM on an empty database");
    const auto distinct = collect_distinct(db);
    const Eigen::Index d = distinct.types.rows();
    if (c < 1 || c > d) {
        throw fit_error("requested " + std::to_string(c) + " medoids but the database has " +
                        std::to_string(d) + " distinct haplotypes");
    }
    const Eigen::MatrixXd dist = manhattan_matrix(distinct.types);
    const Eigen::VectorXd& w = distinct.weight;

    std::vector<Eigen::Index> medoids;
    std::vector<bool> is_medoid(static_cast<std::size_t>(d), false);

    // nearest[i] / second[i]: distances to the closest and second-closest medoid
    Eigen::VectorXd nearest = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
    Eigen::VectorXd second = nearest;

    auto refresh_nearest = [&] {
        for (Eigen::Index i = 0; i < d; ++i) {
            double n1 = std::numeric_limits<double>::infinity();
            double n2 = n1;
            for (Eigen::Index m : medoids) {
                const double v = dist(i, m);
                if (v < n1) {
                    n2 = n1;
                    n1 = v;
                } else if (v < n2) {
                    n2 = v;
                }
            }
            nearest[i] = n1;
            second[i] = n2;
        }
    };

    // BUILD
    for (int step = 0; step < c; ++step) {
        Eigen::Index best = -1;
        double best_cost = std::numeric_limits<double>::infinity();
        for (Eigen::Index cand = 0; cand < d; ++cand) {
            if (is_medoid[static_cast<std::size_t>(cand)]) continue;
            double cost = 0.0;
            for (Eigen::Index i = 0; i < d; ++i) {
                cost += w[i] * std::min(nearest[i], dist(i, cand));
            }
            if (cost < best_cost - 1e-12) {
                best_cost = cost;
                best = cand;
            }
        }
        medoids.push_back(best);
        is_medoid[static_cast<std::size_t>(best)] = true;
        refresh_nearest();
    }

    // SWAP
    for (int pass = 0; pass < 500; ++pass) {
        double best_delta = -1e-9;
        Eigen::Index best_m = -1, best_h = -1;
        for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
            const Eigen::Index m = medoids[mi];
            for (Eigen::Index h = 0; h < d; ++h) {
                if (is_medoid[static_cast<std::size_t>(h)]) continue;
                double delta = 0.0;
                for (Eigen::Index i = 0; i < d; ++i) {
                    const double dih = dist(i, h);
                    if (dist(i, m) > nearest[i]) {
                        // i is not served by m
                        if (dih < nearest[i]) delta += w[i] * (dih - nearest[i]);
                    } else {
                        delta += w[i] * (std::min(dih, second[i]) - nearest[i]);
                    }
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_m = m;
                    best_h = h;
                }
            }
        }
        if (best_m < 0) break;
        is_medoid[static_cast<std::size_t>(best_m)] = false;
        is_medoid[static_cast<std::size_t>(best_h)] = true;
        for (auto& m : medoids) {
            if (m == best_m) m = best_h;
        }
        refresh_nearest();
    }

    Eigen::MatrixXi out(c, db.locus_count());
    for (int j = 0; j < c; ++j) out.row(j) = distinct.types.row(medoids[static_cast<std::size_t>(j)]);
    return out;
}

}  // namespace rhm
