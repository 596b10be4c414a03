#include "rhm/config.hpp"

#include <sstream>
#include <vector>

#include "rhm/errors.hpp"

namespace rhm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double to_double(const std::string& s, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("invalid number '" + s + "' for " + key);
    }
}

long to_long(const std::string& s, const std::string& key) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("invalid integer '" + s + "' for " + key);
    }
}

bool to_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw config_error("invalid boolean '" + s + "' for " + key);
}

// 1-based "a-b" range or comma list -> 0-based indices
std::vector<int> parse_loci(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split(s, ',')) {
        const auto dash = part.find('-');
        if (dash != std::string::npos && dash > 0) {
            const long a = to_long(part.substr(0, dash), "loci");
            const long b = to_long(part.substr(dash + 1), "loci");
            if (a < 1 || b < a) throw config_error("invalid locus range '" + part + "'");
            for (long k = a; k <= b; ++k) out.push_back(static_cast<int>(k - 1));
        } else {
            const long k = to_long(part, "loci");
            if (k < 1) throw config_error("locus indices are 1-based");
            out.push_back(static_cast<int>(k - 1));
        }
    }
    return out;
}

struct ComponentLine {
    double weight;
    std::vector<double> p;
    std::vector<int> y;
};

ComponentLine parse_component(const std::string& value) {
    const auto parts = split(value, '|');
    if (parts.size() != 3) {
        throw config_error("component needs 'weight | p1,..,pr | y1,..,yr', got '" + value + "'");
    }
    ComponentLine comp;
    comp.weight = to_double(parts[0], "component weight");
    for (const auto& f : split(parts[1], ',')) comp.p.push_back(to_double(f, "component p"));
    for (const auto& f : split(parts[2], ',')) {
        comp.y.push_back(static_cast<int>(to_long(f, "component y")));
    }
    if (comp.p.size() != comp.y.size() || comp.p.empty()) {
        throw config_error("component p and y lists must have equal, nonzero length");
    }
    return comp;
}

}  // namespace

ExperimentSpec parse_experiment_config(const std::string& text) {
    ExperimentSpec spec;
    ExperimentConfig& cfg = spec.cfg;
    cfg.methods.clear();

    std::string source = "synthetic";
    std::vector<ComponentLine> components;
    bool dl = true, gg = true, kappa = true, naive = false;

    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (section == "population") {
            if (key == "source") source = value;
            else if (key == "file") spec.population_file = value;
            else if (key == "pop_size") cfg.population_size = to_long(value, key);
            else if (key == "component") components.push_back(parse_component(value));
            else throw config_error("unknown population key '" + key + "'");
        } else if (section == "sampling") {
            if (key == "db_size") cfg.db_size = to_long(value, key);
            else if (key == "replicates") cfg.replicates = static_cast<int>(to_long(value, key));
            else if (key == "loci") cfg.loci = parse_loci(value);
            else if (key == "max_rejection_factor") {
                cfg.max_rejection_factor = static_cast<int>(to_long(value, key));
            } else throw config_error("unknown sampling key '" + key + "'");
        } else if (section == "methods") {
            if (key == "dl") dl = to_bool(value, key);
            else if (key == "gg") gg = to_bool(value, key);
            else if (key == "kappa") kappa = to_bool(value, key);
            else if (key == "naive") naive = to_bool(value, key);
            else throw config_error("unknown methods key '" + key + "'");
        } else if (section == "em") {
            if (key == "max_iterations") cfg.em.max_iterations = static_cast<int>(to_long(value, key));
            else if (key == "rel_tol") cfg.em.rel_tol = to_double(value, key);
            else if (key == "c_min") cfg.em.c_min = static_cast<int>(to_long(value, key));
            else if (key == "c_max") cfg.em.c_max = static_cast<int>(to_long(value, key));
            else if (key == "add_profile") cfg.em.add_profile_to_db = to_bool(value, key);
            else throw config_error("unknown em key '" + key + "'");
        } else {
            throw config_error("line " + std::to_string(lineno) + ": key '" + key +
                               "' outside a known section");
        }
    }

    if (dl) cfg.methods.push_back(Method::DiscreteLaplace);
    if (gg) cfg.methods.push_back(Method::GeneralizedGood);
    if (kappa) cfg.methods.push_back(Method::Kappa);
    if (naive) cfg.methods.push_back(Method::Naive);

    if (source == "synthetic") {
        if (components.empty()) {
            throw config_error("synthetic population needs at least one component line");
        }
        const auto r = components.front().p.size();
        MixtureModel model;
        model.tau.resize(static_cast<Eigen::Index>(components.size()));
        model.p.resize(static_cast<Eigen::Index>(components.size()), static_cast<Eigen::Index>(r));
        model.y.resize(static_cast<Eigen::Index>(components.size()), static_cast<Eigen::Index>(r));
        for (std::size_t j = 0; j < components.size(); ++j) {
            const auto& comp = components[j];
            if (comp.p.size() != r) throw config_error("components disagree on locus count");
            model.tau[static_cast<Eigen::Index>(j)] = comp.weight;
            for (std::size_t k = 0; k < r; ++k) {
                model.p(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = comp.p[k];
                model.y(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = comp.y[k];
            }
        }
        const double total = model.tau.sum();
        if (!(total > 0.0)) throw config_error("component weights must be positive");
        model.tau /= total;
        cfg.synthetic = std::move(model);
    } else if (source == "file") {
        if (spec.population_file.empty()) {
            throw config_error("population source 'file' needs a file = path entry");
        }
    } else {
        throw config_error("population source must be 'synthetic' or 'file'");
    }
    return spec;
}

}  // namespace rhm
