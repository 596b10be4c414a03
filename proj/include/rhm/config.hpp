#pragma once

#include <string>

#include "rhm/simulator.hpp"

namespace rhm {

/// Parsed experiment configuration. When `population_file` is non-empty
/// the caller loads that file into cfg.population before running.
struct ExperimentSpec {
    ExperimentConfig cfg;
    std::string population_file;
};

/// Flat INI-style config: `[section]` headers, `key = value` lines,
/// `#` comments. Sections: population, sampling, methods, em.
/// Synthetic mixtures use repeated `component = weight | p1,..,pr | y1,..,yr`
/// lines.
ExperimentSpec parse_experiment_config(const std::string& text);

}  // namespace rhm
