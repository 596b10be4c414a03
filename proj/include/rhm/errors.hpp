#pragma once

#include <stdexcept>
#include <string>

namespace rhm {

/// Malformed input text (database files, population files, config files).
class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration or argument combination.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An estimator that is mathematically undefined on the given sample
/// (e.g. no doubletons for the singleton/doubleton estimator).
class undefined_estimator : public std::runtime_error {
  public:
    explicit undefined_estimator(const std::string& msg) : std::runtime_error(msg) {}
};

/// Model fitting failed (degenerate components, impossible c, ...).
class fit_error : public std::runtime_error {
  public:
    explicit fit_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rhm
