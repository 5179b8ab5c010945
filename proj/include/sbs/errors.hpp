#pragma once

#include <stdexcept>
#include <string>

namespace sbs {

/// Thrown when a requested word or node does not exist in the structure queried.
class NotFoundError : public std::out_of_range {
public:
    explicit NotFoundError(const std::string& what) : std::out_of_range(what) {}
};

/// Thrown when a regression design matrix is (numerically) rank deficient.
/// The message names the lag block that triggered the failure.
class DegenerateFitError : public std::runtime_error {
public:
    explicit DegenerateFitError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when input data cannot be read or violates a corpus invariant.
/// The message names the offending file and line.
class IngestionError : public std::runtime_error {
public:
    explicit IngestionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sbs
