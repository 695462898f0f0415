#pragma once

#include <stdexcept>
#include <string>

namespace cloudtherm {

// Malformed or inconsistent input data (CSV rows, manifests, series invariants).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Two series share too few years to be combined.
class AlignmentError : public DataError {
public:
    explicit AlignmentError(const std::string& what) : DataError(what) {}
};

// Degenerate or singular regression problem.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failures (missing file, unwritable destination).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cloudtherm
