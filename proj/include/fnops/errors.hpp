#pragma once

#include <stdexcept>
#include <string>

namespace fnops {

/* Malformed input: non-monotone parent map, bad barcode syntax, size
   mismatch.  Maps to exit code 1 in the CLI. */
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/* A search exceeded its node budget.  Maps to exit code 2. */
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/* An internal consistency check failed (e.g. the sign system has no
   solution, which indicates an enumeration bug).  Maps to exit code 3. */
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fnops
