#pragma once

#include <stdexcept>
#include <string>

namespace hzent {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A ladder string that would move amplitude out of the conserved sector.
struct SectorViolation : Error {
    using Error::Error;
};

// Hamiltonian parameters and basis describe different sectors.
struct BasisMismatch : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

// Order m <= 0 for a moment bundle.
struct OrderTooHigh : Error {
    using Error::Error;
};

// Entanglement-depth lookup ran past the end of the C_J table.
struct TableExhausted : Error {
    using Error::Error;
};

struct NumericalFailure : Error {
    using Error::Error;
};

}  // namespace hzent
