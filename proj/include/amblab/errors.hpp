#pragma once

#include <stdexcept>
#include <string>

namespace amblab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested time-frequency shift does not land on the sample lattice.
struct OffGridShift : Error {
    using Error::Error;
};

/// Two operands live on different grids.
struct GridMismatch : Error {
    using Error::Error;
};

/// A window with zero norm was supplied where a nonzero one is required.
struct ZeroWindow : Error {
    using Error::Error;
};

/// A signal with zero norm was supplied where a nonzero one is required.
struct ZeroSignal : Error {
    using Error::Error;
};

/// A domain's bounding box does not fit inside the grid's covered box.
struct DomainOutsideGrid : Error {
    using Error::Error;
};

/// Rasterization produced no cells.
struct EmptyDomain : Error {
    using Error::Error;
};

/// Dilation factor must be strictly positive.
struct InvalidDilation : Error {
    using Error::Error;
};

/// Lattice constants are not integer multiples of the grid steps.
struct LatticeIncommensurate : Error {
    using Error::Error;
};

/// Truncated lattice misses a non-negligible share of the coefficient mass.
struct TruncationLeakage : Error {
    using Error::Error;
};

/// An iteration failed to reach its tolerance within the iteration budget.
struct NoConvergence : Error {
    using Error::Error;
};

/// Objective or gradient evaluated to NaN or infinity.
struct NonFiniteObjective : Error {
    using Error::Error;
};

/// Malformed configuration or file schema.
struct SchemaError : Error {
    using Error::Error;
};

/// File could not be read or written.
struct IoError : Error {
    using Error::Error;
};

/// Invalid argument value (sizes, exponents, iteration counts).
struct InvalidArgument : Error {
    using Error::Error;
};

} // namespace amblab
