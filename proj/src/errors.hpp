#pragma once

#include <stdexcept>
#include <string>

namespace spinalign {

/// Shape or subsystem-dimension mismatch between operands.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input expected to be Hermitian exceeds the symmetry tolerance.
struct NotHermitianError : std::invalid_argument {
    explicit NotHermitianError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input expected to be a (sub)normalized quantum state is not one.
struct NotAStateError : std::invalid_argument {
    explicit NotAStateError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace spinalign
