#pragma once

#include <stdexcept>
#include <string>

namespace qglab {

// Tensors of the wrong shape, malformed files, unknown names.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed data that violates a hard requirement (non-faithful Haar state, bad group table).
class InvalidInstance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Block separation or an iterative solver failed to resolve within tolerance.
class NumericalDegeneracy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotInvertible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fock dimension above the configured cap.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OwnerMismatch : public std::logic_error {
public:
    OwnerMismatch() : std::logic_error("operands belong to different quantum groups") {}
};

}  // namespace qglab
