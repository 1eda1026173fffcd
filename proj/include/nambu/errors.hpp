#pragma once

#include <stdexcept>
#include <string>

namespace nambu {

// Raised when a product (or substitution) would exceed the module-level
// monomial degree cap; catches runaway symbolic expansion.
struct DegreeCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PolyParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownScheme : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A scheme promised palindromic produced a nonzero first-order term.
struct NonPalindromicScheme : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The shadow linear system has no polynomial solution at the requested degree.
struct InconsistentSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientSpan : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A symbolic object did not have the shape an algorithm relies on
// (e.g. conserved dynamics not in linear-oscillator normal form).
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nambu
