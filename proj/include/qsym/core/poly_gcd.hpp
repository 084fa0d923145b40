#pragma once

#include <optional>

#include "qsym/core/multipoly.hpp"

namespace qsym {

// Positive rational c such that p / c has coprime integer coefficients (1 for p = 0).
Rational numeric_content(const PolyQ& p);

// p divided by its numeric content, with positive leading coefficient.
PolyQ primitive_part(const PolyQ& p);

// Quotient a / b when b divides a exactly, std::nullopt otherwise.
std::optional<PolyQ> divide_exact(const PolyQ& a, const PolyQ& b);

// Greatest common divisor over Q, normalized to a primitive integer polynomial with
// positive leading coefficient. gcd(0, 0) = 0.
PolyQ poly_gcd(const PolyQ& a, const PolyQ& b);

}  // namespace qsym
