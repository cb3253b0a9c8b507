#pragma once

#include <mfour/ore.hpp>

#include <string>

namespace mfour {

// Operator text: atoms x, dx, s, T, Ti, xi (x^-1, Laurent only), x1..xd and
// dx1..dxd (Weyl rank d), integer and a/b literals, binary + - *, ^ with a
// nonnegative integer exponent, unary minus, parentheses.

ShiftOp parse_shift(const std::string& text);
WeylOp parse_weyl(const std::string& text, int rank = 1);
LaurentWeylOp parse_laurent(const std::string& text);

Operator parse_operator(const std::string& text, Algebra algebra, int rank = 1);

}  // namespace mfour
