#pragma once

#include <optional>
#include <string_view>

#include "pinchcert/series.hpp"

namespace pinchcert::series {

// Parses a polynomial in t1..tn:
//
//   expr   := term (('+'|'-') term)*        (an optional leading sign is allowed)
//   term   := coeff ('*' factor)* | factor ('*' factor)*
//   factor := 't' NAT ('^' NAT)?
//   coeff  := DECIMAL | NAT '/' NAT
//
// Whitespace is ignored. The arity is the largest variable index unless
// `arity` is given, in which case it must be at least that large. Equal
// monomials are merged. Throws ParseError with a 1-based line and column.
AnalyticGerm parse_germ(std::string_view text, std::optional<int> arity = {});

// "M=<decimal>,r=<decimal>"
CauchyEnvelope parse_envelope(std::string_view text);

// Exact value of a decimal literal such as "2.5e-3". Throws ParseError.
Coefficient parse_decimal(std::string_view text);

}  // namespace pinchcert::series
