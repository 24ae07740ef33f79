#pragma once

#include <string>
#include <string_view>

#include "modlie/ratexpr.hpp"

namespace modlie {

// Grammar (no unary minus; signed integer literals appear only at base
// position, so a leading negative term round-trips as "-1*x"):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' uint)?
//   base   := int | name | '(' expr ')'
// Whitespace between tokens is ignored on input and never emitted on output.
RatExpr parseRatExpr(const ChartPtr& chart, std::string_view text);

std::string toString(const RatExpr& e);

} // namespace modlie
