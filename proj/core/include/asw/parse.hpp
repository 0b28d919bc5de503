#pragma once

#include <string_view>

#include "asw/ratfunc.hpp"

namespace asw {

// Parse a rational expression in x over `field`.  Accepts integers, x, the
// generator g (extension fields), the field parameter (t or a), + - * / ^,
// parentheses and implicit multiplication ("2x(x-1)").  Roots of every linear
// subexpression are recorded as hints on the result.  Throws ParseError.
RatFunc parse_ratfunc(std::string_view text, const Field& field);

// A constant of `field` (no x).  Throws ParseError.
FieldValue parse_field_value(std::string_view text, const Field& field);

// "inf" or a constant.
Place parse_place(std::string_view text, const Field& field);

}  // namespace asw
