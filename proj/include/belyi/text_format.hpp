#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "belyi/ratmap.hpp"

namespace belyi {

// Coefficients little-endian: "c0,c1,..." over prime fields, elements
// separated by ';' over extensions ("1,2;0,1").
Polynomial parse_polynomial(const FieldPtr& field, std::string_view text);
std::string format_polynomial(const Polynomial& f);

// "inf" or an element string.
P1Point parse_point(const Field& field, std::string_view text);

// "all" (P^1 of the field), "none" or "" (empty), otherwise items separated
// by ';' (and also by ',' over prime fields). Result sorted, duplicates
// rejected.
std::vector<P1Point> parse_point_list(const Field& field, std::string_view text);
std::string format_point_list(const Field& field, const std::vector<P1Point>& pts);

// "num=.../den=..." or "poly=...".
RationalMap parse_map(const FieldPtr& field, std::string_view text);
std::string format_map(const RationalMap& f);

std::string format_field(const Field& field);

}  // namespace belyi
