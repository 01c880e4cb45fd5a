#include "belyi/text_format.hpp"

#include <algorithm>

#include "belyi/errors.hpp"

namespace belyi {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Splits on any of the separators, keeping the offset of each piece.
std::vector<std::pair<std::string_view, std::size_t>> split_any(std::string_view s, std::string_view seps) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
      out.emplace_back(s.substr(start, i - start), start);
      start = i + 1;
    }
  }
  return out;
}

Elem parse_elem_at(const Field& F, std::string_view text, std::size_t offset) {
  std::string_view t = trim(text);
  if (t.empty()) throw ParseError("empty field element", offset);
  try {
    return F.parse_element(t);
  } catch (const ParseError& e) {
    throw ParseError(std::string("malformed field element '") + std::string(t) + "'", offset + e.position());
  }
}

}  // namespace

Polynomial parse_polynomial(const FieldPtr& field, std::string_view text) {
  const Field& F = *field;
  text = trim(text);
  if (text.empty()) throw ParseError("empty coefficient list", 0);
  std::vector<Elem> c;
  const bool semis = text.find(';') != std::string_view::npos;
  if (F.is_prime_field() && !semis) {
    for (auto [piece, off] : split_any(text, ",")) c.push_back(parse_elem_at(F, piece, off));
  } else {
    for (auto [piece, off] : split_any(text, ";")) c.push_back(parse_elem_at(F, piece, off));
  }
  return Polynomial(field, std::move(c));
}

std::string format_polynomial(const Polynomial& f) {
  const Field& F = f.F();
  if (f.is_zero()) return F.format(F.zero());
  std::string out;
  const char sep = F.is_prime_field() ? ',' : ';';
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) out += sep;
    out += F.format(f.coeffs()[i]);
  }
  return out;
}

P1Point parse_point(const Field& field, std::string_view text) {
  std::string_view t = trim(text);
  if (t == "inf" || t == "oo" || t == "∞") return P1Point::infinity();
  return P1Point::affine(parse_elem_at(field, t, 0));
}

std::vector<P1Point> parse_point_list(const Field& field, std::string_view text) {
  std::string_view t = trim(text);
  if (t == "all") return rational_points(field);
  std::vector<P1Point> out;
  if (t.empty() || t == "none") return out;
  const std::string_view seps = field.is_prime_field() ? ";," : ";";
  for (auto [piece, off] : split_any(t, seps)) {
    std::string_view item = trim(piece);
    if (item.empty()) throw ParseError("empty item in point list", off);
    P1Point P = item == "inf" ? P1Point::infinity() : P1Point::affine(parse_elem_at(field, item, off));
    if (std::find(out.begin(), out.end(), P) != out.end())
      throw ParseError("duplicate point '" + std::string(item) + "' in point list", off);
    out.push_back(std::move(P));
  }
  sort_points(out);
  return out;
}

std::string format_point_list(const Field& field, const std::vector<P1Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ';';
    out += format_point(field, pts[i]);
  }
  return out;
}

RationalMap parse_map(const FieldPtr& field, std::string_view text) {
  std::string_view t = trim(text);
  if (t.rfind("poly=", 0) == 0) {
    Polynomial num = parse_polynomial(field, t.substr(5));
    return RationalMap::make(num, Polynomial::constant(field, field->one()));
  }
  if (t.rfind("num=", 0) != 0) throw ParseError("map must start with 'num=' or 'poly='", 0);
  const std::size_t slash = t.find("/den=");
  if (slash == std::string_view::npos) throw ParseError("map is missing '/den='", t.size());
  Polynomial num = parse_polynomial(field, t.substr(4, slash - 4));
  Polynomial den = parse_polynomial(field, t.substr(slash + 5));
  if (den.is_zero()) throw ParseError("map denominator is zero", slash + 5);
  return RationalMap::make(num, den);
}

std::string format_map(const RationalMap& f) {
  if (f.denominator().is_one()) return "poly=" + format_polynomial(f.numerator());
  return "num=" + format_polynomial(f.numerator()) + "/den=" + format_polynomial(f.denominator());
}

std::string format_field(const Field& field) {
  if (field.is_prime_field()) return std::to_string(field.characteristic());
  std::string out = std::to_string(field.characteristic()) + "^" + std::to_string(field.degree()) + "/";
  for (std::size_t i = 0; i < field.modulus().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(field.modulus()[i]);
  }
  return out;
}

}  // namespace belyi
