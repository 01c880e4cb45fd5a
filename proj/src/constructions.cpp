#include "belyi/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "belyi/bounds.hpp"
#include "belyi/counting.hpp"
#include "belyi/errors.hpp"
#include "belyi/factor.hpp"
#include "belyi/text_format.hpp"

namespace belyi {

using nlohmann::ordered_json;

namespace {

P1Point zero_pt(const Field& F) { return P1Point::affine(F.zero()); }
P1Point one_pt(const Field& F) { return P1Point::affine(F.one()); }

bool contains(const std::vector<P1Point>& v, const P1Point& P) { return std::find(v.begin(), v.end(), P) != v.end(); }

bool in_targets(const Field& F, const P1Point& P) {
  return P.is_infinity() || F.is_zero(P.value()) || F.is_one(P.value());
}

void validate_point(const Field& F, const P1Point& P) {
  if (!P.is_infinity()) F.validate(P.value());
}

std::vector<P1Point> image_set(const RationalMap& f, const std::vector<P1Point>& pts) {
  std::vector<P1Point> out;
  for (const auto& P : pts) {
    P1Point img = f.evaluate(P);
    if (!contains(out, img)) out.push_back(std::move(img));
  }
  sort_points(out);
  return out;
}

ordered_json labels(const Field& F, const std::vector<P1Point>& pts) {
  auto j = ordered_json::array();
  for (const auto& P : pts) j.push_back(format_point(F, P));
  return j;
}

// Candidate fill points: F_p first, then the rest of F in compare order, then inf.
std::vector<P1Point> fill_candidates(const Field& F, std::size_t count) {
  std::vector<P1Point> out;
  for (std::uint64_t c = 0; c < F.characteristic() && out.size() < count; ++c)
    out.push_back(P1Point::affine(F.from_int(static_cast<std::int64_t>(c))));
  for (std::uint64_t i = 0; i < F.order_u64() && out.size() < count; ++i) {
    Elem e = element_in_order(F, i);
    if (!F.in_prime_subfield(e)) out.push_back(P1Point::affine(std::move(e)));
  }
  out.push_back(P1Point::infinity());
  return out;
}

RationalMap xi1_map(const FieldPtr& field, const Elem& alpha) {
  const Field& F = *field;
  const int e = static_cast<int>(F.order_u64() - 1);
  Polynomial f = Polynomial::monomial(field, F.neg(F.one()), e) + Polynomial::monomial(field, F.inv(alpha), 1);
  return RationalMap::polynomial(f);
}

ConstructionResult make_result(RationalMap map) {
  const int d = map.degree();
  return ConstructionResult{std::move(map), d, std::nullopt};
}

ordered_json verdict_summary(const BelyiVerdict& v) { return to_json(v)["verdict"]; }

// Echelon basis over F_p of the coordinate vectors of elems.
std::vector<Elem> fp_basis(const Field& E, const std::vector<Elem>& elems) {
  const Coeff p = E.characteristic();
  const int n = E.degree();
  std::vector<Elem> rows;
  std::vector<int> pivots;
  for (Elem v : elems) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Coeff c = v[pivots[r]];
      if (c != 0) v = E.sub(v, E.scale(rows[r], c));
    }
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (v[i] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    // Normalize the pivot to 1 and clear it from earlier rows.
    Coeff inv = 1;
    for (Coeff k = 1; k < p; ++k)
      if ((static_cast<std::uint64_t>(k) * v[piv]) % p == 1) inv = k;
    v = E.scale(v, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Coeff c = rows[r][piv];
      if (c != 0) rows[r] = E.sub(rows[r], E.scale(v, c));
    }
    rows.push_back(std::move(v));
    pivots.push_back(piv);
  }
  return rows;
}

std::vector<Elem> span_elements(const Field& E, const std::vector<Elem>& basis, std::size_t limit) {
  const Coeff p = E.characteristic();
  const std::size_t k = basis.size();
  BigInt size = big_pow(p, k);
  if (size > BigInt(static_cast<unsigned long>(limit)))
    throw PreconditionError("F_p-span has dimension " + std::to_string(k) + " (" + size.get_str() +
                            " elements), above the span limit " + std::to_string(limit));
  std::vector<Elem> out{E.zero()};
  for (const auto& b : basis) {
    const std::size_t prev = out.size();
    for (Coeff c = 1; c < p; ++c) {
      const Elem cb = E.scale(b, c);
      for (std::size_t i = 0; i < prev; ++i) out.push_back(E.add(out[i], cb));
    }
  }
  std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) { return Field::compare(a, b) < 0; });
  return out;
}

bool is_p_power(std::uint64_t i, std::uint64_t p) {
  if (i == 0) return false;
  while (i % p == 0) i /= p;
  return i == 1;
}

// Partition of n above a branch point, descending, from a ramification report.
std::vector<int> partition_above(const RamReport& r, const ClosedPoint& b) {
  std::vector<int> parts;
  int covered = 0;
  for (const auto& rp : r.points) {
    if (!(rp.branch == b)) continue;
    const int copies = rp.orbit_size / b.degree();
    for (int i = 0; i < copies; ++i) parts.push_back(rp.index);
    covered += copies * rp.index;
  }
  for (; covered < r.degree; ++covered) parts.push_back(1);
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

ClosedPoint closed_point_of(const FieldPtr& field, const std::string& text) {
  ClosedPoint cp;
  if (text == "inf") {
    cp.at_infinity = true;
    return cp;
  }
  Polynomial g = parse_polynomial(field, text);
  require(g.degree() >= 1, "branch min_poly must have positive degree");
  g = g.monic();
  require(is_irreducible(g), "branch min_poly " + g.str() + " is not irreducible");
  cp.min_poly = std::move(g);
  return cp;
}

std::string closed_point_text(const ClosedPoint& cp) {
  return cp.at_infinity ? "inf" : format_polynomial(*cp.min_poly);
}

std::vector<P1Point> point_array(const Field& F, const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& v = j.at(key);
  std::vector<P1Point> out;
  if (v.is_string()) return parse_point_list(F, v.get<std::string>());
  require(v.is_array(), std::string("descriptor field ") + key + " must be a list of points");
  for (const auto& item : v) {
    P1Point P = parse_point(F, item.get<std::string>());
    require(!contains(out, P), std::string("duplicate point in descriptor field ") + key);
    out.push_back(std::move(P));
  }
  sort_points(out);
  return out;
}

}  // namespace

BelyiInstance BelyiInstance::make(FieldPtr field, std::vector<P1Point> S, std::vector<P1Point> T) {
  require(field->characteristic() != 2, "characteristic must be odd");
  for (const auto* set : {&S, &T})
    for (const auto& P : *set) validate_point(*field, P);
  sort_points(S);
  sort_points(T);
  for (const auto* set : {&S, &T})
    require(std::adjacent_find(set->begin(), set->end()) == set->end(), "point sets must not repeat points");
  for (const auto& P : S) require(!contains(T, P), "S and T must be disjoint; both contain " + format_point(*field, P));
  return BelyiInstance{std::move(field), std::move(S), std::move(T)};
}

ConstructionResult tame_power_map(const FieldPtr& field) {
  const Field& F = *field;
  require(F.characteristic() != 2, "tame_power_map needs odd characteristic");
  const int e = static_cast<int>(F.order_u64() - 1);
  ConstructionResult r = make_result(RationalMap::polynomial(Polynomial::monomial(field, F.one(), e)));
  r.verdict = verify_tame_belyi(r.map, rational_points(F), {});
  r.provenance.push_back({{"step", "power_map"}, {"exponent", e}, {"field", format_field(F)}});
  LiteralPowerMapVerdicts lit = literal_power_map(field);
  r.details["literal_map"] = format_map(lit.map);
  r.details["literal_all_in_S"] = verdict_summary(lit.all_in_S);
  r.details["literal_all_in_T"] = verdict_summary(lit.all_in_T);
  return r;
}

LiteralPowerMapVerdicts literal_power_map(const FieldPtr& field) {
  const Field& F = *field;
  require(F.characteristic() != 2, "literal_power_map needs odd characteristic");
  const int e = static_cast<int>(F.order_u64() - 1);
  Polynomial f = Polynomial::monomial(field, F.one(), e) - Polynomial::constant(field, F.one());
  RationalMap map = RationalMap::polynomial(f);
  const auto all = rational_points(F);
  return {map, verify_tame_belyi(map, all, {}), verify_tame_belyi(map, {}, all)};
}

ConstructionResult tame_normalize_small(const BelyiInstance& inst, const std::optional<P1Point>& tau) {
  const FieldPtr& field = inst.field;
  const Field& F = *field;
  const auto& S = inst.S;
  require(S.size() <= 3, "tame_normalize_small needs |S| <= 3 (got " + std::to_string(S.size()) + ")");
  if (tau) {
    validate_point(F, *tau);
    require(!contains(S, *tau), "tau " + format_point(F, *tau) + " lies in S");
  }
  std::vector<P1Point> T;
  if (tau) T.push_back(*tau);

  const bool identity_ok = std::all_of(S.begin(), S.end(), [&](const P1Point& P) { return in_targets(F, P); }) &&
                           (!tau || !in_targets(F, *tau));
  if (identity_ok) {
    ConstructionResult r = make_result(RationalMap::identity(field));
    r.verdict = verify_tame_belyi(r.map, S, T);
    r.provenance.push_back({{"step", "normalize_small"}, {"identity", true}});
    return r;
  }

  // Targets in slot order 0, inf, 1.
  const std::vector<P1Point> targets{zero_pt(F), P1Point::infinity(), one_pt(F)};
  const auto candidates = fill_candidates(F, 8);
  std::vector<int> perm{0, 1, 2};
  do {
    std::vector<std::optional<P1Point>> source(3);
    for (std::size_t i = 0; i < S.size(); ++i) source[perm[i]] = S[i];
    std::vector<P1Point> used(S.begin(), S.end());
    if (tau) used.push_back(*tau);
    bool filled = true;
    for (auto& slot : source) {
      if (slot) continue;
      auto it = std::find_if(candidates.begin(), candidates.end(), [&](const P1Point& c) { return !contains(used, c); });
      if (it == candidates.end()) {
        filled = false;
        break;
      }
      slot = *it;
      used.push_back(*it);
    }
    if (!filled) continue;
    RationalMap mu = mobius_from_triple(field, *source[0], *source[2], *source[1]);
    if (tau && in_targets(F, mu.evaluate(*tau))) continue;
    BelyiVerdict v = verify_tame_belyi(mu, S, T);
    if (!v.passed) continue;
    ConstructionResult r = make_result(mu);
    r.verdict = std::move(v);
    auto assign = ordered_json::array();
    for (int i = 0; i < 3; ++i)
      assign.push_back({{"from", format_point(F, *source[i])}, {"to", format_point(F, targets[i])}});
    r.provenance.push_back({{"step", "normalize_small"}, {"identity", false}, {"assignment", assign}});
    return r;
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw InternalError("tame_normalize_small: no slot assignment separates tau from {0,1,inf}");
}

ConstructionResult xi1(const FieldPtr& field, const Elem& alpha, const std::vector<P1Point>& S_in,
                       const P1Point& tau) {
  const Field& F = *field;
  BelyiInstance inst = BelyiInstance::make(field, S_in, {tau});
  const auto& S = inst.S;
  F.validate(alpha);
  require(contains(S, zero_pt(F)) && contains(S, P1Point::infinity()), "xi1 needs {0, inf} contained in S");
  require(!F.is_zero(alpha) && contains(S, P1Point::affine(alpha)), "xi1 needs alpha in S \\ {0, inf}");
  ConstructionResult r = make_result(xi1_map(field, alpha));
  auto table = ordered_json::array();
  for (const auto& P : S)
    table.push_back({{"point", format_point(F, P)}, {"image", format_point(F, r.map.evaluate(P))}});
  const auto images = image_set(r.map, S);
  const P1Point tau_image = r.map.evaluate(tau);
  ensure(images.size() + 1 == S.size(), "xi1 image of S does not have s - 1 points");
  ensure(!contains(images, tau_image), "xi1 sends tau into xi1(S)");
  r.verdict = verify_tame_belyi(r.map, S, {tau});
  r.provenance.push_back({{"step", "xi1"}, {"alpha", F.format(alpha)}, {"map", format_map(r.map)}});
  r.details["table"] = table;
  r.details["image_of_S"] = labels(F, images);
  r.details["tau_image"] = format_point(F, tau_image);
  return r;
}

ConstructionResult tame_reduce_recursive(const BelyiInstance& inst, const P1Point& tau, const RecursionOptions& opt) {
  const FieldPtr& field = inst.field;
  const Field& F = *field;
  validate_point(F, tau);
  require(!contains(inst.S, tau), "tau " + format_point(F, tau) + " lies in S");
  if (inst.s() <= 3) {
    ConstructionResult r = tame_normalize_small(inst, tau);
    r.details["steps"] = 0;
    return r;
  }
  const BigInt expected = big_pow(F.order() - 1, static_cast<unsigned long>(inst.s() - 3));
  if (expected > BigInt(static_cast<unsigned long>(opt.max_degree)))
    throw GuardError("tame_reduce_recursive: composite degree " + expected.get_str() + " exceeds the limit " +
                     std::to_string(opt.max_degree));

  ordered_json prov = ordered_json::array();
  RationalMap total = RationalMap::identity(field);
  std::vector<P1Point> S = inst.S;
  P1Point t = tau;
  int steps = 0;
  while (S.size() > 3) {
    if (!contains(S, zero_pt(F)) || !contains(S, P1Point::infinity())) {
      RationalMap mu = mobius_from_triple(field, S[0], S[2], S[1]);
      S = image_set(mu, S);
      t = mu.evaluate(t);
      total = compose(mu, total);
      prov.push_back({{"step", "pre_mobius"}, {"map", format_map(mu)}, {"S", labels(F, S)}});
    }
    auto it = std::find_if(S.begin(), S.end(),
                           [&](const P1Point& P) { return !P.is_infinity() && !F.is_zero(P.value()); });
    const Elem alpha = it->value();
    RationalMap xi = xi1_map(field, alpha);
    std::vector<P1Point> next = image_set(xi, S);
    P1Point next_t = xi.evaluate(t);
    ensure(next.size() + 1 == S.size() && !contains(next, next_t), "xi1 step broke the recursion invariant");
    total = compose(xi, total);
    S = std::move(next);
    t = std::move(next_t);
    ++steps;
    prov.push_back({{"step", "xi1"},
                    {"alpha", F.format(alpha)},
                    {"map", format_map(xi)},
                    {"S", labels(F, S)},
                    {"tau", format_point(F, t)}});
  }
  ConstructionResult last = tame_normalize_small(BelyiInstance::make(field, S, {}), t);
  for (auto& step : last.provenance) prov.push_back(step);
  total = compose(last.map, total);
  ensure(BigInt(total.degree()) == expected, "recursive composite has degree " + std::to_string(total.degree()) +
                                                 ", expected " + expected.get_str());
  ConstructionResult r = make_result(total);
  r.verdict = verify_tame_belyi(total, inst.S, {tau});
  r.provenance = std::move(prov);
  r.details["steps"] = steps;
  return r;
}

std::vector<Elem> fp_span_of_conjugates(const Embedding& inclusion, const std::vector<Elem>& B, std::size_t limit) {
  const Field& E = *inclusion.target();
  const Field& base = *inclusion.source();
  std::vector<Elem> closure;
  for (const auto& b : B) {
    E.validate(b);
    for (auto& c : galois_orbit(E, b, base)) closure.push_back(std::move(c));
  }
  return span_elements(E, fp_basis(E, closure), limit);
}

HTower wild_h_tower(const Embedding& inclusion, const std::vector<Elem>& V_in) {
  const FieldPtr& ext = inclusion.target();
  const Field& E = *ext;
  const FieldPtr& field = inclusion.source();
  const Field& F = *field;
  const Coeff p = F.characteristic();

  std::vector<Elem> V = V_in;
  for (const auto& v : V) E.validate(v);
  std::sort(V.begin(), V.end(), [](const Elem& a, const Elem& b) { return Field::compare(a, b) < 0; });
  require(std::adjacent_find(V.begin(), V.end()) == V.end(), "V must not repeat elements");
  require(!V.empty() && E.is_zero(V.front()), "V must contain 0");
  const auto basis = fp_basis(E, V);
  require(big_pow(p, basis.size()) == BigInt(static_cast<unsigned long>(V.size())),
          "V is not an F_p-subspace: its span has " + big_pow(p, basis.size()).get_str() + " elements, V has " +
              std::to_string(V.size()));

  auto h0 = inclusion.preimage(product_of_linears(ext, V));
  ensure(h0.has_value(), "h0 has coefficients outside the base field");

  HTower t{*h0, RationalMap::identity(field), RationalMap::identity(field), RamReport{}};
  const Polynomial xp = Polynomial::x(field).pow(p);
  t.h1 = add(RationalMap::polynomial(xp), RationalMap::make(xp, xp * t.h0 + t.h0.pow(p)));
  t.h2 = add(power(t.h1, p), t.h1);
  t.psi_report = ramification_analyze(t.h2);

  t.poles_on_V = true;
  for (const auto& a : V)
    if (!E.is_zero(a) && !t.h2.evaluate(P1Point::affine(a), inclusion).is_infinity()) t.poles_on_V = false;
  t.finite_at_zero = !t.h2.evaluate(zero_pt(F)).is_infinity();
  t.additive = true;
  for (int i = 0; i <= t.h0.degree(); ++i)
    if (!F.is_zero(t.h0.coeff(i)) && !is_p_power(static_cast<std::uint64_t>(i), p)) t.additive = false;
  const Polynomial d = t.h0.derivative();
  t.derivative_constant = !d.is_zero() && d.degree() == 0;
  return t;
}

ConstructionResult wild_phi(const BelyiInstance& inst) {
  const FieldPtr& field = inst.field;
  const Field& F = *field;
  const int s = inst.s(), t = inst.t();
  const int N = wild_N(0, t);
  require(wild_hypothesis_check(F.order(), 0, N, s), "hypothesis q + 1 - 2g*sqrt(q) >= N + s fails (q=" + F.order().get_str() +
                                              ", g=0, N=" + std::to_string(N) + ", s=" + std::to_string(s) + ")");
  ordered_json prov = ordered_json::array();
  std::vector<P1Point> S = inst.S, T = inst.T;
  std::optional<RationalMap> pre;
  if (contains(T, P1Point::infinity())) {
    std::vector<P1Point> avoid = S;
    avoid.insert(avoid.end(), T.begin(), T.end());
    const P1Point c = pick_points(field, avoid, 1)[0];
    ensure(!c.is_infinity(), "pre-Mobius centre must be affine");
    pre = RationalMap::make(Polynomial::constant(field, F.one()), Polynomial::linear(field, c.value()));
    S = image_set(*pre, S);
    T = image_set(*pre, T);
    prov.push_back({{"step", "pre_mobius"}, {"map", format_map(*pre)}, {"reason", "infinity in T"}});
  }
  std::vector<P1Point> avoid = S;
  avoid.insert(avoid.end(), T.begin(), T.end());
  avoid.push_back(P1Point::infinity());
  const auto picked = pick_points(field, avoid, N - t);
  std::vector<Elem> roots;
  for (const auto& P : picked) roots.push_back(P.value());
  for (const auto& Q : T) roots.push_back(Q.value());
  RationalMap phi = RationalMap::polynomial(product_of_linears(field, roots));
  if (pre) phi = compose(phi, *pre);
  prov.push_back({{"step", "phi"}, {"N", N}, {"picked", labels(F, picked)}, {"map", format_map(phi)}});

  const RamReport rep = ramification_analyze(phi);
  const bool degree_ok = phi.degree() == N;
  const bool t_ok = std::all_of(inst.T.begin(), inst.T.end(), [&](const P1Point& Q) {
    const P1Point v = phi.evaluate(Q);
    return !v.is_infinity() && F.is_zero(v.value());
  });
  const bool s_ok = std::none_of(inst.S.begin(), inst.S.end(), [&](const P1Point& P) {
    const P1Point v = phi.evaluate(P);
    return !v.is_infinity() && F.is_zero(v.value());
  });
  ClosedPoint zero_cp;
  zero_cp.min_poly = Polynomial::x(field);
  const bool br_ok = std::none_of(rep.branch_set.begin(), rep.branch_set.end(),
                                  [&](const BranchPoint& b) { return b.point == zero_cp; });
  ensure(degree_ok && t_ok && s_ok && br_ok, "phi fails its defining conditions");

  ConstructionResult r = make_result(phi);
  r.provenance = std::move(prov);
  auto br = ordered_json::array();
  for (const auto& b : rep.branch_set) br.push_back(b.point.label());
  r.details["N"] = N;
  r.details["branch_set"] = br;
  r.details["checks"] = {{"degree_is_N", degree_ok},
                         {"T_to_zero", t_ok},
                         {"zero_not_in_phi_S", s_ok},
                         {"zero_not_branch", br_ok}};
  return r;
}

ConstructionResult wild_belyi_compose(const BelyiInstance& inst, const WildOptions& opt) {
  const FieldPtr& field = inst.field;
  const Field& F = *field;
  ConstructionResult phi_r = wild_phi(inst);
  const RationalMap& phi = phi_r.map;
  const RamReport rep = ramification_analyze(phi);

  std::vector<Polynomial> branch_polys;
  int M = 1;
  for (const auto& b : rep.branch_set) {
    if (b.point.at_infinity) continue;
    branch_polys.push_back(*b.point.min_poly);
    M = std::lcm(M, b.point.degree());
  }
  Extension ext = extension_of_degree(field, M);
  std::vector<Elem> B;
  std::vector<std::string> B_labels;
  for (const auto& P : image_set(phi, inst.S)) {
    if (P.is_infinity()) continue;
    B.push_back(ext.inclusion.map(P.value()));
    B_labels.push_back(format_point(F, P));
  }
  for (const auto& g : branch_polys) {
    for (auto& r : roots_in_field(ext.inclusion.map(g))) B.push_back(std::move(r));
    ClosedPoint cp;
    cp.min_poly = g;
    B_labels.push_back(cp.label());
  }
  const auto V = fp_span_of_conjugates(ext.inclusion, B, opt.span_limit);
  int dim = 0;
  for (std::size_t n = 1; n < V.size(); n *= F.characteristic()) ++dim;
  const HTower tower = wild_h_tower(ext.inclusion, V);
  const RationalMap& psi = tower.h2;
  RationalMap f = compose(psi, phi);
  ensure(f.degree() == psi.degree() * phi.degree(), "deg(psi o phi) differs from deg(psi) * deg(phi)");

  ConstructionResult r = make_result(f);
  r.verdict = verify_wild_belyi(f, inst.S, inst.T);
  r.provenance = phi_r.provenance;
  r.provenance.push_back({{"step", "span"},
                          {"B", B_labels},
                          {"extension_degree", M},
                          {"V_size", V.size()},
                          {"V_dimension", dim}});
  r.provenance.push_back({{"step", "h_tower"},
                          {"h0", tower.h0.str()},
                          {"deg_h1", tower.h1.degree()},
                          {"deg_h2", tower.h2.degree()},
                          {"poles_on_V", tower.poles_on_V},
                          {"finite_at_zero", tower.finite_at_zero}});
  r.provenance.push_back({{"step", "compose"}, {"deg_psi", psi.degree()}, {"deg_phi", phi.degree()}});
  const WildBound bound = wild_bound(0, inst.s(), inst.t(), F.characteristic());
  const BigInt margin = bound.value - f.degree();
  r.details["N"] = phi_r.details["N"];
  r.details["phi"] = format_map(phi);
  r.details["degrees"] = {{"h0", tower.h0.degree()},
                          {"h1", tower.h1.degree()},
                          {"psi", psi.degree()},
                          {"phi", phi.degree()},
                          {"f", f.degree()}};
  r.details["bound"] = to_decimal(bound.value);
  r.details["margin"] = to_decimal(margin);
  r.details["within_bound"] = margin > 0;
  return r;
}

CoveringDescriptor CoveringDescriptor::identity(const FieldPtr& field, const std::vector<P1Point>& S,
                                                const std::vector<P1Point>& T) {
  CoveringDescriptor d;
  d.zS = S;
  d.zT = T;
  sort_points(d.zS);
  sort_points(d.zT);
  d.map = RationalMap::identity(field);
  return d;
}

CoveringDescriptor CoveringDescriptor::from_json(const FieldPtr& field, const nlohmann::json& j) {
  const Field& F = *field;
  require(j.is_object(), "descriptor must be a JSON object");
  CoveringDescriptor d;
  d.zS = point_array(F, j, "zS");
  d.zT = point_array(F, j, "zT");
  for (const auto& P : d.zS) require(!contains(d.zT, P), "descriptor zS and zT must be disjoint");
  if (j.contains("map")) {
    const auto& m = j.at("map");
    d.map = parse_map(field, m.is_string() ? m.get<std::string>() : m.at("text").get<std::string>());
    require(!d.map->is_constant(), "descriptor map must be non-constant");
  }
  const bool has_branch = j.contains("branch");
  d.g = j.value("g", 0);
  require(d.g >= 0, "descriptor genus must be nonnegative");
  if (has_branch) {
    for (const auto& b : j.at("branch")) {
      DescriptorBranch db;
      db.point = closed_point_of(field, b.at("min_poly").get<std::string>());
      db.partition = b.at("partition").get<std::vector<int>>();
      std::sort(db.partition.rbegin(), db.partition.rend());
      for (const auto& other : d.branch) require(!(other.point == db.point), "descriptor repeats a branch point");
      d.branch.push_back(std::move(db));
    }
  }
  std::sort(d.branch.begin(), d.branch.end(),
            [](const DescriptorBranch& a, const DescriptorBranch& b) { return closed_point_less(a.point, b.point); });
  if (j.contains("n")) d.n = j.at("n").get<int>();

  if (d.map) {
    require(d.g == 0, "a concrete map implies genus 0");
    const RamReport rep = ramification_analyze(*d.map);
    const int n = d.map->degree();
    require(!j.contains("n") || d.n == n, "descriptor n = " + std::to_string(d.n) + " but the map has degree " +
                                              std::to_string(n));
    d.n = n;
    std::vector<DescriptorBranch> computed;
    for (const auto& b : rep.branch_set) computed.push_back({b.point, partition_above(rep, b.point)});
    if (has_branch) {
      bool same = computed.size() == d.branch.size();
      for (std::size_t i = 0; same && i < computed.size(); ++i)
        same = computed[i].point == d.branch[i].point && computed[i].partition == d.branch[i].partition;
      require(same, "descriptor branch data disagree with the attached map");
    }
    d.branch = std::move(computed);
  } else {
    require(j.contains("n"), "descriptor needs n when no map is attached");
  }
  require(d.n >= 1, "descriptor degree must be positive");
  for (const auto& b : d.branch) {
    require(std::all_of(b.partition.begin(), b.partition.end(), [](int e) { return e >= 1; }),
            "partition parts must be positive");
    require(std::accumulate(b.partition.begin(), b.partition.end(), 0) == d.n,
            "partition above " + b.point.label() + " does not sum to n = " + std::to_string(d.n));
  }
  return d;
}

ordered_json CoveringDescriptor::to_json(const Field& F) const {
  ordered_json j;
  j["n"] = n;
  j["g"] = g;
  auto br = ordered_json::array();
  for (const auto& b : branch) br.push_back({{"min_poly", closed_point_text(b.point)}, {"partition", b.partition}});
  j["branch"] = br;
  j["zS"] = labels(F, zS);
  j["zT"] = labels(F, zT);
  if (map) j["map"] = format_map(*map);
  return j;
}

PipelineResult tame_pipeline(const CoveringDescriptor& desc, const FieldPtr& field,
                                  const std::vector<P1Point>& S_in, const std::vector<P1Point>& T_in,
                                  const PipelineOptions& opt) {
  const Field& F = *field;
  const BelyiInstance inst = BelyiInstance::make(field, S_in, T_in);
  const int g = desc.g, s = inst.s(), t = inst.t();
  PipelineResult r;

  if (desc.map) {
    require(desc.map->field()->same_as(F), "descriptor map is over a different field");
    require(image_set(*desc.map, inst.S) == desc.zS, "descriptor zS differs from the image of S");
    require(image_set(*desc.map, inst.T) == desc.zT, "descriptor zT differs from the image of T");
  }
  if (t > 0)
    require(desc.zT.size() == 1, "with T nonempty the covering must send T to a single point (got " +
                                     std::to_string(desc.zT.size()) + ")");
  else
    require(desc.zT.empty(), "descriptor zT must be empty when T is empty");

  r.threshold = tame_threshold(g, s, t);
  r.m = ceil_log_q(F.order(), r.threshold);
  r.L = lcm_up_to(static_cast<std::uint64_t>(6 * g + 2 * t));
  const BigInt k = r.L * r.m;
  require(k.fits_sint_p(), "extension degree m * L does not fit a machine integer");
  r.extension_degree = static_cast<int>(k.get_si());
  const long over_p = static_cast<long>(F.degree()) * r.extension_degree;
  r.extension_field = std::to_string(F.characteristic()) + "^" + std::to_string(over_p);
  r.provenance.push_back({{"step", "extension"},
                          {"threshold", rational_json(r.threshold)},
                          {"m", r.m},
                          {"L", to_decimal(r.L)},
                          {"degree_over_base", r.extension_degree},
                          {"field", r.extension_field}});

  for (const auto& b : desc.branch)
    require(r.extension_degree % b.point.degree() == 0,
            "branch point " + b.point.label() + " is rational only over F_{q^" + std::to_string(b.point.degree()) +
                "}, not contained in F_{q^" + std::to_string(r.extension_degree) + "}");

  int s_prime = static_cast<int>(desc.zS.size());
  for (const auto& P : desc.zS) r.S_prime.push_back(format_point(F, P));
  for (const auto& b : desc.branch) {
    const bool rational_in_zS = b.point.degree() == 1 && [&] {
      const P1Point P = b.point.at_infinity ? P1Point::infinity()
                                            : P1Point::affine(F.neg(b.point.min_poly->coeff(0)));
      return contains(desc.zS, P);
    }();
    if (rational_in_zS) continue;
    s_prime += b.point.degree();
    r.S_prime.push_back(b.point.label());
  }
  r.S_prime_size = s_prime;
  require(s_prime <= 6 * g + s + 2 * t, "|S'| = " + std::to_string(s_prime) + " exceeds 6g + s + 2t = " +
                                            std::to_string(6 * g + s + 2 * t));
  if (t > 0) r.tau0 = format_point(F, desc.zT[0]);

  const BigInt Q = big_pow(F.order(), static_cast<unsigned long>(r.extension_degree));
  r.xi_degree = s_prime <= 3 ? BigInt(1) : big_pow(Q - 1, static_cast<unsigned long>(s_prime - 3));
  r.total_degree = r.xi_degree * desc.n;

  const TameBound tb = tame_bound(g, s, t, F.order_u64());
  if (tb.value) {
    r.within_bound = r.total_degree <= *tb.value;
  } else {
    // value >= q^((q_power - 1) * exponent) since q^a - 1 >= q^(a-1).
    const BigInt lower_bits = (tb.q_power - 1) * tb.exponent * BigInt(mpz_sizeinbase(F.order().get_mpz_t(), 2) - 1);
    r.within_bound = BigInt(mpz_sizeinbase(r.total_degree.get_mpz_t(), 2)) <= lower_bits;
  }

  r.materialized = over_p <= opt.max_materialized_degree && r.xi_degree <= opt.recursion.max_degree;
  if (!r.materialized) {
    r.provenance.push_back({{"step", "recursion"}, {"materialized", false}, {"xi_degree", to_decimal(r.xi_degree)}});
    return r;
  }

  Extension ext = extension_of_degree(field, r.extension_degree);
  const FieldPtr& E = ext.field;
  std::vector<P1Point> S_ext;
  for (const auto& P : desc.zS) S_ext.push_back(map_point(ext.inclusion, P));
  for (const auto& b : desc.branch) {
    if (b.point.at_infinity) {
      S_ext.push_back(P1Point::infinity());
      continue;
    }
    for (auto& root : roots_in_field(ext.inclusion.map(*b.point.min_poly))) S_ext.push_back(P1Point::affine(root));
  }
  sort_points(S_ext);
  S_ext.erase(std::unique(S_ext.begin(), S_ext.end()), S_ext.end());
  ensure(static_cast<int>(S_ext.size()) == s_prime, "S' changed size after base change");

  P1Point tau = P1Point::infinity();
  if (t > 0) {
    tau = map_point(ext.inclusion, desc.zT[0]);
  } else {
    std::vector<P1Point> avoid = S_ext;
    for (const auto& P : {zero_pt(*E), one_pt(*E), P1Point::infinity()}) avoid.push_back(P);
    tau = pick_points(E, avoid, 1)[0];
    r.tau0 = format_point(*E, tau);
  }
  r.provenance.push_back({{"step", "S_prime"}, {"points", labels(*E, S_ext)}, {"tau", format_point(*E, tau)}});
  r.xi = tame_reduce_recursive(BelyiInstance::make(E, S_ext, {}), tau, opt.recursion);
  ensure(BigInt(r.xi->degree) == r.xi_degree, "xi degree differs from (q^(mL) - 1)^(s' - 3)");

  if (desc.map) {
    RationalMap comp = compose(r.xi->map, desc.map->base_change(ext.inclusion));
    ensure(BigInt(comp.degree()) == r.total_degree, "deg(xi o zeta) differs from deg(zeta) * deg(xi)");
    std::vector<P1Point> S_src, T_src;
    for (const auto& P : inst.S) S_src.push_back(map_point(ext.inclusion, P));
    for (const auto& P : inst.T) T_src.push_back(map_point(ext.inclusion, P));
    r.composite_verdict = verify_tame_belyi(comp, S_src, T_src);
  }
  return r;
}

ordered_json to_json(const ConstructionResult& r) {
  ordered_json j;
  j["field"] = format_field(*r.map.field());
  j["map"] = format_map(r.map);
  j["degree"] = r.degree;
  j["verdict"] = r.verdict ? to_json(*r.verdict) : ordered_json(nullptr);
  j["provenance"] = r.provenance;
  j["details"] = r.details;
  return j;
}

ordered_json to_json(const PipelineResult& r) {
  ordered_json j;
  j["m"] = r.m;
  j["L"] = to_decimal(r.L);
  j["threshold"] = rational_json(r.threshold);
  j["extension_degree"] = r.extension_degree;
  j["extension_field"] = r.extension_field;
  j["materialized"] = r.materialized;
  j["S_prime"] = r.S_prime;
  j["S_prime_size"] = r.S_prime_size;
  j["tau0"] = r.tau0 ? ordered_json(*r.tau0) : ordered_json(nullptr);
  j["xi_degree"] = to_decimal(r.xi_degree);
  j["total_degree"] = to_decimal(r.total_degree);
  j["within_bound"] = r.within_bound;
  j["xi"] = r.xi ? to_json(*r.xi) : ordered_json(nullptr);
  j["composite_verdict"] = r.composite_verdict ? to_json(*r.composite_verdict)["verdict"] : ordered_json(nullptr);
  j["provenance"] = r.provenance;
  return j;
}

}  // namespace belyi
