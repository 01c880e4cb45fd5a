#include "belyi/ramification.hpp"

#include <algorithm>
#include <numeric>

#include "belyi/factor.hpp"

namespace belyi {

namespace {

ClosedPoint infinity_point() { return ClosedPoint{true, std::nullopt}; }

ClosedPoint identify(const Embedding& inclusion, const Elem& y) {
  return ClosedPoint{false, minimal_polynomial(inclusion, y)};
}

bool in_zero_one_inf(const Field& F, const P1Point& P) {
  return P.is_infinity() || F.is_zero(P.value()) || F.is_one(P.value());
}

bool closed_in_zero_one_inf(const ClosedPoint& c) {
  if (c.at_infinity) return true;
  if (c.min_poly->degree() != 1) return false;
  const Elem& c0 = c.min_poly->coeffs()[0];
  const Field& F = c.min_poly->F();
  return F.is_zero(c0) || F.is_one(F.neg(c0));
}

void check_points(const Field& F, const std::vector<P1Point>& pts, const char* name) {
  for (const auto& P : pts) {
    if (P.is_infinity()) continue;
    require(static_cast<int>(P.value().size()) == F.degree(),
            std::string("point of ") + name + " does not belong to " + F.describe());
    F.validate(P.value());
  }
}

void check_disjoint(const std::vector<P1Point>& S, const std::vector<P1Point>& T) {
  for (const auto& s : S)
    for (const auto& t : T) require(!(s == t), "S and T must be disjoint");
}

}  // namespace

bool ClosedPoint::operator==(const ClosedPoint& o) const {
  if (at_infinity || o.at_infinity) return at_infinity == o.at_infinity;
  return *min_poly == *o.min_poly;
}

std::string ClosedPoint::label() const {
  if (at_infinity) return "inf";
  if (min_poly->degree() == 1) return min_poly->F().format(min_poly->F().neg(min_poly->coeffs()[0]));
  return "root of " + min_poly->str();
}

bool closed_point_less(const ClosedPoint& a, const ClosedPoint& b) {
  if (a.at_infinity) return false;
  if (b.at_infinity) return true;
  return poly_less(*a.min_poly, *b.min_poly);
}

std::string to_string(ViolationCode c) {
  switch (c) {
    case ViolationCode::BranchOutsideTarget: return "branch_outside_target";
    case ViolationCode::WildIndex: return "wild_index";
    case ViolationCode::SImageOutsideTarget: return "S_image_outside_target";
    case ViolationCode::TImageInForbidden: return "T_image_in_forbidden_set";
    case ViolationCode::Inseparable: return "inseparable";
  }
  return "unknown";
}

RamReport ramification_analyze(const RationalMap& f, Rng& rng) {
  require(!f.is_constant(), "constant map: ramification is undefined for non-dominant maps");
  const Polynomial W = f.wronskian();
  if (W.is_zero()) throw InseparableError();
  const FieldPtr& base = f.field();
  const std::uint64_t p = base->characteristic();
  const Polynomial& A = f.numerator();
  const Polynomial& B = f.denominator();

  RamReport r;
  r.field = base;
  r.degree = f.degree();

  for (const auto& g : distinct_irreducible_factors(W, rng)) {
    RootField rf = root_field(g, rng);
    const Field& E = *rf.ext.field;
    RamPoint rp;
    rp.point = ClosedPoint{false, g};
    rp.extension = rf.ext.field;
    rp.representative = rf.root;
    rp.orbit_size = g.degree();
    const int pole_order = valuation(B, g);
    if (pole_order > 0) {
      rp.index = pole_order;
      rp.branch_image = P1Point::infinity();
      rp.branch = infinity_point();
    } else {
      const Polynomial AE = rf.ext.inclusion.map(A);
      const Polynomial BE = rf.ext.inclusion.map(B);
      const Elem y = E.div(AE.eval(rf.root), BE.eval(rf.root));
      rp.index = root_multiplicity(AE - BE.scaled(y), rf.root);
      rp.branch_image = P1Point::affine(y);
      rp.branch = identify(rf.ext.inclusion, y);
    }
    ensure(rp.index >= 2, "Wronskian root with ramification index 1");
    rp.wild = rp.index % p == 0;
    r.points.push_back(std::move(rp));
  }

  // Chart at infinity: x -> 1/x, local analysis at 0.
  {
    const int d = r.degree;
    const Polynomial At = A.reversed(d);
    const Polynomial Bt = B.reversed(d);
    const Field& F = *base;
    RamPoint rp;
    rp.point = infinity_point();
    rp.extension = base;
    if (F.is_zero(Bt.coeff(0))) {
      rp.index = d - B.degree();
      rp.branch_image = P1Point::infinity();
      rp.branch = infinity_point();
    } else {
      const Elem y = F.div(At.coeff(0), Bt.coeff(0));
      rp.index = root_multiplicity(At - Bt.scaled(y), F.zero());
      rp.branch_image = P1Point::affine(y);
      rp.branch = identify(Embedding::identity(base), y);
    }
    rp.wild = rp.index % p == 0;
    if (rp.index >= 2) r.points.push_back(std::move(rp));
  }

  std::stable_sort(r.points.begin(), r.points.end(),
                   [](const RamPoint& a, const RamPoint& b) { return closed_point_less(a.point, b.point); });

  long total = 0;
  for (const auto& rp : r.points) {
    total += static_cast<long>(rp.orbit_size) * (rp.index - 1);
    if (rp.wild) r.tame = false;
    r.splitting_degree = std::lcm(r.splitting_degree, rp.orbit_size);
    bool seen = false;
    for (const auto& b : r.branch_set) seen = seen || b.point == rp.branch;
    if (!seen) r.branch_set.push_back({rp.branch, rp.branch.degree()});
  }
  std::sort(r.branch_set.begin(), r.branch_set.end(),
            [](const BranchPoint& a, const BranchPoint& b) { return closed_point_less(a.point, b.point); });
  r.rh_defect = total - (2L * r.degree - 2);
  return r;
}

RamReport ramification_analyze(const RationalMap& f) {
  Rng rng(kDefaultSeed);
  return ramification_analyze(f, rng);
}

bool is_simple_covering(const RamReport& report) {
  if (!report.tame) return false;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& a = report.points[i];
    if (a.index != 2) return false;
    // One geometric point above each geometric branch point.
    if (a.orbit_size != a.branch.degree()) return false;
    for (std::size_t j = i + 1; j < report.points.size(); ++j)
      if (a.branch == report.points[j].branch) return false;
  }
  return true;
}

bool is_simple_covering(const RationalMap& f) { return is_simple_covering(ramification_analyze(f)); }

BelyiVerdict verify_tame_belyi(const RationalMap& f, const std::vector<P1Point>& S, const std::vector<P1Point>& T) {
  check_disjoint(S, T);
  require(!f.is_constant(), "constant map: a Belyi map must be dominant");
  const Field& F = *f.field();
  check_points(F, S, "S");
  check_points(F, T, "T");
  BelyiVerdict v;
  v.kind = BelyiKind::Tame;
  try {
    v.report = ramification_analyze(f);
  } catch (const InseparableError& e) {
    v.violations.push_back({ViolationCode::Inseparable, e.what()});
    return v;
  }
  for (const auto& rp : v.report->points)
    if (rp.wild)
      v.violations.push_back({ViolationCode::WildIndex, "wild ramification index " + std::to_string(rp.index) +
                                                            " at " + rp.point.label()});
  for (const auto& b : v.report->branch_set)
    if (!closed_in_zero_one_inf(b.point))
      v.violations.push_back(
          {ViolationCode::BranchOutsideTarget, "branch point " + b.point.label() + " not in {0,1,inf}"});
  for (const auto& P : S) {
    P1Point img = f.evaluate(P);
    if (!in_zero_one_inf(F, img))
      v.violations.push_back({ViolationCode::SImageOutsideTarget,
                              "f(" + format_point(F, P) + ") = " + format_point(F, img) + " not in {0,1,inf}"});
  }
  for (const auto& P : T) {
    P1Point img = f.evaluate(P);
    if (in_zero_one_inf(F, img))
      v.violations.push_back({ViolationCode::TImageInForbidden,
                              "f(" + format_point(F, P) + ") = " + format_point(F, img) + " lies in {0,1,inf}"});
  }
  v.passed = v.violations.empty();
  return v;
}

BelyiVerdict verify_wild_belyi(const RationalMap& f, const std::vector<P1Point>& S, const std::vector<P1Point>& T) {
  check_disjoint(S, T);
  require(!f.is_constant(), "constant map: a Belyi map must be dominant");
  const Field& F = *f.field();
  check_points(F, S, "S");
  check_points(F, T, "T");
  BelyiVerdict v;
  v.kind = BelyiKind::Wild;
  v.report = ramification_analyze(f);  // inseparable maps throw
  for (const auto& b : v.report->branch_set)
    if (!b.point.at_infinity)
      v.violations.push_back({ViolationCode::BranchOutsideTarget, "branch point " + b.point.label() + " not in {inf}"});
  for (const auto& P : S) {
    P1Point img = f.evaluate(P);
    if (!img.is_infinity())
      v.violations.push_back({ViolationCode::SImageOutsideTarget,
                              "f(" + format_point(F, P) + ") = " + format_point(F, img) + " not in {inf}"});
  }
  for (const auto& P : T) {
    if (f.evaluate(P).is_infinity())
      v.violations.push_back({ViolationCode::TImageInForbidden, "f(" + format_point(F, P) + ") = inf"});
  }
  v.passed = v.violations.empty();
  return v;
}

long discriminant_degree(const RamReport& report) {
  long total = 0;
  for (const auto& rp : report.points) {
    require(!rp.wild, "wild ramification: tame discriminant formula inapplicable");
    total += static_cast<long>(rp.orbit_size) * (rp.index - 1);
  }
  return total;
}

long discriminant_degree(const RationalMap& f) { return discriminant_degree(ramification_analyze(f)); }

nlohmann::ordered_json to_json(const RamReport& report) {
  nlohmann::ordered_json j;
  j["degree"] = report.degree;
  j["tame"] = report.tame;
  auto pts = nlohmann::ordered_json::array();
  for (const auto& rp : report.points) {
    nlohmann::ordered_json e;
    e["min_poly"] = rp.point.at_infinity ? std::string("inf") : rp.point.min_poly->str();
    e["index"] = rp.index;
    e["wild"] = rp.wild;
    e["branch_image"] = rp.branch.label();
    e["orbit_size"] = rp.orbit_size;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  auto br = nlohmann::ordered_json::array();
  for (const auto& b : report.branch_set) br.push_back(b.point.label());
  j["branch_set"] = std::move(br);
  j["rh_defect"] = report.rh_defect;
  j["splitting_degree"] = report.splitting_degree;
  return j;
}

nlohmann::ordered_json to_json(const BelyiVerdict& verdict) {
  nlohmann::ordered_json j = verdict.report ? to_json(*verdict.report) : nlohmann::ordered_json::object();
  nlohmann::ordered_json v;
  v["kind"] = verdict.kind == BelyiKind::Tame ? "tame" : "wild";
  v["passed"] = verdict.passed;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& x : verdict.violations) arr.push_back({{"code", to_string(x.code)}, {"detail", x.detail}});
  v["violations"] = std::move(arr);
  j["verdict"] = std::move(v);
  return j;
}

}  // namespace belyi
