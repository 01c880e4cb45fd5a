#include "belyi/counting.hpp"

#include <algorithm>
#include <numeric>

#include "belyi/embedding.hpp"
#include "belyi/errors.hpp"
#include "belyi/factor.hpp"
#include "belyi/kernels.hpp"
#include "belyi/text_format.hpp"

namespace belyi {

namespace {

BigInt pow_q(const Field& F, int m) { return big_pow(F.order(), static_cast<unsigned long>(m)); }

std::uint64_t guarded_order(const Field& F, int m, std::uint64_t guard, const char* what) {
  const BigInt Q = pow_q(F, m);
  if (Q > BigInt(static_cast<unsigned long>(guard)))
    throw GuardError(std::string(what) + ": q^" + std::to_string(m) + " = " + Q.get_str() + " exceeds the guard " +
                     std::to_string(guard));
  return Q.get_ui();
}

// index_of(z^2) -> index of one square root z, or -1.
std::vector<std::int64_t> sqrt_table(const Field& F) {
  const std::uint64_t q = F.order_u64();
  std::vector<std::int64_t> root(q, -1);
  Elem z = F.zero();
  for (std::uint64_t i = 0; i < q; ++i) {
    std::uint64_t k = F.index_of(F.mul(z, z));
    if (root[k] < 0) root[k] = static_cast<std::int64_t>(i);
    F.increment(z);
  }
  return root;
}

bool elem_less(const Elem& a, const Elem& b) { return Field::compare(a, b) < 0; }

}  // namespace

CurveModel CurveModel::projective_line(FieldPtr field) { return CurveModel(std::move(field), std::nullopt); }

CurveModel CurveModel::hyperelliptic(Polynomial f) {
  require(f.degree() >= 3, "hyperelliptic model needs deg f >= 3 (got " + std::to_string(f.degree()) + ")");
  // gcd(f, f') = 1 also rules out p-th powers, whose derivative vanishes.
  require(gcd(f, f.derivative()).degree() == 0, "hyperelliptic model y^2 = f(x) needs f squarefree");
  FieldPtr F = f.field();
  return CurveModel(std::move(F), std::move(f));
}

CurveModel CurveModel::parse(std::string_view text) {
  if (text.rfind("p1/", 0) == 0) return projective_line(Field::parse(text.substr(3)));
  if (text.rfind("hyp/", 0) == 0) {
    std::string_view rest = text.substr(4);
    const std::size_t slash = rest.rfind('/');
    if (slash == std::string_view::npos) throw ParseError("curve 'hyp/<field>/<coefficients>' lacks coefficients", 4);
    FieldPtr F = Field::parse(rest.substr(0, slash));
    return hyperelliptic(parse_polynomial(F, rest.substr(slash + 1)));
  }
  throw ParseError("curve must be 'p1/<field>' or 'hyp/<field>/<coefficients>'", 0);
}

int CurveModel::genus() const { return is_projective_line() ? 0 : (f_->degree() + 1) / 2 - 1; }

std::string CurveModel::describe() const {
  if (is_projective_line()) return "p1/" + format_field(*field_);
  return "hyp/" + format_field(*field_) + "/" + format_polynomial(*f_);
}

BigInt count_points(const CurveModel& curve, int m, const CountOptions& opt) {
  require(m >= 1, "count_points needs m >= 1");
  const Field& F = *curve.field();
  if (curve.is_projective_line()) return pow_q(F, m) + 1;
  guarded_order(F, m, opt.guard, "count_points");
  Extension ext = extension_of_degree(curve.field(), m);
  const Polynomial fm = ext.inclusion.map(curve.f());
  const std::uint64_t affine =
      opt.workers > 1 ? kernels::affine_count_omp(fm, opt.workers) : kernels::affine_count_serial(fm);
  std::uint64_t at_inf = 1;
  if (fm.degree() % 2 == 0) at_inf = ext.field->is_square(fm.lead()) ? 2 : 0;
  return BigInt(static_cast<unsigned long>(affine + at_inf));
}

ZetaData zeta_fit(const CurveModel& curve, const std::map<int, BigInt>& counts) {
  ZetaData z;
  z.q = curve.field()->order();
  z.genus = curve.genus();
  const int g = z.genus;
  std::vector<BigInt> s(g + 1);
  for (int k = 1; k <= g; ++k) {
    auto it = counts.find(k);
    require(it != counts.end(), "zeta_fit needs N_" + std::to_string(k));
    s[k] = big_pow(z.q, k) + 1 - it->second;
  }
  z.a.assign(2 * g + 1, BigInt(0));
  z.a[0] = 1;
  for (int k = 1; k <= g; ++k) {
    BigInt acc = 0;
    for (int i = 1; i <= k; ++i) acc -= s[i] * z.a[k - i];
    require(acc % k == 0, "inconsistent counts: coefficient a_" + std::to_string(k) + " is not an integer");
    z.a[k] = acc / k;
  }
  for (int i = 0; i < g; ++i) z.a[2 * g - i] = big_pow(z.q, g - i) * z.a[i];
  return z;
}

BigInt predict_count(const ZetaData& z, int m) {
  require(m >= 1, "predict_count needs m >= 1");
  const int top = static_cast<int>(z.a.size()) - 1;
  auto a = [&](int k) { return k <= top ? z.a[k] : BigInt(0); };
  std::vector<BigInt> s(m + 1);
  for (int k = 1; k <= m; ++k) {
    BigInt acc = -BigInt(k) * a(k);
    for (int i = 1; i < k; ++i) acc -= a(i) * s[k - i];
    s[k] = acc;
  }
  return big_pow(z.q, m) + 1 - s[m];
}

BigInt sym_product_count(const std::map<int, BigInt>& counts, int r) {
  require(r >= 1, "sym_product_count needs r >= 1");
  std::vector<Rational> w(r + 1);
  for (int a = 1; a <= r; ++a) {
    auto it = counts.find(a);
    require(it != counts.end(), "sym_product_count needs N_" + std::to_string(a));
    w[a] = Rational(it->second, a);
    w[a].canonicalize();
  }
  // G[rem][i]: sum over compositions of rem into i parts of prod N_a / a.
  std::vector<std::vector<Rational>> G(r + 1, std::vector<Rational>(r + 1, Rational(0)));
  G[0][0] = 1;
  for (int i = 1; i <= r; ++i)
    for (int rem = i; rem <= r; ++rem) {
      Rational acc = 0;
      for (int a = 1; a <= rem - (i - 1); ++a) acc += w[a] * G[rem - a][i - 1];
      G[rem][i] = acc;
    }
  Rational total = 0;
  for (int i = 1; i <= r; ++i) total += G[r][i] / Rational(factorial(static_cast<unsigned long>(i)));
  total.canonicalize();
  ensure(total.get_den() == 1, "symmetric product count is not an integer: inconsistent point counts");
  return total.get_num();
}

std::vector<BigInt> closed_point_counts(const CurveModel& curve, int r, std::uint64_t guard) {
  require(r >= 1, "closed point enumeration needs r >= 1");
  const FieldPtr& base = curve.field();
  guarded_order(*base, r, guard, "enumerate_effective_divisors");
  std::vector<BigInt> c(r + 1, BigInt(0));
  if (curve.is_projective_line()) {
    c[1] = base->order() + 1;
    const std::uint64_t q = base->order_u64();
    for (int d = 2; d <= r; ++d) {
      std::uint64_t total = 1;
      for (int i = 0; i < d; ++i) total *= q;
      std::uint64_t irreducible = 0;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Elem> co;
        std::uint64_t v = idx;
        for (int i = 0; i < d; ++i) {
          co.push_back(base->element_at(v % q));
          v /= q;
        }
        co.push_back(base->one());
        if (is_irreducible(Polynomial(base, std::move(co)))) ++irreducible;
      }
      c[d] = static_cast<unsigned long>(irreducible);
    }
    return c;
  }
  for (int d = 1; d <= r; ++d) {
    Extension ext = extension_of_degree(base, d);
    const Field& E = *ext.field;
    const Polynomial fd = ext.inclusion.map(curve.f());
    const auto root = sqrt_table(E);
    auto orbit = [&](const Elem& a) { return static_cast<int>(galois_orbit(E, a, *base).size()); };
    std::uint64_t exact = 0;
    Elem x = E.zero();
    for (std::uint64_t i = 0; i < E.order_u64(); ++i, E.increment(x)) {
      Elem v = fd.eval(x);
      const std::int64_t k = root[E.index_of(v)];
      if (k < 0) continue;
      const int ox = orbit(x);
      if (E.is_zero(v)) {
        if (ox == d) ++exact;
        continue;
      }
      const Elem y = E.element_at(static_cast<std::uint64_t>(k));
      const int oy = std::lcm(ox, orbit(y));
      const int oy2 = std::lcm(ox, orbit(E.neg(y)));
      exact += (oy == d) + (oy2 == d);
    }
    ensure(exact % d == 0, "points of exact degree do not split into full Galois orbits");
    c[d] = static_cast<unsigned long>(exact / d);
  }
  const Polynomial& f = curve.f();
  if (f.degree() % 2 == 1) {
    c[1] += 1;
  } else if (base->is_square(f.lead())) {
    c[1] += 2;
  } else if (r >= 2) {
    c[2] += 1;
  }
  return c;
}

BigInt enumerate_effective_divisors(const CurveModel& curve, int r, std::uint64_t guard) {
  const auto c = closed_point_counts(curve, r, guard);
  // Coefficients of prod_d (1 - t^d)^(-c_d) up to t^r.
  std::vector<BigInt> poly(r + 1, BigInt(0));
  poly[0] = 1;
  for (int d = 1; d <= r; ++d) {
    if (c[d] == 0) continue;
    std::vector<BigInt> next(r + 1, BigInt(0));
    for (int j = 0; j <= r; ++j) {
      if (poly[j] == 0) continue;
      for (int k = 0; j + d * k <= r; ++k) {
        BigInt choose;
        BigInt top = c[d] + k - 1;
        mpz_bin_ui(choose.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(k));
        next[j + d * k] += poly[j] * choose;
      }
    }
    poly = std::move(next);
  }
  return poly[r];
}

bool hasse_weil_check(const BigInt& q, int g, int m, const BigInt& N) {
  const BigInt qm = big_pow(q, static_cast<unsigned long>(m));
  const BigInt diff = N - qm - 1;
  return diff * diff <= BigInt(4) * g * g * qm;
}

bool l005_bounds_check(const BigInt& q, int A, int r, const BigInt& value) {
  require(A >= 3, "the inequality requires an integer A >= 3 (got A = " + std::to_string(A) + ")");
  require(r >= 1, "r must be >= 1");
  const Rational qr(big_pow(q, static_cast<unsigned long>(r)));
  Rational low_base = Rational(3) - Rational(2, A);
  low_base.canonicalize();
  Rational lower = rat_pow(low_base, r) * qr / Rational(7 * factorial(static_cast<unsigned long>(r)));
  Rational up_base = Rational(5, 3) + Rational(4, 3 * A);
  up_base.canonicalize();
  Rational upper = rat_pow(up_base, r) * qr;
  const Rational v(value);
  return lower < v && v < upper;
}

BigInt projective_space_count(const BigInt& q, int L) {
  require(L >= 0, "projective_space_count needs L >= 0");
  BigInt total = 0, pw = 1;
  for (int j = 0; j <= L; ++j) {
    total += pw;
    pw *= q;
  }
  return total;
}

std::vector<CurvePoint> curve_rational_points(const CurveModel& curve) {
  const Field& F = *curve.field();
  std::vector<CurvePoint> out;
  if (curve.is_projective_line()) {
    for (const auto& P : rational_points(F)) {
      CurvePoint c;
      if (!P.is_infinity()) c.x = P.value();
      out.push_back(std::move(c));
    }
    return out;
  }
  const Polynomial& f = curve.f();
  const auto root = sqrt_table(F);
  Elem x = F.zero();
  for (std::uint64_t i = 0; i < F.order_u64(); ++i, F.increment(x)) {
    Elem v = f.eval(x);
    const std::int64_t k = root[F.index_of(v)];
    if (k < 0) continue;
    Elem y = F.element_at(static_cast<std::uint64_t>(k));
    out.push_back({x, y, 0});
    if (!F.is_zero(v)) out.push_back({x, F.neg(y), 0});
  }
  std::sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) {
    if (*a.x != *b.x) return elem_less(*a.x, *b.x);
    return elem_less(*a.y, *b.y);
  });
  if (f.degree() % 2 == 1) {
    out.push_back({std::nullopt, std::nullopt, 0});
  } else if (F.is_square(f.lead())) {
    out.push_back({std::nullopt, std::nullopt, 0});
    out.push_back({std::nullopt, std::nullopt, 1});
  }
  return out;
}

std::string format_curve_point(const CurveModel& curve, const CurvePoint& P) {
  const Field& F = *curve.field();
  if (P.is_infinity()) {
    if (curve.is_projective_line() || curve.f().degree() % 2 == 1) return "inf";
    return P.infinity_index == 0 ? "inf+" : "inf-";
  }
  if (curve.is_projective_line()) return F.format(*P.x);
  return "(" + F.format(*P.x) + ";" + F.format(*P.y) + ")";
}

std::vector<CurvePoint> pick_points(const CurveModel& curve, const std::vector<CurvePoint>& avoid, int count,
                                    bool prime_subfield) {
  require(count >= 0, "pick_points: count must be nonnegative");
  const Field& F = *curve.field();
  std::vector<CurvePoint> available;
  for (auto& P : curve_rational_points(curve)) {
    if (std::find(avoid.begin(), avoid.end(), P) != avoid.end()) continue;
    if (prime_subfield && !P.is_infinity()) {
      if (!F.in_prime_subfield(*P.x)) continue;
      if (P.y && !F.in_prime_subfield(*P.y)) continue;
    }
    available.push_back(std::move(P));
  }
  require(static_cast<int>(available.size()) >= count,
          "pick_points: only " + std::to_string(available.size()) +
              " rational points available outside the avoided set, " + std::to_string(count) + " requested");
  available.resize(count);
  return available;
}

std::vector<P1Point> pick_points(const FieldPtr& field, const std::vector<P1Point>& avoid, int count,
                                 bool prime_subfield) {
  require(count >= 0, "pick_points: count must be nonnegative");
  const Field& F = *field;
  // Lazy scan in point order; the field itself may be far too large to list.
  std::vector<P1Point> out;
  auto take = [&](P1Point P) {
    if (static_cast<int>(out.size()) < count && std::find(avoid.begin(), avoid.end(), P) == avoid.end())
      out.push_back(std::move(P));
  };
  const std::uint64_t n_affine = prime_subfield ? F.characteristic() : F.order_u64();
  std::uint64_t available = n_affine + 1;
  for (const auto& P : avoid) {
    if (P.is_infinity() || !prime_subfield || F.in_prime_subfield(P.value())) --available;
  }
  for (std::uint64_t i = 0; i < n_affine && static_cast<int>(out.size()) < count; ++i)
    take(P1Point::affine(prime_subfield ? F.from_int(static_cast<std::int64_t>(i)) : element_in_order(F, i)));
  take(P1Point::infinity());
  require(static_cast<int>(out.size()) == count,
          "pick_points: only " + std::to_string(available) + " rational points available outside the avoided set, " +
              std::to_string(count) + " requested");
  return out;
}

nlohmann::ordered_json to_json(const ZetaData& z) {
  nlohmann::ordered_json j;
  j["q"] = z.q.get_str();
  j["genus"] = z.genus;
  auto a = nlohmann::ordered_json::array();
  for (const auto& v : z.a) a.push_back(v.get_str());
  j["a"] = std::move(a);
  return j;
}

}  // namespace belyi
