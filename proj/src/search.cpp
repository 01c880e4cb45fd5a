#include "belyi/search.hpp"

#include <algorithm>
#include <array>

#include "belyi/errors.hpp"
#include "belyi/kernels.hpp"
#include "belyi/text_format.hpp"

namespace belyi {

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Post-composition by the Mobius maps permuting {0, 1, inf}, on (N, D).
std::array<std::pair<Polynomial, Polynomial>, 5> zero_one_inf_images(const Polynomial& N, const Polynomial& D) {
  return {{{D - N, D}, {D, N}, {D, D - N}, {N, N - D}, {N - D, N}}};
}

struct Target {
  bool tame;
  bool ok_S(const Field& F, const P1Point& v) const {
    if (v.is_infinity()) return true;
    return tame && (F.is_zero(v.value()) || F.is_one(v.value()));
  }
  bool ok_T(const Field& F, const P1Point& v) const {
    if (tame) return !(v.is_infinity() || F.is_zero(v.value()) || F.is_one(v.value()));
    return !v.is_infinity();
  }
};

// Value of N/D at P; nullopt when N and D vanish together there.
std::optional<P1Point> value_at(const Field& F, const Polynomial& N, const Polynomial& D, const P1Point& P) {
  if (P.is_infinity()) {
    if (N.degree() > D.degree()) return P1Point::infinity();
    if (N.degree() < D.degree()) return P1Point::affine(F.zero());
    return P1Point::affine(F.div(N.lead(), D.lead()));
  }
  const Elem n = N.eval(P.value());
  const Elem d = D.eval(P.value());
  if (F.is_zero(d)) {
    if (F.is_zero(n)) return std::nullopt;
    return P1Point::infinity();
  }
  return P1Point::affine(F.div(n, d));
}

struct FieldSearch {
  const CandidateSpace& space;
  std::vector<P1Point> S, T;
  std::vector<Elem> elements;
  Target target;
  bool normalize;

  bool canonical(std::uint64_t idx, const Polynomial& N, const Polynomial& D) const {
    for (const auto& [n, d] : zero_one_inf_images(N, D))
      if (space.index_of(RationalMap::make(n, d)) < idx) return false;
    return true;
  }

  bool passes(std::uint64_t idx) const {
    const Field& F = *space.field();
    auto [N, D] = space.raw(idx);
    if (N.is_zero()) return false;
    for (const auto& P : S) {
      auto v = value_at(F, N, D, P);
      if (!v || !target.ok_S(F, *v)) return false;
    }
    for (const auto& P : T) {
      auto v = value_at(F, N, D, P);
      if (!v || !target.ok_T(F, *v)) return false;
    }
    if (gcd(N, D).degree() > 0) return false;
    if (normalize && !canonical(idx, N, D)) return false;
    RationalMap f = RationalMap::make(N, D);
    const Polynomial W = f.wronskian();
    if (W.is_zero()) return false;
    // Rational critical points must already lie over the target set.
    for (const auto& x : elements) {
      if (!F.is_zero(W.eval(x))) continue;
      const P1Point v = f.evaluate(P1Point::affine(x));
      if (!v.is_infinity() && !(target.tame && (F.is_zero(v.value()) || F.is_one(v.value())))) return false;
    }
    const BelyiVerdict verdict = target.tame ? verify_tame_belyi(f, S, T) : verify_wild_belyi(f, S, T);
    return verdict.passed;
  }
};

std::optional<std::uint64_t> first_match(std::uint64_t begin, std::uint64_t end, const kernels::IndexPredicate& pred,
                                         int workers) {
  return workers > 1 ? kernels::first_match_omp(begin, end, pred, workers)
                     : kernels::first_match_serial(begin, end, pred);
}

}  // namespace

CandidateSpace::CandidateSpace(FieldPtr field, int d) : field_(std::move(field)), d_(d) {
  require(d >= 1, "candidate degree must be at least 1");
  const BigInt Q = field_->order();
  const BigInt total = big_pow(Q, 2 * d + 2);
  require(total < BigInt(1) << 62, "candidate space over " + format_field(*field_) + " at degree " +
                                      std::to_string(d) + " is too large to index");
  q_ = field_->order_u64();
  block_start_.push_back(0);
  for (int j = 0; j <= d; ++j) block_start_.push_back(block_start_.back() + upow(q_, j) * num_count(j));
  total_ = block_start_.back();
}

std::uint64_t CandidateSpace::num_count(int j) const {
  return j < d_ ? (q_ - 1) * upow(q_, d_) : upow(q_, d_ + 1);
}

std::pair<Polynomial, Polynomial> CandidateSpace::raw(std::uint64_t idx) const {
  require(idx < total_, "candidate index out of range");
  const Field& F = *field_;
  int j = 0;
  while (block_start_[j + 1] <= idx) ++j;
  const std::uint64_t local = idx - block_start_[j];
  std::uint64_t den_idx = local / num_count(j);
  std::uint64_t num_idx = local % num_count(j);
  std::vector<Elem> dc;
  for (int i = 0; i < j; ++i, den_idx /= q_) dc.push_back(F.element_at(den_idx % q_));
  dc.push_back(F.one());
  std::vector<Elem> nc;
  const int lower = j < d_ ? d_ : d_ + 1;
  for (int i = 0; i < lower; ++i, num_idx /= q_) nc.push_back(F.element_at(num_idx % q_));
  if (j < d_) nc.push_back(F.element_at(num_idx + 1));
  return {Polynomial(field_, std::move(nc)), Polynomial(field_, std::move(dc))};
}

std::optional<RationalMap> CandidateSpace::at(std::uint64_t idx) const {
  auto [N, D] = raw(idx);
  if (N.is_zero() || gcd(N, D).degree() > 0) return std::nullopt;
  return RationalMap::make(N, D);
}

std::uint64_t CandidateSpace::index_of(const RationalMap& f) const {
  const Field& F = *field_;
  const Polynomial& N = f.numerator();
  const Polynomial& D = f.denominator();
  const int j = D.degree();
  require(f.degree() == d_, "map degree differs from the candidate space degree");
  std::uint64_t den_idx = 0;
  for (int i = j - 1; i >= 0; --i) den_idx = den_idx * q_ + F.index_of(D.coeff(i));
  std::uint64_t num_idx = 0;
  if (j < d_) {
    num_idx = F.index_of(N.coeff(d_)) - 1;
    for (int i = d_ - 1; i >= 0; --i) num_idx = num_idx * q_ + F.index_of(N.coeff(i));
  } else {
    for (int i = d_; i >= 0; --i) num_idx = num_idx * q_ + F.index_of(N.coeff(i));
  }
  return block_start_[j] + den_idx * num_count(j) + num_idx;
}

std::vector<RationalMap> enumerate_candidates(const FieldPtr& field, int d, Normalization n, std::uint64_t guard) {
  const BigInt work = big_pow(field->order(), 2 * d + 2);
  if (work > BigInt(static_cast<unsigned long>(guard)))
    throw GuardError("enumerating degree-" + std::to_string(d) + " maps over " + format_field(*field) +
                     " needs q^(2d+2) = " + work.get_str() + " > guard " + std::to_string(guard));
  CandidateSpace space(field, d);
  std::vector<RationalMap> out;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    auto f = space.at(i);
    if (!f) continue;
    if (n == Normalization::ZeroOneInf) {
      bool smallest = true;
      for (const auto& [a, b] : zero_one_inf_images(f->numerator(), f->denominator()))
        if (space.index_of(RationalMap::make(a, b)) < i) smallest = false;
      if (!smallest) continue;
    }
    out.push_back(std::move(*f));
  }
  return out;
}

SearchResult minimal_belyi_degree(const SearchSpec& spec) {
  const BelyiInstance& inst = spec.instance;
  const FieldPtr& base = inst.field;
  require(spec.d_max >= 1, "d_max must be at least 1");
  require(!(spec.normalize && spec.kind == BelyiKind::Wild),
          "the {0,1,inf} normalization applies to tame searches only");
  std::vector<FieldPtr> fields = spec.fields;
  if (fields.empty()) fields = {base, extension_of_degree(base, 2).field};

  struct Prepared {
    FieldPtr field;
    Embedding inclusion;
  };
  std::vector<Prepared> prepared;
  SearchResult r;
  for (const auto& E : fields) {
    require(E->characteristic() == base->characteristic() && E->degree() % base->degree() == 0,
            "coefficient field " + format_field(*E) + " does not contain " + format_field(*base));
    prepared.push_back({E, E->same_as(*base) ? Embedding::identity(E) : embed(base, E)});
    r.fields_searched.push_back(format_field(*E));
  }
  if (spec.mode == SearchMode::Exhaustive) {
    for (int d = 1; d <= spec.d_max; ++d)
      for (const auto& pf : prepared) {
        const BigInt work = big_pow(pf.field->order(), 2 * d + 2);
        if (work > BigInt(static_cast<unsigned long>(spec.guard)))
          throw GuardError("exhaustive search over " + format_field(*pf.field) + " at degree " + std::to_string(d) +
                           " needs q^(2d+2) = " + work.get_str() + " > guard " + std::to_string(spec.guard) +
                           "; use randomized mode or raise the guard");
      }
  }

  Rng rng(spec.seed);
  bool all_exhaustive = true;
  for (int d = 1; d <= spec.d_max; ++d) {
    for (const auto& pf : prepared) {
      CandidateSpace space(pf.field, d);
      FieldSearch fs{space, {}, {}, {}, Target{spec.kind == BelyiKind::Tame}, spec.normalize};
      for (const auto& P : inst.S) fs.S.push_back(map_point(pf.inclusion, P));
      for (const auto& P : inst.T) fs.T.push_back(map_point(pf.inclusion, P));
      Elem x = pf.field->zero();
      for (std::uint64_t i = 0; i < pf.field->order_u64(); ++i, pf.field->increment(x)) fs.elements.push_back(x);

      DegreeLog log{d, format_field(*pf.field)};
      std::optional<std::uint64_t> hit;
      if (spec.mode == SearchMode::Exhaustive || spec.budget >= space.size()) {
        log.exhaustive = true;
        hit = first_match(0, space.size(), [&](std::uint64_t i) { return fs.passes(i); }, spec.workers);
        log.candidates = hit ? *hit + 1 : space.size();
      } else {
        std::uniform_int_distribution<std::uint64_t> pick(0, space.size() - 1);
        std::vector<std::uint64_t> sample(spec.budget);
        for (auto& s : sample) s = pick(rng);
        std::sort(sample.begin(), sample.end());
        sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
        auto pos = first_match(0, sample.size(), [&](std::uint64_t k) { return fs.passes(sample[k]); }, spec.workers);
        if (pos) hit = sample[*pos];
        log.candidates = pos ? *pos + 1 : sample.size();
      }
      r.candidates_tested += log.candidates;
      log.found = hit.has_value();
      all_exhaustive = all_exhaustive && log.exhaustive;
      r.log.push_back(log);
      if (!hit) continue;
      r.degree = d;
      r.witness = space.at(*hit);
      ensure(r.witness.has_value(), "search witness is not reduced");
      r.witness_verdict = spec.kind == BelyiKind::Tame ? verify_tame_belyi(*r.witness, fs.S, fs.T)
                                                       : verify_wild_belyi(*r.witness, fs.S, fs.T);
      ensure(r.witness_verdict->passed, "search witness fails its verifier on re-check");
      // Degrees below d were covered completely only if every pass so far was.
      r.exhausted = std::all_of(r.log.begin(), r.log.end(), [&](const DegreeLog& l) {
        return l.degree == d || l.exhaustive;
      });
      return r;
    }
  }
  r.exhausted = all_exhaustive;
  return r;
}

nlohmann::ordered_json to_json(const SearchResult& r) {
  nlohmann::ordered_json j;
  j["degree"] = r.degree ? nlohmann::ordered_json(*r.degree) : nlohmann::ordered_json(nullptr);
  j["witness"] = r.witness ? nlohmann::ordered_json(format_map(*r.witness)) : nlohmann::ordered_json(nullptr);
  j["witness_field"] =
      r.witness ? nlohmann::ordered_json(format_field(*r.witness->field())) : nlohmann::ordered_json(nullptr);
  j["exhausted"] = r.exhausted;
  j["exhausted_scope"] = "searched coefficient fields only";
  j["fields_searched"] = r.fields_searched;
  j["candidates_tested"] = r.candidates_tested;
  auto log = nlohmann::ordered_json::array();
  for (const auto& l : r.log)
    log.push_back({{"degree", l.degree},
                   {"field", l.field},
                   {"candidates", l.candidates},
                   {"exhaustive", l.exhaustive},
                   {"found", l.found}});
  j["log"] = log;
  if (r.witness_verdict) j["witness_verdict"] = to_json(*r.witness_verdict)["verdict"];
  return j;
}

}  // namespace belyi
