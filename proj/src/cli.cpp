#include "belyi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "belyi/bounds.hpp"
#include "belyi/constructions.hpp"
#include "belyi/counting.hpp"
#include "belyi/errors.hpp"
#include "belyi/ramification.hpp"
#include "belyi/search.hpp"
#include "belyi/text_format.hpp"

namespace belyi::cli {

using nlohmann::ordered_json;

namespace {

struct Vars {
  // globals
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  std::optional<std::uint64_t> guard_override;
  // shared command options
  int g = 0, s = 0, t = 0, n = 1, A = 3, m = 1, r = 1, d_max = 4;
  std::optional<int> t_side, m_max;
  std::uint64_t q_int = 0, p = 0, max_bits = kDefaultMaterializeBits, budget = 10000;
  std::optional<std::uint64_t> q_opt;
  std::size_t span_limit = kDefaultSpanLimit;
  int max_ext_degree = 24;
  std::string q, S, T, map, tau, curve, descriptor, mode = "exhaustive";
  std::vector<std::string> fields;
  bool normalize = false;
};

using Handler = std::function<ordered_json(ordered_json& config)>;

struct Leaf {
  CLI::App* app;
  std::string name;
  Handler handler;
};

std::uint64_t guard_or(const Vars& v, std::uint64_t dflt) { return v.guard_override.value_or(dflt); }

FieldPtr field_of(const Vars& v) { return Field::parse(v.q); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot read descriptor file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json count_json(const BigInt& v) { return to_decimal(v); }

std::map<int, BigInt> counts_up_to(const CurveModel& c, int r, const CountOptions& opt) {
  std::map<int, BigInt> out;
  for (int k = 1; k <= r; ++k) out[k] = count_points(c, k, opt);
  return out;
}

void print_text(std::ostream& out, const ordered_json& doc) {
  out << "command: " << doc["command"].get<std::string>() << "\n";
  out << "config: " << doc["config"].dump() << "\n";
  const auto& body = doc.contains("result") ? doc["result"] : doc["error"];
  for (auto it = body.begin(); it != body.end(); ++it)
    out << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
}

void echo_options(const CLI::App* leaf, ordered_json& config) {
  for (const CLI::Option* opt : leaf->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    const std::string key = opt->get_lnames()[0];
    if (opt->get_expected_min() == 0) {
      config[key] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& res = opt->results();
      config[key] = res.size() == 1 ? ordered_json(res[0]) : ordered_json(res);
    } else {
      const std::string d = opt->get_default_str();
      config[key] = d.empty() && !opt->get_required() ? ordered_json(nullptr) : ordered_json(d);
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Vars v;
  CLI::App app{"Belyi maps over finite fields: bounds, constructions, verification, counting, search", "belyi"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.add_flag("--json", v.json, "Emit one JSON document");
  app.add_option("--seed", v.seed, "Seed for randomized search");
  app.add_option("--workers", v.workers, "OpenMP workers for counting and search")->check(CLI::PositiveNumber);
  app.add_option("--guard-override", v.guard_override, "Replace every work guard with this value");

  std::vector<Leaf> leaves;
  auto group = [&](const std::string& name, const std::string& desc) {
    CLI::App* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, Handler h) {
    CLI::App* a = parent->add_subcommand(name, desc);
    a->fallthrough();
    leaves.push_back({a, parent->get_name() + " " + name, std::move(h)});
    return a;
  };
  auto add_gst = [&](CLI::App* a) {
    a->add_option("--g", v.g, "Genus")->check(CLI::NonNegativeNumber);
    a->add_option("--s", v.s, "|S|")->check(CLI::NonNegativeNumber);
    a->add_option("--t", v.t, "|T|")->check(CLI::NonNegativeNumber);
  };
  auto add_field = [&](CLI::App* a) {
    a->add_option("--q", v.q, "Field: p, p^n, p^n/c0,c1,... or a prime power")->required();
  };
  auto add_sets = [&](CLI::App* a) {
    a->add_option("--S", v.S, "Point list: all, none, or items separated by ';' (',' over prime fields)");
    a->add_option("--T", v.T, "Point list");
  };
  auto add_curve = [&](CLI::App* a) {
    a->add_option("--curve", v.curve, "p1/<field> or hyp/<field>/<coefficients>")->required();
  };

  // bound
  CLI::App* bound = group("bound", "Closed-form bounds and hypotheses");
  {
    CLI::App* a = leaf(bound, "tame", "Tame Belyi degree bound", [&](ordered_json&) {
      return to_json(tame_bound(v.g, v.s, v.t, v.q_int, v.max_bits));
    });
    add_gst(a);
    a->add_option("--q", v.q_int, "Odd prime power")->required();
    a->add_option("--max-bits", v.max_bits, "Largest value materialized, in bits");

    a = leaf(bound, "wild", "Wild Belyi degree bound", [&](ordered_json&) {
      ordered_json j = to_json(wild_bound(v.g, v.s, v.t, v.p));
      if (v.q_opt) {
        const int N = wild_N(v.g, v.t);
        j["hypothesis"] = {{"statement", "q + 1 - 2g*sqrt(q) >= N + s"},
                           {"q", *v.q_opt},
                           {"holds", wild_hypothesis_check(BigInt(static_cast<unsigned long>(*v.q_opt)), v.g, N, v.s)}};
      }
      return j;
    });
    add_gst(a);
    a->add_option("--p", v.p, "Odd prime")->required();
    a->add_option("--q", v.q_opt, "Field size for the point-count hypothesis");

    a = leaf(bound, "simple-cover", "Hypothesis for simple coverings of degree n", [&](ordered_json&) {
      ordered_json j = to_json(simple_cover_check(BigInt(static_cast<unsigned long>(v.q_int)), v.A, v.g, v.n, v.s,
                                            v.t_side.value_or(-1)));
      return j;
    });
    a->add_option("--q", v.q_int, "Field size")->required();
    a->add_option("--A", v.A, "Integer A >= 3");
    a->add_option("--g", v.g, "Genus")->check(CLI::NonNegativeNumber);
    a->add_option("--n", v.n, "Covering degree")->check(CLI::PositiveNumber);
    a->add_option("--s", v.s, "|S|")->check(CLI::NonNegativeNumber);
    a->add_option("--t", v.t_side, "|T|, enables the side condition n >= g + max(t, g)");

    a = leaf(bound, "threshold", "Field-size threshold and the extension exponent m", [&](ordered_json&) {
      ordered_json j;
      const Rational C = tame_threshold(v.g, v.s, v.t);
      j["threshold"] = rational_json(C);
      if (v.q_opt) {
        require_odd_prime_power(*v.q_opt);
        j["q"] = *v.q_opt;
        j["m"] = ceil_log_q(BigInt(static_cast<unsigned long>(*v.q_opt)), C);
        j["L"] = to_decimal(lcm_up_to(static_cast<std::uint64_t>(6 * v.g + 2 * v.t)));
      }
      return j;
    });
    add_gst(a);
    a->add_option("--q", v.q_opt, "Odd prime power; adds m and L");
  }

  // construct
  CLI::App* construct = group("construct", "Explicit Belyi map constructions");
  {
    CLI::App* a = leaf(construct, "tame-power", "The power map x^(q-1)", [&](ordered_json&) {
      return to_json(tame_power_map(field_of(v)));
    });
    add_field(a);

    a = leaf(construct, "tame-reduce", "Recursive reduction of S to three points", [&](ordered_json& cfg) {
      FieldPtr F = field_of(v);
      RecursionOptions ro;
      ro.max_degree = guard_or(v, ro.max_degree);
      cfg["guard"] = ro.max_degree;
      return to_json(tame_reduce_recursive(BelyiInstance::make(F, parse_point_list(*F, v.S), {}),
                                           parse_point(*F, v.tau), ro));
    });
    add_field(a);
    a->add_option("--S", v.S, "Point list");
    a->add_option("--tau", v.tau, "Point outside S")->required();

    a = leaf(construct, "wild", "Wild composite psi o phi", [&](ordered_json&) {
      FieldPtr F = field_of(v);
      WildOptions wo;
      wo.span_limit = v.span_limit;
      return to_json(
          wild_belyi_compose(BelyiInstance::make(F, parse_point_list(*F, v.S), parse_point_list(*F, v.T)), wo));
    });
    add_field(a);
    add_sets(a);
    a->add_option("--span-limit", v.span_limit, "Largest F_p-span built");

    a = leaf(construct, "pipeline", "Composition pipeline for a covering descriptor", [&](ordered_json& cfg) {
      FieldPtr F = field_of(v);
      const auto S = parse_point_list(*F, v.S);
      const auto T = parse_point_list(*F, v.T);
      CoveringDescriptor d = [&] {
        if (v.descriptor == "identity") return CoveringDescriptor::identity(F, S, T);
        const std::string text = !v.descriptor.empty() && v.descriptor[0] == '{' ? v.descriptor
                                                                                  : read_file(v.descriptor);
        return CoveringDescriptor::from_json(F, nlohmann::json::parse(text));
      }();
      PipelineOptions po;
      po.max_materialized_degree = v.max_ext_degree;
      po.recursion.max_degree = guard_or(v, po.recursion.max_degree);
      cfg["guard"] = po.recursion.max_degree;
      ordered_json j = to_json(tame_pipeline(d, F, S, T, po));
      j["descriptor"] = d.to_json(*F);
      return j;
    });
    add_field(a);
    add_sets(a);
    a->add_option("--descriptor", v.descriptor, "identity, a JSON file, or inline JSON")->required();
    a->add_option("--max-ext-degree", v.max_ext_degree, "Largest extension degree over F_p that is built");
  }

  // verify
  CLI::App* verify = group("verify", "Ramification reports and Belyi verdicts");
  {
    for (const char* kind : {"tame", "wild"}) {
      const bool tame = std::string(kind) == "tame";
      CLI::App* a = leaf(verify, kind, tame ? "Tame Belyi verdict" : "Wild Belyi verdict", [&v, tame](ordered_json&) {
        FieldPtr F = field_of(v);
        RationalMap f = parse_map(F, v.map);
        const auto S = parse_point_list(*F, v.S);
        const auto T = parse_point_list(*F, v.T);
        ordered_json j = to_json(tame ? verify_tame_belyi(f, S, T) : verify_wild_belyi(f, S, T));
        j["map"] = format_map(f);
        return j;
      });
      add_field(a);
      a->add_option("--map", v.map, "num=.../den=... or poly=...")->required();
      add_sets(a);
    }
    CLI::App* a = leaf(verify, "simple", "Simple covering test", [&](ordered_json&) {
      FieldPtr F = field_of(v);
      RationalMap f = parse_map(F, v.map);
      RamReport rep = ramification_analyze(f);
      ordered_json j;
      j["map"] = format_map(f);
      j["simple"] = is_simple_covering(rep);
      j["report"] = to_json(rep);
      return j;
    });
    add_field(a);
    a->add_option("--map", v.map, "num=.../den=... or poly=...")->required();
  }

  // count
  auto count_opts = [&](ordered_json& cfg) {
    CountOptions co;
    co.guard = guard_or(v, co.guard);
    co.workers = v.workers;
    cfg["guard"] = co.guard;
    return co;
  };
  CLI::App* count = group("count", "Point counts on P^1 and hyperelliptic curves");
  {
    CLI::App* a = leaf(count, "points", "#X(F_{q^m})", [&](ordered_json& cfg) {
      CurveModel c = CurveModel::parse(v.curve);
      const BigInt N = count_points(c, v.m, count_opts(cfg));
      ordered_json j;
      j["curve"] = c.describe();
      j["genus"] = c.genus();
      j["m"] = v.m;
      j["N"] = count_json(N);
      j["hasse_weil"] = hasse_weil_check(c.field()->order(), c.genus(), v.m, N);
      return j;
    });
    add_curve(a);
    a->add_option("--m", v.m, "Extension degree")->check(CLI::PositiveNumber);

    a = leaf(count, "zeta", "Zeta numerator from N_1..N_g", [&](ordered_json& cfg) {
      CurveModel c = CurveModel::parse(v.curve);
      const CountOptions co = count_opts(cfg);
      const auto counts = counts_up_to(c, c.genus(), co);
      ZetaData z = zeta_fit(c, counts);
      ordered_json j = to_json(z);
      j["curve"] = c.describe();
      const int top = v.m_max.value_or(c.genus() + 2);
      auto pred = ordered_json::array();
      for (int k = 1; k <= top; ++k) {
        const BigInt N = predict_count(z, k);
        pred.push_back({{"m", k}, {"N", count_json(N)}, {"hasse_weil", hasse_weil_check(z.q, z.genus, k, N)}});
      }
      j["predicted"] = pred;
      return j;
    });
    add_curve(a);
    a->add_option("--m-max", v.m_max, "Largest m to predict");

    a = leaf(count, "sym", "Rational points of the r-th symmetric product", [&](ordered_json& cfg) {
      CurveModel c = CurveModel::parse(v.curve);
      const auto counts = counts_up_to(c, v.r, count_opts(cfg));
      ordered_json j;
      j["curve"] = c.describe();
      j["r"] = v.r;
      auto ns = ordered_json::array();
      for (const auto& [k, N] : counts) ns.push_back(count_json(N));
      j["counts"] = ns;
      j["value"] = count_json(sym_product_count(counts, v.r));
      if (c.is_projective_line()) j["projective_space"] = count_json(projective_space_count(c.field()->order(), v.r));
      return j;
    });
    add_curve(a);
    a->add_option("--r", v.r, "Divisor degree")->check(CLI::PositiveNumber);

    a = leaf(count, "divisors", "Effective divisors of degree r by closed points", [&](ordered_json& cfg) {
      CurveModel c = CurveModel::parse(v.curve);
      const std::uint64_t guard = guard_or(v, 1'000'000);
      cfg["guard"] = guard;
      ordered_json j;
      j["curve"] = c.describe();
      j["r"] = v.r;
      auto cp = ordered_json::array();
      const auto closed = closed_point_counts(c, v.r, guard);
      for (int d = 1; d <= v.r; ++d) cp.push_back(count_json(closed[d]));
      j["closed_points"] = cp;
      j["value"] = count_json(enumerate_effective_divisors(c, v.r, guard));
      return j;
    });
    add_curve(a);
    a->add_option("--r", v.r, "Divisor degree")->check(CLI::PositiveNumber);
  }

  // search
  CLI::App* search = group("search", "Minimal Belyi degree by enumeration");
  for (const char* kind : {"tame", "wild"}) {
    const bool tame = std::string(kind) == "tame";
    CLI::App* a = leaf(search, kind, tame ? "Tame search" : "Wild search", [&v, tame](ordered_json& cfg) {
      FieldPtr F = field_of(v);
      SearchSpec spec{BelyiInstance::make(F, parse_point_list(*F, v.S), parse_point_list(*F, v.T)), {}, 1, {}};
      spec.kind = tame ? BelyiKind::Tame : BelyiKind::Wild;
      spec.d_max = v.d_max;
      for (const auto& f : v.fields) spec.fields.push_back(Field::parse(f));
      require(v.mode == "exhaustive" || v.mode == "randomized", "--mode must be exhaustive or randomized");
      spec.mode = v.mode == "exhaustive" ? SearchMode::Exhaustive : SearchMode::Randomized;
      spec.seed = v.seed;
      spec.budget = v.budget;
      spec.normalize = v.normalize;
      spec.workers = v.workers;
      spec.guard = guard_or(v, kDefaultSearchGuard);
      cfg["guard"] = spec.guard;
      return to_json(minimal_belyi_degree(spec));
    });
    add_field(a);
    add_sets(a);
    a->add_option("--d-max", v.d_max, "Largest degree searched")->check(CLI::PositiveNumber);
    a->add_option("--fields", v.fields, "Coefficient fields (default: q and q^2)");
    a->add_option("--mode", v.mode, "exhaustive or randomized");
    a->add_option("--budget", v.budget, "Samples per degree and field in randomized mode");
    a->add_flag("--normalize", v.normalize, "Skip maps equivalent under the {0,1,inf} permutations");
  }

  const bool json_requested = std::find(args.begin(), args.end(), "--json") != args.end();
  ordered_json doc;
  doc["command"] = "";
  doc["config"] = ordered_json::object();
  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    err << "error: " << message << "\n";
    if (json_requested) {
      doc["error"] = {{"exit_code", code}, {"kind", kind}, {"message", message}};
      out << doc.dump(2) << "\n";
    }
    return code;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::ostringstream help;
      app.exit(e, help, help);
      out << help.str();
      return 0;
    }
    return fail(2, "usage", e.what());
  }

  const Leaf* chosen = nullptr;
  for (const auto& l : leaves)
    if (l.app->parsed()) chosen = &l;
  if (!chosen) return fail(2, "usage", "no command given");
  doc["command"] = chosen->name;
  ordered_json& config = doc["config"];
  config["json"] = v.json;
  config["seed"] = v.seed;
  config["workers"] = v.workers;
  config["guard_override"] = v.guard_override ? ordered_json(*v.guard_override) : ordered_json(nullptr);
  echo_options(chosen->app, config);

  try {
    doc["result"] = chosen->handler(config);
  } catch (const PreconditionError& e) {
    return fail(2, dynamic_cast<const GuardError*>(&e) ? "guard" : "precondition", e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(2, "precondition", std::string("malformed JSON: ") + e.what());
  } catch (const InternalError& e) {
    return fail(1, "internal", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
  if (v.json)
    out << doc.dump(2) << "\n";
  else
    print_text(out, doc);
  return 0;
}

}  // namespace belyi::cli
