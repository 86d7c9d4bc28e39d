#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "endlab/errors.hpp"
#include "endlab/group.hpp"
#include "endlab/measure.hpp"

namespace endlab {

using Json = nlohmann::json;

struct MeasureEntry {
  std::string word;  // canonical normal form
  double probability = 0.0;
  bool operator==(const MeasureEntry&) const = default;
};

struct Budgets {
  std::int64_t N = 2000;                    // walk length for drift
  std::int64_t M = 10000;                   // walks for drift and SMB
  int window_radius = 14;                   // largest Cayley window for metric checks
  int convolution_depth = 12;               // n_exact
  int sphere_depth = 20;                    // growth fit horizon
  std::uint64_t convolution_entries = 4'000'000;
  std::uint64_t vertex_cap = 5'000'000;
  bool operator==(const Budgets&) const = default;
};

struct EstimateParams {
  std::optional<int> bound_power;  // exact table for the subadditive drift bound
  bool operator==(const EstimateParams&) const = default;
};

struct DimensionParams {
  std::int64_t bank_N = 400;
  std::int64_t bank_M = 20000;
  int centers = 50;
  int n1 = 2, n2 = 14;
  std::int64_t entropy_M = 2000;
  double tolerance = 0.05;       // relative, aggregate vs target
  double max_dispersion = 0.1;
  bool operator==(const DimensionParams&) const = default;
};

struct BoxParams {
  int n_max = 10;
  double tolerance = 1e-3;  // absolute, slope vs v / (-log lambda)
  bool operator==(const BoxParams&) const = default;
};

struct DoublingParams {
  std::string mode = "enumeration";  // enumeration | construction | bank
  int theta_exponent = 3;
  int n_from = 3, n_to = 10;
  std::string center = "a";          // enumeration: ray generator
  std::string factor;                // construction: one-ended factor name
  int center_index = 0;              // bank: which sampled end
  std::string expect = "none";       // none | plateau | growth
  double p_value = 0.01;
  bool operator==(const DoublingParams&) const = default;
};

struct TrackingParams {
  std::int64_t N = 2000;
  std::int64_t M = 2000;
  int R = 2;
  std::int64_t stride = 100;
  double kappa = 0.5;
  std::int64_t compare_from = 100, compare_to = 1000;
  double min_drop_se = 2.0;
  bool operator==(const TrackingParams&) const = default;
};

struct TreeParams {
  std::vector<std::int64_t> depths;
  std::vector<std::int64_t> branches;
  double alpha = 0.5;
  std::optional<double> expected;
  double tolerance = 1e-9;
  int box_check_depth = 12;  // independent box count when the tree is this shallow
  bool operator==(const TreeParams&) const = default;
};

struct PropertyParams {
  std::uint64_t instances = 1000;
  std::int64_t walk_length = 200;
  std::uint64_t window_cap = 250'000;
  std::uint64_t refine_cap = 1'200'000;
  int convolution_depth = 8;
  int entropy_depth = 12;
  std::vector<std::string> modules = {"group-core", "walk-engine", "boundary-metrics", "dimension-lab"};
  bool operator==(const PropertyParams&) const = default;
};

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 0;
  GroupSpec group;
  std::vector<MeasureEntry> measure;
  std::vector<double> lambdas;
  Budgets budgets;
  EstimateParams estimate;
  DimensionParams dimension;
  BoxParams boundary_dim;
  DoublingParams doubling;
  TrackingParams tracking;
  std::optional<TreeParams> tree;
  PropertyParams properties;
  bool operator==(const ExperimentConfig&) const = default;
};

namespace config_detail {

inline std::string join(const std::string& at, std::string_view key) { return at + "/" + std::string(key); }

// Typed field access that records violations instead of throwing.
class Reader {
 public:
  std::vector<Violation> violations;

  void fail(std::string at, std::string msg) { violations.push_back({std::move(at), std::move(msg)}); }

  const Json* object(const Json& parent, std::string_view key, const std::string& at, bool required) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) fail(join(at, key), "required");
      return nullptr;
    }
    if (!it->is_object()) {
      fail(join(at, key), "must be an object");
      return nullptr;
    }
    return &*it;
  }

  void known_keys(const Json& obj, const std::string& at, std::initializer_list<std::string_view> keys) {
    for (const auto& [k, _] : obj.items()) {
      bool ok = false;
      for (auto key : keys) ok = ok || key == k;
      if (!ok) fail(join(at, k), "unknown field");
    }
  }

  template <class Int>
  void integer(const Json& obj, std::string_view key, const std::string& at, Int& out, std::int64_t lo,
               std::int64_t hi = std::numeric_limits<std::int64_t>::max(), bool required = false) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(join(at, key), "required");
      return;
    }
    if (!it->is_number_integer()) {
      fail(join(at, key), "must be an integer");
      return;
    }
    if (it->is_number_unsigned() && it->get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      if constexpr (std::is_same_v<Int, std::uint64_t>) {
        out = it->get<std::uint64_t>();
        return;
      }
      fail(join(at, key), "out of range");
      return;
    }
    const auto v = it->get<std::int64_t>();
    if (v < lo || v > hi) {
      fail(join(at, key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(v));
      return;
    }
    out = static_cast<Int>(v);
  }

  void real(const Json& obj, std::string_view key, const std::string& at, double& out, double lo, double hi, bool open = false) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) {
      fail(join(at, key), "must be a number");
      return;
    }
    const double v = it->get<double>();
    const bool inside = open ? (v > lo && v < hi) : (v >= lo && v <= hi);
    if (!std::isfinite(v) || !inside) {
      fail(join(at, key), std::string("must lie in ") + (open ? "(" : "[") + fmt_num(lo) + ", " + fmt_num(hi) + (open ? ")" : "]") +
                              ", got " + fmt_num(v));
      return;
    }
    out = v;
  }

  void string(const Json& obj, std::string_view key, const std::string& at, std::string& out,
              std::initializer_list<std::string_view> allowed = {}) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_string()) {
      fail(join(at, key), "must be a string");
      return;
    }
    const auto v = it->get<std::string>();
    if (allowed.size()) {
      bool ok = false;
      std::string list;
      for (auto a : allowed) {
        ok = ok || a == v;
        list += (list.empty() ? "" : ", ") + std::string(a);
      }
      if (!ok) {
        fail(join(at, key), "must be one of " + list + ", got '" + v + "'");
        return;
      }
    }
    out = v;
  }

  // [lo, hi] pair of integers with lo <= hi.
  void range(const Json& obj, std::string_view key, const std::string& at, int& lo_out, int& hi_out, int lo, int hi) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() || !(*it)[1].is_number_integer()) {
      fail(join(at, key), "must be a pair of integers [from, to]");
      return;
    }
    const auto a = (*it)[0].get<std::int64_t>(), b = (*it)[1].get<std::int64_t>();
    if (a < lo || b > hi || a > b) {
      fail(join(at, key), "needs " + std::to_string(lo) + " <= from <= to <= " + std::to_string(hi));
      return;
    }
    lo_out = static_cast<int>(a);
    hi_out = static_cast<int>(b);
  }

  static std::string fmt_num(double v) {
    Json j = v;
    return j.dump();
  }
};

inline FactorSpec read_factor(Reader& rd, const Json& f, const std::string& at) {
  FactorSpec s;
  if (!f.is_object()) {
    rd.fail(at, "factor must be an object");
    return s;
  }
  rd.known_keys(f, at, {"name", "kind", "rank", "table", "generators", "peripheral"});
  rd.string(f, "name", at, s.name);
  if (s.name.empty()) rd.fail(join(at, "name"), "required non-empty string");
  std::string kind;
  rd.string(f, "kind", at, kind, {"free_abelian", "finite"});
  if (kind.empty() && !f.contains("kind")) rd.fail(join(at, "kind"), "required (free_abelian or finite)");
  if (const auto p = f.find("peripheral"); p != f.end()) {
    if (p->is_boolean())
      s.peripheral = p->get<bool>();
    else
      rd.fail(join(at, "peripheral"), "must be a boolean");
  }
  if (kind == "free_abelian") {
    s.kind = FactorKind::FreeAbelian;
    rd.integer(f, "rank", at, s.rank, 1, static_cast<std::int64_t>(kMaxRank), true);
    if (f.contains("table") || f.contains("generators")) rd.fail(at, "free_abelian factors take no table or generators");
  } else if (kind == "finite") {
    s.kind = FactorKind::Finite;
    s.rank = 0;
    const auto t = f.find("table");
    if (t == f.end() || !t->is_array()) {
      rd.fail(join(at, "table"), "finite factors need a multiplication table (array of rows)");
    } else {
      for (std::size_t i = 0; i < t->size(); ++i) {
        const auto& row = (*t)[i];
        const std::string rat = join(join(at, "table"), std::to_string(i));
        if (!row.is_array()) {
          rd.fail(rat, "row must be an array of integers");
          continue;
        }
        std::vector<int> r;
        for (const auto& x : row) {
          if (!x.is_number_integer()) {
            rd.fail(rat, "entries must be integers");
            break;
          }
          r.push_back(x.get<int>());
        }
        s.table.push_back(std::move(r));
      }
    }
    if (const auto g = f.find("generators"); g != f.end()) {
      if (!g->is_array()) {
        rd.fail(join(at, "generators"), "must be an array of element indices");
      } else {
        for (const auto& x : *g) {
          if (!x.is_number_integer()) {
            rd.fail(join(at, "generators"), "entries must be integers");
            break;
          }
          s.generators.push_back(x.get<int>());
        }
      }
    }
  }
  return s;
}

}  // namespace config_detail

// Parses and validates an experiment config. Every violation is collected
// (with its JSON pointer) before a single ValidationError is thrown.
inline ExperimentConfig parse_config_json(const Json& j) {
  using config_detail::join;
  config_detail::Reader rd;
  ExperimentConfig c;
  if (!j.is_object()) throw ValidationError("", "config must be a JSON object");
  rd.known_keys(j, "", {"name", "seed", "group", "measure", "lambda", "budgets", "estimate", "dimension", "boundary_dim", "doubling",
                        "tracking", "tree", "properties"});
  rd.string(j, "name", "", c.name);
  if (const auto s = j.find("seed"); s == j.end())
    rd.fail("/seed", "required: all randomness flows from one declared master seed");
  else if (!s->is_number_unsigned())
    rd.fail("/seed", "must be a non-negative integer");
  else
    c.seed = s->get<std::uint64_t>();

  if (const auto l = j.find("lambda"); l == j.end()) {
    rd.fail("/lambda", "required: list of values in (0,1)");
  } else if (!l->is_array() || l->empty()) {
    rd.fail("/lambda", "must be a non-empty list of values in (0,1)");
  } else {
    for (std::size_t i = 0; i < l->size(); ++i) {
      const auto& x = (*l)[i];
      const std::string at = "/lambda/" + std::to_string(i);
      if (!x.is_number())
        rd.fail(at, "must be a number");
      else if (const double v = x.get<double>(); !(v > 0.0 && v < 1.0))
        rd.fail(at, "lambda must lie in (0,1), got " + config_detail::Reader::fmt_num(v));
      else
        c.lambdas.push_back(v);
    }
  }

  // Group: every factor validated on its own so errors carry the factor index.
  bool group_ok = false;
  if (const auto* g = rd.object(j, "group", "", true)) {
    rd.known_keys(*g, "/group", {"factors"});
    const auto f = g->find("factors");
    if (f == g->end() || !f->is_array() || f->size() < 2) {
      rd.fail("/group/factors", "need a list of at least 2 factors");
    } else {
      const auto before = rd.violations.size();
      for (std::size_t i = 0; i < f->size(); ++i)
        c.group.factors.push_back(config_detail::read_factor(rd, (*f)[i], "/group/factors/" + std::to_string(i)));
      if (rd.violations.size() == before) {
        for (std::size_t i = 0; i < c.group.factors.size(); ++i) {
          try {
            Factor(c.group.factors[i], i);
          } catch (const SpecError& e) {
            rd.fail("/group/factors/" + std::to_string(i), e.what());
          }
        }
        if (rd.violations.size() == before) {
          try {
            Group probe(c.group);
            group_ok = true;
          } catch (const SpecError& e) {
            rd.fail("/group/factors", e.what());
          }
        }
      }
    }
  }

  // Measure: words must parse; admissibility needs the whole list.
  if (const auto m = j.find("measure"); m == j.end()) {
    rd.fail("/measure", "required: list of {word, probability}");
  } else if (!m->is_array() || m->empty()) {
    rd.fail("/measure", "must be a non-empty list of {word, probability}");
  } else if (group_ok) {
    const Group group(c.group);
    std::vector<StepAtom> atoms;
    bool entries_ok = true;
    for (std::size_t i = 0; i < m->size(); ++i) {
      const auto& e = (*m)[i];
      const std::string at = "/measure/" + std::to_string(i);
      if (!e.is_object() || !e.contains("word") || !e.contains("probability") || !e["word"].is_string()) {
        rd.fail(at, "entry must be {\"word\": string, \"probability\": number or \"p/q\"}");
        entries_ok = false;
        continue;
      }
      rd.known_keys(e, at, {"word", "probability"});
      MeasureEntry entry;
      try {
        const auto g = group.parse(e["word"].get<std::string>());
        entry.word = group.format(g);
        const auto& p = e["probability"];
        if (p.is_number())
          entry.probability = p.get<double>();
        else if (p.is_string())
          entry.probability = parse_probability(p.get<std::string>());
        else
          throw SpecError("probability must be a number or a \"p/q\" string");
        if (!(entry.probability > 0.0 && entry.probability <= 1.0))
          throw SpecError("probability must lie in (0,1], got " + config_detail::Reader::fmt_num(entry.probability));
        atoms.push_back({g, entry.probability});
        c.measure.push_back(std::move(entry));
      } catch (const Error& err) {
        rd.fail(at, err.what());
        entries_ok = false;
      }
    }
    if (entries_ok) {
      try {
        StepDistribution mu(group, atoms);
      } catch (const ValidationError& err) {
        for (const auto& v : err.violations()) rd.fail("/measure", v.message);
      }
    }
  }

  if (const auto* b = rd.object(j, "budgets", "", false)) {
    const std::string at = "/budgets";
    rd.known_keys(*b, at, {"N", "M", "window_radius", "convolution_depth", "sphere_depth", "convolution_entries", "vertex_cap"});
    auto& x = c.budgets;
    rd.integer(*b, "N", at, x.N, 1);
    rd.integer(*b, "M", at, x.M, 1);
    rd.integer(*b, "window_radius", at, x.window_radius, 5, 40);
    rd.integer(*b, "convolution_depth", at, x.convolution_depth, 3, 64);
    rd.integer(*b, "sphere_depth", at, x.sphere_depth, 3, 200);
    rd.integer(*b, "convolution_entries", at, x.convolution_entries, 1);
    rd.integer(*b, "vertex_cap", at, x.vertex_cap, 1);
  }
  if (const auto* e = rd.object(j, "estimate", "", false)) {
    rd.known_keys(*e, "/estimate", {"bound_power"});
    if (e->contains("bound_power")) {
      int p = 0;
      rd.integer(*e, "bound_power", "/estimate", p, 1, 64);
      if (p > 0) c.estimate.bound_power = p;
    }
  }
  if (const auto* d = rd.object(j, "dimension", "", false)) {
    const std::string at = "/dimension";
    rd.known_keys(*d, at, {"bank_N", "bank_M", "centers", "levels", "entropy_M", "tolerance", "max_dispersion"});
    auto& x = c.dimension;
    rd.integer(*d, "bank_N", at, x.bank_N, 1);
    rd.integer(*d, "bank_M", at, x.bank_M, 2);
    rd.integer(*d, "centers", at, x.centers, 1);
    rd.range(*d, "levels", at, x.n1, x.n2, 1, 200);
    rd.integer(*d, "entropy_M", at, x.entropy_M, 1);
    rd.real(*d, "tolerance", at, x.tolerance, 0.0, 10.0);
    rd.real(*d, "max_dispersion", at, x.max_dispersion, 0.0, 10.0);
    if (x.centers > x.bank_M) rd.fail(join(at, "centers"), "cannot exceed bank_M");
  }
  if (const auto* d = rd.object(j, "boundary_dim", "", false)) {
    rd.known_keys(*d, "/boundary_dim", {"n_max", "tolerance"});
    rd.integer(*d, "n_max", "/boundary_dim", c.boundary_dim.n_max, 3, 40);
    rd.real(*d, "tolerance", "/boundary_dim", c.boundary_dim.tolerance, 0.0, 10.0);
  }
  if (const auto* d = rd.object(j, "doubling", "", false)) {
    const std::string at = "/doubling";
    rd.known_keys(*d, at, {"mode", "theta_exponent", "levels", "center", "factor", "center_index", "expect", "p_value"});
    auto& x = c.doubling;
    rd.string(*d, "mode", at, x.mode, {"enumeration", "construction", "bank"});
    rd.integer(*d, "theta_exponent", at, x.theta_exponent, 1, 10);
    rd.range(*d, "levels", at, x.n_from, x.n_to, 1, 40);
    rd.string(*d, "center", at, x.center);
    rd.string(*d, "factor", at, x.factor);
    rd.integer(*d, "center_index", at, x.center_index, 0);
    rd.string(*d, "expect", at, x.expect, {"none", "plateau", "growth"});
    rd.real(*d, "p_value", at, x.p_value, 0.0, 1.0, true);
  }
  if (const auto* d = rd.object(j, "tracking", "", false)) {
    const std::string at = "/tracking";
    rd.known_keys(*d, at, {"N", "M", "R", "stride", "kappa", "compare", "min_drop_se"});
    auto& x = c.tracking;
    rd.integer(*d, "N", at, x.N, 2);
    rd.integer(*d, "M", at, x.M, 2);
    rd.integer(*d, "R", at, x.R, 0, 1000);
    rd.integer(*d, "stride", at, x.stride, 1);
    rd.real(*d, "kappa", at, x.kappa, 0.0, 1.0, true);
    int a = static_cast<int>(x.compare_from), b = static_cast<int>(x.compare_to);
    rd.range(*d, "compare", at, a, b, 1, std::numeric_limits<int>::max());
    x.compare_from = a;
    x.compare_to = b;
    rd.real(*d, "min_drop_se", at, x.min_drop_se, 0.0, 100.0);
  }
  if (const auto* d = rd.object(j, "tree", "", false)) {
    const std::string at = "/tree";
    rd.known_keys(*d, at, {"depths", "branches", "alpha", "expected", "tolerance", "box_check_depth"});
    TreeParams t;
    for (auto [key, out] : {std::pair{"depths", &t.depths}, std::pair{"branches", &t.branches}}) {
      const auto it = d->find(key);
      if (it == d->end() || !it->is_array()) {
        rd.fail(join(at, key), "required list of integers");
        continue;
      }
      for (const auto& v : *it) {
        if (!v.is_number_integer()) {
          rd.fail(join(at, key), "entries must be integers");
          break;
        }
        out->push_back(v.get<std::int64_t>());
      }
    }
    if (!d->contains("alpha")) rd.fail(join(at, "alpha"), "required, in (0,1)");
    rd.real(*d, "alpha", at, t.alpha, 0.0, 1.0, true);
    if (d->contains("expected")) {
      double e = 0.0;
      rd.real(*d, "expected", at, e, 0.0, 1e6);
      t.expected = e;
    }
    rd.real(*d, "tolerance", at, t.tolerance, 0.0, 10.0);
    rd.integer(*d, "box_check_depth", at, t.box_check_depth, 0, 30);
    c.tree = std::move(t);
  }
  if (const auto* d = rd.object(j, "properties", "", false)) {
    const std::string at = "/properties";
    rd.known_keys(*d, at, {"instances", "walk_length", "window_cap", "refine_cap", "convolution_depth", "entropy_depth", "modules"});
    auto& x = c.properties;
    rd.integer(*d, "instances", at, x.instances, 1);
    rd.integer(*d, "walk_length", at, x.walk_length, 10);
    rd.integer(*d, "window_cap", at, x.window_cap, 1000);
    rd.integer(*d, "refine_cap", at, x.refine_cap, 1000);
    rd.integer(*d, "convolution_depth", at, x.convolution_depth, 2, 30);
    rd.integer(*d, "entropy_depth", at, x.entropy_depth, 3, 30);
    if (const auto m = d->find("modules"); m != d->end()) {
      static const std::set<std::string> known{"group-core", "walk-engine", "boundary-metrics", "dimension-lab"};
      if (!m->is_array()) {
        rd.fail(join(at, "modules"), "must be a list of module names");
      } else {
        x.modules.clear();
        for (const auto& v : *m) {
          if (!v.is_string() || !known.count(v.get<std::string>()))
            rd.fail(join(at, "modules"), "unknown module " + v.dump());
          else
            x.modules.push_back(v.get<std::string>());
        }
      }
    }
  }
  if (!rd.violations.empty()) throw ValidationError(std::move(rd.violations));
  return c;
}

inline ExperimentConfig parse_config(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config_json(j);
}

// Canonical JSON form; parse_config_json(to_json(c)) == c.
inline Json to_json(const ExperimentConfig& c) {
  Json j;
  j["name"] = c.name;
  j["seed"] = c.seed;
  j["lambda"] = c.lambdas;
  Json factors = Json::array();
  for (const auto& f : c.group.factors) {
    Json x;
    x["name"] = f.name;
    if (f.kind == FactorKind::FreeAbelian) {
      x["kind"] = "free_abelian";
      x["rank"] = f.rank;
    } else {
      x["kind"] = "finite";
      x["table"] = f.table;
      if (!f.generators.empty()) x["generators"] = f.generators;
    }
    if (f.peripheral) x["peripheral"] = *f.peripheral;
    factors.push_back(std::move(x));
  }
  j["group"] = {{"factors", factors}};
  Json measure = Json::array();
  for (const auto& e : c.measure) measure.push_back({{"word", e.word}, {"probability", e.probability}});
  j["measure"] = measure;
  const auto& b = c.budgets;
  j["budgets"] = {{"N", b.N},
                  {"M", b.M},
                  {"window_radius", b.window_radius},
                  {"convolution_depth", b.convolution_depth},
                  {"sphere_depth", b.sphere_depth},
                  {"convolution_entries", b.convolution_entries},
                  {"vertex_cap", b.vertex_cap}};
  j["estimate"] = Json::object();
  if (c.estimate.bound_power) j["estimate"]["bound_power"] = *c.estimate.bound_power;
  const auto& d = c.dimension;
  j["dimension"] = {{"bank_N", d.bank_N},         {"bank_M", d.bank_M},       {"centers", d.centers},
                    {"levels", {d.n1, d.n2}},     {"entropy_M", d.entropy_M}, {"tolerance", d.tolerance},
                    {"max_dispersion", d.max_dispersion}};
  j["boundary_dim"] = {{"n_max", c.boundary_dim.n_max}, {"tolerance", c.boundary_dim.tolerance}};
  const auto& db = c.doubling;
  j["doubling"] = {{"mode", db.mode},     {"theta_exponent", db.theta_exponent}, {"levels", {db.n_from, db.n_to}},
                   {"center", db.center}, {"factor", db.factor},                 {"center_index", db.center_index},
                   {"expect", db.expect}, {"p_value", db.p_value}};
  const auto& t = c.tracking;
  j["tracking"] = {{"N", t.N},           {"M", t.M},         {"R", t.R},
                   {"stride", t.stride}, {"kappa", t.kappa}, {"compare", {t.compare_from, t.compare_to}},
                   {"min_drop_se", t.min_drop_se}};
  if (c.tree) {
    const auto& tr = *c.tree;
    j["tree"] = {{"depths", tr.depths},
                 {"branches", tr.branches},
                 {"alpha", tr.alpha},
                 {"tolerance", tr.tolerance},
                 {"box_check_depth", tr.box_check_depth}};
    if (tr.expected) j["tree"]["expected"] = *tr.expected;
  }
  const auto& p = c.properties;
  j["properties"] = {{"instances", p.instances},
                     {"walk_length", p.walk_length},
                     {"window_cap", p.window_cap},
                     {"refine_cap", p.refine_cap},
                     {"convolution_depth", p.convolution_depth},
                     {"entropy_depth", p.entropy_depth},
                     {"modules", p.modules}};
  return j;
}

inline std::vector<StepAtom> measure_atoms(const Group& group, const ExperimentConfig& c) {
  std::vector<StepAtom> atoms;
  for (const auto& e : c.measure) atoms.push_back({group.parse(e.word), e.probability});
  return atoms;
}

}  // namespace endlab
