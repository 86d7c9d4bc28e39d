#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "endlab/config.hpp"
#include "endlab/dimension.hpp"
#include "endlab/doubling.hpp"
#include "endlab/estimators.hpp"
#include "endlab/parallel.hpp"
#include "endlab/properties.hpp"
#include "endlab/report.hpp"
#include "endlab/stats.hpp"
#include "endlab/tracking.hpp"
#include "endlab/tree_dimension.hpp"

namespace endlab {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"estimate", "metrics-check", "dimension", "boundary-dim",
                                              "doubling", "tracking",      "tree-dim",  "properties"};
  return names;
}

namespace cmd {

inline Json to_json(const EstimateWithError& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"samples", e.samples}, {"method", e.method}};
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline PropertyBudget property_budget(const ExperimentConfig& c) {
  PropertyBudget b;
  b.instances = c.properties.instances;
  b.walk_length = c.properties.walk_length;
  b.window_cap = c.properties.window_cap;
  b.refine_cap = c.properties.refine_cap;
  b.max_window = c.budgets.window_radius;
  return b;
}

inline void add_suites(RunReport& r, Json& out, CsvTable& table, const std::vector<PropertyResult>& suites, std::uint64_t min_instances,
                       std::optional<double> lambda = std::nullopt) {
  for (const auto& s : suites) {
    Json j{{"module", s.module}, {"suite", s.suite},   {"instances", s.instances},
           {"violations", s.violations}, {"skipped", s.skipped}, {"note", s.note}};
    if (lambda) j["lambda"] = *lambda;
    out.push_back(j);
    table.rows.push_back({s.module, s.suite, lambda ? Json(*lambda) : Json(), s.instances, s.violations, s.skipped});
    const bool enough = s.instances >= min_instances;
    std::string name = s.module + "/" + s.suite;
    if (lambda) name += "@lambda=" + fmt(*lambda);
    r.check(name, s.passed() && enough,
            std::to_string(s.violations) + " violations over " + std::to_string(s.instances) + " instances" +
                (enough ? "" : " (below the " + std::to_string(min_instances) + " required)"));
  }
}

inline std::vector<std::string> suite_header() { return {"module", "suite", "lambda", "instances", "violations", "skipped"}; }

// ---- estimate ---------------------------------------------------------------

inline void run_estimate(const ExperimentConfig& c, const StepDistribution& mu, RunReport& r) {
  const auto& g = mu.group();
  const auto& b = c.budgets;
  const auto drift = drift_estimate(mu, b.N, b.M, c.seed, c.estimate.bound_power);
  Json dj = to_json(drift.estimate);
  dj["N"] = b.N;
  if (drift.subadditive_bound) {
    dj["subadditive_bound"] = *drift.subadditive_bound;
    dj["bound_power"] = *drift.bound_power;
  }
  r.results["drift"] = dj;

  int depth = b.convolution_depth;
  std::optional<EntropyReport> entropy;
  while (!entropy) {
    try {
      entropy = entropy_estimate(mu, b.M, depth, c.seed, b.convolution_entries);
    } catch (const ResourceError& e) {
      const int feasible = e.largest_feasible().value_or(0);
      r.truncation.push_back({"entropy", e.what(), feasible});
      if (feasible < 3 || feasible >= depth) break;
      depth = feasible;
    }
  }
  const auto growth = growth_rate_estimate(g, b.sphere_depth);
  Json gj = to_json(growth.estimate);
  gj["fit_from"] = growth.fit_from;
  gj["fit_to"] = growth.fit_to;
  gj["saturated"] = growth.saturated;
  r.results["growth"] = gj;
  auto& gt = r.table("growth", {"n", "sphere_count"});
  for (std::size_t n = 0; n < growth.counts.size(); ++n) gt.rows.push_back({n, growth.counts[n]});

  const auto& l = drift.estimate;
  r.check("drift-range", l.value >= 0.0 && l.value <= static_cast<double>(mu.max_step_length()),
          "l=" + fmt(l.value) + " in [0, " + std::to_string(mu.max_step_length()) + "]");
  if (!entropy) return;
  const auto& e = *entropy;
  Json ej = to_json(e.estimate);
  ej["n_exact"] = e.n_exact;
  ej["upper_bound"] = e.upper_bound;
  ej["differences"] = e.differences;
  ej["exact_rate"] = e.exact_rate;
  ej["smb"] = to_json(e.smb);
  ej["smb_consistent"] = e.smb_consistent;
  r.results["entropy"] = ej;
  auto& et = r.table("entropy", {"n", "entropy", "difference", "mean_length"});
  for (std::size_t i = 0; i < e.entropies.size(); ++i) et.rows.push_back({i + 1, e.entropies[i], e.differences[i], e.mean_lengths[i]});

  const auto gv = guivarch_check(e.estimate, l, growth.estimate);
  r.results["guivarch"] = {{"h", gv.lhs}, {"lv", gv.rhs}, {"sigma", gv.sigma}, {"holds", gv.holds}};
  r.check("guivarch", gv.holds, "h=" + fmt(gv.lhs) + " <= l*v=" + fmt(gv.rhs) + " + 3*" + fmt(gv.sigma));
  r.check("entropy-nonnegative", e.estimate.value >= -1e-12, "h=" + fmt(e.estimate.value));
  r.check("smb-vs-exact", e.smb_consistent,
          "SMB " + fmt(e.smb.value) + " +- " + fmt(e.smb.std_error) + " vs H_n/n " + fmt(e.exact_rate));
}

// ---- metrics-check ----------------------------------------------------------

inline void run_metrics(const ExperimentConfig& c, const StepDistribution& mu, RunReport& r) {
  Json suites = Json::array();
  auto& t = r.table("suites", suite_header());
  for (double lambda : c.lambdas) add_suites(r, suites, t, metric_properties(mu, lambda, c.seed, property_budget(c)), c.properties.instances, lambda);
  r.results["suites"] = suites;
}

// ---- dimension --------------------------------------------------------------

inline void run_dimension(const ExperimentConfig& c, const StepDistribution& mu, RunReport& r) {
  const auto& g = mu.group();
  const auto& d = c.dimension;
  const auto bank = build_sample_bank(mu, d.bank_N, d.bank_M, c.seed, d.n2);
  std::vector<BallMassCurve> curves(static_cast<std::size_t>(d.centers));
  parallel_for(curves.size(), [&](std::size_t i) { curves[i] = ball_mass_curve(g, bank, i, d.n1, d.n2); });
  int depth = c.budgets.convolution_depth;
  std::optional<EstimateWithError> h;
  while (!h) {
    try {
      h = entropy_estimate(mu, d.entropy_M, depth, c.seed, c.budgets.convolution_entries).estimate;
    } catch (const ResourceError& e) {
      const int feasible = e.largest_feasible().value_or(0);
      r.truncation.push_back({"entropy", e.what(), feasible});
      if (feasible < 3 || feasible >= depth) return;
      depth = feasible;
    }
  }
  r.results["bank"] = {{"N", bank.N}, {"M", bank.ends.size()}, {"precision", bank.precision}, {"drift", to_json(bank.drift)}};
  r.results["entropy"] = to_json(*h);
  auto& mass = r.table("ball_mass", {"center", "n", "count", "mass", "low_support"});
  for (const auto& cv : curves)
    for (std::size_t i = 0; i < cv.counts.size(); ++i)
      mass.rows.push_back({cv.center, cv.n1 + static_cast<int>(i), cv.counts[i], cv.masses[i], static_cast<bool>(cv.low_support[i])});
  auto& local = r.table("local_dimension", {"lambda", "center", "slope", "std_error", "levels_used", "first_level", "last_level"});
  Json per = Json::array();
  for (double lambda : c.lambdas) {
    const auto rep = hdim_harmonic(curves, lambda, *h, bank.drift, bank.ends.size());
    for (std::size_t i = 0; i < rep.per_center.size(); ++i) {
      const auto& ld = rep.per_center[i];
      if (ld)
        local.rows.push_back({lambda, i, ld->slope, ld->std_error, ld->levels_used, ld->first_level, ld->last_level});
      else
        local.rows.push_back({lambda, i, Json(), Json(), 0, Json(), Json()});
    }
    per.push_back({{"lambda", lambda},
                   {"aggregate", to_json(rep.aggregate)},
                   {"target", to_json(rep.target)},
                   {"dispersion", rep.dispersion},
                   {"centers", rep.centers},
                   {"supported", rep.supported},
                   {"levels", {rep.n1, rep.n2}}});
    const std::string at = "@lambda=" + fmt(lambda);
    const double rel = rep.target.value != 0.0 ? std::abs(rep.aggregate.value - rep.target.value) / std::abs(rep.target.value) : INFINITY;
    r.check("all-centers-supported" + at, rep.supported == rep.centers,
            std::to_string(rep.supported) + "/" + std::to_string(rep.centers) + " centers with >= " + std::to_string(kMinSupportedLevels) +
                " supported levels");
    r.check("aggregate-vs-target" + at, rel <= d.tolerance,
            "aggregate " + fmt(rep.aggregate.value) + " vs (h/l)/(-log lambda) " + fmt(rep.target.value) + ", relative gap " + fmt(rel));
    r.check("dispersion" + at, rep.dispersion < d.max_dispersion, "slope dispersion " + fmt(rep.dispersion));
  }
  r.results["dimension"] = per;
}

// ---- boundary-dim -----------------------------------------------------------

inline void run_boundary_dim(const ExperimentConfig& c, const StepDistribution& mu, RunReport& r) {
  const auto& g = mu.group();
  Json per = Json::array();
  auto& t = r.table("box_counts", {"lambda", "n", "components"});
  for (double lambda : c.lambdas) {
    const auto rep = boundary_box_dimension(g, lambda, c.boundary_dim.n_max, c.budgets.vertex_cap);
    if (rep.truncated)
      r.truncation.push_back({"boundary-dim", "window radius reduced to " + std::to_string(rep.window_radius) + " by the vertex cap",
                              rep.n_max});
    for (std::size_t i = 0; i < rep.counts.size(); ++i) t.rows.push_back({lambda, i + 1, rep.counts[i]});
    per.push_back({{"lambda", lambda},
                   {"counts", rep.counts},
                   {"slope", to_json(rep.slope)},
                   {"target", to_json(rep.target)},
                   {"n_max", rep.n_max},
                   {"window_radius", rep.window_radius},
                   {"fit_from", rep.fit_from}});
    const double gap = std::abs(rep.slope.value - rep.target.value);
    r.check("box-slope-vs-growth@lambda=" + fmt(lambda), gap <= c.boundary_dim.tolerance,
            "slope " + fmt(rep.slope.value) + " vs v/(-log lambda) " + fmt(rep.target.value) + ", gap " + fmt(gap));
  }
  r.results["boundary_dim"] = per;
}

// ---- doubling ---------------------------------------------------------------

inline std::size_t construction_factor(const Group& g, const std::string& name) {
  for (std::size_t i = 0; i < g.factor_count(); ++i) {
    const auto& f = g.factor(i);
    if (name.empty() ? (f.kind() == FactorKind::FreeAbelian && f.rank() >= 2) : f.name() == name) return i;
  }
  throw ValidationError("/doubling/factor", name.empty() ? "no one-ended factor (Z^d, d >= 2) for construction mode"
                                                         : "no factor named '" + name + "'");
}

inline void run_doubling(const ExperimentConfig& c, const StepDistribution& mu, RunReport& r) {
  const auto& g = mu.group();
  const auto& d = c.doubling;
  std::optional<SampleBank> bank;
  std::optional<EndApproximation> center;
  if (d.mode == "enumeration") {
    GroupElement step;
    try {
      step = g.parse(d.center);
    } catch (const SpecError& e) {
      throw ValidationError("/doubling/center", e.what());
    }
    center = ray_end(g, {}, step, std::max(30, d.n_to + d.theta_exponent + 2 * kPrecisionMargin));
  } else if (d.mode == "bank") {
    bank = build_sample_bank(mu, c.dimension.bank_N, c.dimension.bank_M, c.seed, d.n_to + d.theta_exponent);
    if (static_cast<std::size_t>(d.center_index) >= bank->ends.size())
      throw ValidationError("/doubling/center_index", "outside the bank of " + std::to_string(bank->ends.size()) + " ends");
  }
  std::size_t H = 0;
  if (d.mode == "construction") H = construction_factor(g, d.factor);
  Json per = Json::array();
  auto& t = r.table("packing", {"lambda", "n", "theta", "packing", "candidates", "in_ball", "verified", "low_support"});
  for (double lambda : c.lambdas) {
    std::vector<PackingReport> reps;
    std::vector<ConstructionScale> scales;
    if (d.mode == "enumeration")
      reps = doubling_enumeration(g, *center, d.n_from, d.n_to, lambda, d.theta_exponent);
    else if (d.mode == "bank")
      reps = doubling_bank(g, *bank, static_cast<std::size_t>(d.center_index), d.n_from, d.n_to, lambda, d.theta_exponent);
    else
      reps = doubling_construction(g, H, d.n_from, d.n_to, lambda, d.theta_exponent - 1, &scales);
    std::vector<double> x, y;
    Json rows = Json::array();
    bool verified = true;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto& p = reps[i];
      verified = verified && p.verified && verify_packing(g, p);
      x.push_back(p.n);
      y.push_back(static_cast<double>(p.packing));
      t.rows.push_back({lambda, p.n, p.theta, p.packing, p.candidates, p.in_ball, p.verified, p.low_support});
      Json row{{"n", p.n}, {"packing", p.packing}, {"candidates", p.candidates}, {"in_ball", p.in_ball}, {"verified", p.verified}};
      if (!scales.empty()) {
        row["sphere_size"] = scales[i].sphere_size;
        row["separated_subset"] = scales[i].separated_subset;
      }
      Json w = Json::array();
      for (const auto& e : p.witnesses) w.push_back({{"representative", g.format(e.representative)}, {"precision", e.precision}});
      row["witnesses"] = w;
      rows.push_back(row);
    }
    const auto fit = linear_fit(x, y);
    const double p_value = slope_p_value(fit);
    Json summary{{"lambda", lambda},
                 {"mode", d.mode},
                 {"theta_exponent", d.theta_exponent},
                 {"theta", std::pow(lambda, d.theta_exponent)},
                 {"slope", fit.slope},
                 {"slope_se", fit.slope_se},
                 {"p_value", std::isfinite(p_value) ? Json(p_value) : Json()},
                 {"levels", rows}};
    if (center) summary["center"] = {{"representative", g.format(center->representative)}, {"precision", center->precision}};
    if (d.mode == "construction") summary["factor"] = g.factor(H).name();
    per.push_back(summary);
    const std::string at = "@lambda=" + fmt(lambda);
    r.check("witnesses-verified" + at, verified, "pairwise separation and containment recomputed");
    if (d.expect == "plateau") {
      const bool flat = std::all_of(reps.begin(), reps.end(), [&](const PackingReport& p) { return p.packing == reps.front().packing; });
      r.check("plateau" + at, flat && !reps.empty(), "N(n) constant over [" + std::to_string(d.n_from) + ", " + std::to_string(d.n_to) + "]");
    } else if (d.expect == "growth") {
      bool increasing = reps.size() >= 2;
      for (std::size_t i = 1; i < reps.size(); ++i) increasing = increasing && reps[i].packing > reps[i - 1].packing;
      r.check("strictly-increasing" + at, increasing, "N(n) over [" + std::to_string(d.n_from) + ", " + std::to_string(d.n_to) + "]");
      r.check("slope-significant" + at, fit.slope > 0.0 && p_value < d.p_value,
              "slope " + fmt(fit.slope) + ", p " + fmt(p_value) + " < " + fmt(d.p_value));
    }
  }
  r.results["doubling"] = per;
}

// ---- tracking ---------------------------------------------------------------

inline void run_tracking(const ExperimentConfig& c, const StepDistribution& mu, RunReport& r) {
  const auto& t = c.tracking;
  const auto rep = tracking_diagnostic(mu, t.N, t.M, c.seed, t.R, t.stride, t.kappa);
  auto& table = r.table("tracking", {"n", "transition_distance", "transition_se", "coset_sup", "coset_se"});
  Json rows = Json::array();
  const TrackingRow* from = nullptr;
  const TrackingRow* to = nullptr;
  for (const auto& row : rep.rows) {
    table.rows.push_back({row.n, row.transition_distance.value, row.transition_distance.std_error, row.coset_sup.value, row.coset_sup.std_error});
    rows.push_back({{"n", row.n}, {"transition_distance", to_json(row.transition_distance)}, {"coset_sup", to_json(row.coset_sup)}});
    if (row.n == t.compare_from) from = &row;
    if (row.n == t.compare_to) to = &row;
  }
  r.results["tracking"] = {{"R", rep.R},
                           {"N", rep.N},
                           {"M", rep.M},
                           {"transition_slope", rep.transition_slope},
                           {"coset_slope", rep.coset_slope},
                           {"rows", rows}};
  r.check("transition-trend", rep.transition_slope <= 0.0, "least-squares slope " + fmt(rep.transition_slope));
  r.check("coset-trend", rep.coset_slope <= 0.0, "least-squares slope " + fmt(rep.coset_slope));
  const std::string span = "n=" + std::to_string(t.compare_to) + " vs n=" + std::to_string(t.compare_from);
  if (!from || !to) {
    r.check("transition-drop", false, "checkpoints " + span + " not both on the reporting grid");
    r.check("coset-drop", false, "checkpoints " + span + " not both on the reporting grid");
    return;
  }
  auto drop = [&](const EstimateWithError& a, const EstimateWithError& b, const char* name) {
    const double sigma = std::hypot(a.std_error, b.std_error);
    const double gap = a.value - b.value;
    r.check(name, gap >= t.min_drop_se * sigma,
            span + ": drop " + fmt(gap) + " vs " + fmt(t.min_drop_se) + " combined SE " + fmt(sigma));
  };
  drop(from->transition_distance, to->transition_distance, "transition-drop");
  drop(from->coset_sup, to->coset_sup, "coset-drop");
}

// ---- tree-dim ---------------------------------------------------------------

inline RegularTreeSpec tree_spec(const TreeParams& t) { return {t.depths, t.branches, t.alpha}; }

inline void run_tree(const ExperimentConfig& c, RunReport& r) {
  if (!c.tree) throw ValidationError("/tree", "tree-dim needs a tree section {depths, branches, alpha}");
  const auto& tp = *c.tree;
  const auto spec = tree_spec(tp);
  try {
    validate(spec);
  } catch (const ValidationError& e) {
    std::vector<Violation> v;
    for (auto x : e.violations()) {
      if (x.location.rfind("tree.", 0) == 0) x.location = "/tree/" + x.location.substr(5);
      v.push_back(std::move(x));
    }
    throw ValidationError(std::move(v));
  }
  const auto res = regular_tree_dimension(spec);
  auto& t = r.table("terms", {"n", "depth", "value"});
  for (const auto& term : res.terms) t.rows.push_back({term.n, spec.depths[static_cast<std::size_t>(term.n - 1)], term.value});
  Json j{{"value", res.value}, {"argmin", res.argmin}, {"horizon", spec.depths.size()}};
  if (tp.expected)
    r.check("formula-vs-expected", std::abs(res.value - *tp.expected) <= tp.tolerance,
            "value " + fmt(res.value) + " vs expected " + fmt(*tp.expected));
  if (spec.depths.back() <= tp.box_check_depth) {
    try {
      const auto box = tree_box_count(spec, c.budgets.vertex_cap);
      j["box_count"] = {{"value", box.value}, {"depth", box.depth}, {"vertices", box.vertices}, {"level_sizes", box.level_sizes}};
      const double rel = std::abs(box.value - res.value) / std::max(res.value, 1e-300);
      r.check("box-count-agreement", rel <= 0.02, "box count " + fmt(box.value) + " vs formula " + fmt(res.value) + ", relative gap " + fmt(rel));
    } catch (const ResourceError& e) {
      r.truncation.push_back({"tree-box-count", e.what(), std::nullopt});
    }
  }
  r.results["tree"] = j;
}

// ---- properties -------------------------------------------------------------

inline void run_properties(const ExperimentConfig& c, const StepDistribution& mu, RunReport& r) {
  const auto& g = mu.group();
  const auto b = property_budget(c);
  const auto& mods = c.properties.modules;
  auto want = [&](const char* m) { return std::find(mods.begin(), mods.end(), m) != mods.end(); };
  Json suites = Json::array();
  auto& t = r.table("suites", suite_header());
  if (want("group-core")) add_suites(r, suites, t, group_properties(g, c.seed, b), 1);
  if (want("walk-engine"))
    add_suites(r, suites, t,
               walk_properties(mu, c.seed, c.properties.convolution_depth, std::min(c.properties.entropy_depth, c.budgets.convolution_depth)),
               1);
  for (double lambda : c.lambdas) {
    if (want("boundary-metrics")) add_suites(r, suites, t, metric_properties(mu, lambda, c.seed, b), c.properties.instances, lambda);
    if (want("dimension-lab")) add_suites(r, suites, t, dimension_properties(mu, lambda, c.seed, b), 1, lambda);
  }
  std::uint64_t passed = 0, failed = 0;
  for (const auto& s : suites) (s["violations"].get<std::uint64_t>() == 0 ? passed : failed) += 1;
  r.results["suites"] = suites;
  r.results["suites_passed"] = passed;
  r.results["suites_failed"] = failed;
}

}  // namespace cmd

// Runs one pipeline. Validation problems surface as ValidationError; budget
// exhaustion leaves a partial report with truncation markers.
inline RunReport run_command(const ExperimentConfig& c, std::string_view command) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw ValidationError("command", "unknown command '" + std::string(command) + "'");
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.command = std::string(command);
  r.config = to_json(c);
  r.config_hash = config_hash(r.config);
  r.seed = c.seed;
  r.workers = default_workers();
  const Group group(c.group);
  const StepDistribution mu(group, measure_atoms(group, c));
  try {
    if (command == "estimate")
      cmd::run_estimate(c, mu, r);
    else if (command == "metrics-check")
      cmd::run_metrics(c, mu, r);
    else if (command == "dimension")
      cmd::run_dimension(c, mu, r);
    else if (command == "boundary-dim")
      cmd::run_boundary_dim(c, mu, r);
    else if (command == "doubling")
      cmd::run_doubling(c, mu, r);
    else if (command == "tracking")
      cmd::run_tracking(c, mu, r);
    else if (command == "tree-dim")
      cmd::run_tree(c, r);
    else
      cmd::run_properties(c, mu, r);
  } catch (const ResourceError& e) {
    r.truncation.push_back({r.command, e.what(), e.largest_feasible()});
  }
  r.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace endlab
