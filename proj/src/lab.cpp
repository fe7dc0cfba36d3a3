#include "rangewalk/lab.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "rangewalk/exact_dist.hpp"
#include "rangewalk/families.hpp"
#include "rangewalk/probes.hpp"

namespace rangewalk {

namespace {

namespace fs = std::filesystem;

KernelOptions kernel(const ExperimentConfig& cfg) {
  KernelOptions o;
  o.workers = cfg.workers;
  return o;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ReportRow make_row(const std::string& graph, std::uint64_t n, std::string stat, const Estimate& e,
                   bool exact = false, bool entropy = false, std::optional<std::uint32_t> r = std::nullopt) {
  ReportRow row;
  row.graph = graph;
  row.n = n;
  row.statistic = std::move(stat);
  row.value = e;
  row.exact = exact;
  row.entropy_unit = entropy;
  row.r = r;
  return row;
}

Estimate scaled(const Estimate& e, double k, double shift = 0.0) {
  Estimate out = e;
  out.mean = e.mean * k + shift;
  out.std_error = std::abs(k) * e.std_error;
  out.m2 = 0.0;
  return out;
}

int lattice_dimension(const GraphOracle& g) {
  const auto* lat = dynamic_cast<const LatticeGraph*>(&g);
  return lat ? lat->dimension() : 0;
}

// Strict decrease of the point estimates along a series.
bool decreasing(const std::vector<const ReportRow*>& s, std::string& detail) {
  bool ok = s.size() >= 2;
  for (std::size_t i = 0; i < s.size(); ++i) {
    detail += (i ? " > " : "") + fmt(s[i]->value.mean) + "@" + std::to_string(s[i]->n);
    if (i > 0 && !(s[i]->value.mean < s[i - 1]->value.mean)) ok = false;
  }
  return ok;
}

// Everything the range-statistics experiments report at one (graph, n).
void range_rows(ExperimentReport& rep, const ExperimentConfig& cfg, const Graph& g, std::uint64_t n) {
  const auto name = g->name();
  const auto o = g->origin();
  const bool with_cover = n <= cfg.cover_max_n;
  const auto m = mc_moments(*g, o, n, cfg.samples, cfg.seed, with_cover ? std::optional(cfg.r) : std::nullopt,
                            kernel(cfg));
  rep.add(make_row(name, n, "range_mean", m.range));
  rep.add(make_row(name, n, "boundary_mean", m.boundary));
  rep.add(make_row(name, n, "boundary_ratio", ratio(m.boundary, m.range)));

  const double keep = std::log(1.0 / (1.0 - 1.0 / g->degree_bound()));
  const auto lower = scaled(m.boundary, keep, -keep);
  rep.add(make_row(name, n, "entropy_lower", lower, false, true));
  rep.add(make_row(name, n, "entropy_lower_ratio", ratio(lower, m.range), false, true));

  if (m.k) {
    const auto& c = *m.constants;
    const double per_k = std::log(static_cast<double>(std::max<std::size_t>(c.s_r, 1))) + std::log(2.0);
    const double per_l = static_cast<double>(c.b_r) * std::log(2.0);
    Estimate upper = *m.k;
    upper.mean = covering_entropy_upper_bound(m.k->mean, m.l->mean, c, n);
    upper.std_error = std::hypot(per_k * m.k->std_error, per_l * m.l->std_error);
    upper.m2 = 0.0;
    rep.add(make_row(name, n, "k_mean", *m.k, false, false, cfg.r));
    rep.add(make_row(name, n, "l_mean", *m.l, false, false, cfg.r));
    rep.add(make_row(name, n, "entropy_upper", upper, false, true, cfg.r));
    rep.add(make_row(name, n, "entropy_upper_ratio", ratio(upper, m.range), false, true, cfg.r));
  }
  if (n <= cfg.plugin_max_n) {
    const auto pe = plugin_entropy(*g, o, n, cfg.samples, cfg.seed, kernel(cfg));
    Estimate e;
    e.count = pe.samples;
    e.seed = cfg.seed;
    e.horizon = n;
    e.mean = pe.plugin;
    rep.add(make_row(name, n, "entropy_plugin", e, false, true));
    e.mean = pe.miller_madow;
    rep.add(make_row(name, n, "entropy_miller_madow", e, false, true));
    e.mean = pe.plugin / m.range.mean;
    rep.add(make_row(name, n, "entropy_plugin_ratio", e, false, true));
  }
  if (n <= cfg.exact_max_n && n <= default_horizon_limit(*g)) {
    RangeDistribution dist;
    try {
      dist = exact_range_distribution(g, o, n);
    } catch (const ExactLimitError&) {
      return;  // state guard hit: the table keeps its Monte Carlo rows only
    }
    const double ent = entropy(dist);
    const double er = expected_range_size(dist);
    rep.add(make_row(name, n, "exact_entropy", Estimate::exact(ent, n), true, true));
    rep.add(make_row(name, n, "exact_range_mean", Estimate::exact(er, n), true));
    rep.add(make_row(name, n, "exact_boundary_mean", Estimate::exact(expected_boundary_size(dist), n), true));
    rep.add(make_row(name, n, "exact_entropy_ratio", Estimate::exact(ent / er, n), true, true));
  }
}

Graph graph_or_throw(const std::string& text) {
  try {
    return make_graph(text);
  } catch (const GraphError& e) {
    throw ConfigError(e.what());
  }
}

ExperimentReport run_dichotomy(const ExperimentConfig& cfg) {
  ExperimentReport rep{"dichotomy", {}, {}};
  for (const auto& text : cfg.graphs) {
    const auto g = graph_or_throw(text);
    for (auto n : cfg.horizons) range_rows(rep, cfg, g, n);
    const auto s = rep.series(g->name(), "boundary_ratio");
    const int dim = lattice_dimension(*g);
    if (s.empty()) continue;
    if (dim >= 3) {
      const double lo = cfg.constant("transient_ratio_min");
      bool ok = true;
      std::string detail;
      for (const auto* row : s) {
        ok = ok && row->value.mean + 3 * row->value.std_error >= lo;
        detail += fmt(row->value.mean) + "@" + std::to_string(row->n) + " ";
      }
      rep.check(g->name() + " boundary ratio >= " + fmt(lo), ok, detail);
    } else if (dim >= 1) {
      std::string detail;
      const bool down = decreasing(s, detail);
      rep.check(g->name() + " boundary ratio decreasing", down, detail);
      const double hi = cfg.constant("recurrent_ratio_max");
      const auto* last = s.back();
      rep.check(g->name() + " boundary ratio <= " + fmt(hi) + " at n=" + std::to_string(last->n),
                last->value.mean - 3 * last->value.std_error <= hi, fmt(last->value.mean));
    }
  }
  return rep;
}

ExperimentReport run_stretched(const ExperimentConfig& cfg) {
  ExperimentReport rep{"stretched", {}, {}};
  for (const auto& text : cfg.graphs) {
    const auto g = graph_or_throw(text);
    for (auto n : cfg.horizons) range_rows(rep, cfg, g, n);
    std::string detail;
    const bool down = decreasing(rep.series(g->name(), "boundary_ratio"), detail);
    rep.check(g->name() + " boundary ratio decreasing", down, detail);
    const auto exact = rep.series(g->name(), "exact_entropy_ratio");
    if (exact.size() >= 2) {
      detail.clear();
      const bool exact_down = decreasing(exact, detail);
      rep.check(g->name() + " exact entropy ratio decreasing", exact_down, detail);
    }
    const auto esc = escape_probability(*g, g->origin(), cfg.escape_horizon, cfg.escape_samples, cfg.seed, kernel(cfg));
    rep.add(make_row(g->name(), cfg.escape_horizon, "escape_origin", esc));
    const double lo = cfg.constant("escape_min");
    rep.check(g->name() + " escape at origin >= " + fmt(lo), esc.mean + 3 * esc.std_error >= lo,
              fmt(esc.mean) + " +- " + fmt(esc.std_error));
  }
  return rep;
}

ExperimentReport run_concatenated(const ExperimentConfig& cfg) {
  ExperimentReport rep{"concatenated", {}, {}};
  for (const auto& text : cfg.graphs) {
    const auto g = graph_or_throw(text);
    const auto* cat = dynamic_cast<const ConcatenatedTreesGraph*>(g.get());
    if (cat == nullptr) throw ConfigError("concatenated experiment needs a concatenated graph");
    auto horizons = cfg.horizons;
    if (horizons.empty()) {
      for (auto a : cat->explicit_depths()) horizons.push_back(a);
    }
    const double lo = cfg.constant("boundary_ratio_min");
    for (auto n : horizons) {
      range_rows(rep, cfg, g, n);
      const auto* row = rep.series(g->name(), "boundary_ratio").back();
      rep.check(g->name() + " boundary ratio >= " + fmt(lo) + " at n=" + std::to_string(n),
                row->value.mean + 3 * row->value.std_error >= lo, fmt(row->value.mean));
    }
    const double hi = cfg.constant("root_tail_max");
    for (std::uint32_t k = 1; k <= cat->explicit_depths().size(); ++k) {
      const auto tail = concatenated_root_tail(*g, k, cfg.escape_samples, cfg.seed, kernel(cfg));
      rep.add(make_row(g->name(), cat->tree_depth(k), "root_tail_k" + std::to_string(k), tail));
      rep.check(g->name() + " P[tau_o" + std::to_string(k) + " >= sqrt(a)-1] <= " + fmt(hi),
                tail.mean - 3 * tail.std_error <= hi, fmt(tail.mean) + " +- " + fmt(tail.std_error));
    }
  }
  return rep;
}

ExperimentReport run_exact_small(const ExperimentConfig& cfg) {
  ExperimentReport rep{"exact-small", {}, {}};
  const double slack = cfg.constant("exact_slack");
  for (const auto& text : cfg.graphs) {
    const auto g = graph_or_throw(text);
    const auto name = g->name();
    const auto o = g->origin();
    const int d = g->degree_bound();
    for (auto n : cfg.horizons) {
      if (n > default_horizon_limit(*g)) {
        throw ConfigError("horizon " + std::to_string(n) + " is beyond the exact limit for " + name);
      }
      const auto dist = exact_range_distribution(g, o, n);
      const double ent = entropy(dist);
      const double er = expected_range_size(dist);
      const double eb = expected_boundary_size(dist);
      const double lower = boundary_entropy_lower_bound(eb, d);
      const double upper = 2 * std::log(static_cast<double>(d)) * er + std::log(static_cast<double>(n) + 1);
      const double viol = check_pointwise_bound(dist);
      rep.add(make_row(name, n, "exact_entropy", Estimate::exact(ent, n), true, true));
      rep.add(make_row(name, n, "exact_range_mean", Estimate::exact(er, n), true));
      rep.add(make_row(name, n, "exact_boundary_mean", Estimate::exact(eb, n), true));
      rep.add(make_row(name, n, "exact_entropy_ratio", Estimate::exact(ent / er, n), true, true));
      rep.add(make_row(name, n, "sandwich_lower", Estimate::exact(lower, n), true, true));
      rep.add(make_row(name, n, "sandwich_upper", Estimate::exact(upper, n), true, true));
      rep.add(make_row(name, n, "pointwise_violation", Estimate::exact(viol, n), true));
      rep.add(make_row(name, n, "total_mass", Estimate::exact(dist.total_mass(), n), true));
      rep.check(name + " n=" + std::to_string(n) + " sandwich", lower <= ent + slack && ent <= upper + slack,
                fmt(lower) + " <= " + fmt(ent) + " <= " + fmt(upper));
      rep.check(name + " n=" + std::to_string(n) + " pointwise bound", viol <= slack, fmt(viol));

      for (std::uint32_t r = 1; r <= cfg.r; ++r) {
        std::vector<Label> labels(dist.atom_count());
        std::vector<VertexId> centers;
        for (std::size_t i = 0; i < dist.atom_count(); ++i) {
          const auto seq = f_r(*g, dist.set(i), o, r);
          labels[i] = {static_cast<std::int64_t>(seq.k()), static_cast<std::int64_t>(seq.l())};
          if (!g->vertex_transitive()) centers.insert(centers.end(), seq.centers.begin(), seq.centers.end());
        }
        const auto c = cover_constants(*g, r, centers);
        const auto label = [&](std::size_t atom) { return labels[atom]; };
        const auto marginal = label_distribution(dist, label);
        const double cond = conditional_entropy(dist, label);
        const double support = class_support_bound(marginal);
        double chain = 0.0;
        for (const auto& [kl, cls] : marginal) {
          chain += cls.probability * code_length_bound(static_cast<double>(kl[0]), static_cast<double>(kl[1]), c);
        }
        rep.add(make_row(name, n, "cond_entropy_kl", Estimate::exact(cond, n), true, true, r));
        rep.add(make_row(name, n, "class_support_bound", Estimate::exact(support, n), true, true, r));
        rep.add(make_row(name, n, "covering_chain_bound", Estimate::exact(chain, n), true, true, r));
        rep.check(name + " n=" + std::to_string(n) + " r=" + std::to_string(r) + " covering chain",
                  cond <= support + slack && support <= chain + slack,
                  fmt(cond) + " <= " + fmt(support) + " <= " + fmt(chain));
      }
    }
  }
  return rep;
}

ExperimentReport run_probes(const ExperimentConfig& cfg) {
  ExperimentReport rep{"probes", {}, {}};
  const auto opt = kernel(cfg);
  for (const auto& text : cfg.graphs) {
    const auto g = graph_or_throw(text);
    const auto name = g->name();
    const auto o = g->origin();
    const auto h = cfg.escape_horizon;

    // Censored escape must not grow with the horizon.
    const auto e1 = escape_probability(*g, o, h, cfg.escape_samples, cfg.seed, opt);
    const auto e2 = escape_probability(*g, o, 2 * h, cfg.escape_samples, cfg.seed, opt);
    rep.add(make_row(name, h, "escape_origin", e1));
    rep.add(make_row(name, 2 * h, "escape_origin", e2));
    rep.check(name + " escape monotone in horizon", e2.mean <= e1.mean + 3 * std::hypot(e1.std_error, e2.std_error),
              fmt(e1.mean) + "@" + std::to_string(h) + " vs " + fmt(e2.mean) + "@" + std::to_string(2 * h));

    // Capacity of nested balls.
    std::vector<Estimate> caps;
    for (std::uint32_t radius = 0; radius <= 2; ++radius) {
      const auto a = ball(*g, o, radius);
      caps.push_back(capacity_estimate(*g, a, h, cfg.escape_samples, cfg.seed, opt));
      rep.add(make_row(name, h, "capacity_ball" + std::to_string(radius), caps.back()));
    }
    bool mono = true;
    for (std::size_t i = 1; i < caps.size(); ++i) {
      mono = mono && caps[i].mean + 3 * std::hypot(caps[i].std_error, caps[i - 1].std_error) >= caps[i - 1].mean;
    }
    rep.check(name + " capacity monotone on nested balls", mono,
              fmt(caps[0].mean) + " <= " + fmt(caps[1].mean) + " <= " + fmt(caps[2].mean));

    // Heat kernel: P_o[X_l = o] sqrt(l+1) against a calibrated constant.
    const auto lmax = static_cast<std::uint32_t>(cfg.constant("heat_kernel_lmax"));
    const auto prof = return_probability_profile(*g, o, lmax, cfg.escape_samples, cfg.seed);
    double worst = 0.0;
    for (std::size_t l = 0; l < prof.probability.size(); ++l) {
      worst = std::max(worst, prof.probability[l] * std::sqrt(static_cast<double>(l) + 1.0));
    }
    rep.add(make_row(name, lmax, "heat_kernel_scaled_max", Estimate::exact(worst, lmax), prof.exact));
    const double c = cfg.constant("heat_kernel_c");
    rep.check(name + " P[X_l=o] sqrt(l+1) <= " + fmt(c), worst <= c + (prof.exact ? 1e-12 : 0.05), fmt(worst));

    // Degree-3 radius against 1/alpha over a few probe vertices.
    const auto probe = ball(*g, o, static_cast<std::uint32_t>(cfg.constant("probe_radius")));
    const auto count = std::min<std::size_t>(probe.size(), static_cast<std::size_t>(cfg.constant("probe_vertices")));
    double alpha = 1.0;
    for (std::size_t i = 0; i < count; ++i) {
      KernelOptions po = opt;
      po.first_stream = i * cfg.escape_samples;
      const auto e = escape_probability(*g, probe[i], h, cfg.escape_samples, cfg.seed, po);
      alpha = std::min(alpha, e.mean);
    }
    rep.add(make_row(name, h, "alpha_hat", Estimate::exact(alpha, h)));
    if (alpha >= cfg.constant("transient_escape_min")) {
      const auto reach = static_cast<std::uint32_t>(std::floor(1.0 / alpha));
      bool ok = true;
      std::uint32_t far = 0;
      for (std::size_t i = 0; i < count; ++i) {
        const auto dist = min_degree3_distance(*g, probe[i], reach);
        ok = ok && dist.has_value();
        if (dist) far = std::max(far, *dist);
      }
      rep.add(make_row(name, h, "degree3_distance_max", Estimate::exact(far, h)));
      rep.check(name + " degree-3 vertex within 1/alpha", ok, std::to_string(far) + " <= " + fmt(1.0 / alpha));
    }

    for (std::uint32_t radius = 1; radius <= static_cast<std::uint32_t>(cfg.constant("sphere_rmax")); ++radius) {
      const auto s = static_cast<double>(sphere_size(*g, o, radius));
      rep.add(make_row(name, radius, "sphere_size", Estimate::exact(s, radius)));
      rep.add(make_row(name, radius, "sphere_growth", Estimate::exact(std::pow(s, 1.0 / radius), radius)));
    }
  }
  return rep;
}

ExperimentReport run_linear_range(const ExperimentConfig& cfg) {
  ExperimentReport rep{"linear-range", {}, {}};
  for (const auto& text : cfg.graphs) {
    const auto g = graph_or_throw(text);
    const auto name = g->name();
    const auto esc = escape_probability(*g, g->origin(), cfg.escape_horizon, cfg.escape_samples, cfg.seed, kernel(cfg));
    rep.add(make_row(name, cfg.escape_horizon, "escape_origin", esc));
    for (auto n : cfg.horizons) {
      KernelOptions opt = kernel(cfg);
      opt.boundary = false;
      const auto m = mc_moments(*g, g->origin(), n, cfg.samples, cfg.seed, std::nullopt, opt);
      const auto per_step = scaled(m.range, 1.0 / static_cast<double>(n));
      rep.add(make_row(name, n, "range_mean", m.range));
      rep.add(make_row(name, n, "range_over_n", per_step));
      if (n == cfg.horizons.back()) {
        const double lo = cfg.constant("range_over_n_min"), hi = cfg.constant("range_over_n_max");
        rep.check(name + " E|R_n|/n in [" + fmt(lo) + ", " + fmt(hi) + "]", per_step.mean >= lo && per_step.mean <= hi,
                  fmt(per_step.mean));
        const double gap = std::abs(per_step.mean - esc.mean);
        rep.check(name + " |E|R_n|/n - escape| <= " + fmt(cfg.constant("gap_max")), gap <= cfg.constant("gap_max"),
                  fmt(gap));
      }
    }
  }
  return rep;
}

std::vector<std::uint64_t> decades(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n <= hi; n *= 10) out.push_back(n);
  return out;
}

}  // namespace

const std::vector<std::string>& ExperimentConfig::experiments() {
  static const std::vector<std::string> names{"dichotomy", "stretched",    "concatenated",
                                              "exact-small", "probes", "linear-range"};
  return names;
}

ExperimentConfig ExperimentConfig::defaults(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.out = "out/" + experiment;
  c.constants["exact_slack"] = 1e-12;
  if (experiment == "dichotomy") {
    c.graphs = {"lattice:1", "lattice:2", "lattice:3"};
    c.horizons = decades(100, 100000);
    c.cover_max_n = 1000;
    c.constants["transient_ratio_min"] = 0.2;
    c.constants["recurrent_ratio_max"] = 0.05;
  } else if (experiment == "stretched") {
    c.graphs = {"stretched"};
    c.horizons = {1, 10, 100, 1000, 10000};
    c.constants["escape_min"] = 0.3;
  } else if (experiment == "concatenated") {
    c.graphs = {"concatenated:16,64,256"};
    c.horizons = {};
    c.escape_samples = 10000;
    c.constants["boundary_ratio_min"] = 0.05;
    c.constants["root_tail_max"] = 0.5;
  } else if (experiment == "exact-small") {
    c.graphs = {"lattice:1", "lattice:2", "tree", "stretched"};
    c.horizons = {1, 2, 3, 4, 5, 6, 7, 8};
    c.r = 2;
    c.plot_statistic = "exact_entropy_ratio";
  } else if (experiment == "probes") {
    c.graphs = {"stretched"};
    c.horizons = {};
    c.escape_horizon = 2000;
    c.escape_samples = 1000;
    c.plot = false;
    c.constants["heat_kernel_c"] = 1.0;
    c.constants["heat_kernel_lmax"] = 200;
    c.constants["probe_radius"] = 4;
    c.constants["probe_vertices"] = 8;
    c.constants["transient_escape_min"] = 0.05;
    c.constants["sphere_rmax"] = 12;
  } else if (experiment == "linear-range") {
    c.graphs = {"lattice:3"};
    c.horizons = {1000, 10000, 100000};
    c.escape_horizon = 100000;
    c.escape_samples = 10000;
    c.plot_statistic = "range_over_n";
    c.constants["range_over_n_min"] = 0.64;
    c.constants["range_over_n_max"] = 0.68;
    c.constants["gap_max"] = 0.02;
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (j.contains("experiment")) {
      const auto name = j.at("experiment").get<std::string>();
      if (name != c.experiment) c = defaults(name);
    }
    if (j.contains("graph")) c.graphs = {j.at("graph").get<std::string>()};
    if (j.contains("graphs")) c.graphs = j.at("graphs").get<std::vector<std::string>>();
    if (j.contains("horizons")) c.horizons = j.at("horizons").get<std::vector<std::uint64_t>>();
    if (j.contains("samples")) c.samples = j.at("samples").get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("r")) c.r = j.at("r").get<std::uint32_t>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("bits")) c.bits = j.at("bits").get<bool>();
    if (j.contains("plot")) c.plot = j.at("plot").get<bool>();
    if (j.contains("escape_horizon")) c.escape_horizon = j.at("escape_horizon").get<std::uint64_t>();
    if (j.contains("escape_samples")) c.escape_samples = j.at("escape_samples").get<std::uint64_t>();
    if (j.contains("exact_max_n")) c.exact_max_n = j.at("exact_max_n").get<std::uint64_t>();
    if (j.contains("cover_max_n")) c.cover_max_n = j.at("cover_max_n").get<std::uint64_t>();
    if (j.contains("plugin_max_n")) c.plugin_max_n = j.at("plugin_max_n").get<std::uint64_t>();
    if (j.contains("plot_statistic")) c.plot_statistic = j.at("plot_statistic").get<std::string>();
    if (j.contains("constants")) {
      for (const auto& [k, v] : j.at("constants").items()) c.constants[k] = v.get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"experiment", experiment},
          {"graphs", graphs},
          {"horizons", horizons},
          {"samples", samples},
          {"seed", seed},
          {"r", r},
          {"out", out},
          {"workers", workers},
          {"bits", bits},
          {"plot", plot},
          {"escape_horizon", escape_horizon},
          {"escape_samples", escape_samples},
          {"exact_max_n", exact_max_n},
          {"cover_max_n", cover_max_n},
          {"plugin_max_n", plugin_max_n},
          {"plot_statistic", plot_statistic},
          {"constants", constants}};
}

double ExperimentConfig::constant(const std::string& key) const {
  auto it = constants.find(key);
  if (it == constants.end()) throw ConfigError("missing constant '" + key + "'");
  return it->second;
}

void ExperimentConfig::validate() const {
  if (std::find(experiments().begin(), experiments().end(), experiment) == experiments().end()) {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  if (graphs.empty()) throw ConfigError("no graphs configured");
  for (const auto& gname : graphs) graph_or_throw(gname);
  if (samples < 2) throw ConfigError("samples must be >= 2");
  if (r < 1) throw ConfigError("r must be >= 1");
  if (escape_horizon < 1) throw ConfigError("escape_horizon must be >= 1");
  if (escape_samples < 2) throw ConfigError("escape_samples must be >= 2");
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.experiment == "dichotomy") return run_dichotomy(cfg);
  if (cfg.experiment == "stretched") return run_stretched(cfg);
  if (cfg.experiment == "concatenated") return run_concatenated(cfg);
  if (cfg.experiment == "exact-small") return run_exact_small(cfg);
  if (cfg.experiment == "probes") return run_probes(cfg);
  return run_linear_range(cfg);
}

void emit_outputs(const ExperimentReport& report, const ExperimentConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  auto write = [&](const std::string& file, const std::string& text) {
    const auto path = fs::path(cfg.out) / file;
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + path.string());
  };
  write("results.csv", results_csv(report, cfg.bits));
  write("results.json", results_json(report, cfg.bits).dump(2) + "\n");
  write("config.json", cfg.to_json().dump(2) + "\n");
  if (cfg.plot) {
    std::vector<PlotSeries> series;
    std::set<std::string> seen;
    for (const auto& row : report.rows) {
      if (row.statistic != cfg.plot_statistic || !seen.insert(row.graph).second) continue;
      PlotSeries s{row.graph, {}};
      for (const auto* r : report.series(row.graph, cfg.plot_statistic)) {
        const double k = cfg.bits && r->entropy_unit ? 1.0 / std::log(2.0) : 1.0;
        s.points.emplace_back(static_cast<double>(r->n), r->value.mean * k);
      }
      series.push_back(std::move(s));
    }
    write("plot.svg", svg_line_chart(report.experiment + ": " + cfg.plot_statistic, cfg.plot_statistic, series));
  }
}

}  // namespace rangewalk
