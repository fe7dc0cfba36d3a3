// rangewalk <experiment> [--config file.json] [overrides]
// rangewalk export-dist --graph G --n N [--out file.csv]
//
// Exit status: 0 success, 2 configuration error, 3 a check failed.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rangewalk/exact_dist.hpp"
#include "rangewalk/lab.hpp"
#include "rangewalk/walker.hpp"

namespace rw = rangewalk;

namespace {

constexpr int kConfigError = 2;
constexpr int kCheckFailed = 3;

int export_dist(const std::string& graph, const std::vector<std::uint64_t>& horizons, const std::string& out,
                bool rational) {
  if (graph.empty() || horizons.size() != 1) throw rw::ConfigError("export-dist needs --graph and one --n");
  const auto g = rw::make_graph(graph);
  rw::ExactOptions opt;
  opt.exact_rational = rational;
  const auto dist = rw::exact_range_distribution(g, g->origin(), horizons.front(), opt);
  const auto csv = rw::distribution_csv(dist);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary);
    f << csv;
    if (!f) throw std::runtime_error("cannot write " + out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range entropy of simple random walk: experiments and exact distributions"};
  std::string command, config_path, graph, out, trace;
  std::uint64_t seed = 0, samples = 0;
  std::vector<std::uint64_t> horizons;
  std::uint32_t r = 0;
  int workers = -1;
  bool bits = false, rational = false, no_plot = false;

  std::string names = "export-dist";
  for (const auto& e : rw::ExperimentConfig::experiments()) names += ", " + e;
  app.add_option("command", command, "one of: " + names)->required();
  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--seed", seed, "base seed");
  app.add_option("--samples", samples, "Monte Carlo samples per point");
  app.add_option("--n", horizons, "horizon(s); repeat or space-separate");
  app.add_option("--graph", graph, "graph, e.g. lattice:2, tree, stretched, concatenated:16,64,256");
  app.add_option("--r", r, "cover radius");
  app.add_option("--out", out, "output directory (export-dist: output file)");
  app.add_option("--workers", workers, "OpenMP workers (0: default)");
  app.add_flag("--bits", bits, "report entropies in bits");
  app.add_flag("--no-plot", no_plot, "skip plot.svg");
  app.add_flag("--exact-rational", rational, "export-dist: integer-exact probabilities");
  app.add_option("--trace", trace, "write a step,vertex CSV of one walk (stream 0) to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (command == "export-dist") return export_dist(graph, horizons, out, rational);

    auto cfg = rw::ExperimentConfig::defaults(command);
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw rw::ConfigError("cannot read " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(f);
      } catch (const nlohmann::json::exception& e) {
        throw rw::ConfigError(std::string("invalid JSON: ") + e.what());
      }
      if (j.contains("experiment") && j["experiment"] != command) {
        throw rw::ConfigError("config is for experiment '" + j["experiment"].get<std::string>() + "'");
      }
      cfg = rw::ExperimentConfig::from_json(j, cfg);
    }
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--samples")) cfg.samples = samples;
    if (!horizons.empty()) cfg.horizons = horizons;
    if (!graph.empty()) cfg.graphs = {graph};
    if (app.count("--r")) cfg.r = r;
    if (!out.empty()) cfg.out = out;
    if (workers >= 0) cfg.workers = workers;
    if (bits) cfg.bits = true;
    if (no_plot) cfg.plot = false;
    cfg.validate();

    if (!trace.empty()) {
      const auto g = rw::make_graph(cfg.graphs.front());
      const std::uint64_t n = cfg.horizons.empty() ? 100 : cfg.horizons.front();
      const auto sample = rw::run_walk(*g, g->origin(), {n, cfg.seed, 0});
      std::ofstream f(trace, std::ios::binary);
      f << rw::trace_csv(*g, sample);
    }

    const auto report = rw::run_experiment(cfg);
    rw::emit_outputs(report, cfg);
    for (const auto& c : report.checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << c.detail << ")\n";
    }
    std::cout << report.rows.size() << " rows written to " << cfg.out << "\n";
    return report.passed() ? 0 : kCheckFailed;
  } catch (const rw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rw::GraphError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rw::ExactLimitError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
