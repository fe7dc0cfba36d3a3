// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rangewalk/cover.hpp"
#include "rangewalk/estimators.hpp"
#include "rangewalk/exact_dist.hpp"
#include "rangewalk/families.hpp"
#include "rangewalk/kernels.hpp"
#include "rangewalk/lab.hpp"
#include "rangewalk/probes.hpp"

using namespace rangewalk;

namespace {

// frozen tolerances
constexpr double kExactTol = 1e-12;
constexpr double kSigmas = 3.0;
constexpr double kRecurrentRatioMax = 0.05;
constexpr double kTransientRatioMin = 0.2;
constexpr double kStretchedEscapeMin = 0.3;
constexpr double kConcatRatioMin = 0.05;
constexpr double kRootTailMax = 0.5;
constexpr double kLinearLo = 0.64, kLinearHi = 0.68, kLinearGap = 0.02;
constexpr double kZ1SqrtLo = 1.5, kZ1SqrtHi = 1.7;
constexpr double kCriterion1Seconds = 1.0;

constexpr std::uint64_t kSeed = 20240;

int failures = 0;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::string> kZoo = {"lattice:1", "lattice:2", "lattice:3", "tree", "finite-tree:5",
                                       "stretched", "concatenated:4,16,256", "path:6", "cycle:7", "star:4"};
const std::vector<std::string> kInfinite = {"lattice:1", "lattice:2", "lattice:3",
                                            "tree",      "stretched", "concatenated:4,16,256"};

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto z1 = make_graph("lattice:1");
  bool ok = true;
  std::string detail;
  const double log2 = std::log(2.0);
  const double h1 = entropy(exact_range_distribution(z1, oracle::z(0), 1));
  const double h2 = entropy(exact_range_distribution(z1, oracle::z(0), 2));
  const auto d3 = exact_range_distribution(z1, oracle::z(0), 3);
  ok = ok && std::abs(h1 - log2) <= kExactTol && std::abs(h2 - 2 * log2) <= kExactTol;
  ok = ok && std::abs(entropy(d3) - 2.75 * log2) <= kExactTol && std::abs(expected_range_size(d3) - 3.0) <= kExactTol;
  for (unsigned n = 1; n <= 10; ++n) {
    ok = ok && std::abs(expected_boundary_size(exact_range_distribution(z1, oracle::z(0), n)) - 2.0) <= kExactTol;
  }
  double worst = 0.0;
  for (const auto* name : {"lattice:1", "lattice:2", "tree"}) {
    const auto g = make_graph(name);
    for (unsigned n = 0; n <= 8; ++n) {
      const auto d = exact_range_distribution(g, g->origin(), n);
      const auto law = oracle::range_law(*g, g->origin(), n);
      if (law.size() != d.atom_count()) {
        ok = false;
        detail += std::string(name) + " support mismatch; ";
        continue;
      }
      for (std::size_t a = 0; a < d.atom_count(); ++a) {
        const auto it = law.find(d.encoding(a));
        if (it == law.end()) {
          ok = false;
          continue;
        }
        worst = std::max(worst, std::abs(it->second - d.probability(a)));
      }
    }
  }
  const double secs = seconds_since(t0);
  ok = ok && worst <= kExactTol && secs < kCriterion1Seconds;
  report(1, ok, "exact golden values and DP = enumeration",
         detail + "ent(R_3)/log2=" + fmt(entropy(d3) / log2) + " max|dp-enum|=" + fmt(worst) + " time=" + fmt(secs) +
             "s");
}

void criterion2() {
  double worst = -1.0;
  for (const auto* name : {"lattice:1", "lattice:2", "tree", "stretched"}) {
    const auto g = make_graph(name);
    for (unsigned n = 1; n <= 10; ++n) worst = std::max(worst, check_pointwise_bound(exact_range_distribution(g, g->origin(), n)));
  }
  const double tight = check_pointwise_bound(exact_range_distribution(make_graph("lattice:1"), oracle::z(0), 1));
  report(2, worst <= kExactTol && tight == 0.0, "pointwise bound over exact supports",
         "max violation=" + fmt(worst) + " Z^1 n=1 violation=" + fmt(tight));
}

void criterion3() {
  bool ok = true;
  double min_low_gap = 1e300, min_high_gap = 1e300;
  for (const auto* name : {"lattice:1", "lattice:2", "tree", "stretched"}) {
    const auto g = make_graph(name);
    const double d = g->degree_bound();
    for (unsigned n = 1; n <= 10; ++n) {
      const auto dist = exact_range_distribution(g, g->origin(), n);
      const double h = entropy(dist);
      const double lo = boundary_entropy_lower_bound(expected_boundary_size(dist), g->degree_bound());
      const double hi = 2 * std::log(d) * expected_range_size(dist) + std::log(n + 1.0);
      min_low_gap = std::min(min_low_gap, h - lo);
      min_high_gap = std::min(min_high_gap, hi - h);
      ok = ok && lo <= h + kExactTol && h <= hi + kExactTol;
    }
  }
  report(3, ok, "entropy sandwich on exact instances",
         "min(ent-lower)=" + fmt(min_low_gap) + " min(upper-ent)=" + fmt(min_high_gap));
}

void criterion4() {
  bool chain = true;
  double worst_chain = -1e300;
  for (const auto* name : {"lattice:1", "lattice:2"}) {
    const auto g = make_graph(name);
    for (unsigned n = 1; n <= 10; ++n) {
      const auto d = exact_range_distribution(g, g->origin(), n);
      for (std::uint32_t r : {1u, 2u}) {
        std::vector<CoverSequence> covers;
        std::vector<VertexId> centers;
        covers.reserve(d.atom_count());
        for (std::size_t a = 0; a < d.atom_count(); ++a) {
          covers.push_back(f_r(*g, d.set(a), g->origin(), r));
          centers.insert(centers.end(), covers.back().centers.begin(), covers.back().centers.end());
        }
        const auto label = [&](std::size_t a) {
          return Label{static_cast<std::int64_t>(covers[a].k()), static_cast<std::int64_t>(covers[a].l())};
        };
        const auto classes = label_distribution(d, label);
        const auto c = cover_constants(*g, r, centers);
        double bound = 0.0;
        for (const auto& [kl, cls] : classes) bound += cls.probability * code_length_bound(kl[0], kl[1], c);
        const double h = conditional_entropy(d, label);
        worst_chain = std::max(worst_chain, h - bound);
        chain = chain && h <= bound + kExactTol;
      }
    }
  }
  constexpr std::uint64_t n = 100, samples = 10000;
  bool trip = true;
  std::size_t bad = 0;
  for (const auto& name : kZoo) {
    const auto g = make_graph(name);
    const auto ranges = sample_ranges(*g, g->origin(), n, samples, kSeed + 4);
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      const std::uint32_t r = 1u << (i % 3);
      const auto code = encode_range(*g, ranges[i], g->origin(), r, n);
      const bool back = decode_range(*g, deserialize(*g, serialize(*g, code))) == ranges[i];
      const auto cover = f_r(*g, ranges[i], g->origin(), r);
      const auto c = cover_constants(*g, r, cover.centers);
      const bool short_enough =
          code.length_nats() <= code_length_bound(cover.k(), cover.l(), c) + 2 * std::log(n + 1.0) + kExactTol;
      if (!back || !short_enough) ++bad;
    }
  }
  trip = bad == 0;
  report(4, chain && trip, "covering chain (exact) and encoder round-trip",
         "max(ent(R|K,L)-bound)=" + fmt(worst_chain) + " failed codes=" + std::to_string(bad) + "/" +
             std::to_string(kZoo.size() * samples));
}

void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t bad = 0, total = 0;
  for (const auto& name : kZoo) {
    const auto g = make_graph(name);
    const auto ranges = sample_ranges(*g, g->origin(), 100, 10000, kSeed + 5);
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      const auto& a = ranges[i];
      const std::uint32_t r = 1u << (i % 3);
      const auto path = cover_path(*g, a, g->origin());
      bool ok = path.size() - 1 <= 2 * a.size() && VertexSet(path) == a;
      const auto cover = f_r(*g, a, g->origin(), r);
      std::vector<VertexId> covered;
      for (const auto& x : cover.centers) {
        const auto b = ball(*g, x, r);
        covered.insert(covered.end(), b.begin(), b.end());
      }
      ok = ok && a.is_subset_of(VertexSet(covered)) && cover.k() <= 1 + 2 * a.size() / r;
      bad += ok ? 0 : 1;
      ++total;
    }
  }
  const double secs = seconds_since(t0);
  report(5, bad == 0 && secs < 60.0, "cover path and F_r invariants",
         std::to_string(bad) + "/" + std::to_string(total) + " violations, time=" + fmt(secs) + "s");
}

void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  double z1 = 0.0;
  for (const auto& name : kInfinite) {
    const auto g = make_graph(name);
    for (std::uint64_t n : {100ULL, 1000ULL, 10000ULL}) {
      const std::uint64_t samples = name == "lattice:1" ? 10000 : 1000;
      KernelOptions opt;
      opt.boundary = false;
      const auto m = mc_moments(*g, g->origin(), n, samples, kSeed + 6, std::nullopt, opt);
      const double q = m.range.mean / std::sqrt(static_cast<double>(n));
      ok = ok && q + kSigmas * m.range.std_error / std::sqrt(static_cast<double>(n)) >= 1.0;
      if (name == "lattice:1" && n == 10000) z1 = q;
    }
  }
  const bool z1_ok = z1 >= kZ1SqrtLo && z1 <= kZ1SqrtHi;
  report(6, ok && z1_ok, "E|R_n|/sqrt(n) >= 1 on every family",
         "Z^1 at n=1e4: " + fmt(z1) + " (total " + fmt(seconds_since(t0)) + "s)");
}

void criterion7() {
  const auto p = return_probability_profile(*make_graph("lattice:1"), oracle::z(0), 200);
  double worst = 0.0;
  for (unsigned k = 0; k <= 100; ++k) worst = std::max(worst, p.probability[2 * k] * std::sqrt(2.0 * k + 1));
  report(7, p.exact && worst <= 1.0, "heat kernel on Z^1", "max P[X_2k=0]sqrt(2k+1)=" + fmt(worst));
}

void criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = make_graph("lattice:3");
  constexpr std::uint64_t n = 100000;
  KernelOptions opt;
  opt.boundary = false;
  const auto m = mc_moments(*g, LatticePoint{}, n, 10000, kSeed + 8, std::nullopt, opt);
  const double ratio = m.range.mean / static_cast<double>(n);
  const auto esc = escape_probability(*g, LatticePoint{}, n, 4000, kSeed + 9);
  const bool ok = ratio >= kLinearLo && ratio <= kLinearHi && std::abs(ratio - esc.mean) <= kLinearGap;
  report(8, ok, "linear range on Z^3",
         "E|R|/n=" + fmt(ratio) + " escape=" + fmt(esc.mean) + "+-" + fmt(esc.std_error) + " time=" +
             fmt(seconds_since(t0)) + "s");
}

std::vector<Estimate> boundary_ratio_curve(const std::string& name, const std::vector<std::uint64_t>& horizons,
                                           std::uint64_t samples, std::uint64_t seed) {
  const auto g = make_graph(name);
  std::vector<Estimate> out;
  for (auto n : horizons) {
    const auto m = mc_moments(*g, g->origin(), n, samples, seed);
    out.push_back(ratio(m.boundary, m.range));
  }
  return out;
}

bool strictly_decreasing(const std::vector<Estimate>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i].mean < xs[i - 1].mean)) return false;
  }
  return true;
}

std::string curve(const std::vector<Estimate>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ",") + fmt(x.mean);
  return s;
}

void criterion9() {
  const std::vector<std::uint64_t> decades{100, 1000, 10000, 100000};
  constexpr std::uint64_t samples = 2000;
  const auto z1 = boundary_ratio_curve("lattice:1", decades, samples, kSeed + 10);
  const auto z2 = boundary_ratio_curve("lattice:2", decades, samples, kSeed + 10);
  const auto z3 = boundary_ratio_curve("lattice:3", decades, samples, kSeed + 10);
  bool transient = true;
  for (const auto& e : z3) transient = transient && e.mean + kSigmas * e.std_error >= kTransientRatioMin;
  const auto recurrent = [](const std::vector<Estimate>& c) {
    return strictly_decreasing(c) && c.back().mean - kSigmas * c.back().std_error <= kRecurrentRatioMax;
  };
  const bool ok1 = recurrent(z1), ok2 = recurrent(z2);
  report(9, transient && ok1 && ok2, "boundary/range dichotomy on Z^1, Z^2, Z^3",
         std::string("Z^1 ") + (ok1 ? "ok" : "FAIL") + " [" + curve(z1) + "]; Z^2 " + (ok2 ? "ok" : "FAIL") + " [" +
             curve(z2) + "]; Z^3 " + (transient ? "ok" : "FAIL") + " [" + curve(z3) + "]");
}

void criterion10() {
  const auto st = make_graph("stretched");
  const auto ratios = boundary_ratio_curve("stretched", {1, 10, 100, 1000, 10000}, 2000, kSeed + 11);
  const bool ratio_down = strictly_decreasing(ratios);

  std::vector<double> exact_ratio;
  for (unsigned n : {1u, 10u}) {
    const auto d = exact_range_distribution(st, st->origin(), n);
    exact_ratio.push_back(entropy(d) / expected_range_size(d));
  }
  const bool exact_down = exact_ratio[1] < exact_ratio[0];

  const auto esc = escape_probability(*st, st->origin(), 10000, 4000, kSeed + 12);
  const bool esc_ok = esc.mean + kSigmas * esc.std_error >= kStretchedEscapeMin;

  const auto cat = make_graph("concatenated:16,64,256");
  bool cat_ratio = true, tail_ok = true;
  std::string cat_detail, tail_detail;
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const auto* c = dynamic_cast<const ConcatenatedTreesGraph*>(cat.get());
    const std::uint64_t ak = c->tree_depth(k);
    const auto m = mc_moments(*cat, cat->origin(), ak, 4000, kSeed + 13);
    const auto q = ratio(m.boundary, m.range);
    cat_ratio = cat_ratio && q.mean + kSigmas * q.std_error >= kConcatRatioMin;
    cat_detail += fmt(q.mean) + "@" + std::to_string(ak) + " ";
    const auto tail = concatenated_root_tail(*cat, k, 10000, kSeed + 14);
    tail_ok = tail_ok && tail.mean <= kRootTailMax + kSigmas * tail.std_error;
    tail_detail += "k=" + std::to_string(k) + ":" + fmt(tail.mean) + " ";
  }
  const bool ok = ratio_down && exact_down && esc_ok && cat_ratio && tail_ok;
  const auto flag = [](bool b) { return b ? "ok" : "FAIL"; };
  report(10, ok, "stretched-tree and concatenated-trees counterexamples",
         std::string("stretched ratio ") + flag(ratio_down) + " [" + curve(ratios) + "]; exact ent/E|R| n=1,10 " +
             flag(exact_down) + " [" + fmt(exact_ratio[0]) + "," + fmt(exact_ratio[1]) + "]; root escape " +
             flag(esc_ok) + " " + fmt(esc.mean) + "+-" + fmt(esc.std_error) + "; concatenated ratio " +
             flag(cat_ratio) + " [" + cat_detail + "]; root tail " + flag(tail_ok) + " [" + tail_detail + "]");
}

void criterion11() {
  const auto st = make_graph("stretched");
  bool disp = true;
  std::string detail = "displacement";
  for (std::uint32_t l = 1; l <= 5; ++l) {
    TreeAddress x;
    for (std::uint32_t i = 0; i < l; ++i) x = x.child(0);
    const auto e = stretched_tree_displacement(*st, StretchedPoint{x, 0}, 100000, kSeed + 20 + l);
    disp = disp && e.within(stretched_displacement_formula(l), kSigmas);
    detail += " " + fmt(e.mean) + "/" + fmt(stretched_displacement_formula(l));
  }
  bool gambler = true;
  detail += "; gambler";
  for (std::uint32_t r : {2u, 5u, 10u}) {
    const auto e = gambler_escape(r, 100000, kSeed + 30 + r);
    gambler = gambler && e.within(1.0 / r, kSigmas);
    detail += " " + fmt(e.mean);
  }
  const auto z3 = make_graph("lattice:3");
  const auto c0 = capacity_estimate(*z3, VertexSet({LatticePoint{}}), 10000, 4000, kSeed + 40);
  const auto c1 = capacity_estimate(*z3, ball(*z3, LatticePoint{}, 1), 10000, 2000, kSeed + 41);
  const auto c2 = capacity_estimate(*z3, ball(*z3, LatticePoint{}, 2), 10000, 1000, kSeed + 42);
  const auto le = [](const Estimate& a, const Estimate& b) {
    return a.mean <= b.mean + kSigmas * std::hypot(a.std_error, b.std_error);
  };
  const bool cap = le(c0, c1) && le(c1, c2);
  detail += "; capacity " + fmt(c0.mean) + " <= " + fmt(c1.mean) + " <= " + fmt(c2.mean);
  report(11, disp && gambler && cap, "displacement, gambler and capacity formulas", detail);
}

void criterion12() {
  auto cfg = ExperimentConfig::defaults("dichotomy");
  cfg.horizons = {100, 1000};
  cfg.samples = 500;
  cfg.escape_samples = 100;
  cfg.escape_horizon = 1000;
  cfg.workers = 1;
  const auto a = results_csv(run_experiment(cfg));
  const auto b = results_csv(run_experiment(cfg));
  bool means = true;
  std::string first;
  for (int w : {1, 4, 8}) {
    cfg.workers = w;
    const auto csv = results_csv(run_experiment(cfg));
    if (first.empty()) first = csv;
    means = means && csv == first;
    KernelOptions opt;
    opt.workers = w;
    for (const auto* name : {"lattice:3", "stretched"}) {
      const auto g = make_graph(name);
      means = means && mc_moments(*g, g->origin(), 2000, 256, kSeed, 2, opt).range.mean ==
                           mc_moments(*g, g->origin(), 2000, 256, kSeed, 2).range.mean;
    }
  }
  report(12, a == b && means, "determinism across reruns and worker counts",
         std::string("rerun ") + (a == b ? "byte-identical" : "differs") + ", workers {1,4,8} " +
             (means ? "identical" : "differ"));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3,  criterion4,
                                                    criterion5, criterion6, criterion7,  criterion8,
                                                    criterion9, criterion10, criterion11, criterion12};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, "raised", e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
