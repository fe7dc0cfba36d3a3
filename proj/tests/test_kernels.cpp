#include <doctest.h>

#include "oracles.hpp"
#include "rangewalk/kernels.hpp"
#include "rangewalk/probes.hpp"

using namespace rangewalk;

TEST_CASE("parallel kernels reproduce the serial reference") {
  for (const auto* name : {"lattice:1", "lattice:2", "lattice:3", "tree", "stretched", "concatenated:4,16,256",
                           "cycle:9"}) {
    CAPTURE(name);
    const auto g = make_graph(name);
    const auto ref = range_observations_reference(*g, g->origin(), 300, 64, 21);
    for (bool fast : {true, false}) {
      for (int w : {1, 4, 8}) {
        KernelOptions opt;
        opt.workers = w;
        opt.fast_path = fast;
        CHECK(range_observations(*g, g->origin(), 300, 64, 21, opt) == ref);
      }
    }
  }
}

TEST_CASE("kernels agree with the single-walk API") {
  const auto g = make_graph("lattice:3");
  KernelOptions opt;
  opt.first_stream = 5;
  const auto obs = range_observations(*g, g->origin(), 200, 10, 3, opt);
  const auto sets = sample_ranges(*g, g->origin(), 200, 10, 3, opt);
  for (std::size_t s = 0; s < obs.size(); ++s) {
    const auto w = run_walk(*g, g->origin(), {200, 3, 5 + s});
    CHECK(obs[s].range_size == w.range.size());
    CHECK(obs[s].boundary_size == w.boundary_size);
    CHECK(sets[s] == w.range);
    CHECK(interior_boundary_size(*g, sets[s]) == obs[s].boundary_size);
  }
}

TEST_CASE("boundary can be switched off without changing ranges") {
  const auto g = make_graph("lattice:2");
  KernelOptions off;
  off.boundary = false;
  const auto a = range_observations(*g, g->origin(), 500, 32, 8);
  const auto b = range_observations(*g, g->origin(), 500, 32, 8, off);
  for (std::size_t s = 0; s < a.size(); ++s) CHECK(a[s].range_size == b[s].range_size);
}

TEST_CASE("hitting kernels reproduce the reference") {
  for (const auto* name : {"lattice:1", "lattice:3", "tree"}) {
    CAPTURE(name);
    const auto g = make_graph(name);
    const std::vector<VertexId> target{g->origin()};
    for (bool strict : {true, false}) {
      const auto ref = hitting_observations_reference(*g, g->origin(), target, strict, 400, 50, 4);
      for (bool fast : {true, false}) {
        for (int w : {1, 4}) {
          KernelOptions opt;
          opt.workers = w;
          opt.fast_path = fast;
          const auto got = hitting_observations(*g, g->origin(), target, strict, 400, 50, 4, opt);
          REQUIRE(got.size() == ref.size());
          for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].time == ref[i].time);
        }
      }
      if (!strict) {
        for (const auto& h : ref) CHECK(h.time == 0u);
      }
    }
  }
}

TEST_CASE("fast lattice path applicability") {
  CHECK(lattice_fast_path_applies(*make_graph("lattice:3"), LatticePoint{}, 1000));
  CHECK_FALSE(lattice_fast_path_applies(*make_graph("tree"), TreeAddress{}, 10));
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
}
