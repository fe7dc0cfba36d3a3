#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rangewalk/families.hpp"
#include "rangewalk/probes.hpp"

using namespace rangewalk;
using oracle::z;
using oracle::z2;

namespace {

const std::vector<std::string> kZoo = {"lattice:1", "lattice:2", "lattice:3",  "tree",     "finite-tree:5",
                                       "stretched", "concatenated:4,16,256", "path:6", "cycle:7", "star:4"};

}  // namespace

TEST_CASE("lattice degree and balls") {
  const auto g1 = make_graph("lattice:1");
  CHECK(g1->degree(z(17)) == 2);
  CHECK(ball(*g1, z(0), 2) == oracle::interval(-2, 2));
  CHECK(ball(*g1, z(5), 0).size() == 1);
  CHECK(sphere_size(*g1, z(0), 3) == 2);

  const auto g2 = make_graph("lattice:2");
  CHECK(ball(*g2, z2(0, 0), 1).size() == 5);
  CHECK(sphere_size(*g2, z2(0, 0), 1) == 8);
}

TEST_CASE("binary tree balls and spheres") {
  const auto t = make_graph("tree");
  CHECK(t->degree(t->origin()) == 2);
  CHECK(ball(*t, t->origin(), 2).size() == 7);
  CHECK(sphere_size(*t, t->origin(), 2) == 8);
  for (std::uint32_t r = 1; r < 10; ++r) {
    CHECK(sphere_size(*t, t->origin(), r + 1) == 2 * sphere_size(*t, t->origin(), r));
  }
}

TEST_CASE("stretched tree root sits on three length-3 paths") {
  const auto g = make_graph("stretched");
  const auto nb = g->neighbors(g->origin());
  REQUIRE(nb.size() == 3);
  for (const auto& v : nb) {
    const auto& p = std::get<StretchedPoint>(v);
    CHECK(p.offset == 1);
    CHECK(p.branch.depth() == 1);
    // offset 1 -> 2 -> branch vertex: three edges in total
    const auto d = oracle::distances(*g, g->origin(), 3);
    CHECK(d.at(g->encode(StretchedPoint{p.branch, 0})) == 3);
  }
  CHECK(StretchedTreeGraph::path_length(1) == 3);
  CHECK(StretchedTreeGraph::path_length(4) == 6);
}

TEST_CASE("concatenated trees root degrees") {
  const auto g = make_graph("concatenated:4,16,256");
  CHECK(g->degree(ConcatenatedTreesGraph::tree_root(1)) == 3);
  CHECK(g->degree(ConcatenatedTreesGraph::tree_root(2)) == 4);
  CHECK_THROWS_AS(make_graph("concatenated:16,16,64"), GraphError);
  CHECK_THROWS_AS(make_graph("concatenated:64,16"), GraphError);
  CHECK_THROWS_AS(make_graph("moebius:3"), GraphError);
  CHECK_THROWS_AS(make_graph("lattice:0"), GraphError);
  CHECK_THROWS_AS(make_graph("finite-tree:0"), GraphError);
}

TEST_CASE("interior boundary") {
  const auto g1 = make_graph("lattice:1");
  CHECK(interior_boundary(*g1, oracle::interval(0, 2)) == VertexSet({z(0), z(2)}));
  const auto g2 = make_graph("lattice:2");
  const auto b = ball(*g2, z2(0, 0), 1);
  const auto ib = interior_boundary(*g2, b);
  CHECK(ib.size() == 4);
  CHECK_FALSE(ib.contains(z2(0, 0)));
  for (const auto& name : kZoo) {
    const auto g = make_graph(name);
    CHECK(interior_boundary(*g, VertexSet({g->origin()})).size() == 1);
  }
}

TEST_CASE("degree-3 distance") {
  const auto t = make_graph("tree");
  CHECK(min_degree3_distance(*t, TreeAddress{}.child(1).child(0), 5) == 0u);
  const auto g1 = make_graph("lattice:1");
  CHECK_FALSE(min_degree3_distance(*g1, z(3), 10).has_value());
  const auto s = make_graph("stretched");
  const auto root_child = TreeAddress{}.child(0);
  for (std::uint32_t off : {1u, 2u}) {
    const auto d = min_degree3_distance(*s, StretchedPoint{root_child, off}, 10);
    REQUIRE(d.has_value());
    CHECK((*d == 1 || *d == 2));
  }
}

TEST_CASE("neighbor symmetry and degree cap and canonical order on sampled vertices") {
  for (const auto& name : kZoo) {
    CAPTURE(name);
    const auto g = make_graph(name);
    const auto sample = oracle::walk_vertices(*g, 10000, 5);
    bool symmetric = true, capped = true, ordered = true;
    for (const auto& x : sample) {
      const auto nb = g->neighbors(x);
      capped = capped && static_cast<int>(nb.size()) <= g->degree_bound() && g->degree(x) == static_cast<int>(nb.size());
      for (std::size_t i = 1; i < nb.size(); ++i) ordered = ordered && g->encode(nb[i - 1]) < g->encode(nb[i]);
      // one sampled edge per vertex
      const auto& y = nb[std::hash<std::string>{}(g->encode(x)) % nb.size()];
      const auto back = g->neighbors(y);
      symmetric = symmetric && std::find(back.begin(), back.end(), x) != back.end();
    }
    CHECK(symmetric);
    CHECK(capped);
    CHECK(ordered);
  }
}

TEST_CASE("encoding is injective and round-trips and orders like compare_vertices") {
  for (const auto& name : kZoo) {
    CAPTURE(name);
    const auto g = make_graph(name);
    const auto sample = oracle::walk_vertices(*g, 400, 9);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const auto e = g->encode(sample[i]);
      CHECK(g->decode(e) == sample[i]);
      const auto& other = sample[(i * 7 + 3) % sample.size()];
      const auto f = g->encode(other);
      CHECK(((e < f) == (compare_vertices(sample[i], other) < 0)));
      CHECK(((e == f) == (sample[i] == other)));
    }
    CHECK_THROWS(g->decode(g->encode(g->origin()) + "x"));
  }
}

TEST_CASE("graph names round-trip through the parser") {
  for (const auto& name : kZoo) {
    const auto g = make_graph(name);
    CHECK(make_graph(g->name())->name() == g->name());
  }
  CHECK(make_graph("stretched")->degree_bound() == 3);
  CHECK(make_graph("concatenated:4,16,256")->degree_bound() == 4);
  CHECK(make_graph("lattice:3")->degree_bound() == 6);
  CHECK(make_graph("tree")->degree_bound() == 3);
}

TEST_CASE("ball nesting and sphere as a ball difference") {
  for (const auto& name : kZoo) {
    CAPTURE(name);
    const auto g = make_graph(name);
    for (const auto& x : oracle::walk_vertices(*g, 5, 3)) {
      for (std::uint32_t r = 0; r < 5; ++r) {
        const auto b = ball(*g, x, r);
        const auto b1 = ball(*g, x, r + 1);
        CHECK(b.is_subset_of(b1));
        CHECK(sphere_size(*g, x, r) == b1.size() - b.size());
        CHECK(b.size() == oracle::distances(*g, x, r).size());
      }
    }
  }
}

TEST_CASE("sphere growth is polynomial on lattices and the stretched tree") {
  for (const auto* name : {"lattice:2", "lattice:3", "stretched"}) {
    CAPTURE(name);
    const auto g = make_graph(name);
    const double early = std::pow(static_cast<double>(sphere_size(*g, g->origin(), 4)), 1.0 / 4);
    const double late = std::pow(static_cast<double>(sphere_size(*g, g->origin(), 40)), 1.0 / 40);
    CHECK(late < early);
    CHECK(late < 1.5);
  }
}

TEST_CASE("vertex sets are canonical and encode injectively") {
  const auto g = make_graph("lattice:2");
  const VertexSet a({z2(1, 0), z2(0, 0), z2(1, 0)});
  CHECK(a.size() == 2);
  CHECK(a[0] == z2(0, 0));
  CHECK(VertexSet::decode(*g, a.encode(*g)) == a);
  const VertexSet b({z2(0, 0), z2(0, 1)});
  CHECK(a.encode(*g) != b.encode(*g));
  CHECK(set_union(a, b).size() == 3);
  CHECK(is_connected(*g, set_union(a, b)));
  CHECK_FALSE(is_connected(*g, VertexSet({z2(0, 0), z2(2, 0)})));
}
