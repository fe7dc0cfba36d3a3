#include <doctest.h>

#include "oracles.hpp"
#include "rangewalk/cover.hpp"
#include "rangewalk/exact_dist.hpp"
#include "rangewalk/kernels.hpp"
#include "rangewalk/probes.hpp"

using namespace rangewalk;
using oracle::z;

TEST_CASE("cover path examples") {
  const auto g = make_graph("lattice:1");
  CHECK(cover_path(*g, VertexSet({z(0)}), z(0)).size() == 1);
  const auto p = cover_path(*g, oracle::interval(0, 2), z(1));
  const std::vector<VertexId> left{z(1), z(0), z(1), z(2)};
  const std::vector<VertexId> right{z(1), z(2), z(1), z(0)};
  CHECK((p == left || p == right));

  // star K_{1,3} from its center; the return from the last leaf is cut
  const auto star = make_graph("star:3");
  const auto all = ball(*star, star->origin(), 1);
  REQUIRE(all.size() == 4);
  const auto sp = cover_path(*star, all, star->origin());
  CHECK(sp.size() - 1 == 5);
  CHECK(sp.size() - 1 <= 2 * (all.size() - 1));

  CHECK_THROWS_AS(cover_path(*g, VertexSet({z(0), z(2)}), z(0)), GraphError);
  CHECK_THROWS_AS(cover_path(*g, oracle::interval(0, 2), z(5)), GraphError);
}

TEST_CASE("F_r examples on Z") {
  const auto g = make_graph("lattice:1");
  const auto a = oracle::interval(0, 4);
  const auto c1 = f_r(*g, a, z(0), 1);
  CHECK(c1.centers == std::vector<VertexId>{z(0), z(2), z(4)});
  CHECK(c1.k() == 3);
  CHECK(c1.unfilled == std::vector<bool>{true, false, true});
  CHECK(c1.l() == 2);

  const auto c4 = f_r(*g, a, z(0), 4);
  CHECK(c4.k() == 1);
  CHECK(c4.l() == 1);

  const auto exact_ball = f_r(*g, oracle::interval(-2, 2), z(0), 2);
  CHECK(exact_ball.k() == 1);
  CHECK(exact_ball.l() == 0);
  CHECK_THROWS_AS(f_r(*g, a, z(0), 0), GraphError);
}

TEST_CASE("a full ball encodes with an empty payload") {
  const auto g = make_graph("lattice:2");
  const auto b = ball(*g, g->origin(), 2);
  const auto code = encode_range(*g, b, g->origin(), 2);
  CHECK(code.k() == 1);
  CHECK(code.l() == 0);
  CHECK(code.payload_bits() == 1);  // the single unfilled flag
  CHECK(decode_range(*g, code) == b);
}

TEST_CASE("golden range code on Z") {
  const auto g = make_graph("lattice:1");
  const auto a = oracle::interval(0, 4);
  const auto code = encode_range(*g, a, z(0), 1);
  CHECK(code.center_index == std::vector<std::uint32_t>{1, 1});
  CHECK(code.radix == std::vector<std::uint32_t>{2, 2});
  CHECK(code.center_bits() == 2);
  CHECK(code.payload_bits() == 2 + 3 + 6);
  const auto bytes = serialize(*g, code);
  CHECK(to_hex(bytes) == "00010302020180000000ebc0");
  const auto back = deserialize(*g, bytes);
  CHECK(decode_range(*g, back) == a);
  CHECK(serialize(*g, back) == bytes);
  CHECK(code.length_nats() == doctest::Approx(11 * std::log(2.0)));
  CHECK(code.length_nats() <= code_length_bound(3, 2, cover_constants(*g, 1, {})) + 1e-12);
}

TEST_CASE("malformed codes are rejected") {
  const auto g = make_graph("lattice:1");
  const auto bytes = serialize(*g, encode_range(*g, oracle::interval(0, 4), z(0), 1));
  CHECK_THROWS_AS(deserialize(*g, bytes.substr(0, bytes.size() - 1)), CodeError);
  CHECK_THROWS_AS(deserialize(*g, bytes + std::string(1, '\0')), CodeError);
  CHECK_THROWS_AS(deserialize(*g, bytes.substr(0, 3)), CodeError);
  auto padded = bytes;
  padded.back() = static_cast<char>(0xc1);
  CHECK_THROWS_AS(deserialize(*g, padded), CodeError);
  auto bad_radius = bytes;
  bad_radius[1] = 0;
  CHECK_THROWS_AS(deserialize(*g, bad_radius), CodeError);

  auto code = encode_range(*g, oracle::interval(0, 4), z(0), 1);
  code.center_index[0] = 2;
  CHECK_THROWS_AS(decode_range(*g, code), CodeError);
  code = encode_range(*g, oracle::interval(0, 4), z(0), 1);
  code.membership.pop_back();
  CHECK_THROWS_AS(decode_range(*g, code), CodeError);
  code = encode_range(*g, oracle::interval(0, 4), z(0), 1);
  code.membership[0].push_back(true);
  CHECK_THROWS_AS(decode_range(*g, code), CodeError);
}

TEST_CASE("covering constants") {
  const auto z1 = make_graph("lattice:1");
  const auto c = cover_constants(*z1, 1, {});
  CHECK(c.s_r == 2);
  CHECK(c.b_r == 3);
  CHECK(code_length_bound(3, 2, c) == doctest::Approx(12 * std::log(2.0)));
  CHECK(code_length_bound(1, 0, c) == doctest::Approx(2 * std::log(2.0)));
  const auto t = make_graph("tree");
  const auto ct = cover_constants(*t, 2, {t->origin()});
  CHECK(ct.s_r == 8);
  CHECK(ct.b_r == 7);
  CHECK(code_length_bound(2, 1, ct) > code_length_bound(1, 1, ct));
  CHECK(code_length_bound(2, 2, ct) > code_length_bound(2, 1, ct));
}

TEST_CASE("property test: sampled ranges cover and round-trip within the bounds") {
  for (const auto* name : {"lattice:1", "lattice:2", "lattice:3", "tree", "finite-tree:4", "stretched",
                           "concatenated:4,16,256", "path:6", "cycle:7", "star:4"}) {
    CAPTURE(name);
    const auto g = make_graph(name);
    const auto ranges = sample_ranges(*g, g->origin(), 40, 1000, 13);
    for (std::uint32_t r : {1u, 2u, 4u}) {
      CAPTURE(r);
      bool covered = true, k_bound = true, round_trip = true, length = true, steps = true;
      for (const auto& a : ranges) {
        const auto cover = f_r(*g, a, g->origin(), r);
        std::vector<VertexId> all;
        for (const auto& x : cover.centers) {
          const auto b = ball(*g, x, r);
          all.insert(all.end(), b.begin(), b.end());
        }
        covered = covered && a.is_subset_of(VertexSet(all)) && cover.centers.front() == g->origin();
        k_bound = k_bound && cover.k() <= 1 + 2 * a.size() / r;
        for (std::size_t i = 1; i < cover.centers.size(); ++i) {
          steps = steps && sphere(*g, cover.centers[i - 1], r).contains(cover.centers[i]);
        }
        const auto code = encode_range(*g, a, g->origin(), r, 40);
        round_trip = round_trip && decode_range(*g, deserialize(*g, serialize(*g, code))) == a;
        const auto c = cover_constants(*g, r, cover.centers);
        length = length && code.length_nats() <= code_length_bound(cover.k(), cover.l(), c) + std::log(41.0);
      }
      CHECK(covered);
      CHECK(k_bound);
      CHECK(steps);
      CHECK(round_trip);
      CHECK(length);
    }
  }
}

TEST_CASE("ent(R_n given K and L) is below the counting bound under the exact law") {
  for (const auto* name : {"lattice:1", "lattice:2", "tree"}) {
    CAPTURE(name);
    const auto g = make_graph(name);
    for (unsigned n : {4u, 8u}) {
      const auto d = exact_range_distribution(g, g->origin(), n);
      for (std::uint32_t r : {1u, 2u}) {
        std::vector<CoverSequence> covers;
        std::vector<VertexId> centers;
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
        CHECK(h <= class_support_bound(classes) + 1e-12);
        CHECK(class_support_bound(classes) <= bound + 1e-12);
      }
    }
  }
}
