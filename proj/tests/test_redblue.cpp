#include <doctest.h>

#include "redkit/gen.hpp"
#include "redkit/json_io.hpp"
#include "redkit/redblue.hpp"
#include "redkit/verify.hpp"

using namespace redkit;

namespace {

// naive walk enumeration oracle
Int naive_blue_walks(const RedBlueGraph& g, uint32_t ell) {
  Int total = 0;
  std::vector<uint32_t> walk;
  auto rec = [&](auto&& self) -> void {
    if (walk.size() == ell + 1) {
      ++total;
      return;
    }
    for (uint32_t v = 0; v < g.k(); ++v) {
      if (!walk.empty() && !g.blue(walk.back(), v)) continue;
      walk.push_back(v);
      self(self);
      walk.pop_back();
    }
  };
  rec(rec);
  return total;
}

// filter-based red-filled oracle: all blue ell-walks u->v, then filter
std::vector<std::vector<uint32_t>> naive_red_filled(const RedBlueGraph& g,
                                                    uint32_t ell, uint32_t u,
                                                    uint32_t v) {
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> walk{u};
  auto rec = [&](auto&& self) -> void {
    if (walk.size() == ell + 1) {
      if (walk.back() != v) return;
      for (size_t i = 0; i < walk.size(); ++i)
        for (size_t j = i + 2; j < walk.size(); ++j)
          if (!g.red(walk[i], walk[j])) return;
      out.push_back(walk);
      return;
    }
    for (uint32_t w = 0; w < g.k(); ++w) {
      if (!g.blue(walk.back(), w)) continue;
      walk.push_back(w);
      self(self);
      walk.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace

TEST_CASE("graph invariants") {
  RedBlueGraph g(3);
  g.add_blue(0, 1);
  CHECK_THROWS_AS(g.add_red(0, 1), Error);   // disjoint edge sets
  CHECK_THROWS_AS(g.add_blue(1, 1), Error);  // no self loops
  g.add_red(0, 2);
  CHECK(g.blue_edge_count() == 1);
  CHECK(g.red_edge_count() == 1);
  CHECK(g.blue(1, 0));
}

TEST_CASE("count_blue_walks small cases") {
  RedBlueGraph g(2);
  g.add_blue(0, 1);
  CHECK(count_blue_walks(g, 2) == 2);  // (a,b,a) and (b,a,b)

  RedBlueGraph k5(5);
  for (uint32_t u = 0; u < 5; ++u)
    for (uint32_t v = u + 1; v < 5; ++v) k5.add_blue(u, v);
  CHECK(count_blue_walks(k5, 1) == 5 * 4);
}

TEST_CASE("count_blue_walks matches naive enumeration") {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    RedBlueGraph g = gen::random_redblue(7, 0.5, 0.5, seed);
    CHECK(count_blue_walks(g, 3) == naive_blue_walks(g, 3));
  }
}

TEST_CASE("red-filled enumeration examples") {
  RedBlueGraph none(4);
  none.add_blue(0, 1);
  none.add_blue(1, 2);
  CHECK(enumerate_red_filled(none, 2, 0, 2).empty());  // endpoints not red

  RedBlueGraph tri(3);  // the rbb triangle
  tri.add_blue(0, 1);
  tri.add_blue(1, 2);
  tri.add_red(0, 2);
  auto walks = enumerate_red_filled(tri, 2, 0, 2);
  REQUIRE(walks.size() == 1);
  CHECK(walks[0] == std::vector<uint32_t>{0, 1, 2});

  // blue path a-b-c-d-e with all non-consecutive pairs red
  RedBlueGraph path(5);
  for (uint32_t i = 0; i + 1 < 5; ++i) path.add_blue(i, i + 1);
  for (uint32_t i = 0; i < 5; ++i)
    for (uint32_t j = i + 2; j < 5; ++j) path.add_red(i, j);
  auto w4 = enumerate_red_filled(path, 4, 0, 4);
  bool has_path = false;
  for (auto& w : w4) has_path |= w == std::vector<uint32_t>{0, 1, 2, 3, 4};
  CHECK(has_path);
  CHECK(w4.size() == naive_red_filled(path, 4, 0, 4).size());
}

TEST_CASE("red-filled enumeration matches the filter oracle") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    RedBlueGraph g = gen::random_redblue(7, 0.6, 0.7, seed);
    for (auto [u, v] : g.red_edges()) {
      CHECK(enumerate_red_filled(g, 3, u, v).size() ==
            naive_red_filled(g, 3, u, v).size());
      CHECK(count_red_filled(g, 3, u, v) ==
            Int(naive_red_filled(g, 3, u, v).size()));
    }
  }
}

TEST_CASE("check_transitivity") {
  RedBlueGraph no_red(4);
  no_red.add_blue(0, 1);
  CHECK(check_transitivity(no_red, Int(0), 2).transitive);

  RedBlueGraph tri(3);
  tri.add_blue(0, 1);
  tri.add_blue(1, 2);
  tri.add_red(0, 2);
  TransitivityResult r = check_transitivity(tri, Int(0), 2);
  CHECK_FALSE(r.transitive);
  CHECK(r.worst_pair == std::pair<uint32_t, uint32_t>{0, 2});
  CHECK(r.worst_count == 1);
  CHECK(check_transitivity(tri, Int(1), 2).transitive);
}

TEST_CASE("walk census consistency and the q*k^2 bound") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    RedBlueGraph g = gen::random_redblue(8, 0.5, 0.6, seed);
    WalkCensus c = walk_census(g, 2);
    Int sum = 0;
    for (auto& [pr, n] : c.per_red_pair) sum += n;
    CHECK(c.red_filled_count == sum);
    TransitivityResult t = check_transitivity(g, Int(0), 2);
    // |W~_ell| <= worst * k^2 and, with q = worst, <= q k^2
    CHECK(c.red_filled_count <= t.worst_count * g.k() * g.k());
  }
}

TEST_CASE("dense threshold formula value") {
  // (1 - q0 k / d0^ell0) / C(ell0,2) at q0=16, ell0=2, k=100, d0=50
  Rat tau = (Rat(1) - Rat(16 * 100) / Rat(int_pow(50, 2))) / Rat(1);
  CHECK(tau == Rat(9, 25));
}

TEST_CASE("find_dense_subgraphs on an all-blue graph") {
  RedBlueGraph g(8);
  for (uint32_t u = 0; u < 8; ++u)
    for (uint32_t v = u + 1; v < 8; ++v) g.add_blue(u, v);
  // |E_b| = 28 >= 2*8*d0 needs d0 <= 1
  DenseSubgraphs ds = find_dense_subgraphs(g, Int(1), 2, 1);
  CHECK(ds.density == Rat(1));
  CHECK(ds.u1 == ds.u2);
  CHECK(ds.u1.size() >= 1);
}

TEST_CASE("find_dense_subgraphs error paths") {
  RedBlueGraph g(4);
  g.add_blue(0, 1);
  CHECK_THROWS_AS(find_dense_subgraphs(g, Int(1), 2, 5), StageFailure);
}

TEST_CASE("surviving blue-walk lower bound") {
  RedBlueGraph g = gen::clique_union_graph(3, 7, 0.3, 0, 4);
  uint32_t d0 = static_cast<uint32_t>(g.blue_edge_count() / (2 * g.k()));
  REQUIRE(d0 >= 1);
  Int q0 = check_transitivity(g, Int(0), 2).worst_count;
  DenseSubgraphs ds = find_dense_subgraphs(g, q0, 2, d0);
  // min blue-degree >= d0 on survivors gives >= survivors * d0^ell walks
  CHECK(count_blue_walks(g, 2) >= ds.surviving_blue_walks_lb);
}

TEST_CASE("dense-subgraph lemma suite (randomized)") {
  verify::SuiteResult r = verify::dense_subgraph_suite(12, 5);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("red/blue graph json round trip") {
  RedBlueGraph g = gen::random_redblue(6, 0.4, 0.5, 9);
  Json j = to_json(g);
  RedBlueGraph back = redblue_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
}
