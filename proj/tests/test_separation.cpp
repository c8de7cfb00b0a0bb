#include <doctest.h>

#include <random>

#include "circov/errors.hpp"
#include "circov/exactlp.hpp"
#include "circov/oracle.hpp"
#include "circov/separation.hpp"
#include "support.hpp"

using namespace circov;
using testing::S;

namespace {

/// Optimum of Q(C_12^3) for the objective 2 on {0,4,8}, 1 elsewhere: the point
/// that violates the W = {0,4,8} inequality the most.
RationalVector worst_point_for_048() {
  CirculantInstance inst(12, 3);
  RationalVector c(12, Rational(1));
  for (int i : {0, 4, 8}) c[static_cast<size_t>(i)] = 2;
  return simplex_min(covering_relaxation(inst, c)).x;
}

}  // namespace

TEST_SUITE("separation") {
  TEST_CASE("normalized weights") {
    CirculantInstance c123(12, 3);
    CHECK(c_d(c123, ratio(1, 3), 1) == ratio(1, 6));
    CHECK(c_d(c123, ratio(1, 6), 1) == 0);
    CHECK(l_dr(c123, RationalVector(12, ratio(1, 3)), 1, 1) == ratio(1, 2));
    CHECK_THROWS_AS(c_d(c123, 0, 2), InvalidArgument);
    CHECK_THROWS_AS(l_dr(c123, RationalVector(12, 0), 1, 2), InvalidArgument);
  }

  TEST_CASE("the single-dicycle graph") {
    CirculantInstance c123(12, 3);
    LayeredDag g = build_K(c123);
    CHECK(g.nodes().size() == 12 * 2 + 1);
    CHECK(count_paths(g) == 1);
    auto path = shortest_path_charged(g, RationalVector(12, 0));
    CHECK(g.positions(path.nodes) == S(12, {0, 4, 8}));
    std::vector<std::tuple<int, int, int>> seen;
    for (int v : path.nodes) {
      if (v == g.sink()) continue;
      const auto& node = g.nodes()[static_cast<size_t>(v)];
      seen.emplace_back(node.layer, node.position, 0);
    }
    CHECK(seen == std::vector<std::tuple<int, int, int>>{{0, 0, 0}, {1, 4, 0}, {0, 8, 0}});

    LayeredDag g20 = build_K(CirculantInstance(20, 4));
    CHECK(g20.nodes().size() == 20 * 3 + 1);
    CHECK_THROWS_AS(build_K(CirculantInstance(6, 2)), InvalidArgument);
  }

  TEST_CASE("arcs move forward") {
    CirculantInstance c294(29, 4);
    LayeredDag g = build_K_dra(c294, 2, 1, {3, 2});
    CHECK(g.nodes().size() == 2 * 3 * 29 + 1);
    CHECK(count_paths(g) >= 2);
    for (const auto& a : g.arcs()) {
      if (a.head == g.sink()) continue;
      CHECK(g.nodes()[static_cast<size_t>(a.head)].position > g.nodes()[static_cast<size_t>(a.tail)].position);
    }
    CHECK_THROWS_AS(build_K_dra(c294, 2, 1, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(build_K_dra(c294, 2, 2, {3, 2}), InvalidArgument);
  }

  TEST_CASE("every path visits each dicycle layer equally often") {
    CirculantInstance inst(33, 6);
    for (int r = 1; r < 4; ++r)
      for (const auto& a : residue_tuples(2, 6)) {
        LayeredDag g = build_K_dra(inst, 2, r, a);
        if (count_paths(g) == 0) continue;
        auto path = shortest_path_charged(g, RationalVector(33, 0));
        int per_layer[2] = {0, 0};
        for (int v : path.nodes)
          if (v != g.sink()) ++per_layer[g.nodes()[static_cast<size_t>(v)].layer];
        CHECK(per_layer[0] == per_layer[1]);
        CHECK(per_layer[0] % (6 - 2) == r);
      }
  }

  TEST_CASE("shortest path basics") {
    CirculantInstance c123(12, 3);
    LayeredDag g = build_K(c123);
    RationalVector w(g.arcs().size(), ratio(1, 6));
    auto p = shortest_path_dag(g, w);
    CHECK(p.value == ratio(1, 2));
    CHECK(p.nodes.front() == g.source());
    CHECK(p.nodes.back() == g.sink());
    CHECK_THROWS_AS(shortest_path_dag(g, RationalVector(1)), InvalidArgument);
    CHECK_THROWS_AS(shortest_path_charged(build_K(CirculantInstance(9, 4)), RationalVector(9)), NoPath);
  }

  TEST_CASE("path counts equal minor counts") {
    for (int n = 6; n <= 14; ++n)
      for (int k = 3; k <= std::min(5, n - 2); ++k) {
        CirculantInstance inst(n, k);
        long expected = 0;
        for (const auto& W : oracle::enumerate_W_sets(inst, 1, 1)) expected += W.contains(0);
        CHECK(count_paths(build_K(inst)) == expected);
      }
    for (int n = 8; n <= 14; ++n)
      for (int k = 4; k <= std::min(7, n - 2); ++k)
        for (int d = 2; d <= k - 2; ++d)
          for (int r = 1; r < k - d; ++r) {
            CirculantInstance inst(n, k);
            auto family = oracle::enumerate_W_sets(inst, d, r);
            for (const auto& a : residue_tuples(d, k)) {
              long expected = 0;
              for (const auto& W : family) {
                if (!W.contains(0)) continue;
                auto delta = deltas(W);
                bool match = true;
                for (int s = 0; s < d; ++s) match = match && delta[static_cast<size_t>(s)] % k == a[static_cast<size_t>(s)];
                expected += match;
              }
              CHECK(count_paths(build_K_dra(inst, d, r, a)) == expected);
            }
          }
  }

  TEST_CASE("separating the worked examples") {
    CirculantInstance c123(12, 3);
    CHECK_FALSE(separate_d1(c123, RationalVector(12, Rational(1))).has_value());
    CHECK_FALSE(separate_d1(c123, RationalVector(12, ratio(1, 3))).has_value());
    RationalVector x = worst_point_for_048();
    CHECK(x == testing::Q({"0", "1/2", "1/2", "1/2", "0", "1/2", "1/2", "1/2", "0", "1/2", "1/2", "1/2"}));
    auto s = separate_d1(c123, x);
    REQUIRE(s.has_value());
    CHECK(s->W == S(12, {0, 4, 8}));
    CHECK(s->violation == ratio(1, 2));
    CHECK(s->inequality.violation(x) == s->violation);
    CHECK_THROWS_AS(separate_d1(c123, RationalVector(5)), InvalidArgument);

    CirculantInstance c336(33, 6);
    for (int r = 1; r < 4; ++r) CHECK_FALSE(separate_alternated(c336, RationalVector(33, Rational(1)), 2, r).has_value());
    CHECK_THROWS_AS(separate_alternated(c336, RationalVector(33, Rational(1)), 2, 4), InvalidArgument);
  }

  TEST_CASE("separate_all") {
    CirculantInstance c123(12, 3);
    CHECK(separate_all(c123, testing::indicator(S(12, {0, 3, 6, 9}))).empty());
    auto low = separate_all(c123, RationalVector(12, ratio(1, 4)));
    CHECK(std::any_of(low.begin(), low.end(), [](const auto& s) { return s.kind == CutKind::kRank; }));
    auto all = separate_all(c123, worst_point_for_048());
    REQUIRE_FALSE(all.empty());
    CHECK(all.front().kind == CutKind::kMinor);
    CHECK(all.front().d == 1);
    CHECK(all.front().W == S(12, {0, 4, 8}));
    for (size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].violation >= all[i].violation);
  }

  TEST_CASE("results do not depend on the thread count") {
    CirculantInstance inst(14, 6);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
      RationalVector x = oracle::random_point(inst, rng);
      SeparateAllOptions one, four;
      four.threads = 4;
      auto a = separate_all(inst, x, one);
      auto b = separate_all(inst, x, four);
      REQUIRE(a.size() == b.size());
      for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].key() == b[i].key());
        CHECK(a[i].violation == b[i].violation);
      }
    }
  }

  TEST_CASE("oracles agree with exhaustive search") {
    std::mt19937_64 rng(2024);
    for (auto [n, k] : {std::pair{12, 3}, {13, 4}, {14, 6}}) {
      CirculantInstance inst(n, k);
      for (int t = 0; t < 40; ++t) {
        RationalVector x = oracle::random_point(inst, rng);
        for (int d = 1; d <= k - 2; ++d)
          for (int r = 1; r < k - d; ++r) {
            if (d == 1 && r != 1) continue;
            auto fast = d == 1 ? separate_d1(inst, x) : separate_alternated(inst, x, d, r);
            auto slow = brute_force_separate(inst, x, d, r);
            REQUIRE(fast.has_value() == slow.has_value());
            if (fast) {
              CHECK(fast->violation == slow->violation);
              CHECK_NOTHROW(validate_minor(inst, fast->W));
            }
          }
      }
    }
  }

  TEST_CASE("rotating the point rotates the witness") {
    CirculantInstance inst(12, 3);
    RationalVector x = worst_point_for_048();
    for (int t = 0; t < 12; ++t) {
      RationalVector y(12);
      for (int i = 0; i < 12; ++i) y[static_cast<size_t>((i + t) % 12)] = x[static_cast<size_t>(i)];
      auto s = separate_d1(inst, y);
      REQUIRE(s.has_value());
      CHECK(s->W == S(12, {0, 4, 8}).rotated(t));
      CHECK(s->violation == ratio(1, 2));
    }
  }

  TEST_CASE("exhaustive search budget") {
    CHECK_THROWS_AS(brute_force_separate(CirculantInstance(20, 3), RationalVector(20), 1, 1), BudgetExceeded);
    CHECK_NOTHROW(brute_force_separate(CirculantInstance(20, 3), RationalVector(20), 1, 1, 20));
  }
}
