#include <doctest.h>

#include <random>

#include "circov/errors.hpp"
#include "circov/exactlp.hpp"
#include "circov/oracle.hpp"
#include "support.hpp"

using namespace circov;
using testing::S;

TEST_SUITE("exactlp") {
  TEST_CASE("covering relaxations") {
    CirculantInstance c123(12, 3);
    auto s = simplex_min(covering_relaxation(c123, RationalVector(12, Rational(1))));
    CHECK(s.value == 4);
    CirculantInstance c83(8, 3);
    auto lp = covering_relaxation(c83, RationalVector(8, Rational(1)));
    CHECK(simplex_min(lp).value == ratio(8, 3));
    lp.rows.push_back(rank_inequality(c83));
    CHECK(simplex_min(lp).value == 3);
  }

  TEST_CASE("infeasible and degenerate problems") {
    LpProblem bad;
    bad.objective = testing::Q({"1", "1"});
    bad.rows.push_back({testing::Q({"1", "1"}), 3});
    CHECK_THROWS_AS(simplex_min(bad), Infeasible);

    LpProblem zero;
    zero.objective = RationalVector(2);
    zero.rows.push_back({testing::Q({"1", "1"}), 1});
    CHECK(simplex_min(zero).value == 0);

    LpProblem negative;
    negative.objective = testing::Q({"-1", "2"});
    negative.rows.push_back({testing::Q({"1", "1"}), 1});
    auto s = simplex_min(negative);
    CHECK(s.value == -1);
    CHECK(s.x == testing::Q({"1", "0"}));
    CHECK_THROWS_AS(simplex_min({testing::Q({"1"}), {{testing::Q({"1", "1"}), 1}}}), InvalidArgument);
  }

  TEST_CASE("exact integer optimum") {
    auto a = ip_opt_bruteforce(CirculantInstance(12, 3), RationalVector(12, Rational(1)));
    CHECK(a.value == 4);
    CHECK(a.cover == S(12, {0, 3, 6, 9}));
    auto b = ip_opt_bruteforce(CirculantInstance(4, 2), RationalVector(4, Rational(1)));
    CHECK(b.value == 2);
    CHECK(b.cover == S(4, {0, 2}));
    auto c = ip_opt_bruteforce(CirculantInstance(9, 4), RationalVector(9, Rational(1)));
    CHECK(c.value == 3);
    CHECK(c.cover == S(9, {0, 4, 8}));
    CHECK_THROWS_AS(ip_opt_bruteforce(CirculantInstance(21, 3), RationalVector(21, Rational(1))), BudgetExceeded);
  }

  TEST_CASE("LP bounds the integer optimum and is exact when integral") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 150; ++t) {
      const int n = 6 + static_cast<int>(rng() % 8);
      const int k = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 3));
      CirculantInstance inst(n, k);
      RationalVector w(static_cast<size_t>(n));
      for (auto& v : w) v = ratio(static_cast<long>(rng() % 11) - 3, 1 + static_cast<long>(rng() % 3));
      auto lp = simplex_min(covering_relaxation(inst, w));
      auto ip = ip_opt_bruteforce(inst, w);
      CHECK(lp.value <= ip.value);
      bool integral = std::all_of(lp.x.begin(), lp.x.end(), [](const Rational& v) { return v == 0 || v == 1; });
      if (integral) CHECK(lp.value == ip.value);
      Rational best;
      bool first = true;
      oracle::for_each_cover(inst, [&](const IndexSet& x) {
        Rational v = 0;
        for (int i : x) v += w[static_cast<size_t>(i)];
        if (first || v < best) best = v;
        first = false;
      });
      CHECK(ip.value == best);
    }
  }

  TEST_CASE("cutting plane on C_8^3") {
    auto rep = cutting_plane(CirculantInstance(8, 3), RationalVector(8, Rational(1)));
    REQUIRE(rep.rounds.size() == 2);
    CHECK(rep.rounds[0].lp_value == ratio(8, 3));
    CHECK(rep.rounds[1].lp_value == 3);
    CHECK(rep.converged);
    CHECK(*rep.ip_value == 3);
    CHECK(*rep.gap == 0);
  }

  TEST_CASE("zero objective") {
    auto rep = cutting_plane(CirculantInstance(9, 4), RationalVector(9));
    CHECK(rep.lp_value == 0);
  }

  TEST_CASE("cut trajectory") {
    std::mt19937_64 rng(9);
    for (auto [n, k] : {std::pair{11, 4}, {13, 5}, {14, 4}}) {
      CirculantInstance inst(n, k);
      auto covers = oracle::enumerate_covers(inst);
      for (int t = 0; t < 5; ++t) {
        RationalVector w(static_cast<size_t>(n));
        for (auto& v : w) v = static_cast<long>(1 + rng() % 10);
        auto rep = cutting_plane(inst, w);
        for (size_t i = 0; i < rep.rounds.size(); ++i) {
          if (i > 0) CHECK(rep.rounds[i].lp_value >= rep.rounds[i - 1].lp_value);
          for (const auto& cut : rep.rounds[i].cuts_added) {
            CHECK(cut.inequality.violation(rep.rounds[i].point) > 0);
            for (const auto& c : covers) REQUIRE(cut.inequality.satisfied_by(c));
          }
        }
        CHECK(rep.lp_value <= *rep.ip_value);
      }
    }
  }
}
