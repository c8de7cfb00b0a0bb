#include <doctest.h>

#include <random>

#include "circov/errors.hpp"
#include "circov/oracle.hpp"
#include "support.hpp"

using namespace circov;
using testing::S;

TEST_SUITE("oracle") {
  TEST_CASE("cover enumeration") {
    CHECK(oracle::enumerate_covers(CirculantInstance(4, 2)).size() == 7);
    CHECK(oracle::min_cover_size(CirculantInstance(12, 3)) == 4);
    for (int n = 4; n <= 16; ++n)
      for (int k = 2; k <= n - 2; ++k)
        CHECK(oracle::min_cover_size(CirculantInstance(n, k)) == covering_number(CirculantInstance(n, k)).value);
    CHECK_THROWS_AS(oracle::enumerate_covers(CirculantInstance(30, 3)), BudgetExceeded);
  }

  TEST_CASE("nine minors of C_9^4 by exhaustive contraction") {
    auto found = oracle::discover_minors_exhaustive(CirculantInstance(9, 4));
    std::vector<IndexSet> seven_three;
    for (const auto& m : found)
      if (m.n_prime == 7 && m.k_prime == 3) seven_three.push_back(m.N);
    REQUIRE(seven_three.size() == 9);
    for (int i = 0; i < 9; ++i) CHECK(std::find(seven_three.begin(), seven_three.end(), S(9, {i, (i + 4) % 9})) != seven_three.end());
  }

  TEST_CASE("dicycle listing agrees with exhaustive contraction") {
    for (int n = 6; n <= 11; ++n)
      for (int k = 2; k <= n - 2; ++k) {
        CirculantInstance inst(n, k);
        std::vector<IndexSet> a, b;
        for (const auto& m : oracle::discover_minors_exhaustive(inst)) a.push_back(m.N);
        for (const auto& m : oracle::minors_from_dicycles(inst)) b.push_back(m.contracted_set());
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
      }
  }

  TEST_CASE("W families by subset testing") {
    auto w = oracle::enumerate_W_sets(CirculantInstance(12, 3), 1, 1);
    CHECK(w == std::vector<IndexSet>{S(12, {0, 4, 8}), S(12, {1, 5, 9}), S(12, {2, 6, 10}), S(12, {3, 7, 11})});
    CHECK_THROWS_AS(oracle::enumerate_W_sets(CirculantInstance(12, 3), 1, 2), InvalidArgument);
  }

  TEST_CASE("random points stay in the unit box") {
    std::mt19937_64 rng(3);
    CirculantInstance inst(13, 4);
    for (int t = 0; t < 50; ++t) {
      auto x = oracle::random_point(inst, rng);
      REQUIRE(x.size() == 13);
      for (const auto& v : x) CHECK((v >= 0 && v <= 1));
    }
  }
}
