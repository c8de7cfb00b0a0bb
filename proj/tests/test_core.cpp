#include <doctest.h>

#include "circov/core.hpp"
#include "circov/errors.hpp"
#include "circov/oracle.hpp"
#include "support.hpp"

using namespace circov;
using testing::S;

TEST_SUITE("core") {
  TEST_CASE("instance range") {
    CHECK_NOTHROW(CirculantInstance(4, 2));
    CHECK_THROWS_AS(CirculantInstance(5, 4), InvalidArgument);
    CHECK_THROWS_AS(CirculantInstance(5, 1), InvalidArgument);
    CHECK(mod(-1, 9) == 8);
    CHECK(CirculantInstance(9, 4).wrap(13) == 4);
  }

  TEST_CASE("index sets are sorted and duplicate free") {
    IndexSet s(9, {8, 1, 8, 3});
    CHECK(s.elements() == std::vector<int>{1, 3, 8});
    CHECK(s.rotated(2) == S(9, {1, 3, 5}));
    CHECK_THROWS_AS(IndexSet(9, {9}), InvalidArgument);
    CHECK(s.to_string() == "{1,3,8}");
    CHECK(S(9, {1, 2}).set_union(S(9, {2, 5})) == S(9, {1, 2, 5}));
    CHECK(S(9, {1, 2, 5}).set_difference(S(9, {2})) == S(9, {1, 5}));
    CHECK(S(9, {1, 5}).is_subset_of(S(9, {1, 2, 5})));
  }

  TEST_CASE("row support wraps") {
    CHECK(row_support(CirculantInstance(9, 4), 7) == S(9, {0, 1, 7, 8}));
    CHECK(row_support(CirculantInstance(12, 3), 0) == S(12, {0, 1, 2}));
    CHECK(row_support(CirculantInstance(9, 4), 5) == S(9, {5, 6, 7, 8}));
  }

  TEST_CASE("covers") {
    CHECK(is_cover(CirculantInstance(12, 3), S(12, {0, 3, 6, 9})));
    CHECK_FALSE(is_cover(CirculantInstance(12, 3), S(12, {0, 4, 8})));
    CHECK(is_cover(CirculantInstance(9, 4), S(9, {0, 4, 8})));
    CHECK_FALSE(is_cover(CirculantInstance(9, 4), IndexSet(9)));
  }

  TEST_CASE("gap criterion agrees with the matrix product") {
    for (int n = 4; n <= 12; ++n)
      for (int k = 2; k <= n - 2; ++k) {
        CirculantInstance inst(n, k);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
          IndexSet x = IndexSet::from_mask(n, m);
          REQUIRE(is_cover(inst, x) == is_cover_direct(inst, x));
        }
      }
  }

  TEST_CASE("covering number") {
    CHECK(covering_number(CirculantInstance(12, 3)).value == 4);
    CHECK(covering_number(CirculantInstance(9, 4)).value == 3);
    CHECK(covering_number(CirculantInstance(4, 2)).value == 2);
    for (int n = 4; n <= 16; ++n)
      for (int k = 2; k <= n - 2; ++k) {
        CirculantInstance inst(n, k);
        auto tau = covering_number(inst);
        CHECK(is_cover(inst, tau.witness));
        CHECK(tau.witness.size() == tau.value);
      }
  }

  TEST_CASE("canonical minimum covers") {
    CHECK(canonical_min_cover(CirculantInstance(12, 3), 0) == S(12, {0, 3, 6, 9}));
    CHECK(canonical_min_cover(CirculantInstance(9, 4), 0) == S(9, {0, 4, 8}));
    CHECK(canonical_min_cover(CirculantInstance(9, 4), 2) == S(9, {1, 2, 6}));
  }

  TEST_CASE("dominating rows after contraction") {
    CHECK(dominating_rows(CirculantInstance(9, 4), S(9, {0, 4})) == S(9, {1, 5}));
    CHECK(dominating_rows(CirculantInstance(12, 3), IndexSet(12)).empty());
    CHECK(dominating_rows(CirculantInstance(12, 3), S(12, {0, 4, 8})) == S(12, {1, 5, 9}));
  }

  TEST_CASE("contraction and circulant recognition") {
    CirculantInstance c94(9, 4);
    BinaryMatrix m = contract(c94, S(9, {0, 4}));
    CHECK(m.num_rows() == 7);
    CHECK(m.num_cols() == 7);
    CHECK(is_circulant_isomorphic(m) == std::pair{7, 3});
    CHECK_FALSE(m.has_zero_column());
    CHECK_FALSE(m.has_dominating_row());

    CirculantInstance c123(12, 3);
    CHECK(is_circulant_isomorphic(contract(c123, IndexSet(12))) == std::pair{12, 3});
    CHECK(is_circulant_isomorphic(contract(c123, S(12, {0, 4, 8}))) == std::pair{9, 2});
    CHECK(is_circulant_isomorphic(circulant_matrix(c123)) == std::pair{12, 3});

    BinaryMatrix ones;
    ones.rows.assign(3, std::vector<std::uint8_t>(3, 1));
    ones.row_labels = {0, 1, 2};
    ones.col_labels = {0, 1, 2};
    CHECK_FALSE(is_circulant_isomorphic(ones).has_value());
  }

  TEST_CASE("cycle domination instances") {
    CHECK(cycle_domination_instance(12) == CirculantInstance(12, 3));
    CHECK(cycle_domination_instance(5) == CirculantInstance(5, 3));
    CHECK(cycle_domination_instance(9, 2) == CirculantInstance(9, 5));
  }
}
