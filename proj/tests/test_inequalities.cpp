#include <doctest.h>

#include "circov/errors.hpp"
#include "circov/inequalities.hpp"
#include "circov/oracle.hpp"
#include "support.hpp"

using namespace circov;
using testing::S;

namespace {

CirculantMinor minor_of(int n, int k, std::initializer_list<int> w) {
  return validate_minor(CirculantInstance(n, k), S(n, w));
}

RationalVector coeffs(int n, std::initializer_list<int> twos) {
  RationalVector c(static_cast<size_t>(n), Rational(1));
  for (int i : twos) c[static_cast<size_t>(i)] = 2;
  return c;
}

}  // namespace

TEST_SUITE("inequalities") {
  TEST_CASE("minor inequalities") {
    auto a = minor_inequality(CirculantInstance(12, 3), minor_of(12, 3, {0, 4, 8}));
    CHECK(a.coefficients == coeffs(12, {0, 4, 8}));
    CHECK(a.rhs == 5);
    auto b = minor_inequality(CirculantInstance(9, 4), minor_of(9, 4, {0}));
    CHECK(b.coefficients == coeffs(9, {0}));
    CHECK(b.rhs == 3);
    CHECK(minor_inequality(CirculantInstance(33, 6), minor_of(33, 6, {7, 8, 14, 15, 21, 22})).rhs == 6);
  }

  TEST_CASE("rounded row sums") {
    CirculantInstance c94(9, 4);
    auto cg = cg_derivation(c94, minor_of(9, 4, {0}));
    RationalVector expect(9, Rational(3));
    expect[0] = 4;
    CHECK(cg.coefficients == expect);
    CHECK(cg.rhs == 7);

    CirculantInstance c123(12, 3);
    auto m = minor_of(12, 3, {0, 4, 8});
    auto sum = cg_derivation(c123, m);
    RationalVector expect12(12, Rational(2));
    for (int i : {0, 4, 8}) expect12[static_cast<size_t>(i)] = 3;
    CHECK(sum.coefficients == expect12);
    CHECK(sum.rhs == 9);
    CHECK(round_up_divided(sum, 2) == minor_inequality(c123, m));
  }

  TEST_CASE("relevance") {
    CHECK_FALSE(is_relevant(CirculantInstance(9, 4), minor_of(9, 4, {0}).params));
    CHECK(is_relevant(CirculantInstance(12, 3), minor_of(12, 3, {0, 4, 8}).params));
    CHECK_FALSE(is_relevant(CirculantInstance(33, 6), minor_of(33, 6, {7, 8, 14, 15, 21, 22}).params));
  }

  TEST_CASE("facet condition") {
    CHECK(facet_condition(CirculantInstance(12, 3), minor_of(12, 3, {0, 4, 8}).params));
    CHECK_FALSE(facet_condition(CirculantInstance(9, 4), minor_of(9, 4, {0}).params));
    auto c404 = minor_of(40, 4, {0, 5, 10, 15, 20, 25, 30, 35});
    CHECK(c404.params.n_prime == 32);
    CHECK(c404.params.k_prime == 3);
    CHECK(is_relevant(CirculantInstance(40, 4), c404.params));
    CHECK_FALSE(facet_condition(CirculantInstance(40, 4), c404.params));
  }

  TEST_CASE("alpha and beta") {
    auto ab = alpha_beta_form(CirculantInstance(12, 3), 1, 1);
    CHECK(ab.alpha == ratio(9, 2));
    CHECK(ab.beta == ratio(1, 6));
    CHECK(ab.alpha + 3 * ab.beta == 5);
    auto cd = alpha_beta_form(CirculantInstance(33, 6), 2, 3);
    CHECK(cd.alpha == ratio(23, 4));
    CHECK(cd.beta == ratio(1, 24));
    CHECK(cd.alpha + 6 * cd.beta == 6);
    CHECK_THROWS_AS(alpha_beta_form(CirculantInstance(12, 3), 1, 2), InvalidArgument);
  }

  TEST_CASE("alpha + beta|W| is the right-hand side") {
    for (int n = 6; n <= 24; ++n)
      for (int k = 3; k <= std::min(n - 2, 7); ++k) {
        CirculantInstance inst(n, k);
        for (const auto& m : enumerate_all_n1_minors(inst)) {
          const int d = m.params.d, r = m.params.n3 % (k - d);
          if (r == 0) continue;
          auto ab = alpha_beta_form(inst, d, r);
          CHECK(ab.alpha + ab.beta * m.W.size() == minor_inequality(inst, m).rhs);
        }
      }
  }

  TEST_CASE("facet roots") {
    CirculantInstance c123(12, 3);
    auto m = minor_of(12, 3, {0, 4, 8});
    auto roots = generate_facet_roots(c123, m);
    REQUIRE(roots.size() == 12);
    auto ineq = minor_inequality(c123, m);
    std::vector<RationalVector> rows;
    for (const auto& z : roots) {
      CHECK(is_cover(c123, z));
      CHECK(ineq.lhs(z) == ineq.rhs);
      rows.push_back(testing::indicator(z));
    }
    CHECK(rank_rational(rows) == 12);
    CHECK_THROWS_AS(generate_facet_roots(CirculantInstance(9, 4), minor_of(9, 4, {0})), InvalidArgument);
  }

  TEST_CASE("facets by rank") {
    CirculantInstance c123(12, 3);
    auto v = is_facet_by_rank(c123, minor_inequality(c123, minor_of(12, 3, {0, 4, 8})));
    CHECK(v.facet);
    CHECK(v.rank == 12);
    CirculantInstance c94(9, 4);
    CHECK_FALSE(is_facet_by_rank(c94, minor_inequality(c94, minor_of(9, 4, {0}))).facet);
    CHECK_THROWS_AS(is_facet_by_rank(c94, LinearInequality{RationalVector(9, Rational(1)), 4}), InvalidInequality);
  }

  TEST_CASE("rank constraint is a facet exactly when k does not divide n") {
    for (int n = 4; n <= 16; ++n)
      for (int k = 2; k <= n - 2; ++k) {
        CirculantInstance inst(n, k);
        CHECK(is_facet_by_rank(inst, rank_inequality(inst)).facet == (n % k != 0));
      }
  }

  TEST_CASE("classification report") {
    CirculantInstance c123(12, 3);
    auto rep = classify_minor(c123, minor_of(12, 3, {0, 4, 8}), 16);
    CHECK(rep.valid);
    CHECK(rep.relevant);
    CHECK(rep.facet_by_theorem);
    CHECK(rep.facet_by_rank == true);
    auto quick = classify_minor(c123, minor_of(12, 3, {0, 4, 8}));
    CHECK_FALSE(quick.facet_by_rank.has_value());
  }

  TEST_CASE("reduction to residue one") {
    CirculantInstance c404(40, 4);
    auto red = reduce_to_r1(c404, minor_of(40, 4, {0, 5, 10, 15, 20, 25, 30, 35}));
    CHECK(red.params.n3 == 4);
    CHECK(red.params.n2 == 5);
    CHECK(red.params.n_prime == 31);
    CHECK(red.params.k_prime == 3);
    REQUIRE(red.minor.has_value());
    CHECK(red.minor->W == S(40, {0, 5, 10, 15}));
    CHECK(minor_inequality(c404, *red.minor).rhs == 11);
    CHECK_THROWS_AS(reduce_to_r1(CirculantInstance(12, 3), minor_of(12, 3, {0, 4, 8})), InvalidArgument);
  }

  TEST_CASE("conjecture check") {
    CirculantInstance c404(40, 4);
    auto rec = conjecture_resto1_check(c404, minor_of(40, 4, {0, 5, 10, 15, 20, 25, 30, 35}));
    CHECK(rec.verdict == ConjectureVerdict::kFound);
    REQUIRE(rec.witness.has_value());
    CHECK(rec.witness->params.n_prime % rec.witness->params.k_prime == 1);
    CHECK(rec.witness->W.is_subset_of(S(40, {0, 5, 10, 15, 20, 25, 30, 35})));
    auto trivial = conjecture_resto1_check(CirculantInstance(12, 3), minor_of(12, 3, {0, 4, 8}));
    CHECK(trivial.verdict == ConjectureVerdict::kPremiseTrivial);
  }

  TEST_CASE("every enumerated minor inequality is valid") {
    for (int n = 5; n <= 12; ++n)
      for (int k = 2; k <= n - 2; ++k) {
        CirculantInstance inst(n, k);
        auto covers = oracle::enumerate_covers(inst);
        for (const auto& m : enumerate_all_n1_minors(inst)) {
          auto ineq = minor_inequality(inst, m);
          for (const auto& c : covers) REQUIRE(ineq.satisfied_by(c));
        }
      }
  }
}
