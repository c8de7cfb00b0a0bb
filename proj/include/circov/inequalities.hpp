#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "circov/core.hpp"
#include "circov/minors.hpp"
#include "circov/rational.hpp"

namespace circov {

/// coefficients . x >= rhs over variables indexed by Z_n.
struct LinearInequality {
  RationalVector coefficients;
  Rational rhs;

  int dimension() const { return static_cast<int>(coefficients.size()); }
  Rational lhs(std::span<const Rational> x) const;
  Rational lhs(const IndexSet& x) const;
  /// rhs - lhs(x); positive iff x violates the inequality.
  Rational violation(std::span<const Rational> x) const { return rhs - lhs(x); }
  bool satisfied_by(const IndexSet& x) const { return lhs(x) >= rhs; }

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

/// 2 on W, 1 elsewhere, rhs ceil(n'/k').
LinearInequality minor_inequality(const CirculantInstance& inst, const CirculantMinor& minor);

/// Sum of the rows of C_n^k outside R(N). Every column must end up with
/// k'+1 ones on W and k' elsewhere; ColumnCountMismatch otherwise. The rhs is
/// the number of surviving rows, n'.
LinearInequality cg_derivation(const CirculantInstance& inst, const CirculantMinor& minor);

/// Divide by a positive integer and round every entry up.
LinearInequality round_up_divided(const LinearInequality& ineq, long divisor);

/// sum x >= ceil(n/k).
LinearInequality rank_inequality(const CirculantInstance& inst);
/// sum_{j in C^i} x_j >= 1.
LinearInequality row_inequality(const CirculantInstance& inst, int i);

/// n' != 0 (mod k') and d*n3 >= k*r, r = n' mod k'. Cross-checked against
/// ceil(n'/k') > ceil(n/k); a disagreement raises InternalInvariant.
bool is_relevant(const CirculantInstance& inst, const MinorParams& params);

/// Sufficient facet condition: relevant and n' = 1 (mod k').
bool facet_condition(const CirculantInstance& inst, const MinorParams& params);

struct AlphaBeta {
  Rational alpha;  ///< n/k - r/(k-d) + 1
  Rational beta;   ///< 1/(k(k-d))
};

/// For minors with n1 = 1, d dicycles and n3 = r (mod k-d) the right-hand side
/// ceil(n'/k') equals alpha + beta*|W|. Requires 1 <= d <= k-2, 1 <= r < k-d.
AlphaBeta alpha_beta_form(const CirculantInstance& inst, int d, int r);

/// n tight covers of the minor inequality: n' lifted minimum covers of the
/// minor plus one cover z^i for each i in N. Requires facet_condition. Every
/// root is checked to be a tight cover; ConstructionFailure names the i whose
/// root failed.
std::vector<IndexSet> generate_facet_roots(const CirculantInstance& inst, const CirculantMinor& minor);

struct RankVerdict {
  bool facet = false;
  int roots_found = 0;  ///< covers tight at the inequality
  int rank = 0;         ///< rational rank of those covers
};

/// Enumerates every cover; throws InvalidInequality if one violates ineq.
/// The face is a facet iff the tight covers have rank n (rhs > 0, so the
/// face misses the origin and linear and affine rank agree).
RankVerdict is_facet_by_rank(const CirculantInstance& inst, const LinearInequality& ineq, int max_n = 18);

struct FacetReport {
  LinearInequality inequality;
  bool valid = true;
  bool relevant = false;
  bool facet_by_theorem = false;
  std::optional<bool> facet_by_rank;
  int roots_found = 0;
};

/// Theorem-based classification, plus the brute-force rank verdict when
/// n <= rank_max_n.
FacetReport classify_minor(const CirculantInstance& inst, const CirculantMinor& minor, int rank_max_n = 0);

struct R1Reduction {
  MinorParams params;                    ///< parameters of the reduced minor
  std::optional<CirculantMinor> minor;   ///< concrete W' (only for d = n1 = 1)
};

/// For a relevant minor with r = n' mod k' >= 2: a minor with the same k',
/// n'' = 1 (mod k') and the same ceil(n''/k'). For d = n1 = 1 the first
/// |W| - k(r-1) elements of W give it; otherwise only its parameters are known.
R1Reduction reduce_to_r1(const CirculantInstance& inst, const CirculantMinor& minor);

enum class ConjectureVerdict { kFound, kNotFound, kPremiseTrivial };

struct ConjectureRecord {
  ConjectureVerdict verdict = ConjectureVerdict::kNotFound;
  std::optional<CirculantMinor> witness;
  std::uint64_t subsets_examined = 0;
};

/// Searches proper subsets W' of W (largest first) for a relevant minor with
/// the same k', n'' = 1 (mod k') and ceil(n''/k') >= ceil(n'/k'). A minor
/// with r = 1 is reported as premise-trivial without searching.
ConjectureRecord conjecture_resto1_check(const CirculantInstance& inst, const CirculantMinor& minor,
                                         int max_w_size = 24);

const char* to_string(ConjectureVerdict v);

}  // namespace circov
