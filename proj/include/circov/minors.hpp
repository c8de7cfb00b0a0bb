#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "circov/core.hpp"

namespace circov {

/// Parameters of a circulant minor C_n^k / N ~ C_{n'}^{k'}: N splits into d
/// disjoint simple dicycles of G(C_n^k), each winding n1 times around Z_n with
/// n2 arcs of length k and n3 arcs of length k+1.
struct MinorParams {
  int d = 0;
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  int n_prime = 0;
  int k_prime = 0;
  int r = 0;  ///< n_prime mod k_prime

  friend bool operator==(const MinorParams&, const MinorParams&) = default;
};

struct CirculantMinor {
  IndexSet W;
  std::vector<IndexSet> cycles;     ///< N^0 .. N^{d-1}, ordered by their first W element
  /// W^j: heads of the length-(k+1) arcs of N^j. When n1 = 1 this is
  /// {i in N^j : i-(k+1) in N^j}; for n1 >= 2 a cycle may carry a chord of
  /// length k+1 that is not one of its arcs.
  std::vector<IndexSet> w_classes;
  MinorParams params;

  /// N = union of the cycles.
  IndexSet contracted_set() const;
};

using ResidueTuple = std::vector<int>;

struct Arc {
  int head;
  int length;
};

/// G(C_n^k): arcs i -> i+k (length k) and i -> i+k+1 (length k+1).
std::vector<std::vector<Arc>> build_G(const CirculantInstance& inst);

/// n1*n = k*n2 + (k+1)*n3 and gcd(n1, n2, n3) = 1.
bool params_exist(int n, int k, int n1, int n2, int n3);

/// Walks backwards from each element of W (k+1 when the current node is in W,
/// k otherwise) to recover the dicycles N^j, then checks every structural
/// invariant of a minor. Throws MalformedW naming the failing walk.
CirculantMinor reconstruct_cycles_from_W(const CirculantInstance& inst, const IndexSet& W);

struct ValidateOptions {
  bool check_isomorphism = true;
  /// The contraction check is skipped for instances with more columns.
  int isomorphism_max_n = 200;
};

/// reconstruct_cycles_from_W plus an end-to-end check that C_n^k / N really is
/// C_{n'}^{k'}. Throws IsomorphismMismatch if it is not.
CirculantMinor validate_minor(const CirculantInstance& inst, const IndexSet& W,
                              const ValidateOptions& options = {});

/// Cyclic consecutive differences of W, the last one wrapping through n.
std::vector<int> deltas(const IndexSet& W);

/// True iff every cyclic difference of W is 1 mod k and at least k+1, which
/// characterizes minors with d = n1 = 1.
bool check_condW_d1(const CirculantInstance& inst, const IndexSet& W);

/// All a in Z_k^d with sum(a) = 1 (mod k), sum(a) >= k+1, and every
/// contiguous zero-sum block equal to a_j..a_{j+d-2} with j in {0, 1}.
std::vector<ResidueTuple> residue_tuples(int d, int k);

bool in_residue_set(const ResidueTuple& a, int k);

/// Residue-tuple test: the witnessing tuple a with a_j = delta_{j+td} (mod k),
/// and delta_{j+td} = 1 whenever a_j = 1. Sets with n3 = 1 are rejected since
/// their minors are never relevant.
std::optional<ResidueTuple> is_alternated(const CirculantInstance& inst, const IndexSet& W, int d);

/// Definition-based test: W must define a minor with n1 = 1 and d dicycles whose
/// W-classes are the index classes {i_{j+td}} of sorted W, with n3 >= 2.
bool is_alternated_by_definition(const CirculantInstance& inst, const IndexSet& W, int d);

struct MinorQuery {
  int d = 1;
  /// Keep only minors with n3 = r (mod k-d). Requires 1 <= r < k-d when set.
  std::optional<int> r;
  /// d >= 2 only; every d = 1 minor counts as alternated.
  bool only_alternated = false;
  int max_n = 40;
};

/// Every W with n1 = 1 and the requested d (and residue), by backtracking over
/// the difference constraints of single dicycles and combining disjoint ones.
void for_each_minor(const CirculantInstance& inst, const MinorQuery& query,
                    const std::function<void(const CirculantMinor&)>& visit);
std::vector<CirculantMinor> enumerate_minors(const CirculantInstance& inst, const MinorQuery& query);

/// All minors with n1 = 1 and any d.
std::vector<CirculantMinor> enumerate_all_n1_minors(const CirculantInstance& inst, int max_n = 40);

}  // namespace circov
