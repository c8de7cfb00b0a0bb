#pragma once

// Brute-force ground truth. Nothing here calls the routines it is used to check:
// covers are enumerated bit by bit, minors are found either by contracting every
// subset or by listing dicycles of G(C_n^k) directly.

#include <cstdint>
#include <functional>
#include <vector>

#include "circov/core.hpp"
#include "circov/minors.hpp"

namespace circov::oracle {

struct EnumerationBudget {
  int max_n = 14;
  std::uint64_t max_subsets = std::uint64_t{1} << 22;
};

/// Every cover of C_n^k, skipping prefixes with k consecutive absent indices.
void for_each_cover(const CirculantInstance& inst, const std::function<void(const IndexSet&)>& visit,
                    const EnumerationBudget& budget = {.max_n = 20});
std::vector<IndexSet> enumerate_covers(const CirculantInstance& inst,
                                       const EnumerationBudget& budget = {.max_n = 20});

/// Minimum cover size by enumeration.
int min_cover_size(const CirculantInstance& inst, const EnumerationBudget& budget = {.max_n = 20});

struct DiscoveredMinor {
  IndexSet N;
  int n_prime;
  int k_prime;
};

/// Contracts every nonempty N with |N| <= n-4 and keeps those whose
/// contraction is circulant with 2 <= k' <= n'-2. Sorted by N.
std::vector<DiscoveredMinor> discover_minors_exhaustive(const CirculantInstance& inst,
                                                        const EnumerationBudget& budget = {});

/// All minors (any n1) straight from the dicycle characterization: every
/// family of d disjoint simple dicycles of G(C_n^k) sharing (n1, n2, n3), with
/// k' = k - d*n1 >= 2 and n' >= k'+2. W collects the heads of the length-(k+1)
/// arcs and is empty when n3 = 0. Sorted by N.
std::vector<CirculantMinor> minors_from_dicycles(const CirculantInstance& inst,
                                               const EnumerationBudget& budget = {.max_n = 16});

/// W(1,1) for d = 1, or the alternated family A(d, r) for d >= 2, by testing
/// every subset of Z_n. Only members with n3 >= (k-d) + r are kept, the range
/// the layered path graphs represent. Sorted.
std::vector<IndexSet> enumerate_W_sets(const CirculantInstance& inst, int d, int r,
                                       const EnumerationBudget& budget = {});

}  // namespace circov::oracle

#include <random>

#include "circov/inequalities.hpp"
#include "circov/rational.hpp"

namespace circov::oracle {

/// Test points in [0,1]^n, drawn from three kinds with equal odds: optimal
/// vertices of Q(C_n^k) for a random positive integer objective; independent
/// coordinates p/q with q <= 2k; and, when targets are given, minimizers over
/// Q(C_n^k) of a randomly perturbed target's coefficients, which tend to
/// violate that target. Without targets the third kind falls back to the first.
RationalVector random_point(const CirculantInstance& inst, std::mt19937_64& rng,
                            std::span<const LinearInequality> targets = {});

}  // namespace circov::oracle
