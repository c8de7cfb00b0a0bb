#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circov/core.hpp"
#include "circov/inequalities.hpp"
#include "circov/minors.hpp"
#include "circov/rational.hpp"

namespace circov {

/// c^d(t) = t - 1/(k(k-d)).
Rational c_d(const CirculantInstance& inst, const Rational& value, int d);
/// L^{d,r}(x) = alpha(d,r) - sum x.
Rational l_dr(const CirculantInstance& inst, std::span<const Rational> point, int d, int r);

/// Acyclic digraph whose source-sink paths spell out sets W containing 0.
/// Every arc charges the point coordinate of one position: the head's position
/// for ordinary arcs, position 0 for arcs into the sink. A path therefore weighs
/// sum_{i in W} c(x_i).
class LayeredDag {
 public:
  struct Node {
    int layer;     ///< inner layer (K_n^k) or dicycle index i (K_n^k(d,r,a))
    int column;    ///< column j of K_n^k(d,r,a); 0 in K_n^k
    int position;  ///< element of Z_n; -1 for the sink
  };
  struct Arc {
    int tail;
    int head;
    int charge;  ///< position whose coordinate weights this arc
  };

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<int>& out_arcs(int node) const { return out_[static_cast<size_t>(node)]; }
  int source() const { return 0; }
  int sink() const { return sink_; }
  int modulus() const { return n_; }
  /// Nodes sorted by position with the sink last; arcs only go forward.
  const std::vector<int>& topological_order() const { return order_; }

  /// W spelled by a source-sink path (positions of its non-sink nodes).
  IndexSet positions(const std::vector<int>& path) const;

 private:
  friend class DagBuilder;
  int n_ = 0;
  int sink_ = -1;
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> order_;
};

/// K_n^k: layers Z_{k-1}; arcs step by l - i = 1 (mod k), l - i >= k+1; sink
/// arcs leave layer 0 from i <= n-(k+1) with n - i = 1 (mod k). Needs k >= 3.
LayeredDag build_K(const CirculantInstance& inst);

/// K_n^k(d,r,a): dicycle layers Z_d, columns Z_{k-d+r}. Positions advance by a
/// residue a_i (mod k), or by exactly one when a_i = 1. After column k-d-1 a
/// path may wrap back to column 0 or run through the r tail columns to the sink.
LayeredDag build_K_dra(const CirculantInstance& inst, int d, int r, const ResidueTuple& a);

struct PathResult {
  Rational value;
  std::vector<int> nodes;  ///< source ... sink
};

/// Minimum weight source-sink path by dynamic programming in topological order.
/// Among optimal paths the one with the lexicographically smallest sequence of
/// (position, layer, column) is returned. Throws NoPath.
PathResult shortest_path_dag(const LayeredDag& dag, std::span<const Rational> arc_weights);
/// Same, with each arc weighted by position_costs[arc.charge].
PathResult shortest_path_charged(const LayeredDag& dag, std::span<const Rational> position_costs);

/// Number of source-sink paths.
BigInt count_paths(const LayeredDag& dag);

enum class CutKind { kRank, kRow, kMinor };
const char* to_string(CutKind kind);

struct SeparationResult {
  CutKind kind = CutKind::kMinor;
  bool violated = false;
  IndexSet W;                  ///< support of the 2-coefficients (minor cuts)
  LinearInequality inequality;
  Rational violation;          ///< rhs - lhs at the separated point
  int row = -1;                ///< row cuts only
  int d = 0;
  int r = 0;
  ResidueTuple a;              ///< residue tuple (d >= 2)
  int rotation = 0;
  std::optional<MinorParams> params;

  /// Identifies the inequality: kind plus W or row.
  std::string key() const;
};

/// One minimum path per rotation j in Z_n, on the point relabelled by
/// x'_i = x_{i+j}; each strictly below L^{1,1}(x) gives a violated minor
/// inequality (deduplicated, sorted by violation then W).
std::vector<SeparationResult> separate_d1_all(const CirculantInstance& inst, std::span<const Rational> point);
/// Most violated inequality of W(1,1), or nothing.
std::optional<SeparationResult> separate_d1(const CirculantInstance& inst, std::span<const Rational> point);

std::vector<SeparationResult> separate_alternated_all(const CirculantInstance& inst,
                                                      std::span<const Rational> point, int d, int r);
/// Most violated inequality of A(d,r), or nothing. Needs 2 <= d <= k-2, 1 <= r < k-d.
std::optional<SeparationResult> separate_alternated(const CirculantInstance& inst,
                                                    std::span<const Rational> point, int d, int r);

struct SeparateAllOptions {
  bool rows = true;
  bool rank = true;
  bool d1 = true;
  bool alternated = true;
  int threads = 1;  ///< worker threads for the independent graph scans
};

/// Rank constraint, rows of C_n^k, W(1,1), and A(d,r) for every legal (d,r).
/// Sorted by violation (descending), then W, then row.
std::vector<SeparationResult> separate_all(const CirculantInstance& inst, std::span<const Rational> point,
                                           const SeparateAllOptions& options = {});

/// Exhaustive counterpart of separate_d1 (d = 1) and separate_alternated
/// (d >= 2) over the minors listed by enumerate_minors.
std::optional<SeparationResult> brute_force_separate(const CirculantInstance& inst,
                                                     std::span<const Rational> point, int d, int r,
                                                     int max_n = 14);

}  // namespace circov
