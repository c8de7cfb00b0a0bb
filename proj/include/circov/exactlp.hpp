#pragma once

#include <optional>
#include <vector>

#include "circov/core.hpp"
#include "circov/inequalities.hpp"
#include "circov/rational.hpp"
#include "circov/separation.hpp"

namespace circov {

/// min objective . x  s.t.  rows (all >=),  0 <= x <= 1.
struct LpProblem {
  RationalVector objective;
  std::vector<LinearInequality> rows;
};

struct LpSolution {
  Rational value;
  RationalVector x;
  int pivots = 0;
};

/// Exact optimum. Negative-cost variables are complemented so that the dual
/// starts feasible at the origin; the dual is then solved with Bland's rule and
/// the primal point is read off the objective row. The point is checked
/// against every constraint before it is returned. Throws Infeasible.
LpSolution simplex_min(const LpProblem& problem);

/// The relaxation Q(C_n^k): one row inequality per row of the matrix.
LpProblem covering_relaxation(const CirculantInstance& inst, RationalVector objective);

struct IpSolution {
  Rational value;
  IndexSet cover;
};

/// Minimum-weight cover by depth-first search over gaps (k down to 1) from a
/// first element in [0, k-1]. The first optimum found is kept, so unit weights
/// give {0, k, 2k, ...}.
IpSolution ip_opt_bruteforce(const CirculantInstance& inst, std::span<const Rational> objective, int max_n = 20);

struct CuttingPlaneConfig {
  int max_rounds = 50;
  int max_cuts_per_round = 10;
  int ip_max_n = 20;  ///< the exact optimum is computed for n up to this
  SeparateAllOptions separators;
};

struct CuttingPlaneRound {
  Rational lp_value;
  RationalVector point;
  std::vector<SeparationResult> cuts_added;
};

struct CuttingPlaneReport {
  std::vector<CuttingPlaneRound> rounds;
  Rational lp_value;
  RationalVector point;
  bool converged = false;  ///< the last optimum violated no separated inequality
  std::optional<Rational> ip_value;
  std::optional<IndexSet> ip_cover;
  std::optional<Rational> gap;  ///< ip_value - lp_value
};

/// Solves Q(C_n^k), separates the optimum with separate_all, adds the most
/// violated new cuts and repeats. Raises InternalInvariant if the bound ever
/// decreases or an added cut is not violated.
CuttingPlaneReport cutting_plane(const CirculantInstance& inst, const RationalVector& objective,
                                 const CuttingPlaneConfig& config = {});

}  // namespace circov
