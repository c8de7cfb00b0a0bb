#include "circov/exactlp.hpp"

#include <functional>
#include <set>

#include "circov/errors.hpp"

namespace circov {

namespace {

using Tableau = std::vector<RationalVector>;

void pivot(Tableau& t, RationalVector& cost, Rational& value, size_t row, size_t col) {
  RationalVector& pr = t[row];
  const Rational p = pr[col];
  for (auto& v : pr) {
    if (sgn(v) != 0) v /= p;
  }
  Rational f;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i == row || sgn(t[i][col]) == 0) continue;
    f = t[i][col];
    for (size_t j = 0; j < pr.size(); ++j) {
      if (sgn(pr[j]) != 0) t[i][j] -= f * pr[j];
    }
  }
  if (sgn(cost[col]) != 0) {
    f = cost[col];
    for (size_t j = 0; j + 1 < pr.size(); ++j) {
      if (sgn(pr[j]) != 0) cost[j] -= f * pr[j];
    }
    value -= f * pr.back();
  }
}

}  // namespace

LpSolution simplex_min(const LpProblem& problem) {
  const size_t n = problem.objective.size();
  const size_t m = problem.rows.size();
  for (const auto& row : problem.rows) {
    if (row.coefficients.size() != n) throw InvalidArgument("LP row has wrong dimension");
  }

  // Complement x_j = 1 - y_j wherever c_j < 0, so every cost is nonnegative.
  std::vector<char> flipped(n, 0);
  RationalVector c(n);
  Rational constant = 0;
  for (size_t j = 0; j < n; ++j) {
    c[j] = problem.objective[j];
    if (sgn(c[j]) < 0) {
      flipped[j] = 1;
      constant += c[j];
      c[j] = -c[j];
    }
  }
  std::vector<RationalVector> a(m, RationalVector(n));
  RationalVector b(m);
  for (size_t i = 0; i < m; ++i) {
    b[i] = problem.rows[i].rhs;
    for (size_t j = 0; j < n; ++j) {
      const Rational& v = problem.rows[i].coefficients[j];
      if (flipped[j]) {
        a[i][j] = -v;
        b[i] -= v;
      } else {
        a[i][j] = v;
      }
    }
  }

  // Dual: max b.pi - 1.mu  s.t.  A^T pi - mu + s = c,  pi, mu, s >= 0.
  // Columns: pi (m), mu (n), s (n), rhs. The slack basis is feasible since c >= 0.
  const size_t cols = m + 2 * n;
  Tableau t(n, RationalVector(cols + 1));
  std::vector<size_t> basis(n);
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < m; ++i) t[j][i] = a[i][j];
    t[j][m + j] = -1;
    t[j][m + n + j] = 1;
    t[j][cols] = c[j];
    basis[j] = m + n + j;
  }
  RationalVector cost(cols);
  for (size_t i = 0; i < m; ++i) cost[i] = -b[i];
  for (size_t j = 0; j < n; ++j) cost[m + j] = 1;
  Rational dual_value = 0;

  LpSolution out;
  for (;;) {
    size_t enter = cols;
    for (size_t j = 0; j < cols; ++j) {
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    size_t leave = n;
    Rational best_ratio, r;
    for (size_t i = 0; i < n; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      r = t[i][cols] / t[i][enter];
      if (leave == n || r < best_ratio || (r == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = r;
      }
    }
    if (leave == n) throw Infeasible("covering LP is infeasible (its dual is unbounded)");
    pivot(t, cost, dual_value, leave, enter);
    basis[leave] = enter;
    ++out.pivots;
  }

  out.x.resize(n);
  for (size_t j = 0; j < n; ++j) {
    const Rational& y = cost[m + n + j];
    out.x[j] = flipped[j] ? Rational(1 - y) : y;
  }
  out.value = dot(problem.objective, out.x);
  if (out.value != constant + dual_value) throw InternalInvariant("simplex: primal and dual values differ");
  for (const auto& v : out.x) {
    if (v < 0 || v > 1) throw InternalInvariant("simplex: point leaves the unit box");
  }
  for (const auto& row : problem.rows) {
    if (row.lhs(out.x) < row.rhs) throw InternalInvariant("simplex: point violates a constraint");
  }
  return out;
}

LpProblem covering_relaxation(const CirculantInstance& inst, RationalVector objective) {
  if (static_cast<int>(objective.size()) != inst.n()) throw InvalidArgument("objective has wrong dimension");
  LpProblem lp;
  lp.objective = std::move(objective);
  for (int i = 0; i < inst.n(); ++i) lp.rows.push_back(row_inequality(inst, i));
  return lp;
}

IpSolution ip_opt_bruteforce(const CirculantInstance& inst, std::span<const Rational> objective, int max_n) {
  const int n = inst.n(), k = inst.k();
  if (n > max_n) throw BudgetExceeded("ip_opt_bruteforce: n exceeds " + std::to_string(max_n));
  if (static_cast<int>(objective.size()) != n) throw InvalidArgument("objective has wrong dimension");
  // negative_after[p]: sum of the negative weights at positions >= p, a lower
  // bound on what extending past p can still add.
  RationalVector negative_after(static_cast<size_t>(n) + 1);
  for (int p = n - 1; p >= 0; --p) {
    negative_after[static_cast<size_t>(p)] = negative_after[static_cast<size_t>(p) + 1];
    if (sgn(objective[static_cast<size_t>(p)]) < 0) negative_after[static_cast<size_t>(p)] += objective[static_cast<size_t>(p)];
  }
  std::optional<IpSolution> best;
  std::vector<int> chosen;
  Rational partial = 0;
  std::function<void(int)> extend = [&](int first) {
    const int last = chosen.back();
    if (first + n - last <= k && (!best || partial < best->value)) {
      best = IpSolution{partial, IndexSet(n, chosen)};
    }
    if (best && partial + negative_after[static_cast<size_t>(last) + 1] >= best->value) return;
    for (int g = k; g >= 1; --g) {
      const int next = last + g;
      if (next > n - 1) continue;
      chosen.push_back(next);
      partial += objective[static_cast<size_t>(next)];
      extend(first);
      partial -= objective[static_cast<size_t>(next)];
      chosen.pop_back();
    }
  };
  for (int first = 0; first < k; ++first) {
    chosen.assign(1, first);
    partial = objective[static_cast<size_t>(first)];
    extend(first);
  }
  return *best;
}

CuttingPlaneReport cutting_plane(const CirculantInstance& inst, const RationalVector& objective,
                                 const CuttingPlaneConfig& config) {
  LpProblem lp = covering_relaxation(inst, objective);
  std::set<std::string> known;
  for (int i = 0; i < inst.n(); ++i) known.insert("row:" + std::to_string(i));
  CuttingPlaneReport report;
  for (int round = 0; round < config.max_rounds; ++round) {
    LpSolution sol = simplex_min(lp);
    if (!report.rounds.empty() && sol.value < report.rounds.back().lp_value) {
      throw InternalInvariant("cutting plane: LP bound decreased");
    }
    CuttingPlaneRound entry;
    entry.lp_value = sol.value;
    entry.point = sol.x;
    for (auto& cut : separate_all(inst, sol.x, config.separators)) {
      if (static_cast<int>(entry.cuts_added.size()) >= config.max_cuts_per_round) break;
      if (!known.insert(cut.key()).second) continue;
      if (cut.violation <= 0) throw InternalInvariant("cutting plane: cut is not violated");
      lp.rows.push_back(cut.inequality);
      entry.cuts_added.push_back(std::move(cut));
    }
    report.lp_value = sol.value;
    report.point = sol.x;
    const bool done = entry.cuts_added.empty();
    report.rounds.push_back(std::move(entry));
    if (done) {
      report.converged = true;
      break;
    }
  }
  if (!report.converged) {
    // The round limit stopped the loop after adding cuts; report the tightened bound.
    LpSolution sol = simplex_min(lp);
    report.lp_value = sol.value;
    report.point = sol.x;
  }
  if (inst.n() <= config.ip_max_n) {
    IpSolution ip = ip_opt_bruteforce(inst, objective, config.ip_max_n);
    report.ip_value = ip.value;
    report.ip_cover = ip.cover;
    report.gap = ip.value - report.lp_value;
  }
  return report;
}

}  // namespace circov
