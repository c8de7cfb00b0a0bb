#include "circov/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "circov/errors.hpp"
#include "circov/exactlp.hpp"

namespace circov::oracle {

namespace {

void require_budget(const CirculantInstance& inst, const EnumerationBudget& budget, const char* what) {
  if (inst.n() > budget.max_n || inst.n() > 62)
    throw BudgetExceeded(std::string(what) + ": n=" + std::to_string(inst.n()) + " exceeds budget " +
                         std::to_string(budget.max_n));
}

}  // namespace

void for_each_cover(const CirculantInstance& inst, const std::function<void(const IndexSet&)>& visit,
                    const EnumerationBudget& budget) {
  require_budget(inst, budget, "cover enumeration");
  const int n = inst.n();
  const int k = inst.k();
  std::vector<int> chosen;
  // zeros: current run of absent indices; lead: absent indices before the first chosen one.
  std::function<void(int, int, int)> rec = [&](int pos, int zeros, int lead) {
    if (pos == n) {
      if (chosen.empty()) return;
      if (zeros + lead >= k) return;
      visit(IndexSet(n, chosen));
      return;
    }
    chosen.push_back(pos);
    rec(pos + 1, 0, lead);
    chosen.pop_back();
    if (zeros + 1 < k) rec(pos + 1, zeros + 1, chosen.empty() ? lead + 1 : lead);
  };
  rec(0, 0, 0);
}

std::vector<IndexSet> enumerate_covers(const CirculantInstance& inst, const EnumerationBudget& budget) {
  std::vector<IndexSet> out;
  for_each_cover(inst, [&](const IndexSet& x) { out.push_back(x); }, budget);
  return out;
}

int min_cover_size(const CirculantInstance& inst, const EnumerationBudget& budget) {
  int best = inst.n();
  for_each_cover(inst, [&](const IndexSet& x) { best = std::min(best, x.size()); }, budget);
  return best;
}

std::vector<DiscoveredMinor> discover_minors_exhaustive(const CirculantInstance& inst,
                                                        const EnumerationBudget& budget) {
  require_budget(inst, budget, "minor discovery");
  const int n = inst.n();
  const std::uint64_t total = std::uint64_t{1} << n;
  if (total > budget.max_subsets) throw BudgetExceeded("minor discovery: too many subsets");
  std::vector<DiscoveredMinor> out;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    if (std::popcount(mask) > n - 4) continue;
    IndexSet N = IndexSet::from_mask(n, mask);
    BinaryMatrix m = contract(inst, N);
    if (m.num_rows() != m.num_cols()) continue;
    auto shape = is_circulant_isomorphic(m);
    if (shape) out.push_back({std::move(N), shape->first, shape->second});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.N < b.N; });
  return out;
}

namespace {

struct Dicycle {
  std::uint64_t nodes = 0;
  std::uint64_t long_heads = 0;  // heads of length-(k+1) arcs
  int n1 = 0, n2 = 0, n3 = 0;
};

std::vector<Dicycle> simple_dicycles(const CirculantInstance& inst) {
  const int n = inst.n();
  const int k = inst.k();
  std::vector<Dicycle> out;
  for (int s = 0; s < n; ++s) {
    Dicycle cur;
    cur.nodes = std::uint64_t{1} << s;
    long length = 0;
    std::function<void(int)> dfs = [&](int v) {
      for (int step : {k, k + 1}) {
        int next = (v + step) % n;
        length += step;
        (step == k ? cur.n2 : cur.n3) += 1;
        if (next == s) {
          Dicycle found = cur;
          if (step == k + 1) found.long_heads |= std::uint64_t{1} << s;
          found.n1 = static_cast<int>(length / n);
          out.push_back(found);
        } else if (next > s && !(cur.nodes >> next & 1U)) {
          cur.nodes |= std::uint64_t{1} << next;
          std::uint64_t saved = cur.long_heads;
          if (step == k + 1) cur.long_heads |= std::uint64_t{1} << next;
          dfs(next);
          cur.long_heads = saved;
          cur.nodes &= ~(std::uint64_t{1} << next);
        }
        length -= step;
        (step == k ? cur.n2 : cur.n3) -= 1;
      }
    };
    dfs(s);
  }
  return out;
}

}  // namespace

std::vector<CirculantMinor> minors_from_dicycles(const CirculantInstance& inst, const EnumerationBudget& budget) {
  require_budget(inst, budget, "dicycle enumeration");
  const int n = inst.n();
  const int k = inst.k();
  auto cycles = simple_dicycles(inst);
  std::map<std::tuple<int, int, int>, std::vector<const Dicycle*>> groups;
  for (const auto& c : cycles) {
    if (std::gcd(std::gcd(c.n1, c.n2), c.n3) != 1) continue;
    groups[{c.n1, c.n2, c.n3}].push_back(&c);
  }

  std::vector<CirculantMinor> out;
  for (const auto& [key, members] : groups) {
    const auto [n1, n2, n3] = key;
    for (int d = 1; k - d * n1 >= 2; ++d) {
      const int k_prime = k - d * n1;
      const int n_prime = n - d * (n2 + n3);
      if (n_prime < k_prime + 2) break;
      std::vector<const Dicycle*> chosen;
      std::function<void(size_t, std::uint64_t)> pick = [&](size_t from, std::uint64_t used) {
        if (static_cast<int>(chosen.size()) == d) {
          CirculantMinor m;
          std::uint64_t w = 0;
          for (const auto* c : chosen) {
            w |= c->long_heads;
            m.cycles.push_back(IndexSet::from_mask(n, c->nodes));
            m.w_classes.push_back(IndexSet::from_mask(n, c->long_heads));
          }
          m.W = IndexSet::from_mask(n, w);
          m.params = MinorParams{d, n1, n2, n3, n_prime, k_prime, n_prime % k_prime};
          out.push_back(std::move(m));
          return;
        }
        for (size_t i = from; i < members.size(); ++i) {
          if (members[i]->nodes & used) continue;
          chosen.push_back(members[i]);
          pick(i + 1, used | members[i]->nodes);
          chosen.pop_back();
        }
      };
      pick(0, 0);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.contracted_set() < b.contracted_set(); });
  return out;
}

std::vector<IndexSet> enumerate_W_sets(const CirculantInstance& inst, int d, int r,
                                       const EnumerationBudget& budget) {
  require_budget(inst, budget, "W-set enumeration");
  const int n = inst.n();
  const int k = inst.k();
  if (d < 1 || r < 1 || r >= k - d) throw InvalidArgument("W-set enumeration needs 1 <= r < k-d");
  const std::uint64_t total = std::uint64_t{1} << n;
  if (total > budget.max_subsets) throw BudgetExceeded("W-set enumeration: too many subsets");
  std::vector<IndexSet> out;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    if (std::popcount(mask) % d != 0) continue;
    IndexSet W = IndexSet::from_mask(n, mask);
    CirculantMinor minor;
    try {
      minor = validate_minor(inst, W);
    } catch (const MalformedW&) {
      continue;
    }
    const MinorParams& p = minor.params;
    if (p.d != d || p.n1 != 1) continue;
    if (p.n3 % (k - d) != r || p.n3 < (k - d) + r) continue;
    if (d >= 2 && !is_alternated(inst, W, d)) continue;
    out.push_back(std::move(W));
  }
  return out;
}

}  // namespace circov::oracle

namespace circov::oracle {

RationalVector random_point(const CirculantInstance& inst, std::mt19937_64& rng,
                            std::span<const LinearInequality> targets) {
  const int n = inst.n(), k = inst.k();
  int kind = std::uniform_int_distribution<int>(0, 2)(rng);
  if (kind == 2 && targets.empty()) kind = 0;
  if (kind == 1) {
    RationalVector x(static_cast<size_t>(n));
    std::uniform_int_distribution<long> den(1, 2L * k);
    for (auto& v : x) {
      long q = den(rng);
      v = ratio(std::uniform_int_distribution<long>(0, q)(rng), q);
    }
    return x;
  }
  RationalVector w(static_cast<size_t>(n));
  if (kind == 0) {
    std::uniform_int_distribution<long> weight(1, 10);
    for (auto& v : w) v = weight(rng);
  } else {
    const auto& t = targets[std::uniform_int_distribution<size_t>(0, targets.size() - 1)(rng)];
    std::uniform_int_distribution<long> noise(0, 3);
    for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = t.coefficients[static_cast<size_t>(i)] * 8 + noise(rng);
  }
  return simplex_min(covering_relaxation(inst, std::move(w))).x;
}

}  // namespace circov::oracle
