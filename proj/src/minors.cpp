#include "circov/minors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "circov/errors.hpp"

namespace circov {

IndexSet CirculantMinor::contracted_set() const {
  IndexSet out(W.modulus());
  for (const auto& c : cycles) out = out.set_union(c);
  return out;
}

std::vector<std::vector<Arc>> build_G(const CirculantInstance& inst) {
  std::vector<std::vector<Arc>> g(static_cast<size_t>(inst.n()));
  for (int i = 0; i < inst.n(); ++i) {
    g[static_cast<size_t>(i)].push_back({inst.wrap(i + inst.k()), inst.k()});
    g[static_cast<size_t>(i)].push_back({inst.wrap(i + inst.k() + 1), inst.k() + 1});
  }
  return g;
}

bool params_exist(int n, int k, int n1, int n2, int n3) {
  if (n1 < 1 || n2 < 0 || n3 < 0) return false;
  if (static_cast<long>(n1) * n != static_cast<long>(k) * n2 + static_cast<long>(k + 1) * n3) return false;
  return std::gcd(std::gcd(n1, n2), n3) == 1;
}

CirculantMinor reconstruct_cycles_from_W(const CirculantInstance& inst, const IndexSet& W) {
  const int n = inst.n();
  const int k = inst.k();
  if (W.modulus() != n) throw InvalidArgument("W modulus does not match instance");
  if (W.empty()) throw MalformedW("W is empty");

  std::vector<int> owner(static_cast<size_t>(n), -1);
  CirculantMinor minor;
  minor.W = W;
  struct Walk {
    std::vector<int> nodes;
    int n2 = 0, n3 = 0;
    long length = 0;
  };
  std::vector<Walk> walks;

  for (int w : W) {
    if (owner[static_cast<size_t>(w)] != -1) continue;
    const int id = static_cast<int>(walks.size());
    Walk walk;
    walk.nodes.push_back(w);
    owner[static_cast<size_t>(w)] = id;
    int i = w;
    while (true) {
      const bool long_arc = W.contains(i);
      const int step = long_arc ? k + 1 : k;
      const int prev = inst.wrap(i - step);
      walk.length += step;
      (long_arc ? walk.n3 : walk.n2) += 1;
      if (prev == w) break;
      if (owner[static_cast<size_t>(prev)] == id) {
        throw MalformedW("walk from " + std::to_string(w) + " revisits " + std::to_string(prev) +
                             " without closing at its start",
                         w);
      }
      if (owner[static_cast<size_t>(prev)] != -1) {
        throw MalformedW("walk from " + std::to_string(w) + " meets the walk of another element at " +
                             std::to_string(prev),
                         w);
      }
      owner[static_cast<size_t>(prev)] = id;
      walk.nodes.push_back(prev);
      i = prev;
    }
    walks.push_back(std::move(walk));
  }

  const Walk& first = walks.front();
  const int n1 = static_cast<int>(first.length / n);
  for (const auto& walk : walks) {
    IndexSet nodes(n, walk.nodes);
    std::vector<int> in_w;
    for (int v : nodes)
      if (W.contains(v)) in_w.push_back(v);
    IndexSet w_class(n, std::move(in_w));
    if (walk.n2 != first.n2 || walk.n3 != first.n3 || walk.length / n != n1) {
      throw MalformedW("dicycles through " + std::to_string(first.nodes.front()) + " and " +
                           std::to_string(walk.nodes.front()) + " have different parameters",
                       walk.nodes.front());
    }
    minor.cycles.push_back(std::move(nodes));
    minor.w_classes.push_back(std::move(w_class));
  }

  MinorParams& p = minor.params;
  p.d = static_cast<int>(walks.size());
  p.n1 = n1;
  p.n2 = first.n2;
  p.n3 = first.n3;
  p.n_prime = n - p.d * (p.n2 + p.n3);
  p.k_prime = k - p.d * p.n1;
  if (!params_exist(n, k, p.n1, p.n2, p.n3))
    throw MalformedW("dicycle parameters (" + std::to_string(p.n1) + "," + std::to_string(p.n2) + "," +
                     std::to_string(p.n3) + ") are not those of a simple dicycle");
  if (p.k_prime < 2 || p.k_prime > p.n_prime - 2) {
    throw MalformedW("contraction gives n'=" + std::to_string(p.n_prime) + ", k'=" +
                     std::to_string(p.k_prime) + ", outside 2 <= k' <= n'-2");
  }
  p.r = p.n_prime % p.k_prime;
  return minor;
}

CirculantMinor validate_minor(const CirculantInstance& inst, const IndexSet& W, const ValidateOptions& options) {
  CirculantMinor minor = reconstruct_cycles_from_W(inst, W);
  if (options.check_isomorphism && inst.n() <= options.isomorphism_max_n) {
    auto shape = is_circulant_isomorphic(contract(inst, minor.contracted_set()));
    if (!shape || shape->first != minor.params.n_prime || shape->second != minor.params.k_prime) {
      throw IsomorphismMismatch("contraction of N for W=" + W.to_string() +
                                " is not isomorphic to C_" + std::to_string(minor.params.n_prime) + "^" +
                                std::to_string(minor.params.k_prime));
    }
  }
  return minor;
}

std::vector<int> deltas(const IndexSet& W) {
  std::vector<int> out;
  const int m = W.size();
  for (int s = 0; s < m; ++s) out.push_back(s + 1 < m ? W[s + 1] - W[s] : W[0] + W.modulus() - W[s]);
  return out;
}

bool check_condW_d1(const CirculantInstance& inst, const IndexSet& W) {
  if (W.empty()) return false;
  for (int delta : deltas(W))
    if (delta % inst.k() != 1 || delta < inst.k() + 1) return false;
  return true;
}

bool in_residue_set(const ResidueTuple& a, int k) {
  const int d = static_cast<int>(a.size());
  // The bound applies to the differences themselves: a zero residue stands for
  // a difference of at least k.
  long total = 0, least = 0;
  for (int v : a) {
    if (v < 0 || v >= k) return false;
    total += v;
    least += v == 0 ? k : v;
  }
  if (total % k != 1 || least < k + 1) return false;
  for (int j = 0; j < d; ++j) {
    long block = 0;
    for (int r = j; r < d; ++r) {
      block += a[static_cast<size_t>(r)];
      if (block % k == 0 && !(r == j + d - 2 && j <= 1)) return false;
    }
  }
  return true;
}

std::vector<ResidueTuple> residue_tuples(int d, int k) {
  if (k < 4 || d < 2 || d > k - 2)
    throw InvalidArgument("residue tuples need k >= 4 and 2 <= d <= k-2");
  std::vector<ResidueTuple> out;
  ResidueTuple a(static_cast<size_t>(d), 0);
  while (true) {
    if (in_residue_set(a, k)) out.push_back(a);
    int pos = d - 1;
    while (pos >= 0 && ++a[static_cast<size_t>(pos)] == k) a[static_cast<size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return out;
}

std::optional<ResidueTuple> is_alternated(const CirculantInstance& inst, const IndexSet& W, int d) {
  const int k = inst.k();
  // n3 = 1 forces r = 1, and such a minor is never relevant.
  if (d < 2 || k < 4 || d > k - 2 || W.size() % d != 0 || W.size() / d < 2) return std::nullopt;
  auto delta = deltas(W);
  ResidueTuple a(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) a[static_cast<size_t>(j)] = delta[static_cast<size_t>(j)] % k;
  if (!in_residue_set(a, k)) return std::nullopt;
  for (size_t s = 0; s < delta.size(); ++s) {
    int aj = a[s % static_cast<size_t>(d)];
    if (delta[s] % k != aj) return std::nullopt;
    if (aj == 1 && delta[s] != 1) return std::nullopt;
  }
  return a;
}

bool is_alternated_by_definition(const CirculantInstance& inst, const IndexSet& W, int d) {
  if (d < 2 || W.size() % d != 0 || W.size() / d < 2) return false;
  CirculantMinor minor;
  try {
    minor = validate_minor(inst, W, {.check_isomorphism = false});
  } catch (const MalformedW&) {
    return false;
  }
  if (minor.params.d != d || minor.params.n1 != 1) return false;
  // W^j must be {i_{j+td}}: the class of i_s depends only on s mod d.
  std::vector<int> class_of(static_cast<size_t>(inst.n()), -1);
  for (size_t c = 0; c < minor.w_classes.size(); ++c)
    for (int v : minor.w_classes[c]) class_of[static_cast<size_t>(v)] = static_cast<int>(c);
  for (int s = 0; s < W.size(); ++s) {
    if (class_of[static_cast<size_t>(W[s])] != class_of[static_cast<size_t>(W[s % d])]) return false;
  }
  return true;
}

namespace {

struct SingleCycle {
  std::vector<int> w;
  std::uint64_t nodes = 0;
  int n2 = 0;
  int n3 = 0;
};

// Every W defining a minor with d = n1 = 1: cyclic gaps are (k+1) + m*k.
// Each set is produced once, from its smallest element w0.
std::vector<SingleCycle> single_cycles(const CirculantInstance& inst) {
  const int n = inst.n();
  const int k = inst.k();
  std::vector<SingleCycle> out;
  std::vector<int> w;
  std::function<void(int)> extend = [&](int w0) {
    const int last = w.back();
    const int wrap_gap = w0 + n - last;
    if (wrap_gap >= k + 1 && wrap_gap % k == 1) {
      SingleCycle c;
      c.w = w;
      for (size_t s = 0; s < w.size(); ++s) {
        int gap = (s + 1 < w.size() ? w[s + 1] : w0 + n) - w[s];
        int m = (gap - (k + 1)) / k;
        for (int t = 0; t <= m; ++t) c.nodes |= std::uint64_t{1} << inst.wrap(w[s] + t * k);
        c.n2 += m;
      }
      c.n3 = static_cast<int>(w.size());
      out.push_back(std::move(c));
    }
    for (int next = last + k + 1; next <= std::min(n - 1, w0 + n - (k + 1)); next += k) {
      w.push_back(next);
      extend(w0);
      w.pop_back();
    }
  };
  for (int w0 = 0; w0 < n; ++w0) {
    w.assign(1, w0);
    extend(w0);
  }
  return out;
}

}  // namespace

void for_each_minor(const CirculantInstance& inst, const MinorQuery& query,
                    const std::function<void(const CirculantMinor&)>& visit) {
  const int n = inst.n();
  const int k = inst.k();
  const int d = query.d;
  if (d < 1) throw InvalidArgument("minor enumeration needs d >= 1");
  if (query.r && (*query.r < 1 || *query.r >= k - d))
    throw InvalidArgument("residue r must satisfy 1 <= r < k-d");
  if (n > query.max_n || n > 64)
    throw BudgetExceeded("minor enumeration limited to n <= " + std::to_string(std::min(query.max_n, 64)));
  const int k_prime = k - d;
  if (k_prime < 2) return;

  auto cycles = single_cycles(inst);
  std::map<std::pair<int, int>, std::vector<const SingleCycle*>> groups;
  for (const auto& c : cycles) groups[{c.n2, c.n3}].push_back(&c);

  std::vector<const SingleCycle*> chosen;
  for (const auto& [key, members] : groups) {
    const auto [n2, n3] = key;
    const int n_prime = n - d * (n2 + n3);
    if (n_prime < k_prime + 2) continue;
    if (query.r && n3 % k_prime != *query.r) continue;

    std::function<void(size_t, std::uint64_t)> pick = [&](size_t from, std::uint64_t used) {
      if (static_cast<int>(chosen.size()) == d) {
        std::vector<int> w;
        for (const auto* c : chosen) w.insert(w.end(), c->w.begin(), c->w.end());
        IndexSet W(n, std::move(w));
        if (query.only_alternated && d >= 2 && !is_alternated(inst, W, d)) return;
        visit(reconstruct_cycles_from_W(inst, W));
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

std::vector<CirculantMinor> enumerate_minors(const CirculantInstance& inst, const MinorQuery& query) {
  std::vector<CirculantMinor> out;
  for_each_minor(inst, query, [&](const CirculantMinor& m) { out.push_back(m); });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.W < b.W; });
  return out;
}

std::vector<CirculantMinor> enumerate_all_n1_minors(const CirculantInstance& inst, int max_n) {
  std::vector<CirculantMinor> out;
  for (int d = 1; d <= inst.k() - 2; ++d) {
    auto part = enumerate_minors(inst, {.d = d, .r = std::nullopt, .only_alternated = false, .max_n = max_n});
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace circov
