#include "circov/separation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <tuple>

#include "circov/errors.hpp"

namespace circov {

Rational c_d(const CirculantInstance& inst, const Rational& value, int d) {
  if (d < 1 || d > inst.k() - 2) throw InvalidArgument("c_d: d out of range");
  return value - ratio(1, static_cast<long>(inst.k()) * (inst.k() - d));
}

Rational l_dr(const CirculantInstance& inst, std::span<const Rational> point, int d, int r) {
  if (static_cast<int>(point.size()) != inst.n()) throw InvalidArgument("point has wrong dimension");
  return alpha_beta_form(inst, d, r).alpha - sum(point);
}

IndexSet LayeredDag::positions(const std::vector<int>& path) const {
  std::vector<int> out;
  for (int v : path) {
    if (v != sink_) out.push_back(nodes_[static_cast<size_t>(v)].position);
  }
  return IndexSet(n_, std::move(out));
}

class DagBuilder {
 public:
  /// Creates every node of the grid (layer, column, position) up front; arcs
  /// are only generated out of nodes that the recursive rules reach.
  DagBuilder(int n, int layers, int columns) : columns_(columns) {
    dag_.n_ = n;
    for (int layer = 0; layer < layers; ++layer)
      for (int column = 0; column < columns; ++column)
        for (int p = 0; p < n; ++p) dag_.nodes_.push_back({layer, column, p});
    reached_.assign(dag_.nodes_.size(), 0);
    dag_.sink_ = static_cast<int>(dag_.nodes_.size());
    dag_.nodes_.push_back({-1, -1, -1});
    node(0, 0, 0);
  }

  int node(int layer, int column, int position) {
    const int v = (layer * columns_ + column) * dag_.n_ + position;
    if (!reached_[static_cast<size_t>(v)]) {
      reached_[static_cast<size_t>(v)] = 1;
      pending_.push_back(v);
    }
    return v;
  }

  void arc(int tail, int head, int charge) { dag_.arcs_.push_back({tail, head, charge}); }

  std::optional<int> next() {
    if (pending_.empty()) return std::nullopt;
    int v = pending_.back();
    pending_.pop_back();
    return v;
  }

  const LayeredDag::Node& at(int v) const { return dag_.nodes_[static_cast<size_t>(v)]; }

  int sink() const { return dag_.sink_; }

  LayeredDag finish() {
    const int sink = dag_.sink_;
    dag_.out_.assign(dag_.nodes_.size(), {});
    for (size_t a = 0; a < dag_.arcs_.size(); ++a) {
      dag_.out_[static_cast<size_t>(dag_.arcs_[a].tail)].push_back(static_cast<int>(a));
    }
    dag_.order_.resize(dag_.nodes_.size());
    for (size_t v = 0; v < dag_.nodes_.size(); ++v) dag_.order_[v] = static_cast<int>(v);
    std::stable_sort(dag_.order_.begin(), dag_.order_.end(), [&](int a, int b) {
      int pa = a == sink ? dag_.n_ : dag_.nodes_[static_cast<size_t>(a)].position;
      int pb = b == sink ? dag_.n_ : dag_.nodes_[static_cast<size_t>(b)].position;
      return pa < pb;
    });
    for (const auto& e : dag_.arcs_) {
      int pt = dag_.nodes_[static_cast<size_t>(e.tail)].position;
      int ph = e.head == sink ? dag_.n_ : dag_.nodes_[static_cast<size_t>(e.head)].position;
      if (ph <= pt) throw InternalInvariant("separation graph arc does not advance");
    }
    return std::move(dag_);
  }

 private:
  int columns_;
  LayeredDag dag_;
  std::vector<char> reached_;
  std::vector<int> pending_;
};

LayeredDag build_K(const CirculantInstance& inst) {
  const int n = inst.n(), k = inst.k();
  if (k < 3) throw InvalidArgument("build_K needs k >= 3");
  DagBuilder b(n, k - 1, 1);
  while (auto v = b.next()) {
    const auto here = b.at(*v);
    const int i = here.position;
    for (int l = i + k + 1; l <= n - 1; l += k) {
      b.arc(*v, b.node((here.layer + 1) % (k - 1), 0, l), l);
    }
    if (here.layer == 0 && i != 0 && i <= n - (k + 1) && mod(n - i, k) == 1) b.arc(*v, b.sink(), 0);
  }
  return b.finish();
}

namespace {

/// Successor positions of p for residue a: p+1 when a = 1, else every q > p
/// with q >= p+a and q - p = a (mod k).
std::vector<int> steps(int p, int a, int n, int k) {
  std::vector<int> out;
  if (a == 1) {
    if (p + 1 <= n - 1) out.push_back(p + 1);
    return out;
  }
  int first = p + a;
  if (first <= p) first += k;
  for (int q = first; q <= n - 1; q += k) out.push_back(q);
  return out;
}

}  // namespace

LayeredDag build_K_dra(const CirculantInstance& inst, int d, int r, const ResidueTuple& a) {
  const int n = inst.n(), k = inst.k();
  if (d < 2 || d > k - 2) throw InvalidArgument("build_K_dra needs 2 <= d <= k-2");
  if (r < 1 || r >= k - d) throw InvalidArgument("build_K_dra needs 1 <= r < k-d");
  if (static_cast<int>(a.size()) != d || !in_residue_set(a, k)) {
    throw InvalidArgument("residue tuple is not in R_{d,k}");
  }
  const int columns = k - d + r;
  DagBuilder b(n, d, columns);
  while (auto v = b.next()) {
    const auto here = b.at(*v);
    const int i = here.layer, j = here.column, p = here.position;
    const int step = a[static_cast<size_t>(i)];
    if (i <= d - 2) {
      for (int q : steps(p, step, n, k)) b.arc(*v, b.node(i + 1, j, q), q);
      continue;
    }
    if (j <= columns - 2) {
      for (int q : steps(p, step, n, k)) b.arc(*v, b.node(0, j + 1, q), q);
    }
    if (j == k - d - 1) {
      for (int q : steps(p, step, n, k)) b.arc(*v, b.node(0, 0, q), q);
    }
    if (j == columns - 1) {
      bool closes = step == 1 ? p == n - 1 : mod(n - p, k) == step;
      if (closes) b.arc(*v, b.sink(), 0);
    }
  }
  return b.finish();
}

namespace {

template <typename Weight>
PathResult shortest_path_impl(const LayeredDag& dag, Weight weight) {
  const auto& nodes = dag.nodes();
  const auto& arcs = dag.arcs();
  const size_t count = nodes.size();
  std::vector<Rational> best(count);
  std::vector<char> reaches(count, 0);
  std::vector<int> choice(count, -1);
  const int sink = dag.sink();
  reaches[static_cast<size_t>(sink)] = 1;
  const int n = dag.modulus();
  auto rank = [&](int v) {
    const auto& x = nodes[static_cast<size_t>(v)];
    return v == sink ? std::make_tuple(n, 0, 0) : std::make_tuple(x.position, x.layer, x.column);
  };
  const auto& order = dag.topological_order();
  Rational candidate;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (v == sink) continue;
    for (int e : dag.out_arcs(v)) {
      const int h = arcs[static_cast<size_t>(e)].head;
      if (!reaches[static_cast<size_t>(h)]) continue;
      candidate = weight(e) + best[static_cast<size_t>(h)];
      auto& cur = best[static_cast<size_t>(v)];
      const int prev = choice[static_cast<size_t>(v)];
      bool take = prev < 0 || candidate < cur ||
                  (candidate == cur && rank(h) < rank(arcs[static_cast<size_t>(prev)].head));
      if (take) {
        cur = candidate;
        choice[static_cast<size_t>(v)] = e;
      }
    }
    if (choice[static_cast<size_t>(v)] >= 0) reaches[static_cast<size_t>(v)] = 1;
  }
  const int s = dag.source();
  if (!reaches[static_cast<size_t>(s)] || s == sink) throw NoPath("sink is unreachable from the source");
  PathResult out;
  out.value = best[static_cast<size_t>(s)];
  for (int v = s;; v = arcs[static_cast<size_t>(choice[static_cast<size_t>(v)])].head) {
    out.nodes.push_back(v);
    if (v == sink) break;
  }
  return out;
}

}  // namespace

PathResult shortest_path_dag(const LayeredDag& dag, std::span<const Rational> arc_weights) {
  if (arc_weights.size() != dag.arcs().size()) throw InvalidArgument("one weight per arc expected");
  return shortest_path_impl(dag, [&](int e) -> const Rational& { return arc_weights[static_cast<size_t>(e)]; });
}

PathResult shortest_path_charged(const LayeredDag& dag, std::span<const Rational> position_costs) {
  if (static_cast<int>(position_costs.size()) != dag.modulus()) throw InvalidArgument("one cost per position expected");
  const auto& arcs = dag.arcs();
  return shortest_path_impl(dag, [&](int e) -> const Rational& {
    return position_costs[static_cast<size_t>(arcs[static_cast<size_t>(e)].charge)];
  });
}

BigInt count_paths(const LayeredDag& dag) {
  std::vector<BigInt> ways(dag.nodes().size(), 0);
  ways[static_cast<size_t>(dag.sink())] = 1;
  const auto& order = dag.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it == dag.sink()) continue;
    BigInt total = 0;
    for (int e : dag.out_arcs(*it)) total += ways[static_cast<size_t>(dag.arcs()[static_cast<size_t>(e)].head)];
    ways[static_cast<size_t>(*it)] = total;
  }
  return ways[static_cast<size_t>(dag.source())];
}

const char* to_string(CutKind kind) {
  switch (kind) {
    case CutKind::kRank: return "rank";
    case CutKind::kRow: return "row";
    case CutKind::kMinor: return "minor";
  }
  return "?";
}

std::string SeparationResult::key() const {
  switch (kind) {
    case CutKind::kRank: return "rank";
    case CutKind::kRow: return "row:" + std::to_string(row);
    case CutKind::kMinor: return "minor:" + W.to_string();
  }
  return "?";
}

namespace {

void check_point(const CirculantInstance& inst, std::span<const Rational> point) {
  if (static_cast<int>(point.size()) != inst.n()) throw InvalidArgument("point has wrong dimension");
}

bool more_violated(const SeparationResult& a, const SeparationResult& b) {
  if (a.violation != b.violation) return a.violation > b.violation;
  if (a.W != b.W) return a.W < b.W;
  return a.row < b.row;
}

/// Checks a path witness independently of the graph: the set must define a
/// minor of the expected family and violate its inequality by L - value.
SeparationResult certify(const CirculantInstance& inst, std::span<const Rational> point, const IndexSet& W,
                         int d, int r, const ResidueTuple& a, int rotation, const Rational& expected) {
  CirculantMinor minor = validate_minor(inst, W);
  const auto& p = minor.params;
  if (p.d != d || p.n1 != 1 || p.n3 % (inst.k() - d) != r) {
    throw InternalInvariant("separation witness " + W.to_string() + " has the wrong parameters");
  }
  if (d >= 2 && !is_alternated(inst, W, d)) {
    throw InternalInvariant("separation witness " + W.to_string() + " is not alternated");
  }
  SeparationResult out;
  out.kind = CutKind::kMinor;
  out.W = W;
  out.inequality = minor_inequality(inst, minor);
  out.violation = out.inequality.violation(point);
  if (out.violation != expected) {
    throw InternalInvariant("separation witness " + W.to_string() + " violation disagrees with its path");
  }
  out.violated = out.violation > 0;
  out.d = d;
  out.r = r;
  out.a = a;
  out.rotation = rotation;
  out.params = p;
  return out;
}

/// Runs every rotation on one graph and appends the violated witnesses.
void scan_rotations(const CirculantInstance& inst, std::span<const Rational> point, const LayeredDag& dag,
                    int d, int r, const ResidueTuple& a, std::vector<SeparationResult>& out) {
  const int n = inst.n();
  const Rational L = l_dr(inst, point, d, r);
  RationalVector costs(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < n; ++p) costs[static_cast<size_t>(p)] = c_d(inst, point[static_cast<size_t>((p + j) % n)], d);
    PathResult path;
    try {
      path = shortest_path_charged(dag, costs);
    } catch (const NoPath&) {
      return;
    }
    if (path.value < L) {
      IndexSet W = dag.positions(path.nodes).rotated(j);
      out.push_back(certify(inst, point, W, d, r, a, j, L - path.value));
    }
  }
}

std::vector<SeparationResult> dedup_sorted(std::vector<SeparationResult> all) {
  std::sort(all.begin(), all.end(), more_violated);
  std::vector<SeparationResult> out;
  for (auto& s : all) {
    bool seen = std::any_of(out.begin(), out.end(), [&](const SeparationResult& t) { return t.key() == s.key(); });
    if (!seen) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<SeparationResult> separate_d1_all(const CirculantInstance& inst, std::span<const Rational> point) {
  check_point(inst, point);
  std::vector<SeparationResult> out;
  if (inst.k() < 3) return out;
  LayeredDag dag = build_K(inst);
  scan_rotations(inst, point, dag, 1, 1, {}, out);
  return dedup_sorted(std::move(out));
}

std::optional<SeparationResult> separate_d1(const CirculantInstance& inst, std::span<const Rational> point) {
  auto all = separate_d1_all(inst, point);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<SeparationResult> separate_alternated_all(const CirculantInstance& inst,
                                                      std::span<const Rational> point, int d, int r) {
  check_point(inst, point);
  const int k = inst.k();
  if (d < 2 || d > k - 2 || r < 1 || r >= k - d) throw InvalidArgument("separate_alternated: (d, r) out of range");
  std::vector<SeparationResult> out;
  for (const auto& a : residue_tuples(d, k)) {
    LayeredDag dag = build_K_dra(inst, d, r, a);
    scan_rotations(inst, point, dag, d, r, a, out);
  }
  return dedup_sorted(std::move(out));
}

std::optional<SeparationResult> separate_alternated(const CirculantInstance& inst,
                                                    std::span<const Rational> point, int d, int r) {
  auto all = separate_alternated_all(inst, point, d, r);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<SeparationResult> separate_all(const CirculantInstance& inst, std::span<const Rational> point,
                                           const SeparateAllOptions& options) {
  check_point(inst, point);
  std::vector<SeparationResult> out;
  if (options.rank) {
    SeparationResult s;
    s.kind = CutKind::kRank;
    s.inequality = rank_inequality(inst);
    s.violation = s.inequality.violation(point);
    s.W = IndexSet(inst.n());
    if (s.violation > 0) {
      s.violated = true;
      out.push_back(std::move(s));
    }
  }
  if (options.rows) {
    for (int i = 0; i < inst.n(); ++i) {
      SeparationResult s;
      s.kind = CutKind::kRow;
      s.row = i;
      s.inequality = row_inequality(inst, i);
      s.violation = s.inequality.violation(point);
      s.W = IndexSet(inst.n());
      if (s.violation > 0) {
        s.violated = true;
        out.push_back(std::move(s));
      }
    }
  }
  // Each graph is an independent task; results are merged and sorted, so the
  // outcome does not depend on the thread count.
  struct Task {
    int d, r;
    ResidueTuple a;
  };
  std::vector<Task> tasks;
  if (options.d1 && inst.k() >= 3) tasks.push_back({1, 1, {}});
  if (options.alternated && inst.k() >= 4) {
    for (int d = 2; d <= inst.k() - 2; ++d) {
      for (int r = 1; r < inst.k() - d; ++r) {
        for (auto& a : residue_tuples(d, inst.k())) tasks.push_back({d, r, std::move(a)});
      }
    }
  }
  std::vector<std::vector<SeparationResult>> found(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      try {
        const Task& task = tasks[t];
        LayeredDag dag = task.d == 1 ? build_K(inst) : build_K_dra(inst, task.d, task.r, task.a);
        scan_rotations(inst, point, dag, task.d, task.r, task.a, found[t]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (size_t t = 0; t < tasks.size(); ++t) {
    if (errors[t]) std::rethrow_exception(errors[t]);
    for (auto& s : found[t]) out.push_back(std::move(s));
  }
  return dedup_sorted(std::move(out));
}

std::optional<SeparationResult> brute_force_separate(const CirculantInstance& inst,
                                                     std::span<const Rational> point, int d, int r, int max_n) {
  check_point(inst, point);
  const int k = inst.k();
  if (inst.n() > max_n) throw BudgetExceeded("brute_force_separate: n exceeds " + std::to_string(max_n));
  if (d < 1 || d > k - 2 || r < 1 || r >= k - d) throw InvalidArgument("brute_force_separate: (d, r) out of range");
  if (d == 1 && r != 1) throw InvalidArgument("brute_force_separate: d = 1 needs r = 1");
  std::optional<SeparationResult> best;
  MinorQuery q;
  q.d = d;
  q.r = r;
  q.only_alternated = d >= 2;
  q.max_n = max_n;
  for_each_minor(inst, q, [&](const CirculantMinor& m) {
    if (m.params.n3 < (k - d) + r) return;
    SeparationResult s;
    s.kind = CutKind::kMinor;
    s.W = m.W;
    s.inequality = minor_inequality(inst, m);
    s.violation = s.inequality.violation(point);
    s.violated = s.violation > 0;
    s.d = d;
    s.r = r;
    if (d >= 2) s.a = is_alternated(inst, m.W, d).value_or(ResidueTuple{});
    s.params = m.params;
    if (s.violated && (!best || more_violated(s, *best))) best = std::move(s);
  });
  return best;
}

}  // namespace circov
