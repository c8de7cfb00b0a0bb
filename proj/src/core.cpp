#include "circov/core.hpp"

#include <algorithm>
#include <sstream>

#include "circov/errors.hpp"

namespace circov {

CirculantInstance::CirculantInstance(int n, int k) : n_(n), k_(k) {
  if (k < 2 || k > n - 2) {
    throw InvalidArgument("C_" + std::to_string(n) + "^" + std::to_string(k) +
                          ": need 2 <= k <= n-2");
  }
}

IndexSet::IndexSet(int n, std::vector<int> elements) : n_(n), elements_(std::move(elements)) {
  if (n <= 0) throw InvalidArgument("IndexSet modulus must be positive");
  for (int e : elements_) {
    if (e < 0 || e >= n)
      throw InvalidArgument("element " + std::to_string(e) + " outside Z_" + std::to_string(n));
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

IndexSet IndexSet::from_residues(int n, std::span<const long> values) {
  std::vector<int> out;
  out.reserve(values.size());
  for (long v : values) out.push_back(mod(v, n));
  return IndexSet(n, std::move(out));
}

IndexSet IndexSet::from_mask(int n, std::uint64_t mask) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1U) out.push_back(i);
  return IndexSet(n, std::move(out));
}

bool IndexSet::contains(int i) const {
  return std::binary_search(elements_.begin(), elements_.end(), i);
}

IndexSet IndexSet::rotated(int t) const {
  std::vector<int> out;
  out.reserve(elements_.size());
  for (int e : elements_) out.push_back(mod(static_cast<long>(e) + t, n_));
  return IndexSet(n_, std::move(out));
}

std::uint64_t IndexSet::mask() const {
  if (n_ > 64) throw InvalidArgument("IndexSet::mask needs n <= 64");
  std::uint64_t m = 0;
  for (int e : elements_) m |= std::uint64_t{1} << e;
  return m;
}

std::vector<int> IndexSet::indicator() const {
  std::vector<int> out(static_cast<size_t>(n_), 0);
  for (int e : elements_) out[static_cast<size_t>(e)] = 1;
  return out;
}

IndexSet IndexSet::set_union(const IndexSet& other) const {
  std::vector<int> out;
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
  return IndexSet(n_, std::move(out));
}

IndexSet IndexSet::set_difference(const IndexSet& other) const {
  std::vector<int> out;
  std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
  return IndexSet(n_, std::move(out));
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < elements_.size(); ++i) os << (i ? "," : "") << elements_[i];
  os << '}';
  return os.str();
}

bool BinaryMatrix::has_zero_column() const {
  for (int j = 0; j < num_cols(); ++j) {
    bool any = false;
    for (const auto& r : rows) any = any || r[static_cast<size_t>(j)];
    if (!any) return true;
  }
  return false;
}

namespace {

bool row_leq(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] && !b[j]) return false;
  return true;
}

// Fixed-width bitset over Z_n, sized at runtime.
class Bits {
 public:
  explicit Bits(int n) : words_(static_cast<size_t>((n + 63) / 64), 0) {}
  void set(int i) { words_[static_cast<size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(int i) const { return words_[static_cast<size_t>(i) / 64] >> (i % 64) & 1U; }
  bool subset_of(const Bits& o) const {
    for (size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<Bits> restricted_rows(const CirculantInstance& inst, const IndexSet& N) {
  const int n = inst.n();
  Bits in_n(n);
  for (int e : N) in_n.set(e);
  std::vector<Bits> rows(static_cast<size_t>(n), Bits(n));
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < inst.k(); ++t) {
      int j = inst.wrap(i + t);
      if (!in_n.test(j)) rows[static_cast<size_t>(i)].set(j);
    }
  }
  return rows;
}

void require_proper_subset(const CirculantInstance& inst, const IndexSet& N) {
  if (N.modulus() != inst.n()) throw InvalidArgument("index set modulus does not match instance");
  if (N.size() >= inst.n()) throw InvalidArgument("contraction set must be a proper subset of Z_n");
}

}  // namespace

bool BinaryMatrix::has_dominating_row() const {
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.size(); ++j)
      if (i != j && row_leq(rows[j], rows[i])) return true;
  return false;
}

IndexSet row_support(const CirculantInstance& inst, int i) {
  if (i < 0 || i >= inst.n()) throw InvalidArgument("row index out of range");
  std::vector<int> out;
  for (int t = 0; t < inst.k(); ++t) out.push_back(inst.wrap(i + t));
  return IndexSet(inst.n(), std::move(out));
}

bool is_cover(const CirculantInstance& inst, const IndexSet& x) {
  if (x.modulus() != inst.n()) throw InvalidArgument("index set modulus does not match instance");
  if (x.empty()) return false;
  const int r = x.size();
  for (int j = 0; j < r; ++j) {
    int next = (j + 1 < r) ? x[j + 1] : x[0] + inst.n();
    if (next - x[j] > inst.k()) return false;
  }
  return true;
}

bool is_cover_direct(const CirculantInstance& inst, const IndexSet& x) {
  auto ind = x.indicator();
  for (int i = 0; i < inst.n(); ++i) {
    int hits = 0;
    for (int t = 0; t < inst.k(); ++t) hits += ind[static_cast<size_t>(inst.wrap(i + t))];
    if (hits == 0) return false;
  }
  return true;
}

IndexSet canonical_min_cover(const CirculantInstance& inst, int i) {
  if (i < 0 || i >= inst.n()) throw InvalidArgument("start index out of range");
  std::vector<int> out;
  for (int h = 0; h <= inst.n() / inst.k(); ++h) out.push_back(inst.wrap(i + static_cast<long>(h) * inst.k()));
  return IndexSet(inst.n(), std::move(out));
}

CoveringNumber covering_number(const CirculantInstance& inst) {
  int value = (inst.n() + inst.k() - 1) / inst.k();
  return {value, canonical_min_cover(inst, 0)};
}

IndexSet dominating_rows(const CirculantInstance& inst, const IndexSet& N) {
  require_proper_subset(inst, N);
  const int n = inst.n();
  auto rows = restricted_rows(inst, N);
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    const Bits& ri = rows[static_cast<size_t>(i)];
    bool dominating = false;
    for (int j = 0; j < n && !dominating; ++j) {
      if (j == i) continue;
      const Bits& rj = rows[static_cast<size_t>(j)];
      if (!rj.subset_of(ri)) continue;
      if (!(rj == ri)) {
        dominating = true;
      } else {
        // Equal rows form a cyclic run; only the head of the run survives.
        dominating = rows[static_cast<size_t>(mod(i - 1, n))] == ri;
      }
    }
    if (dominating) out.push_back(i);
  }
  return IndexSet(n, std::move(out));
}

BinaryMatrix contract(const CirculantInstance& inst, const IndexSet& N) {
  IndexSet removed = dominating_rows(inst, N);
  BinaryMatrix m;
  for (int j = 0; j < inst.n(); ++j)
    if (!N.contains(j)) m.col_labels.push_back(j);
  for (int i = 0; i < inst.n(); ++i) {
    if (removed.contains(i)) continue;
    m.row_labels.push_back(i);
    std::vector<std::uint8_t> row(m.col_labels.size(), 0);
    for (size_t c = 0; c < m.col_labels.size(); ++c) {
      int offset = mod(m.col_labels[c] - i, inst.n());
      row[c] = offset < inst.k() ? 1 : 0;
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

BinaryMatrix circulant_matrix(const CirculantInstance& inst) { return contract(inst, IndexSet(inst.n())); }

std::optional<std::pair<int, int>> is_circulant_isomorphic(const BinaryMatrix& M) {
  const int m = M.num_rows();
  if (m != M.num_cols()) throw InvalidArgument("is_circulant_isomorphic needs a square matrix");
  if (m == 0) return std::nullopt;

  int width = -1;
  std::vector<bool> start_seen(static_cast<size_t>(m), false);
  for (const auto& row : M.rows) {
    int ones = 0;
    for (auto v : row) ones += v;
    if (ones == 0 || ones == m) return std::nullopt;
    if (width == -1) width = ones;
    if (ones != width) return std::nullopt;
    // A cyclic interval has exactly one position whose predecessor is zero.
    int start = -1;
    for (int c = 0; c < m; ++c) {
      if (row[static_cast<size_t>(c)] && !row[static_cast<size_t>(mod(c - 1, m))]) {
        if (start != -1) return std::nullopt;
        start = c;
      }
    }
    if (start == -1 || start_seen[static_cast<size_t>(start)]) return std::nullopt;
    start_seen[static_cast<size_t>(start)] = true;
  }
  if (width < 2 || width > m - 2) return std::nullopt;
  return std::make_pair(m, width);
}

CirculantInstance cycle_domination_instance(int n, int radius) {
  if (radius < 1) throw InvalidArgument("web radius must be positive");
  int k = 2 * radius + 1;
  if (k > n - 2)
    throw InvalidArgument("web with " + std::to_string(n) + " nodes is too small for radius " +
                          std::to_string(radius));
  return CirculantInstance(n, k);
}

}  // namespace circov
