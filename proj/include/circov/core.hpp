#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace circov {

/// Residue of a modulo n in [0, n). All wraparound arithmetic goes through here.
constexpr int mod(long a, int n) {
  long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

/// The circulant matrix C_n^k: row i is the window {i, ..., i+k-1} of Z_n.
/// Requires 2 <= k <= n-2.
class CirculantInstance {
 public:
  CirculantInstance(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int wrap(long a) const { return mod(a, n_); }

  friend bool operator==(const CirculantInstance&, const CirculantInstance&) = default;

 private:
  int n_;
  int k_;
};

/// A subset of Z_n, stored sorted and duplicate free together with its modulus.
class IndexSet {
 public:
  explicit IndexSet(int n = 1) : n_(n) {}
  /// Throws InvalidArgument if an element is outside [0, n). Duplicates collapse.
  IndexSet(int n, std::vector<int> elements);

  /// Reduces every element modulo n first.
  static IndexSet from_residues(int n, std::span<const long> values);
  static IndexSet from_mask(int n, std::uint64_t mask);

  int modulus() const { return n_; }
  const std::vector<int>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool empty() const { return elements_.empty(); }
  bool contains(int i) const;
  int operator[](int pos) const { return elements_[static_cast<size_t>(pos)]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  /// {i + t mod n : i in this}.
  IndexSet rotated(int t) const;
  /// Characteristic vector as a bitmask. Requires n <= 64.
  std::uint64_t mask() const;
  std::vector<int> indicator() const;

  IndexSet set_union(const IndexSet& other) const;
  IndexSet set_difference(const IndexSet& other) const;
  bool is_subset_of(const IndexSet& other) const;

  std::string to_string() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.elements_ <=> b.elements_;
  }

 private:
  int n_;
  std::vector<int> elements_;
};

/// A 0/1 matrix with the original row and column labels it was cut from.
struct BinaryMatrix {
  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<int> row_labels;
  std::vector<int> col_labels;

  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_cols() const { return static_cast<int>(col_labels.size()); }
  bool has_zero_column() const;
  bool has_dominating_row() const;
};

/// C^i = {i, i+1, ..., i+k-1}.
IndexSet row_support(const CirculantInstance& inst, int i);

/// Cover test by the gap criterion: consecutive elements of x (cyclically) are
/// at most k apart.
bool is_cover(const CirculantInstance& inst, const IndexSet& x);
/// Cover test straight from the definition Ax >= 1.
bool is_cover_direct(const CirculantInstance& inst, const IndexSet& x);

/// x^i = {i + hk : 0 <= h <= floor(n/k)}. Has ceil(n/k) elements.
IndexSet canonical_min_cover(const CirculantInstance& inst, int i);

struct CoveringNumber {
  int value;
  IndexSet witness;
};
CoveringNumber covering_number(const CirculantInstance& inst);

/// Rows of C_n^k restricted to the columns outside N that dominate another row.
/// Among rows that become identical (always a cyclic run) the first of the run
/// is kept and the others are reported.
IndexSet dominating_rows(const CirculantInstance& inst, const IndexSet& N);

/// C_n^k / N: drop the columns in N and the rows in dominating_rows(N).
BinaryMatrix contract(const CirculantInstance& inst, const IndexSet& N);

/// The full matrix C_n^k.
BinaryMatrix circulant_matrix(const CirculantInstance& inst);

/// (n', k') when M is C_{n'}^{k'} up to row permutation with its columns taken
/// in their given order, read cyclically. Contraction minors of circulants never
/// need a column permutation, so no wider search is done.
std::optional<std::pair<int, int>> is_circulant_isomorphic(const BinaryMatrix& M);

/// Closed neighbourhood matrix of the web with n nodes and radius s,
/// C_n^{2s+1}. s = 1 gives the n-cycle.
CirculantInstance cycle_domination_instance(int n, int radius = 1);

}  // namespace circov
