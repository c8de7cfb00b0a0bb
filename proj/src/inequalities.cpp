#include "circov/inequalities.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "circov/errors.hpp"
#include "circov/oracle.hpp"

namespace circov {

Rational LinearInequality::lhs(std::span<const Rational> x) const { return dot(coefficients, x); }

Rational LinearInequality::lhs(const IndexSet& x) const {
  Rational out = 0;
  for (int i : x) out += coefficients[static_cast<size_t>(i)];
  return out;
}

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

void require_instance_match(const CirculantInstance& inst, const CirculantMinor& minor) {
  if (minor.W.modulus() != inst.n()) throw InvalidArgument("minor does not belong to this instance");
}

// Echelon rows with unit pivots; tracks rank as covers stream in.
class RowBasis {
 public:
  explicit RowBasis(int dim) : dim_(dim) {}

  bool add(RationalVector v) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Rational factor = v[static_cast<size_t>(pivots_[r])];
      if (factor == 0) continue;
      for (int j = 0; j < dim_; ++j) v[static_cast<size_t>(j)] -= factor * rows_[r][static_cast<size_t>(j)];
    }
    int pivot = 0;
    while (pivot < dim_ && v[static_cast<size_t>(pivot)] == 0) ++pivot;
    if (pivot == dim_) return false;
    const Rational scale = v[static_cast<size_t>(pivot)];
    for (auto& e : v) e /= scale;
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  int dim_;
  std::vector<RationalVector> rows_;
  std::vector<int> pivots_;
};

RationalVector indicator_vector(const IndexSet& x) {
  RationalVector v(static_cast<size_t>(x.modulus()), Rational(0));
  for (int i : x) v[static_cast<size_t>(i)] = 1;
  return v;
}

}  // namespace

LinearInequality minor_inequality(const CirculantInstance& inst, const CirculantMinor& minor) {
  require_instance_match(inst, minor);
  LinearInequality out;
  out.coefficients.assign(static_cast<size_t>(inst.n()), Rational(1));
  for (int i : minor.W) out.coefficients[static_cast<size_t>(i)] = 2;
  out.rhs = ceil_div(minor.params.n_prime, minor.params.k_prime);
  return out;
}

LinearInequality cg_derivation(const CirculantInstance& inst, const CirculantMinor& minor) {
  require_instance_match(inst, minor);
  const int n = inst.n();
  const IndexSet removed = dominating_rows(inst, minor.contracted_set());
  std::vector<long> counts(static_cast<size_t>(n), 0);
  long surviving = 0;
  for (int i = 0; i < n; ++i) {
    if (removed.contains(i)) continue;
    ++surviving;
    for (int t = 0; t < inst.k(); ++t) ++counts[static_cast<size_t>(inst.wrap(i + t))];
  }
  const int kp = minor.params.k_prime;
  for (int j = 0; j < n; ++j) {
    const long expected = minor.W.contains(j) ? kp + 1 : kp;
    if (counts[static_cast<size_t>(j)] != expected) {
      throw ColumnCountMismatch("column " + std::to_string(j) + " of the surviving rows has " +
                                std::to_string(counts[static_cast<size_t>(j)]) + " ones, expected " +
                                std::to_string(expected));
    }
  }
  if (surviving != minor.params.n_prime)
    throw ColumnCountMismatch("surviving row count " + std::to_string(surviving) + " differs from n'");
  LinearInequality out;
  for (long c : counts) out.coefficients.emplace_back(c);
  out.rhs = surviving;
  return out;
}

LinearInequality round_up_divided(const LinearInequality& ineq, long divisor) {
  if (divisor <= 0) throw InvalidArgument("divisor must be positive");
  LinearInequality out;
  for (const auto& c : ineq.coefficients) out.coefficients.emplace_back(ceil(c / divisor));
  out.rhs = ceil(ineq.rhs / divisor);
  return out;
}

LinearInequality rank_inequality(const CirculantInstance& inst) {
  LinearInequality out;
  out.coefficients.assign(static_cast<size_t>(inst.n()), Rational(1));
  out.rhs = ceil_div(inst.n(), inst.k());
  return out;
}

LinearInequality row_inequality(const CirculantInstance& inst, int i) {
  LinearInequality out;
  out.coefficients.assign(static_cast<size_t>(inst.n()), Rational(0));
  for (int j : row_support(inst, i)) out.coefficients[static_cast<size_t>(j)] = 1;
  out.rhs = 1;
  return out;
}

bool is_relevant(const CirculantInstance& inst, const MinorParams& p) {
  const int r = p.n_prime % p.k_prime;
  const bool by_formula = r != 0 && static_cast<long>(p.d) * p.n3 >= static_cast<long>(inst.k()) * r;
  const bool direct = r != 0 && ceil_div(p.n_prime, p.k_prime) > ceil_div(inst.n(), inst.k());
  if (by_formula != direct) {
    throw InternalInvariant("relevance test d*n3 >= k*r disagrees with ceil(n'/k') > ceil(n/k) for n'=" +
                            std::to_string(p.n_prime) + ", k'=" + std::to_string(p.k_prime));
  }
  return by_formula;
}

bool facet_condition(const CirculantInstance& inst, const MinorParams& p) {
  return is_relevant(inst, p) && p.n_prime % p.k_prime == 1;
}

AlphaBeta alpha_beta_form(const CirculantInstance& inst, int d, int r) {
  const int k = inst.k();
  if (d < 1 || d > k - 2 || r < 1 || r >= k - d)
    throw InvalidArgument("alpha/beta need 1 <= d <= k-2 and 1 <= r < k-d");
  AlphaBeta out;
  out.alpha = ratio(inst.n(), k) - ratio(r, k - d) + 1;
  out.beta = ratio(1, static_cast<long>(k) * (k - d));
  return out;
}

std::vector<IndexSet> generate_facet_roots(const CirculantInstance& inst, const CirculantMinor& minor) {
  require_instance_match(inst, minor);
  if (!facet_condition(inst, minor.params))
    throw InvalidArgument("facet roots need a relevant minor with n' = 1 (mod k')");
  const int n = inst.n();
  const int k = inst.k();
  const int np = minor.params.n_prime;
  const int kp = minor.params.k_prime;
  const IndexSet N = minor.contracted_set();
  const LinearInequality ineq = minor_inequality(inst, minor);

  std::vector<int> v;  // Z_n - N in increasing order
  for (int j = 0; j < n; ++j)
    if (!N.contains(j)) v.push_back(j);
  if (static_cast<int>(v.size()) != np) throw InternalInvariant("|Z_n - N| differs from n'");
  auto vat = [&](long l) { return v[static_cast<size_t>(mod(l, np))]; };
  auto lifted = [&](int l) {
    std::vector<int> out;
    for (int s = 0; s <= np / kp; ++s) out.push_back(vat(l + static_cast<long>(s) * kp));
    return out;
  };
  auto in_row = [&](int i, int j) { return mod(j - i, n) < k; };

  std::vector<IndexSet> roots;
  for (int l = 0; l < np; ++l) roots.emplace_back(n, lifted(l));

  const int tau = (n + k - 1) / k;
  for (int i : N) {
    std::vector<int> z;
    if (!minor.W.contains(i)) {
      int l = 0;
      while (l < np && !(!in_row(i, vat(l)) && in_row(i, vat(l + 1)))) ++l;
      if (l == np) throw ConstructionFailure("no entry point into C^i", i);
      for (int e : lifted(l))
        if (e != vat(l)) z.push_back(e);
      z.push_back(i);
    } else {
      const IndexSet* cycle = nullptr;
      for (const auto& c : minor.cycles)
        if (c.contains(i)) cycle = &c;
      if (cycle == nullptr) throw ConstructionFailure("element of W on no dicycle", i);
      int s = 0;
      while (s < tau && cycle->contains(inst.wrap(i + static_cast<long>(s) * k))) ++s;
      if (s == tau) {
        for (int t = 0; t < tau; ++t) z.push_back(inst.wrap(i + static_cast<long>(t) * k));
      } else {
        int l = 0;
        while (l < np && !(!in_row(i, vat(l - 1)) && in_row(i, vat(l)))) ++l;
        if (l == np) throw ConstructionFailure("no entry point into C^i", i);
        std::vector<int> drop{vat(l - 1)};
        for (int t = 0; t < s; ++t) drop.push_back(vat(l + static_cast<long>(t) * kp));
        for (int e : lifted(l))
          if (std::find(drop.begin(), drop.end(), e) == drop.end()) z.push_back(e);
        for (int t = 0; t < s; ++t) z.push_back(inst.wrap(i + static_cast<long>(t) * k));
      }
    }
    roots.emplace_back(n, std::move(z));
  }

  for (size_t r = 0; r < roots.size(); ++r) {
    const int tag = r < static_cast<size_t>(np) ? -1 : N[static_cast<int>(r) - np];
    if (!is_cover(inst, roots[r]))
      throw ConstructionFailure("root " + roots[r].to_string() + " is not a cover", tag);
    if (ineq.lhs(roots[r]) != ineq.rhs)
      throw ConstructionFailure("root " + roots[r].to_string() + " is not tight", tag);
  }
  return roots;
}

RankVerdict is_facet_by_rank(const CirculantInstance& inst, const LinearInequality& ineq, int max_n) {
  if (ineq.dimension() != inst.n()) throw InvalidArgument("inequality dimension differs from n");
  if (ineq.rhs <= 0) throw InvalidArgument("rank facet test needs rhs > 0");
  RankVerdict out;
  RowBasis basis(inst.n());
  oracle::for_each_cover(
      inst,
      [&](const IndexSet& x) {
        const Rational lhs = ineq.lhs(x);
        if (lhs < ineq.rhs) throw InvalidInequality("cover " + x.to_string() + " violates the inequality");
        if (lhs == ineq.rhs) {
          ++out.roots_found;
          if (basis.rank() < inst.n()) basis.add(indicator_vector(x));
        }
      },
      {.max_n = max_n});
  out.rank = basis.rank();
  out.facet = out.rank == inst.n();
  return out;
}

FacetReport classify_minor(const CirculantInstance& inst, const CirculantMinor& minor, int rank_max_n) {
  FacetReport report;
  report.inequality = minor_inequality(inst, minor);
  report.relevant = is_relevant(inst, minor.params);
  report.facet_by_theorem = report.relevant && minor.params.n_prime % minor.params.k_prime == 1;
  if (report.facet_by_theorem) report.roots_found = static_cast<int>(generate_facet_roots(inst, minor).size());
  if (inst.n() <= rank_max_n) {
    auto verdict = is_facet_by_rank(inst, report.inequality, rank_max_n);
    report.facet_by_rank = verdict.facet;
    report.roots_found = verdict.roots_found;
  }
  return report;
}

R1Reduction reduce_to_r1(const CirculantInstance& inst, const CirculantMinor& minor) {
  const MinorParams& p = minor.params;
  const int k = inst.k();
  const int kp = p.k_prime;
  const int r = p.n_prime % kp;
  if (!is_relevant(inst, p)) throw InvalidArgument("reduce_to_r1 needs a relevant minor");
  if (r < 2) throw InvalidArgument("reduce_to_r1 needs n' mod k' >= 2");

  // The d dicycles taken together wind d*n1 times; trimming k(r-1) long arcs
  // into short ones keeps that winding and k'.
  const int winding = p.d * p.n1;
  const int n3 = p.d * p.n3 - k * (r - 1);
  const int n2 = p.d * p.n2 + (k + 1) * (r - 1);
  const int g = std::gcd(std::gcd(winding, n2), n3);
  R1Reduction out;
  out.params = MinorParams{g, winding / g, n2 / g, n3 / g, inst.n() - (n2 + n3), k - winding, 0};
  out.params.r = out.params.n_prime % out.params.k_prime;
  const long target = ceil_div(p.n_prime, kp);
  if (!params_exist(inst.n(), k, out.params.n1, out.params.n2, out.params.n3) || out.params.r != 1 ||
      ceil_div(out.params.n_prime, kp) != target || !is_relevant(inst, out.params)) {
    throw InternalInvariant("r-reduction produced inconsistent parameters");
  }

  if (p.d == 1 && p.n1 == 1) {
    const int keep = minor.W.size() - k * (r - 1);
    std::vector<int> w(minor.W.begin(), minor.W.begin() + keep);
    CirculantMinor reduced = validate_minor(inst, IndexSet(inst.n(), std::move(w)));
    if (!(reduced.params == out.params))
      throw InternalInvariant("prefix of W does not realize the reduced parameters");
    out.minor = std::move(reduced);
  }
  return out;
}

ConjectureRecord conjecture_resto1_check(const CirculantInstance& inst, const CirculantMinor& minor,
                                         int max_w_size) {
  const MinorParams& p = minor.params;
  if (!is_relevant(inst, p)) throw InvalidArgument("conjecture check needs a relevant minor");
  ConjectureRecord record;
  const int kp = p.k_prime;
  if (p.n_prime % kp == 1) {
    record.verdict = ConjectureVerdict::kPremiseTrivial;
    return record;
  }
  const int m = minor.W.size();
  if (m > max_w_size || m > 62) throw BudgetExceeded("W too large for subset search");
  const long target = ceil_div(p.n_prime, kp);

  for (int size = m - 1; size >= 1; --size) {
    std::uint64_t mask = (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << m;
    while (mask < limit) {
      ++record.subsets_examined;
      std::vector<int> w;
      for (int b = 0; b < m; ++b)
        if (mask >> b & 1U) w.push_back(minor.W[b]);
      try {
        CirculantMinor sub = validate_minor(inst, IndexSet(inst.n(), std::move(w)));
        const MinorParams& q = sub.params;
        if (q.k_prime == kp && q.n_prime % kp == 1 && ceil_div(q.n_prime, kp) >= target &&
            is_relevant(inst, q)) {
          record.verdict = ConjectureVerdict::kFound;
          record.witness = std::move(sub);
          return record;
        }
      } catch (const MalformedW&) {
      }
      // Next mask with the same popcount.
      const std::uint64_t c = mask & (~mask + 1);
      const std::uint64_t rr = mask + c;
      mask = (((rr ^ mask) >> 2) / c) | rr;
    }
  }
  record.verdict = ConjectureVerdict::kNotFound;
  return record;
}

const char* to_string(ConjectureVerdict v) {
  switch (v) {
    case ConjectureVerdict::kFound:
      return "found";
    case ConjectureVerdict::kNotFound:
      return "not-found";
    case ConjectureVerdict::kPremiseTrivial:
      return "premise-trivial";
  }
  return "?";
}

}  // namespace circov
