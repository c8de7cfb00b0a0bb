#pragma once

#include <initializer_list>
#include <ostream>
#include <vector>

#include "circov/core.hpp"
#include "circov/rational.hpp"

namespace circov {

inline std::ostream& operator<<(std::ostream& os, const IndexSet& s) { return os << s.to_string(); }

}  // namespace circov

namespace testing {

inline circov::IndexSet S(int n, std::initializer_list<int> v) { return circov::IndexSet(n, std::vector<int>(v)); }

inline circov::RationalVector Q(std::initializer_list<const char*> v) {
  circov::RationalVector out;
  for (const char* s : v) out.push_back(circov::parse_rational(s));
  return out;
}

inline circov::RationalVector indicator(const circov::IndexSet& s) {
  circov::RationalVector out(static_cast<size_t>(s.modulus()));
  for (int i : s) out[static_cast<size_t>(i)] = 1;
  return out;
}

}  // namespace testing
