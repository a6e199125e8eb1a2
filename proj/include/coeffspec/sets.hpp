#ifndef COEFFSPEC_SETS_HPP
#define COEFFSPEC_SETS_HPP

#include <algorithm>
#include <vector>

namespace coeffspec {

/// Index sets are sorted vectors of distinct ints throughout.
using IndexSet = std::vector<int>;

inline bool set_contains(const IndexSet& s, int x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline IndexSet set_intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline bool set_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline IndexSet set_sorted_unique(IndexSet v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace coeffspec

#endif  // COEFFSPEC_SETS_HPP
