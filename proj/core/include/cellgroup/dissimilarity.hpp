#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cellgroup/ids.hpp"
#include "cellgroup/instance.hpp"

namespace cellgroup {

// Hamming distance between the incidence rows of two routes of distinct
// parts: the number of machines used by exactly one of them.
// Throws kSamePartPair if both routes belong to one part.
int route_dissimilarity(const Instance& instance, RouteId i, RouteId j);

// Pairwise dissimilarities over routes of distinct parts. Same-part pairs
// (including i == j) carry no value.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;

  int route_count() const { return n_; }
  std::optional<int> at(RouteId i, RouteId j) const;
  // Like at(), but throws kSamePartPair where no value is defined.
  int operator()(RouteId i, RouteId j) const;

 private:
  friend DissimilarityMatrix dissimilarity_matrix(const Instance& instance);

  static constexpr int kUndefined = -1;
  int n_ = 0;
  std::vector<int> values_;
};

DissimilarityMatrix dissimilarity_matrix(const Instance& instance);

// Minimum, over all cyclic orders of the family, of the summed
// dissimilarities between consecutive members (closing back to the first).
// Throws kFamilyTooSmall for fewer than two routes and kSamePartPair if two
// members share a part.
int family_cyclic_dissimilarity(const DissimilarityMatrix& d, std::span<const RouteId> family);

namespace detail {
// Anchors the smallest route and permutes the rest: (n-1)! orders.
int cyclic_dissimilarity_enumerate(const DissimilarityMatrix& d, std::span<const RouteId> family);
// Held-Karp over subsets, used once enumeration gets expensive.
int cyclic_dissimilarity_subset_dp(const DissimilarityMatrix& d, std::span<const RouteId> family);
}  // namespace detail

}  // namespace cellgroup
