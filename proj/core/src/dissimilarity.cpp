#include "cellgroup/dissimilarity.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cellgroup/errors.hpp"

namespace cellgroup {

namespace {

constexpr std::size_t kEnumerationLimit = 9;
constexpr std::size_t kSubsetDpLimit = 20;

[[noreturn]] void same_part(RouteId i, RouteId j) {
  throw Error(ErrorCode::kSamePartPair, "dissimilarity: routes " + std::to_string(i.value()) + " and " +
                                            std::to_string(j.value()) + " belong to the same part");
}

std::vector<RouteId> checked_family(const DissimilarityMatrix& d, std::span<const RouteId> family) {
  if (family.size() < 2) {
    throw Error(ErrorCode::kFamilyTooSmall,
                "dissimilarity: a family needs at least two routes, got " + std::to_string(family.size()));
  }
  std::vector<RouteId> sorted(family.begin(), family.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      if (!d.at(sorted[a], sorted[b])) same_part(sorted[a], sorted[b]);
    }
  }
  return sorted;
}

}  // namespace

int route_dissimilarity(const Instance& instance, RouteId i, RouteId j) {
  if (instance.part_of(i) == instance.part_of(j)) same_part(i, j);
  const auto a = instance.row(i);
  const auto b = instance.row(j);
  int distance = 0;
  for (std::size_t m = 0; m < a.size(); ++m) distance += a[m] != b[m] ? 1 : 0;
  return distance;
}

std::optional<int> DissimilarityMatrix::at(RouteId i, RouteId j) const {
  if (i.value() < 1 || i.value() > n_ || j.value() < 1 || j.value() > n_) {
    throw Error(ErrorCode::kInvalidId, "dissimilarity: route pair out of range");
  }
  const int v = values_[i.index() * static_cast<std::size_t>(n_) + j.index()];
  if (v == kUndefined) return std::nullopt;
  return v;
}

int DissimilarityMatrix::operator()(RouteId i, RouteId j) const {
  const auto v = at(i, j);
  if (!v) same_part(i, j);
  return *v;
}

DissimilarityMatrix dissimilarity_matrix(const Instance& instance) {
  DissimilarityMatrix d;
  d.n_ = instance.route_count();
  const auto n = static_cast<std::size_t>(d.n_);
  d.values_.assign(n * n, DissimilarityMatrix::kUndefined);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto i = RouteId::from_index(a);
      const auto j = RouteId::from_index(b);
      if (instance.part_of(i) == instance.part_of(j)) continue;
      const int v = route_dissimilarity(instance, i, j);
      d.values_[a * n + b] = v;
      d.values_[b * n + a] = v;
    }
  }
  return d;
}

int family_cyclic_dissimilarity(const DissimilarityMatrix& d, std::span<const RouteId> family) {
  if (family.size() <= kEnumerationLimit) return detail::cyclic_dissimilarity_enumerate(d, family);
  return detail::cyclic_dissimilarity_subset_dp(d, family);
}

namespace detail {

int cyclic_dissimilarity_enumerate(const DissimilarityMatrix& d, std::span<const RouteId> family) {
  auto order = checked_family(d, family);
  int best = std::numeric_limits<int>::max();
  do {
    int total = 0;
    for (std::size_t a = 0; a < order.size(); ++a) total += d(order[a], order[(a + 1) % order.size()]);
    best = std::min(best, total);
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return best;
}

int cyclic_dissimilarity_subset_dp(const DissimilarityMatrix& d, std::span<const RouteId> family) {
  const auto members = checked_family(d, family);
  const std::size_t n = members.size();
  if (n > kSubsetDpLimit) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "dissimilarity: family of " + std::to_string(n) + " routes is too large for an exact cyclic value");
  }
  // best[mask][last]: cheapest path from members[0] through mask ending at last.
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  const std::size_t full = std::size_t{1} << n;
  std::vector<int> best(full * n, kInf);
  best[1 * n + 0] = 0;
  for (std::size_t mask = 1; mask < full; mask += 2) {
    for (std::size_t last = 0; last < n; ++last) {
      const int here = best[mask * n + last];
      if (here >= kInf) continue;
      for (std::size_t next = 1; next < n; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        const std::size_t grown = mask | (std::size_t{1} << next);
        auto& slot = best[grown * n + next];
        slot = std::min(slot, here + d(members[last], members[next]));
      }
    }
  }
  int result = kInf;
  for (std::size_t last = 1; last < n; ++last) {
    result = std::min(result, best[(full - 1) * n + last] + d(members[last], members[0]));
  }
  return result;
}

}  // namespace detail

}  // namespace cellgroup
