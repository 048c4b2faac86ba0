#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "parkshare/ids.hpp"
#include "parkshare/matching.hpp"

namespace parkshare {

// Dense |D| x |P| distance table where an absent cell means "no edge".
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  // Throws ParameterError on a negative or non-finite distance.
  void set(std::size_t r, std::size_t c, double km);
  std::optional<double> at(std::size_t r, std::size_t c) const;

  std::optional<double> max_distance() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;  // NaN marks an absent edge
};

// Listed pairs of the market (mutually listed, with their list distance).
DistanceMatrix distance_matrix(const MarketIndex& market);

// Lexicographic (cardinality first, then distance) objective expressed as a
// single weight per cell: listed cells weigh base + (upper - distance), absent
// cells weigh 0. `upper` exceeds every distance and base = max(|D|,|P|) *
// upper + 1, so one extra matched pair always outweighs any distance saving.
struct AssignmentWeights {
  double upper_bound = 1.0;
  double cardinality_base = 1.0;

  static AssignmentWeights for_matrix(const DistanceMatrix& distances);
  double weight(std::optional<double> distance) const {
    return distance ? cardinality_base + (upper_bound - *distance) : 0.0;
  }
};

// Classical square assignment: returns column per row minimizing total cost.
// `cost` is row-major n x n. O(n^3) shortest augmenting paths with potentials.
std::vector<std::size_t> solve_min_cost_assignment(std::span<const double> cost,
                                                   std::size_t n);

// Maximum-cardinality matching over present cells that, among those, has the
// smallest total distance. The matrix is padded to square with zero-weight
// dummies; rows landing on a dummy or an absent cell are reported unmatched.
Matching hungarian_match(const DistanceMatrix& distances,
                         std::span<const DriverId> driver_ids,
                         std::span<const SpotId> spot_ids);
Matching hungarian_match(const MarketIndex& market);

}  // namespace parkshare
