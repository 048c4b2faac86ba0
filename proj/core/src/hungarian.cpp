#include "parkshare/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parkshare/errors.hpp"

namespace parkshare {

DistanceMatrix::DistanceMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), cells_(rows * cols, std::numeric_limits<double>::quiet_NaN()) {}

void DistanceMatrix::set(std::size_t r, std::size_t c, double km) {
  if (!(km >= 0.0) || !std::isfinite(km)) {
    std::ostringstream os;
    os << "distance must be finite and >= 0, got " << km;
    throw ParameterError(os.str());
  }
  cells_.at(r * cols_ + c) = km;
}

std::optional<double> DistanceMatrix::at(std::size_t r, std::size_t c) const {
  const double v = cells_[r * cols_ + c];
  if (std::isnan(v)) return std::nullopt;
  return v;
}

std::optional<double> DistanceMatrix::max_distance() const {
  std::optional<double> best;
  for (double v : cells_) {
    if (!std::isnan(v) && (!best || v > *best)) best = v;
  }
  return best;
}

DistanceMatrix distance_matrix(const MarketIndex& market) {
  DistanceMatrix matrix(market.num_drivers(), market.num_spots());
  for (std::size_t i = 0; i < market.num_drivers(); ++i) {
    const auto list = market.driver_list(i);
    const auto dist = market.driver_list_distances(i);
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (market.spot_rank(list[k], i) != MarketIndex::kUnranked) {
        matrix.set(i, list[k], dist[k]);
      }
    }
  }
  return matrix;
}

AssignmentWeights AssignmentWeights::for_matrix(const DistanceMatrix& distances) {
  AssignmentWeights w;
  w.upper_bound = distances.max_distance().value_or(0.0) + 1.0;
  const auto side = static_cast<double>(std::max(distances.rows(), distances.cols()));
  w.cardinality_base = side * w.upper_bound + 1.0;
  return w;
}

std::vector<std::size_t> solve_min_cost_assignment(std::span<const double> cost,
                                                   std::size_t n) {
  if (cost.size() != n * n) throw StructuralError("assignment cost matrix must be n x n");
  if (n == 0) return {};

  // Shortest augmenting paths with row/column potentials; index 0 is a
  // virtual column used as the root of each search.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);

  for (std::size_t row = 1; row <= n; ++row) {
    row_of_col[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t i0 = row_of_col[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (row_of_col[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      row_of_col[col0] = row_of_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= n; ++j) col_of_row[row_of_col[j] - 1] = j - 1;
  return col_of_row;
}

Matching hungarian_match(const DistanceMatrix& distances,
                         std::span<const DriverId> driver_ids,
                         std::span<const SpotId> spot_ids) {
  if (driver_ids.size() != distances.rows() || spot_ids.size() != distances.cols()) {
    throw StructuralError("id lists do not match distance matrix dimensions");
  }
  const std::size_t rows = distances.rows();
  const std::size_t cols = distances.cols();
  const std::size_t n = std::max(rows, cols);
  const auto weights = AssignmentWeights::for_matrix(distances);

  // Maximize weight == minimize negated weight. Padding cells stay at 0.
  std::vector<double> cost(n * n, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      cost[r * n + c] = -weights.weight(distances.at(r, c));
    }
  }
  const auto col_of_row = solve_min_cost_assignment(cost, n);

  Matching m;
  std::vector<bool> spot_taken(cols, false);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto c = col_of_row[r];
    if (c < cols && distances.at(r, c)) {
      m.pairs.push_back({driver_ids[r], spot_ids[c]});
      spot_taken[c] = true;
    } else {
      m.unmatched_drivers.push_back(driver_ids[r]);
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (!spot_taken[c]) m.unmatched_spots.push_back(spot_ids[c]);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  std::sort(m.unmatched_drivers.begin(), m.unmatched_drivers.end());
  std::sort(m.unmatched_spots.begin(), m.unmatched_spots.end());
  return m;
}

Matching hungarian_match(const MarketIndex& market) {
  return hungarian_match(distance_matrix(market), market.driver_ids(), market.spot_ids());
}

}  // namespace parkshare
