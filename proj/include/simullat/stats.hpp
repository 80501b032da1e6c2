#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace simullat {

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;  // two-sided
  std::size_t n = 0;     // rows kept after pairwise deletion
};

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman's rho: Pearson correlation of the average ranks. The p-value is
// exact (all permutations) for n <= 8 and uses the Student-t approximation
// with n-2 degrees of freedom above that.
//
// Throws DataError when the lengths differ, fewer than 3 rows remain, or a
// column is constant.
SpearmanResult spearman(std::span<const double> a, std::span<const double> b);

// Drops every row where either side is absent, then ranks what is left.
SpearmanResult spearman(std::span<const std::optional<double>> a,
                        std::span<const std::optional<double>> b);

}  // namespace simullat
