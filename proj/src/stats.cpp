#include "simullat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "simullat/error.hpp"

namespace simullat {

namespace {

constexpr std::size_t kExactLimit = 8;

double pearson(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DataError("spearman: constant column has undefined ranks");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double exact_p_value(std::span<const double> rank_a, std::span<const double> rank_b,
                     double rho) {
  std::size_t total = 0;
  std::size_t extreme = 0;
  // All n! index permutations, so tied ranks keep their multiplicity.
  std::vector<std::size_t> order(rank_b.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> permuted(rank_b.size());
  do {
    for (std::size_t i = 0; i < order.size(); ++i) permuted[i] = rank_b[order[i]];
    ++total;
    if (std::abs(pearson(rank_a, permuted)) >= std::abs(rho) - 1e-12) ++extreme;
  } while (std::next_permutation(order.begin(), order.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

double t_p_value(double rho, std::size_t n) {
  if (std::abs(rho) >= 1.0) return 0.0;
  const auto dof = static_cast<double>(n - 2);
  const double t = rho * std::sqrt(dof / ((1.0 - rho) * (1.0 + rho)));
  const boost::math::students_t_distribution<double> dist(dof);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&values](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share rank mean(i+1 .. j+1)
    const double rank = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DataError("spearman: columns have different lengths (" + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()) + ")");
  }
  if (a.size() < 3) throw DataError("insufficient samples");
  const auto rank_a = average_ranks(a);
  const auto rank_b = average_ranks(b);

  SpearmanResult out;
  out.n = a.size();
  out.rho = pearson(rank_a, rank_b);
  out.p_value = out.n <= kExactLimit ? exact_p_value(rank_a, rank_b, out.rho)
                                     : t_p_value(out.rho, out.n);
  return out;
}

SpearmanResult spearman(std::span<const std::optional<double>> a,
                        std::span<const std::optional<double>> b) {
  if (a.size() != b.size()) {
    throw DataError("spearman: columns have different lengths (" + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()) + ")");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) {
      xs.push_back(*a[i]);
      ys.push_back(*b[i]);
    }
  }
  return spearman(std::span<const double>(xs), std::span<const double>(ys));
}

}  // namespace simullat
