#include "hillband/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hillband {

namespace {

double sq(cplx z) { return std::norm(z); }

std::vector<std::size_t> greedy_with_swaps(const std::vector<cplx>& from,
                                           const std::vector<cplx>& to) {
  const std::size_t n = from.size();
  struct Pair {
    double cost;
    std::size_t row, col;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pairs.push_back({sq(from[i] - to[j]), i, j});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.cost < b.cost; });

  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> perm(n, kUnset);
  std::vector<bool> taken(n, false);
  for (const Pair& p : pairs) {
    if (perm[p.row] != kUnset || taken[p.col]) continue;
    perm[p.row] = p.col;
    taken[p.col] = true;
  }

  // 2-opt repair until no exchange lowers the total.
  bool improved = true;
  for (int sweep = 0; improved && sweep < 100; ++sweep) {
    improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double now = sq(from[i] - to[perm[i]]) + sq(from[j] - to[perm[j]]);
        const double swapped = sq(from[i] - to[perm[j]]) + sq(from[j] - to[perm[i]]);
        if (swapped < now) {
          std::swap(perm[i], perm[j]);
          improved = true;
        }
      }
    }
  }
  return perm;
}

}  // namespace

std::vector<std::size_t> hungarian_assignment(const std::vector<double>& cost, std::size_t n) {
  if (cost.size() != n * n) throw std::invalid_argument("hungarian_assignment: cost is not n x n");
  if (n == 0) return {};
  // Shortest augmenting path formulation with row/column potentials;
  // index 0 is a sentinel, rows and columns are 1-based internally.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), w(n + 1, 0.0);
  std::vector<std::size_t> col_owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    col_owner[0] = row;
    std::size_t col0 = 0;
    std::vector<double> min_v(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r = col_owner[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double reduced = cost[(r - 1) * n + (c - 1)] - u[r] - w[c];
        if (reduced < min_v[c]) {
          min_v[c] = reduced;
          way[c] = col0;
        }
        if (min_v[c] < delta) {
          delta = min_v[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[col_owner[c]] += delta;
          w[c] -= delta;
        } else {
          min_v[c] -= delta;
        }
      }
      col0 = col1;
    } while (col_owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      col_owner[col0] = col_owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t c = 1; c <= n; ++c) assignment[col_owner[c] - 1] = c - 1;
  return assignment;
}

std::vector<std::size_t> match_points(const std::vector<cplx>& from, const std::vector<cplx>& to) {
  if (from.size() != to.size()) throw std::invalid_argument("match_points: size mismatch");
  const std::size_t n = from.size();
  if (n > kHungarianLimit) return greedy_with_swaps(from, to);
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = sq(from[i] - to[j]);
  return hungarian_assignment(cost, n);
}

}  // namespace hillband
