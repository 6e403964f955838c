#pragma once

#include <vector>

#include "hillband/chebyshev.hpp"

namespace hillband {

/// Size above which matching falls back from the Hungarian method to greedy
/// assignment with pairwise swap repair.
inline constexpr std::size_t kHungarianLimit = 64;

/// Permutation perm minimising sum_i |from[i] - to[perm[i]]|^2.
/// Exact (Hungarian) for sizes up to kHungarianLimit.
std::vector<std::size_t> match_points(const std::vector<cplx>& from, const std::vector<cplx>& to);

/// Hungarian method on a square row-major cost matrix; returns the column
/// assigned to each row.
std::vector<std::size_t> hungarian_assignment(const std::vector<double>& cost, std::size_t n);

}  // namespace hillband
