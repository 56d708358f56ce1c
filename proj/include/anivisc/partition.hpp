#pragma once

#include <cstddef>
#include <vector>

#include "anivisc/littlewood_paley.hpp"

namespace anivisc {

/// Chunks [t_k, t_{k+1}] on which
///   ||u||_{L~2([t_k,t_{k+1}]; B^{1,1/2})} (1 + ||u||_{L~inf([t_k,t_{k+1}]; B^{0,1/2})}) <= 1/cbar.
struct Partition {
  std::vector<double> times;       // t_0 = first snapshot < ... < t_K = last snapshot
  std::vector<std::size_t> cuts;   // snapshot indices of the times
  std::vector<double> products;    // per chunk
  bool satisfied = true;           // false if some single snapshot interval already exceeds the bound
  std::size_t chunks() const { return products.size(); }
};

/// The chunk product over snapshots first..last.
double chunk_product(const lp::NormTimeSeries& l2_b1, const lp::NormTimeSeries& linf_b0, std::size_t first,
                     std::size_t last);

/// Greedy left-to-right cut: each chunk is extended while the product stays
/// within 1/cbar. Throws std::invalid_argument for cbar <= 0, fewer than two
/// snapshots, or series with different times.
Partition time_partition(const lp::NormTimeSeries& l2_b1, const lp::NormTimeSeries& linf_b0, double cbar);

}  // namespace anivisc
