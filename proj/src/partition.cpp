#include "anivisc/partition.hpp"

#include <stdexcept>

namespace anivisc {

double chunk_product(const lp::NormTimeSeries& l2_b1, const lp::NormTimeSeries& linf_b0, std::size_t first,
                     std::size_t last) {
  return lp::chemin_lerner_norm(l2_b1, 2.0, first, last) *
         (1.0 + lp::chemin_lerner_norm(linf_b0, INFINITY, first, last));
}

Partition time_partition(const lp::NormTimeSeries& l2_b1, const lp::NormTimeSeries& linf_b0, double cbar) {
  if (!(cbar > 0.0)) throw std::invalid_argument("cbar must be positive");
  if (l2_b1.size() < 2) throw std::invalid_argument("partition needs at least two snapshots");
  if (l2_b1.times != linf_b0.times) throw std::invalid_argument("norm series have different snapshot times");
  const double bound = 1.0 / cbar;
  const std::size_t n = l2_b1.size();
  Partition p;
  p.times.push_back(l2_b1.times[0]);
  p.cuts.push_back(0);
  std::size_t start = 0;
  while (start + 1 < n) {
    std::size_t end = start + 1;
    double prod = chunk_product(l2_b1, linf_b0, start, end);
    if (prod > bound) {
      p.satisfied = false;
    } else {
      while (end + 1 < n) {
        const double next = chunk_product(l2_b1, linf_b0, start, end + 1);
        if (next > bound) break;
        ++end;
        prod = next;
      }
    }
    p.times.push_back(l2_b1.times[end]);
    p.cuts.push_back(end);
    p.products.push_back(prod);
    start = end;
  }
  return p;
}

}  // namespace anivisc
