#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace optwin::detail {

// Multiset of sample indices of a fixed array, ordered by (value, index).
// Fenwick trees over the ranks give O(log N) insert, erase, k-th smallest
// and prefix sums of values.
class RankedWindow {
 public:
  explicit RankedWindow(std::span<const double> values)
      : rank_of_(values.size()), sorted_(values.size()), count_(values.size() + 1, 0),
        sum_(values.size() + 1, 0.0) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    for (std::size_t r = 0; r < order.size(); ++r) {
      rank_of_[order[r]] = r;
      sorted_[r] = values[order[r]];
    }
    log_ = 1;
    while ((log_ << 1) <= sorted_.size()) log_ <<= 1;
  }

  void insert(std::size_t index) { update(rank_of_[index], 1, sorted_[rank_of_[index]]); }
  void erase(std::size_t index) { update(rank_of_[index], -1, -sorted_[rank_of_[index]]); }

  // Rank of the k-th smallest present element, k 0-based.
  std::size_t kth(std::size_t k) const {
    std::size_t pos = 0;
    long remaining = static_cast<long>(k) + 1;
    for (std::size_t step = log_; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < count_.size() && count_[next] < remaining) {
        pos = next;
        remaining -= count_[next];
      }
    }
    return pos;  // 1-based Fenwick position pos+1 holds it, i.e. rank pos
  }

  double value_at_rank(std::size_t rank) const { return sorted_[rank]; }

  // Present elements with rank < `rank`: count and value sum.
  long count_below(std::size_t rank) const {
    long c = 0;
    for (std::size_t i = rank; i > 0; i -= i & (~i + 1)) c += count_[i];
    return c;
  }
  double sum_below(std::size_t rank) const {
    double s = 0.0;
    for (std::size_t i = rank; i > 0; i -= i & (~i + 1)) s += sum_[i];
    return s;
  }

 private:
  void update(std::size_t rank, long dc, double ds) {
    for (std::size_t i = rank + 1; i < count_.size(); i += i & (~i + 1)) {
      count_[i] += dc;
      sum_[i] += ds;
    }
  }

  std::vector<std::size_t> rank_of_;
  std::vector<double> sorted_;
  std::vector<long> count_;
  std::vector<double> sum_;
  std::size_t log_ = 1;
};

}  // namespace optwin::detail
