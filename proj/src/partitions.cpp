#include "qbag/partitions.hpp"

#include <algorithm>
#include <string>

namespace qbag {

std::uint64_t bell_number(std::size_t n) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

PartitionStream::PartitionStream(const IdSet& base, std::size_t max_size) : base_(base.begin(), base.end()) {
  if (base_.size() > max_size) {
    throw Error(ErrorCode::BudgetExceeded, "partition enumeration over " + std::to_string(base_.size()) +
                                               " elements exceeds the limit of " + std::to_string(max_size) +
                                               " (Bell number " + std::to_string(bell_number(base_.size())) + ")");
  }
  rgs_.assign(base_.size(), 0);
}

bool PartitionStream::next(Partition& out) {
  if (done_) return false;
  if (started_) {
    // Rightmost position that can still grow.
    std::size_t n = rgs_.size();
    std::vector<std::size_t> prefix_max(n, 0);
    for (std::size_t i = 1; i < n; ++i) prefix_max[i] = std::max(prefix_max[i - 1], rgs_[i - 1]);
    std::size_t i = n;
    for (std::size_t j = n; j-- > 1;) {
      if (rgs_[j] <= prefix_max[j]) {
        i = j;
        break;
      }
    }
    if (i == n) {
      done_ = true;
      return false;
    }
    ++rgs_[i];
    std::fill(rgs_.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs_.end(), 0);
  }
  started_ = true;
  std::size_t blocks = rgs_.empty() ? 0 : *std::max_element(rgs_.begin(), rgs_.end()) + 1;
  out.assign(blocks, {});
  for (std::size_t i = 0; i < rgs_.size(); ++i) out[rgs_[i]].insert(base_[i]);
  return true;
}

std::vector<Partition> enumerate_partitions(const IdSet& base) {
  PartitionStream stream(base);
  std::vector<Partition> out;
  Partition p;
  while (stream.next(p)) out.push_back(p);
  return out;
}

Partition random_partition(const IdSet& base, std::mt19937_64& rng) {
  if (base.empty()) return {};
  std::uniform_int_distribution<std::size_t> count(1, base.size());
  const std::size_t k = count(rng);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  std::vector<IdSet> blocks(k);
  for (const auto& id : base) blocks[pick(rng)].insert(id);
  Partition out;
  for (auto& b : blocks) {
    if (!b.empty()) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace qbag
