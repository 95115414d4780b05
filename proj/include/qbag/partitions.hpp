#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qbag/graph.hpp"

namespace qbag {

using Partition = std::vector<IdSet>;

inline constexpr std::size_t kMaxPartitionBase = 10;

std::uint64_t bell_number(std::size_t n);

// Set partitions of `base` in lexicographic restricted-growth-string order.
// Blocks are listed by their smallest element.
class PartitionStream {
 public:
  explicit PartitionStream(const IdSet& base, std::size_t max_size = kMaxPartitionBase);
  bool next(Partition& out);

 private:
  std::vector<ArgumentId> base_;
  std::vector<std::size_t> rgs_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Partition> enumerate_partitions(const IdSet& base);

// Uniform over restricted growth strings is not uniform over partitions; this
// draws a block count first and then assigns elements, which is enough for
// property tests.
Partition random_partition(const IdSet& base, std::mt19937_64& rng);

}  // namespace qbag
