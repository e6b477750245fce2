#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gic/instance.hpp"

namespace gic {

inline constexpr std::size_t default_enumeration_cap = 13;

/// Raised when an exhaustive search is asked to enumerate beyond its cap.
class SizeCapExceeded : public std::length_error {
 public:
  SizeCapExceeded(std::size_t size, std::size_t cap);
  std::size_t size() const { return size_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

/// Bell number B(n) by the Bell triangle; exact for n <= 25.
std::uint64_t bell_number(std::size_t n);

/// Set partitions of {0..n-1} as restricted growth strings, in
/// lexicographic order. labels()[x] is the block of element x.
class SetPartitions {
 public:
  explicit SetPartitions(std::size_t n, std::size_t cap = default_enumeration_cap);

  /// Enumerates only partitions whose first prefix.size() labels equal
  /// `prefix`, which must itself be a restricted growth string.
  SetPartitions(std::size_t n, std::span<const int> prefix, std::size_t cap = default_enumeration_cap);

  std::span<const int> labels() const { return labels_; }
  std::size_t block_count() const { return static_cast<std::size_t>(max_[labels_.size() - 1]) + 1; }
  std::vector<std::vector<std::size_t>> blocks() const;

  /// Advances to the next partition; false once the sequence is exhausted.
  bool next();

 private:
  std::size_t fixed_ = 1;
  std::vector<int> labels_;
  std::vector<int> max_;  // max_[x] = max(labels_[0..x])
};

struct PacketPartition {
  std::vector<PacketSet> blocks;

  bool operator==(const PacketPartition&) const = default;
};

struct UserPartition {
  std::vector<std::vector<UserId>> blocks;

  bool operator==(const UserPartition&) const = default;
};

/// Builds the partition induced by a restricted growth string over the
/// packets 1..m or over the users of an instance in canonical order.
PacketPartition packet_partition_from_labels(std::span<const int> labels);
UserPartition user_partition_from_labels(const GicInstance& instance, std::span<const int> labels);

/// Throws std::invalid_argument unless the blocks are nonempty, disjoint and
/// cover [1..m] (or every user).
void check_partition(const GicInstance& instance, const PacketPartition& partition);
void check_partition(const GicInstance& instance, const UserPartition& partition);

std::string to_string(const PacketPartition& partition);
std::string to_string(const UserPartition& partition);

struct PartitionSearchResult {
  int best = std::numeric_limits<int>::max();
  std::vector<int> labels;
  std::uint64_t evaluated = 0;
};

/// Minimizes `make_eval()(labels)` over all set partitions of n elements.
/// Ties go to the partition that comes first in enumeration order, so the
/// result is independent of `jobs`. Each worker calls `make_eval` once and
/// owns the returned evaluator.
template <class MakeEval>
PartitionSearchResult min_over_partitions(std::size_t n, std::size_t cap, unsigned jobs,
                                          MakeEval make_eval) {
  if (n == 0) {
    throw std::invalid_argument("partition search needs at least one element");
  }
  if (n > cap) {
    throw SizeCapExceeded(n, cap);
  }
  // Fan out over restricted-growth prefixes; the lexicographic order of the
  // full strings is the prefix order followed by completion order.
  const std::size_t depth = std::min<std::size_t>(n, 6);
  std::vector<std::vector<int>> prefixes;
  {
    SetPartitions heads(depth, depth);
    do {
      prefixes.emplace_back(heads.labels().begin(), heads.labels().end());
    } while (heads.next());
  }

  std::vector<PartitionSearchResult> per_prefix(prefixes.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    auto eval = make_eval();
    for (std::size_t t = cursor++; t < prefixes.size(); t = cursor++) {
      auto& slot = per_prefix[t];
      SetPartitions parts(n, prefixes[t], cap);
      do {
        ++slot.evaluated;
        const int value = eval(parts.labels());
        if (value < slot.best) {
          slot.best = value;
          slot.labels.assign(parts.labels().begin(), parts.labels().end());
        }
      } while (parts.next());
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(prefixes.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }

  PartitionSearchResult result;
  for (auto& slot : per_prefix) {
    result.evaluated += slot.evaluated;
    if (slot.best < result.best) {
      result.best = slot.best;
      result.labels = std::move(slot.labels);
    }
  }
  return result;
}

}  // namespace gic
