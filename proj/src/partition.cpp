#include "gic/partition.hpp"

#include <sstream>
#include <string>

namespace gic {

SizeCapExceeded::SizeCapExceeded(std::size_t size, std::size_t cap)
    : std::length_error("exhaustive search over " + std::to_string(size) +
                        " elements exceeds the enumeration cap of " + std::to_string(cap) +
                        " (override the cap to force it)"),
      size_(size),
      cap_(cap) {}

std::uint64_t bell_number(std::size_t n) {
  if (n > 25) {
    throw std::overflow_error("bell_number: B(n) overflows 64 bits for n > 25");
  }
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) {
      next.push_back(next.back() + v);
    }
    row = std::move(next);
  }
  return row.front();
}

SetPartitions::SetPartitions(std::size_t n, std::size_t cap) : SetPartitions(n, {}, cap) {}

SetPartitions::SetPartitions(std::size_t n, std::span<const int> prefix, std::size_t cap) {
  if (n == 0) {
    throw std::invalid_argument("set partitions need at least one element");
  }
  if (n > cap) {
    throw SizeCapExceeded(n, cap);
  }
  if (prefix.size() > n) {
    throw std::invalid_argument("partition prefix is longer than the ground set");
  }
  labels_.assign(n, 0);
  max_.assign(n, 0);
  int running = -1;
  for (std::size_t x = 0; x < prefix.size(); ++x) {
    if (prefix[x] < 0 || prefix[x] > running + 1) {
      throw std::invalid_argument("partition prefix is not a restricted growth string");
    }
    labels_[x] = prefix[x];
    running = std::max(running, prefix[x]);
    max_[x] = running;
  }
  for (std::size_t x = prefix.size(); x < n; ++x) {
    max_[x] = std::max(running, 0);
  }
  fixed_ = std::max<std::size_t>(1, prefix.size());
}

bool SetPartitions::next() {
  const std::size_t n = labels_.size();
  for (std::size_t i = n; i-- > fixed_;) {
    if (labels_[i] <= max_[i - 1]) {
      ++labels_[i];
      max_[i] = std::max(max_[i - 1], labels_[i]);
      for (std::size_t j = i + 1; j < n; ++j) {
        labels_[j] = 0;
        max_[j] = max_[i];
      }
      return true;
    }
  }
  return false;
}

std::vector<std::vector<std::size_t>> SetPartitions::blocks() const {
  std::vector<std::vector<std::size_t>> out(block_count());
  for (std::size_t x = 0; x < labels_.size(); ++x) {
    out[static_cast<std::size_t>(labels_[x])].push_back(x);
  }
  return out;
}

PacketPartition packet_partition_from_labels(std::span<const int> labels) {
  PacketPartition out;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    const auto b = static_cast<std::size_t>(labels[x]);
    if (out.blocks.size() <= b) {
      out.blocks.resize(b + 1);
    }
    out.blocks[b].push_back(static_cast<int>(x + 1));
  }
  return out;
}

UserPartition user_partition_from_labels(const GicInstance& instance, std::span<const int> labels) {
  if (labels.size() != instance.user_count()) {
    throw std::invalid_argument("label count does not match the user count");
  }
  UserPartition out;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    const auto b = static_cast<std::size_t>(labels[x]);
    if (out.blocks.size() <= b) {
      out.blocks.resize(b + 1);
    }
    out.blocks[b].push_back(instance.user(x).id);
  }
  return out;
}

void check_partition(const GicInstance& instance, const PacketPartition& partition) {
  const int m = instance.packet_count();
  std::vector<int> seen(static_cast<std::size_t>(m) + 1, 0);
  for (const auto& block : partition.blocks) {
    if (block.empty()) {
      throw std::invalid_argument("packet partition has an empty block");
    }
    for (int p : block) {
      if (p < 1 || p > m) {
        throw std::invalid_argument("packet partition names packet " + std::to_string(p) +
                                    " outside [1.." + std::to_string(m) + "]");
      }
      if (seen[static_cast<std::size_t>(p)]++ > 0) {
        throw std::invalid_argument("packet " + std::to_string(p) + " appears in two blocks");
      }
    }
  }
  for (int p = 1; p <= m; ++p) {
    if (seen[static_cast<std::size_t>(p)] == 0) {
      throw std::invalid_argument("packet partition misses packet " + std::to_string(p));
    }
  }
}

void check_partition(const GicInstance& instance, const UserPartition& partition) {
  std::vector<int> seen(instance.user_count(), 0);
  for (const auto& block : partition.blocks) {
    if (block.empty()) {
      throw std::invalid_argument("user partition has an empty block");
    }
    for (auto id : block) {
      const auto idx = instance.find(id);
      if (!idx) {
        throw std::invalid_argument("user partition names unknown user " + to_string(id));
      }
      if (seen[*idx]++ > 0) {
        throw std::invalid_argument("user " + to_string(id) + " appears in two blocks");
      }
    }
  }
  for (std::size_t idx = 0; idx < seen.size(); ++idx) {
    if (seen[idx] == 0) {
      throw std::invalid_argument("user partition misses user " + to_string(instance.user(idx).id));
    }
  }
}

std::string to_string(const PacketPartition& partition) {
  std::ostringstream out;
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    out << (b == 0 ? "" : " ") << '{';
    for (std::size_t i = 0; i < partition.blocks[b].size(); ++i) {
      out << (i == 0 ? "" : ",") << partition.blocks[b][i];
    }
    out << '}';
  }
  return out.str();
}

std::string to_string(const UserPartition& partition) {
  std::ostringstream out;
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    out << (b == 0 ? "" : " ") << '{';
    for (std::size_t i = 0; i < partition.blocks[b].size(); ++i) {
      out << (i == 0 ? "" : ",") << to_string(partition.blocks[b][i]);
    }
    out << '}';
  }
  return out.str();
}

}  // namespace gic
