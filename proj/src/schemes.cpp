#include "gic/schemes.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <sstream>

#include "gic/linalg.hpp"

namespace gic {
namespace {

int intersection_size(const PacketSet& a, const PacketSet& b) {
  int count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

const User& user_of(const GicInstance& instance, UserId id) {
  const auto idx = instance.find(id);
  if (!idx) {
    throw std::invalid_argument("unknown user " + to_string(id));
  }
  return instance.user(*idx);
}

struct BlockCode {
  PacketSet packets;  // Y_e
  int rows = 0;       // b_e
};

std::vector<BlockCode> block_codes(const GicInstance& instance, const UserPartition& partition) {
  check_partition(instance, partition);
  std::vector<BlockCode> out;
  out.reserve(partition.blocks.size());
  for (const auto& block : partition.blocks) {
    BlockCode code;
    code.packets = demanded_packets(block);
    int c = static_cast<int>(code.packets.size());
    for (auto id : block) {
      c = std::min(c, intersection_size(user_of(instance, id).side_info, code.packets));
    }
    code.rows = static_cast<int>(code.packets.size()) - c;
    out.push_back(std::move(code));
  }
  return out;
}

bool binary_code(const BlockCode& code) {
  return code.rows == 1 || code.rows == static_cast<int>(code.packets.size());
}

FieldSpec field_for(const std::vector<BlockCode>& codes) {
  FieldSpec field = gf2;
  for (const auto& code : codes) {
    if (!binary_code(code)) {
      field = std::max(field, cauchy_field(code.packets.size(), static_cast<std::size_t>(code.rows)));
    }
  }
  return field;
}

void place_block(CodingMatrix& out, const PacketSet& packets, const CodingMatrix& generator) {
  std::vector<GaloisField::element> row(out.cols(), 0);
  for (std::size_t r = 0; r < generator.rows(); ++r) {
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t j = 0; j < packets.size(); ++j) {
      row[static_cast<std::size_t>(packets[j] - 1)] = generator(r, j);
    }
    out.append_row(row);
  }
}

CodingMatrix stack_codes(const GicInstance& instance, const std::vector<BlockCode>& codes,
                         FieldSpec field) {
  CodingMatrix out(0, static_cast<std::size_t>(instance.packet_count()), field);
  for (const auto& code : codes) {
    place_block(out, code.packets,
                mds_generator(code.packets.size(), static_cast<std::size_t>(code.rows), field));
  }
  return out;
}

bool block_decodes(const GicInstance& instance, std::span<const UserId> block,
                   const CodingMatrix& rows) {
  return std::all_of(block.begin(), block.end(), [&](UserId id) {
    return solve_decode(rows, user_of(instance, id).side_info, id.packet).has_value();
  });
}

std::uint64_t bit(int packet) { return std::uint64_t{1} << (packet - 1); }

void require_mask_width(const GicInstance& instance) {
  if (instance.packet_count() > 64) {
    throw std::invalid_argument("exhaustive search supports at most 64 packets");
  }
}

std::vector<std::uint64_t> side_masks(const GicInstance& instance) {
  std::vector<std::uint64_t> masks;
  for (const auto& u : instance.users()) {
    std::uint64_t mask = 0;
    for (int p : u.side_info) {
      mask |= bit(p);
    }
    masks.push_back(mask);
  }
  return masks;
}

// Per-block Y_e masks and b_e for a labelling of the users.
struct UserBlocks {
  std::vector<std::uint64_t> demand;
  std::vector<int> minimum;

  void assign(std::span<const int> labels, const std::vector<int>& packet_of,
              const std::vector<std::uint64_t>& side) {
    std::size_t blocks = 0;
    for (int l : labels) {
      blocks = std::max(blocks, static_cast<std::size_t>(l) + 1);
    }
    demand.assign(blocks, 0);
    minimum.assign(blocks, 64);
    for (std::size_t u = 0; u < labels.size(); ++u) {
      demand[static_cast<std::size_t>(labels[u])] |= bit(packet_of[u]);
    }
    for (std::size_t u = 0; u < labels.size(); ++u) {
      const auto b = static_cast<std::size_t>(labels[u]);
      minimum[b] = std::min(minimum[b], std::popcount(side[u] & demand[b]));
    }
  }

  int rows(std::size_t b) const { return std::popcount(demand[b]) - minimum[b]; }
};

std::vector<int> packets_of(const GicInstance& instance) {
  std::vector<int> out;
  for (const auto& u : instance.users()) {
    out.push_back(u.id.packet);
  }
  return out;
}

}  // namespace

std::string describe_witness(const Witness& witness) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "-"; }
    std::string operator()(const PacketPartition& p) const { return to_string(p); }
    std::string operator()(const UserPartition& p) const { return to_string(p); }
    std::string operator()(const std::vector<SubsetSummary>& subsets) const {
      std::ostringstream out;
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        out << (s == 0 ? "" : " ") << '[';
        for (std::size_t i = 0; i < subsets[s].key.size(); ++i) {
          out << to_string(subsets[s].key[i]);
        }
        out << "]:";
        for (std::size_t g = 0; g < subsets[s].packet_groups.size(); ++g) {
          out << (g == 0 ? "" : "+") << '{';
          const auto& group = subsets[s].packet_groups[g];
          for (std::size_t i = 0; i < group.size(); ++i) {
            out << (i == 0 ? "" : ",") << group[i];
          }
          out << '}';
        }
      }
      return out.str();
    }
  };
  return std::visit(Visitor{}, witness);
}

PacketSet demanded_packets(std::span<const UserId> block) {
  PacketSet out;
  for (auto id : block) {
    out.push_back(id.packet);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> copies_in_block(std::span<const UserId> block, int packet) {
  std::vector<int> out;
  for (auto id : block) {
    if (id.packet == packet) {
      out.push_back(id.copy);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PpmEvaluation ppm_rate(const GicInstance& instance, const PacketPartition& partition) {
  check_partition(instance, partition);
  PpmEvaluation out;
  for (const auto& block : partition.blocks) {
    PacketSet sorted = block;
    std::sort(sorted.begin(), sorted.end());
    int d = static_cast<int>(sorted.size());
    for (int p : sorted) {
      for (auto idx : instance.demanders(p)) {
        d = std::min(d, intersection_size(instance.user(idx).side_info, sorted));
      }
    }
    out.d.push_back(d);
    out.rate += static_cast<int>(sorted.size()) - d;
  }
  return out;
}

UpmEvaluation upm_rate(const GicInstance& instance, const UserPartition& partition) {
  check_partition(instance, partition);
  UpmEvaluation out;
  for (const auto& block : partition.blocks) {
    const auto packets = demanded_packets(block);
    int c = static_cast<int>(packets.size());
    for (auto id : block) {
      c = std::min(c, intersection_size(user_of(instance, id).side_info, packets));
    }
    out.c.push_back(c);
    out.rate += static_cast<int>(packets.size()) - c;
  }
  return out;
}

CodingMatrix build_transmissions(const GicInstance& instance, const UserPartition& partition) {
  const auto codes = block_codes(instance, partition);
  return stack_codes(instance, codes, field_for(codes));
}

UserPartition ppm_as_upm(const GicInstance& instance, const PacketPartition& partition) {
  check_partition(instance, partition);
  UserPartition out;
  for (const auto& block : partition.blocks) {
    std::vector<UserId> users;
    for (int p : block) {
      for (auto idx : instance.demanders(p)) {
        users.push_back(instance.user(idx).id);
      }
    }
    std::sort(users.begin(), users.end());
    out.blocks.push_back(std::move(users));
  }
  return out;
}

UserPartition side_info_groups(const GicInstance& instance) {
  std::map<PacketSet, std::size_t> index;
  UserPartition out;
  for (const auto& u : instance.users()) {
    PacketSet closure = u.side_info;
    closure.insert(std::upper_bound(closure.begin(), closure.end(), u.id.packet), u.id.packet);
    auto [it, inserted] = index.try_emplace(closure, out.blocks.size());
    if (inserted) {
      out.blocks.emplace_back();
    }
    out.blocks[it->second].push_back(u.id);
  }
  return out;
}

UserPartition group_partition(const GroupStructure& groups) {
  UserPartition out;
  for (int l = 1; l <= groups.k(); ++l) {
    out.blocks.push_back(groups.users(l));
  }
  return out;
}

std::string to_string(const CoefficientPolicy& policy) {
  if (policy.kind == CoefficientPolicy::Kind::deterministic) {
    return "deterministic";
  }
  return "randomized(trials=" + std::to_string(policy.trials) +
         ",seed=" + std::to_string(policy.seed) + ")";
}

IupmEvaluation iupm_rate(const GicInstance& instance, const UserPartition& partition,
                         const CoefficientPolicy& policy) {
  const auto codes = block_codes(instance, partition);
  const auto deterministic = stack_codes(instance, codes, field_for(codes));

  IupmEvaluation best{static_cast<int>(rank(deterministic)), row_basis(deterministic), "deterministic"};
  if (policy.kind == CoefficientPolicy::Kind::deterministic) {
    return best;
  }

  const FieldSpec field = std::max(gf256, field_for(codes));
  std::mt19937_64 rng(policy.seed);
  std::uniform_int_distribution<unsigned> nonzero(1, field.order() - 1);
  for (int trial = 1; trial <= policy.trials; ++trial) {
    CodingMatrix stacked(0, static_cast<std::size_t>(instance.packet_count()), field);
    for (std::size_t e = 0; e < codes.size(); ++e) {
      const auto& code = codes[e];
      const auto n = code.packets.size();
      const auto r = static_cast<std::size_t>(code.rows);
      if (binary_code(code)) {
        place_block(stacked, code.packets, mds_generator(n, r, field));
        continue;
      }
      CodingMatrix own(0, stacked.cols(), field);
      bool valid = false;
      for (int draw = 0; draw < 64 && !valid; ++draw) {
        CodingMatrix generator(r, n, field);
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            generator(i, j) = static_cast<GaloisField::element>(nonzero(rng));
          }
        }
        own = CodingMatrix(0, stacked.cols(), field);
        place_block(own, code.packets, generator);
        valid = block_decodes(instance, partition.blocks[e], own);
      }
      if (!valid) {
        own = CodingMatrix(0, stacked.cols(), field);
        place_block(own, code.packets, mds_generator(n, r, field));
      }
      stacked.append_rows(own);
    }
    const int r = static_cast<int>(rank(stacked));
    if (r < best.rate) {
      best = {r, row_basis(stacked),
              "randomized(trial=" + std::to_string(trial) + ",seed=" + std::to_string(policy.seed) + ")"};
    }
  }
  return best;
}

SchemeSolution upm_solution(const GicInstance& instance, const UserPartition& partition,
                            std::string scheme) {
  SchemeSolution out;
  out.scheme = std::move(scheme);
  out.rate = upm_rate(instance, partition).rate;
  out.transmissions = build_transmissions(instance, partition);
  out.witness = partition;
  return out;
}

SchemeSolution iupm_solution(const GicInstance& instance, const UserPartition& partition,
                             const CoefficientPolicy& policy, std::string scheme) {
  auto eval = iupm_rate(instance, partition, policy);
  SchemeSolution out;
  out.scheme = std::move(scheme);
  out.rate = eval.rate;
  out.transmissions = std::move(eval.basis);
  out.witness = partition;
  out.detail = "coefficients=" + eval.policy_used;
  return out;
}

SchemeSolution exhaustive_ppm(const GicInstance& instance, const SearchOptions& options) {
  const auto m = static_cast<std::size_t>(instance.packet_count());
  if (m > options.cap) {
    throw SizeCapExceeded(m, options.cap);
  }
  require_mask_width(instance);
  const auto side = side_masks(instance);
  std::vector<std::vector<std::uint64_t>> demander_side(m);
  for (std::size_t u = 0; u < instance.user_count(); ++u) {
    demander_side[static_cast<std::size_t>(instance.user(u).id.packet - 1)].push_back(side[u]);
  }

  auto make_eval = [&] {
    return [&, blocks = std::vector<std::uint64_t>(), minimum = std::vector<int>()](
               std::span<const int> labels) mutable {
      blocks.assign(labels.size(), 0);
      minimum.assign(labels.size(), 64);
      for (std::size_t p = 0; p < labels.size(); ++p) {
        blocks[static_cast<std::size_t>(labels[p])] |= std::uint64_t{1} << p;
      }
      for (std::size_t p = 0; p < labels.size(); ++p) {
        const auto b = static_cast<std::size_t>(labels[p]);
        for (auto mask : demander_side[p]) {
          minimum[b] = std::min(minimum[b], std::popcount(mask & blocks[b]));
        }
      }
      int saved = 0;
      for (std::size_t b = 0; b < labels.size() && blocks[b] != 0; ++b) {
        saved += minimum[b];
      }
      return static_cast<int>(labels.size()) - saved;
    };
  };
  const auto found = min_over_partitions(m, options.cap, options.jobs, make_eval);

  const auto partition = packet_partition_from_labels(found.labels);
  SchemeSolution out;
  out.scheme = "ppm-exhaustive";
  out.rate = ppm_rate(instance, partition).rate;
  out.transmissions = build_transmissions(instance, ppm_as_upm(instance, partition));
  out.witness = partition;
  out.detail = "partitions=" + std::to_string(found.evaluated);
  return out;
}

SchemeSolution exhaustive_upm(const GicInstance& instance, const SearchOptions& options) {
  const auto n = instance.user_count();
  if (n > options.cap) {
    throw SizeCapExceeded(n, options.cap);
  }
  require_mask_width(instance);
  const auto side = side_masks(instance);
  const auto packet_of = packets_of(instance);

  auto make_eval = [&] {
    return [&, blocks = UserBlocks()](std::span<const int> labels) mutable {
      blocks.assign(labels, packet_of, side);
      int rate = 0;
      for (std::size_t b = 0; b < blocks.demand.size(); ++b) {
        rate += blocks.rows(b);
      }
      return rate;
    };
  };
  const auto found = min_over_partitions(n, options.cap, options.jobs, make_eval);

  auto out = upm_solution(instance, user_partition_from_labels(instance, found.labels),
                          "upm-exhaustive");
  out.detail = "partitions=" + std::to_string(found.evaluated);
  return out;
}

SchemeSolution exhaustive_iupm(const GicInstance& instance, const SearchOptions& options) {
  const auto n = instance.user_count();
  if (n > options.cap) {
    throw SizeCapExceeded(n, options.cap);
  }
  require_mask_width(instance);
  const auto side = side_masks(instance);
  const auto packet_of = packets_of(instance);
  const bool randomized = options.policy.kind == CoefficientPolicy::Kind::randomized;

  auto make_eval = [&] {
    return [&, blocks = UserBlocks(), rows = std::vector<std::uint64_t>()](
               std::span<const int> labels) mutable {
      if (randomized) {
        return iupm_rate(instance, user_partition_from_labels(instance, labels), options.policy).rate;
      }
      blocks.assign(labels, packet_of, side);
      rows.clear();
      for (std::size_t b = 0; b < blocks.demand.size(); ++b) {
        const int r = blocks.rows(b);
        const auto demand = blocks.demand[b];
        if (r == 1) {
          rows.push_back(demand);
        } else if (r == std::popcount(demand)) {
          for (auto rest = demand; rest != 0; rest &= rest - 1) {
            rows.push_back(rest & (~rest + 1));
          }
        } else {
          return iupm_rate(instance, user_partition_from_labels(instance, labels)).rate;
        }
      }
      return static_cast<int>(rank_words(rows));
    };
  };
  const auto found = min_over_partitions(n, options.cap, options.jobs, make_eval);

  auto out = iupm_solution(instance, user_partition_from_labels(instance, found.labels),
                           options.policy, "iupm-exhaustive");
  out.detail += " partitions=" + std::to_string(found.evaluated);
  return out;
}

}  // namespace gic
