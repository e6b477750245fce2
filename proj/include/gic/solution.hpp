#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gic/instance.hpp"
#include "gic/matrix.hpp"
#include "gic/partition.hpp"

namespace gic {

/// A final subset of the heuristic: its user key and its XOR packet-groups.
struct SubsetSummary {
  std::vector<UserId> key;
  std::vector<PacketSet> packet_groups;
  int rate = 0;

  bool operator==(const SubsetSummary&) const = default;
};

using Witness =
    std::variant<std::monostate, PacketPartition, UserPartition, std::vector<SubsetSummary>>;

/// A concrete code for an instance: the broadcast rate equals the number of
/// transmitted rows.
struct SchemeSolution {
  std::string scheme;
  int rate = 0;
  Witness witness;
  CodingMatrix transmissions;
  /// Free-form notes, e.g. which coefficient policy produced the rows.
  std::string detail;
};

std::string describe_witness(const Witness& witness);

}  // namespace gic
