#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gic/instance.hpp"
#include "gic/solution.hpp"

namespace gic {

/// Sorted set of users labelling a working subset; its size is the level.
using SubsetKey = std::vector<UserId>;

/// Working subsets of the heuristic: key -> packet-groups. Packets that
/// shared a Step-1 key form one packet-group and stay XOR-mergeable.
using SubsetMap = std::map<SubsetKey, std::vector<PacketSet>>;

enum class HeuristicInit { user, packet };

std::string to_string(const SubsetKey& key);

/// Step-1 key of the user at `index`: the user itself plus every user that
/// demands a packet this user knows and that in turn knows this user's packet.
SubsetKey step1_key(const GicInstance& instance, std::size_t index);

/// One subset per distinct user key; each user's packet goes under its key.
SubsetMap initial_subsets_user(const GicInstance& instance);

/// CAPM-variant start: each packet goes under the union of its demanders' keys.
SubsetMap initial_subsets_packet(const GicInstance& instance);

/// Number of distinct packets of `groups` outside `known`.
int raw_entropy(const std::vector<PacketSet>& groups, const PacketSet& known);

struct MergeOutcome {
  SubsetMap subsets;
  std::vector<std::string> trace;
  std::size_t promotions = 0;
};

/// Promotes subsets, lowest (level, key) first, while some key member has
/// zero entropy or the members' entropies differ. A promoted subset moves
/// into the smallest next-level subset whose key contains its own; failing
/// that, its key grows by the smallest missing user. Subsets keyed by every
/// user are final.
MergeOutcome step2_merge(const GicInstance& instance, SubsetMap subsets);

/// XORs each packet-group, charges each subset the largest conditional
/// entropy among its key members and realizes that many MDS rows over the
/// subset's content symbols.
SchemeSolution step3_rate(const GicInstance& instance, const SubsetMap& subsets,
                          std::string scheme);

struct HeuristicRun {
  SchemeSolution solution;
  SubsetMap initial;
  SubsetMap merged;
  std::vector<std::string> trace;
};

HeuristicRun run_heuristic(const GicInstance& instance, HeuristicInit init);

/// "heuristic-user" or "heuristic-packet".
std::string scheme_name(HeuristicInit init);

}  // namespace gic
