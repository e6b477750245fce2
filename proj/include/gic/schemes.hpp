#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gic/instance.hpp"
#include "gic/matrix.hpp"
#include "gic/partition.hpp"
#include "gic/solution.hpp"

namespace gic {

struct PpmEvaluation {
  int rate = 0;
  std::vector<int> d;  ///< per block: min local side information
};

struct UpmEvaluation {
  int rate = 0;
  std::vector<int> c;  ///< per block: min local side information
};

/// Rate of packet-partition multicast on `partition`: sum of |T_e| - d_e.
PpmEvaluation ppm_rate(const GicInstance& instance, const PacketPartition& partition);

/// Rate of user-partition multicast on `partition`: sum of |Y_e| - c_e.
UpmEvaluation upm_rate(const GicInstance& instance, const UserPartition& partition);

/// Y_e: packets demanded by the users of `block`.
PacketSet demanded_packets(std::span<const UserId> block);

/// Z_{e,i}: copy indices of packet `packet` inside `block`.
std::vector<int> copies_in_block(std::span<const UserId> block, int packet);

/// Stacks b_e = |Y_e| - c_e MDS rows per block over the block's packets:
/// an XOR row when b_e = 1, unit rows when b_e = |Y_e|, Cauchy rows
/// otherwise. The matrix is over GF(2) unless some block needs Cauchy rows.
CodingMatrix build_transmissions(const GicInstance& instance, const UserPartition& partition);

/// The user partition that serves every user of a packet in that packet's
/// block; its UPM rate equals the PPM rate of `partition`.
UserPartition ppm_as_upm(const GicInstance& instance, const PacketPartition& partition);

/// Users grouped by their closed side information {i} u A_i^j, blocks in
/// order of first appearance. For the (k,2) family these are the groups G_l.
UserPartition side_info_groups(const GicInstance& instance);

/// The user groups G_1..G_k of a (k,2) instance as a partition.
UserPartition group_partition(const GroupStructure& groups);

struct CoefficientPolicy {
  enum class Kind { deterministic, randomized };

  Kind kind = Kind::deterministic;
  int trials = 32;
  std::uint64_t seed = 0;

  static CoefficientPolicy deterministic() { return {}; }
  static CoefficientPolicy randomized(int trials, std::uint64_t seed) {
    return {Kind::randomized, trials, seed};
  }
};

std::string to_string(const CoefficientPolicy& policy);

struct IupmEvaluation {
  int rate = 0;
  CodingMatrix basis;
  /// "deterministic" or "randomized(trial=t,seed=s)" for the winning matrix.
  std::string policy_used;
};

/// Rank of the stacked UPM rows and a basis of them. The randomized policy
/// also tries `trials` resamplings of every block with two or more rows
/// (random nonzero GF(2^8) coefficients, redrawn until each user of the
/// block decodes from the block alone) and keeps the lowest rank; ties keep
/// the deterministic matrix.
IupmEvaluation iupm_rate(const GicInstance& instance, const UserPartition& partition,
                         const CoefficientPolicy& policy = CoefficientPolicy::deterministic());

struct SearchOptions {
  std::size_t cap = default_enumeration_cap;
  unsigned jobs = 1;
  CoefficientPolicy policy = CoefficientPolicy::deterministic();
};

/// Exhaustive minimizations over every packet or user partition. Throw
/// SizeCapExceeded when m (PPM) or |U| (UPM, IUPM) exceeds options.cap.
SchemeSolution exhaustive_ppm(const GicInstance& instance, const SearchOptions& options = {});
SchemeSolution exhaustive_upm(const GicInstance& instance, const SearchOptions& options = {});
SchemeSolution exhaustive_iupm(const GicInstance& instance, const SearchOptions& options = {});

/// UPM and IUPM solutions on a fixed partition.
SchemeSolution upm_solution(const GicInstance& instance, const UserPartition& partition,
                            std::string scheme = "upm");
SchemeSolution iupm_solution(const GicInstance& instance, const UserPartition& partition,
                             const CoefficientPolicy& policy = CoefficientPolicy::deterministic(),
                             std::string scheme = "iupm");

}  // namespace gic
