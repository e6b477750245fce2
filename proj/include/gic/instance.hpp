#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gic {

/// Sorted, duplicate-free list of 1-based packet indices.
using PacketSet = std::vector<int>;

/// A user u_i^j: the `copy`-th user demanding packet `packet`.
///
/// The defaulted comparison orders users by packet first and copy second,
/// which is the canonical iteration order used by every scheme.
struct UserId {
  int packet = 0;
  int copy = 0;

  auto operator<=>(const UserId&) const = default;
};

std::string to_string(UserId id);

struct User {
  UserId id;
  PacketSet side_info;

  bool operator==(const User&) const = default;
};

/// A groupcast index coding instance: m packets and the users demanding them.
///
/// Construction normalizes side information (sorted, deduplicated) and sorts
/// users into canonical order, but does not reject malformed input; call
/// validate() for that.
class GicInstance {
 public:
  GicInstance() = default;
  GicInstance(int packet_count, std::vector<User> users);

  int packet_count() const { return packet_count_; }
  std::size_t user_count() const { return users_.size(); }
  std::span<const User> users() const { return users_; }
  const User& user(std::size_t index) const { return users_.at(index); }

  std::optional<std::size_t> find(UserId id) const;

  /// |U_i|: number of users demanding `packet`.
  int copies(int packet) const;

  /// Indices (into users()) of the users demanding `packet`.
  std::vector<std::size_t> demanders(int packet) const;

  /// True when `packet` is in the side information of the user at `index`.
  bool knows(std::size_t index, int packet) const;

  std::size_t side_info_total() const;

  bool operator==(const GicInstance&) const = default;

 private:
  int packet_count_ = 0;
  std::vector<User> users_;
};

/// Every invariant violation of `instance`, one description per violation.
/// Each description starts with a short kind tag followed by a colon, e.g.
/// "self-inclusion: user (1,1) lists its own packet".
std::vector<std::string> validate(const GicInstance& instance);

/// Group index sets of the (k,2) family. Groups are numbered 1..k.
class GroupStructure {
 public:
  GroupStructure() = default;
  GroupStructure(int k, std::vector<PacketSet> first, std::vector<PacketSet> second);

  int k() const { return k_; }
  const PacketSet& first(int group) const { return first_.at(checked(group)); }
  const PacketSet& second(int group) const { return second_.at(checked(group)); }
  /// I_l: packets demanded by the users of group l.
  const PacketSet& members(int group) const { return members_.at(checked(group)); }
  /// G_l in canonical order.
  std::vector<UserId> users(int group) const;

 private:
  std::size_t checked(int group) const;

  int k_ = 0;
  std::vector<PacketSet> first_;
  std::vector<PacketSet> second_;
  std::vector<PacketSet> members_;
};

struct K2Instance {
  GicInstance instance;
  GroupStructure groups;
};

/// Packet index of the a-th entry of I_l^1 (variant 1) or I_l^2 (variant 2).
int position_index(int k, int group, int offset, int variant);

/// The (k,2) instance: k(k-1)/2 packets, two users per packet, side
/// information aligned with k user groups. Rejects k < 2.
K2Instance generate_k2(int k);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses the line-oriented instance format. Throws ParseError on syntax
/// errors; semantic problems are left to validate().
GicInstance load_instance(std::string_view text);
std::string save_instance(const GicInstance& instance);

GicInstance read_instance_file(const std::string& path);

}  // namespace gic
