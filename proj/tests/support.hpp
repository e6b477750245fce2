#pragma once

#include <random>
#include <string>
#include <vector>

#include "gic/instance.hpp"
#include "gic/oracle.hpp"
#include "gic/solution.hpp"

namespace gic::test {

inline std::string data_path(const std::string& name) { return std::string(GIC_TEST_DATA) + "/" + name; }

inline GicInstance fixture(const std::string& name) { return read_instance_file(data_path(name)); }

/// Random valid instance: every packet demanded at least once, side info a
/// uniform subset of the other packets.
inline GicInstance random_instance(std::mt19937_64& rng, int max_packets, int max_users) {
  std::uniform_int_distribution<int> pick_m(1, max_packets);
  const int m = pick_m(rng);
  std::uniform_int_distribution<int> pick_users(m, std::max(m, max_users));
  const int users = pick_users(rng);
  std::vector<int> demand(static_cast<std::size_t>(m));
  for (int p = 1; p <= m; ++p) {
    demand[static_cast<std::size_t>(p - 1)] = p;
  }
  std::uniform_int_distribution<int> pick_packet(1, m);
  while (static_cast<int>(demand.size()) < users) {
    demand.push_back(pick_packet(rng));
  }
  std::vector<int> copies(static_cast<std::size_t>(m) + 1, 0);
  std::vector<User> out;
  for (int p : demand) {
    User u;
    u.id = {p, ++copies[static_cast<std::size_t>(p)]};
    for (int q = 1; q <= m; ++q) {
      if (q != p && (rng() & 1u)) {
        u.side_info.push_back(q);
      }
    }
    out.push_back(std::move(u));
  }
  return GicInstance(m, std::move(out));
}

/// Symbolic check plus 16 random trials.
inline bool decodes(const GicInstance& instance, const SchemeSolution& solution, std::uint64_t seed = 0) {
  return simulate_decode(instance, solution, default_decode_trials, seed).passed;
}

}  // namespace gic::test
