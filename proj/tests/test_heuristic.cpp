#include <doctest.h>

#include <chrono>
#include <random>
#include <set>

#include "gic/heuristic.hpp"
#include "gic/linalg.hpp"
#include "gic/schemes.hpp"
#include "support.hpp"

using namespace gic;
using test::decodes;

namespace {

// Direct set-algebra evaluation of the Step-1 key, written independently:
// V'_i are the users holding x_i, B are the users demanding a packet in A.
SubsetKey naive_key(const GicInstance& inst, UserId self) {
  const auto& me = inst.user(*inst.find(self));
  std::set<UserId> holders;
  std::set<UserId> expansion;
  for (const auto& u : inst.users()) {
    if (std::find(u.side_info.begin(), u.side_info.end(), self.packet) != u.side_info.end()) {
      holders.insert(u.id);
    }
    if (std::find(me.side_info.begin(), me.side_info.end(), u.id.packet) != me.side_info.end()) {
      expansion.insert(u.id);
    }
  }
  std::set<UserId> key{self};
  for (auto id : expansion) {
    if (holders.count(id) != 0) {
      key.insert(id);
    }
  }
  return {key.begin(), key.end()};
}

SubsetMap naive_packet_subsets(const GicInstance& inst) {
  SubsetMap out;
  for (int p = 1; p <= inst.packet_count(); ++p) {
    std::set<UserId> key;
    for (auto idx : inst.demanders(p)) {
      const auto part = naive_key(inst, inst.user(idx).id);
      key.insert(part.begin(), part.end());
    }
    auto& groups = out[SubsetKey(key.begin(), key.end())];
    if (groups.empty()) {
      groups.emplace_back();
    }
    groups.front().push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("step 1 keys of example 1") {
  const auto inst = test::fixture("example1.gic");
  const SubsetKey a{{1, 1}, {4, 1}};
  const SubsetKey b{{1, 2}, {2, 1}, {3, 1}};
  CHECK(step1_key(inst, 0) == a);
  CHECK(step1_key(inst, 1) == b);
  CHECK(step1_key(inst, 2) == b);
  CHECK(step1_key(inst, 3) == b);
  CHECK(step1_key(inst, 4) == a);
  CHECK(to_string(a) == "{(1,1),(4,1)}");

  const auto users = initial_subsets_user(inst);
  CHECK(users.size() == 2);
  CHECK(users.at(a) == std::vector<PacketSet>{{1, 4}});
  CHECK(users.at(b) == std::vector<PacketSet>{{1, 2, 3}});

  CHECK(initial_subsets_packet(inst) == naive_packet_subsets(inst));
}

TEST_CASE("step 1 agrees with the naive evaluation on random instances") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = test::random_instance(rng, 6, 10);
    for (std::size_t idx = 0; idx < inst.user_count(); ++idx) {
      REQUIRE(step1_key(inst, idx) == naive_key(inst, inst.user(idx).id));
    }
    REQUIRE(initial_subsets_packet(inst) == naive_packet_subsets(inst));
  }
}

TEST_CASE("users without side information sit alone at level 1") {
  const GicInstance inst(2, {{{1, 1}, {}}, {{2, 1}, {}}});
  CHECK(step1_key(inst, 0) == SubsetKey{{1, 1}});
  const auto run = run_heuristic(inst, HeuristicInit::user);
  CHECK(run.trace.empty());
  CHECK(run.solution.rate == 2);
  CHECK(decodes(inst, run.solution));
}

TEST_CASE("a single raw packet unknown to its key costs one row") {
  const GicInstance inst(1, {{{1, 1}, {}}, {{1, 2}, {}}});
  for (auto init : {HeuristicInit::user, HeuristicInit::packet}) {
    const auto run = run_heuristic(inst, init);
    for (const auto& s : std::get<std::vector<SubsetSummary>>(run.solution.witness)) {
      CHECK(s.rate == 1);
    }
    CHECK(decodes(inst, run.solution));
  }
  // The user start keeps the two copies apart; the packet start joins them.
  CHECK(run_heuristic(inst, HeuristicInit::user).solution.rate == 2);
  CHECK(run_heuristic(inst, HeuristicInit::packet).solution.rate == 1);
}

TEST_CASE("example 1") {
  const auto inst = test::fixture("example1.gic");
  const auto user = run_heuristic(inst, HeuristicInit::user);
  const auto packet = run_heuristic(inst, HeuristicInit::packet);
  CHECK(user.solution.rate == 2);
  CHECK(user.trace.empty());
  CHECK(packet.solution.rate == 2);
  CHECK(packet.solution.detail == "CAPM-variant");
  CHECK(packet.trace == std::vector<std::string>{
                            "promote {(1,1),(4,1)} level 2 -> 3",
                            "promote {(1,1),(1,2),(4,1)} level 3 -> 4",
                            "promote {(1,2),(2,1),(3,1)} level 3 -> 4",
                            "promote {(1,1),(1,2),(2,1),(3,1)} level 4 -> 5 merge into "
                            "{(1,1),(1,2),(2,1),(3,1),(4,1)}",
                            "promote {(1,1),(1,2),(2,1),(4,1)} level 4 -> 5 merge into "
                            "{(1,1),(1,2),(2,1),(3,1),(4,1)}"});
  CHECK(decodes(inst, user.solution));
  CHECK(decodes(inst, packet.solution));
  CHECK(scheme_name(HeuristicInit::user) == "heuristic-user");
}

TEST_CASE("(k,2) family: user init keeps the groups, packet init collapses") {
  for (int k = 2; k <= 10; ++k) {
    CAPTURE(k);
    const auto gen = generate_k2(k);
    const auto user = run_heuristic(gen.instance, HeuristicInit::user);
    CHECK(user.trace.empty());
    CHECK(user.merged.size() == static_cast<std::size_t>(k));
    for (int l = 1; l <= k; ++l) {
      CHECK(user.merged.at(gen.groups.users(l)) == std::vector<PacketSet>{gen.groups.members(l)});
    }
    CHECK(user.solution.rate == k);
    CHECK(decodes(gen.instance, user.solution));

    const auto packet = run_heuristic(gen.instance, HeuristicInit::packet);
    if (k >= 3) {
      CHECK(packet.solution.rate == k * (k - 3) / 2 + 2);
      REQUIRE(packet.merged.size() == 1);
      CHECK(packet.merged.begin()->first.size() == gen.instance.user_count());
      CHECK(packet.merged.begin()->second.size() == static_cast<std::size_t>(k * (k - 1) / 2));
    }
    CHECK(decodes(gen.instance, packet.solution));
  }
}

TEST_CASE("step 2 is a fixed point on settled subsets") {
  const auto inst = generate_k2(5).instance;
  const auto start = initial_subsets_user(inst);
  const auto merged = step2_merge(inst, start);
  CHECK(merged.promotions == 0);
  CHECK(merged.subsets == start);
}

TEST_CASE("random instances: decodable, bounded below by minrank, promotions bounded") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = test::random_instance(rng, 5, 9);
    const auto oracle = minrank_gf2(inst);
    for (auto init : {HeuristicInit::user, HeuristicInit::packet}) {
      const auto run = run_heuristic(inst, init);
      REQUIRE(decodes(inst, run.solution, static_cast<std::uint64_t>(trial)));
      CHECK(run.solution.rate == static_cast<int>(run.solution.transmissions.rows()));
      if (oracle.rank) {
        CHECK(run.solution.rate >= *oracle.rank);
      }
      CHECK(run.trace.size() <= inst.user_count() * run.initial.size());

      // Every packet keeps its Step-1 placements.
      std::multiset<int> before;
      std::multiset<int> after;
      for (const auto& [key, groups] : run.initial) {
        for (const auto& g : groups) {
          before.insert(g.begin(), g.end());
        }
      }
      for (const auto& [key, groups] : run.merged) {
        for (const auto& g : groups) {
          after.insert(g.begin(), g.end());
        }
      }
      // Identical packet-groups meeting in one subset are kept once.
      CHECK(std::set<int>(before.begin(), before.end()) == std::set<int>(after.begin(), after.end()));
      for (int p : after) {
        CHECK(after.count(p) <= before.count(p));
      }
    }
  }
}

TEST_CASE("runtime grows polynomially") {
  auto time_ms = [](int k) {
    const auto inst = generate_k2(k).instance;
    const auto start = std::chrono::steady_clock::now();
    run_heuristic(inst, HeuristicInit::packet);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  const double small = std::max(time_ms(8), 0.05);
  const double large = time_ms(16);
  // m and |U| grow by about 4.3 from k = 8 to k = 16; m^2 |U|^3 allows ~1470x.
  CHECK(large / small < 1470.0);
}
