#include "gic/heuristic.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "gic/linalg.hpp"

namespace gic {
namespace {

using element = GaloisField::element;

SubsetKey key_union(const SubsetKey& a, const SubsetKey& b) {
  SubsetKey out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void add_group(std::vector<PacketSet>& groups, const PacketSet& group) {
  if (std::find(groups.begin(), groups.end(), group) == groups.end()) {
    groups.push_back(group);
  }
}

const PacketSet& side_info(const GicInstance& instance, UserId id) {
  return instance.user(*instance.find(id)).side_info;
}

struct Entry {
  std::vector<PacketSet> groups;
  bool settled = false;
};

bool is_settled(const GicInstance& instance, const SubsetKey& key, const Entry& entry) {
  if (key.size() == instance.user_count()) {
    return true;
  }
  std::optional<int> common;
  for (auto id : key) {
    const int h = raw_entropy(entry.groups, side_info(instance, id));
    if (h == 0 || (common && *common != h)) {
      return false;
    }
    common = h;
  }
  return true;
}

CodingMatrix content_matrix(const std::vector<PacketSet>& groups, std::size_t m) {
  CodingMatrix out(0, m, gf2);
  std::vector<element> row(m, 0);
  for (const auto& group : groups) {
    std::fill(row.begin(), row.end(), 0);
    for (int p : group) {
      row[static_cast<std::size_t>(p - 1)] = 1;
    }
    out.append_row(row);
  }
  return out;
}

bool pairwise_disjoint(const std::vector<PacketSet>& groups) {
  PacketSet all;
  std::size_t total = 0;
  for (const auto& g : groups) {
    all.insert(all.end(), g.begin(), g.end());
    total += g.size();
  }
  std::sort(all.begin(), all.end());
  return std::unique(all.begin(), all.end()) - all.begin() == static_cast<std::ptrdiff_t>(total);
}

// Rows combining the subset's content symbols so that any member whose
// conditional entropy is at most `r` can solve for every unknown symbol.
CodingMatrix subset_code(const CodingMatrix& content, std::size_t r, bool disjoint) {
  const std::size_t n = content.rows();
  if (r == 0) {
    return CodingMatrix(0, content.cols(), gf2);
  }
  if (r == n) {
    return content;
  }
  if (r == 1 && disjoint) {
    return multiply(mds_generator(n, 1, gf2), content);
  }
  const FieldSpec field = cauchy_field(n, std::max<std::size_t>(r, 2));
  if (r == 1) {
    // A single parity row cancels overlapping groups in characteristic 2;
    // distinct nonzero weights keep them apart.
    const auto& gf = GaloisField::get(field);
    CodingMatrix weights(1, n, field);
    for (std::size_t j = 0; j < n; ++j) {
      weights(0, j) = gf.inv(static_cast<element>(j + 1));
    }
    return multiply(weights, content);
  }
  return multiply(mds_generator(n, r, field), content);
}

}  // namespace

std::string to_string(const SubsetKey& key) {
  std::string out = "{";
  for (std::size_t i = 0; i < key.size(); ++i) {
    out += (i == 0 ? "" : ",") + to_string(key[i]);
  }
  return out + "}";
}

std::string scheme_name(HeuristicInit init) {
  return init == HeuristicInit::user ? "heuristic-user" : "heuristic-packet";
}

SubsetKey step1_key(const GicInstance& instance, std::size_t index) {
  const auto& self = instance.user(index);
  SubsetKey key{self.id};
  for (std::size_t other = 0; other < instance.user_count(); ++other) {
    const auto& u = instance.user(other);
    if (other != index && instance.knows(index, u.id.packet) && instance.knows(other, self.id.packet)) {
      key.push_back(u.id);
    }
  }
  std::sort(key.begin(), key.end());
  return key;
}

SubsetMap initial_subsets_user(const GicInstance& instance) {
  SubsetMap out;
  for (std::size_t idx = 0; idx < instance.user_count(); ++idx) {
    auto& groups = out[step1_key(instance, idx)];
    if (groups.empty()) {
      groups.emplace_back();
    }
    auto& group = groups.front();
    const int p = instance.user(idx).id.packet;
    const auto at = std::lower_bound(group.begin(), group.end(), p);
    if (at == group.end() || *at != p) {
      group.insert(at, p);
    }
  }
  return out;
}

SubsetMap initial_subsets_packet(const GicInstance& instance) {
  SubsetMap out;
  for (int p = 1; p <= instance.packet_count(); ++p) {
    SubsetKey key;
    for (auto idx : instance.demanders(p)) {
      key = key_union(key, step1_key(instance, idx));
    }
    if (key.empty()) {
      continue;
    }
    auto& groups = out[key];
    if (groups.empty()) {
      groups.emplace_back();
    }
    groups.front().push_back(p);
  }
  return out;
}

int raw_entropy(const std::vector<PacketSet>& groups, const PacketSet& known) {
  PacketSet unknown;
  for (const auto& g : groups) {
    std::set_difference(g.begin(), g.end(), known.begin(), known.end(), std::back_inserter(unknown));
  }
  std::sort(unknown.begin(), unknown.end());
  return static_cast<int>(std::unique(unknown.begin(), unknown.end()) - unknown.begin());
}

MergeOutcome step2_merge(const GicInstance& instance, SubsetMap subsets) {
  std::map<SubsetKey, Entry> work;
  for (auto& [key, groups] : subsets) {
    Entry entry{std::move(groups), false};
    entry.settled = is_settled(instance, key, entry);
    work.emplace(key, std::move(entry));
  }

  MergeOutcome out;
  while (true) {
    auto current = work.end();
    for (auto it = work.begin(); it != work.end(); ++it) {
      if (!it->second.settled &&
          (current == work.end() || it->first.size() < current->first.size())) {
        current = it;
      }
    }
    if (current == work.end()) {
      break;
    }

    const SubsetKey key = current->first;
    const std::size_t level = key.size();
    auto target = work.end();
    for (auto it = work.begin(); it != work.end(); ++it) {
      if (it->first.size() == level + 1 &&
          std::includes(it->first.begin(), it->first.end(), key.begin(), key.end())) {
        target = it;
        break;
      }
    }

    std::ostringstream line;
    line << "promote " << to_string(key) << " level " << level << " -> " << level + 1;
    auto groups = std::move(current->second.groups);
    work.erase(current);
    if (target != work.end()) {
      line << " merge into " << to_string(target->first);
      for (const auto& g : groups) {
        add_group(target->second.groups, g);
      }
      target->second.settled = is_settled(instance, target->first, target->second);
    } else {
      auto next = instance.users().begin();
      while (std::binary_search(key.begin(), key.end(), next->id)) {
        ++next;
      }
      SubsetKey grown = key;
      grown.insert(std::upper_bound(grown.begin(), grown.end(), next->id), next->id);
      Entry entry{std::move(groups), false};
      entry.settled = is_settled(instance, grown, entry);
      work.emplace(std::move(grown), std::move(entry));
    }
    out.trace.push_back(line.str());
    ++out.promotions;
  }

  for (auto& [key, entry] : work) {
    out.subsets.emplace(key, std::move(entry.groups));
  }
  return out;
}

SchemeSolution step3_rate(const GicInstance& instance, const SubsetMap& subsets, std::string scheme) {
  const auto m = static_cast<std::size_t>(instance.packet_count());
  std::vector<SubsetSummary> summaries;
  std::vector<CodingMatrix> codes;
  FieldSpec field = gf2;
  int total = 0;
  for (const auto& [key, groups] : subsets) {
    const auto content = content_matrix(groups, m);
    std::size_t rate = 0;
    for (auto id : key) {
      rate = std::max(rate, conditional_entropy(content, side_info(instance, id)));
    }
    auto code = subset_code(content, rate, pairwise_disjoint(groups));
    field = std::max(field, code.field());
    codes.push_back(std::move(code));
    summaries.push_back({key, groups, static_cast<int>(rate)});
    total += static_cast<int>(rate);
  }

  SchemeSolution out;
  out.scheme = std::move(scheme);
  out.rate = total;
  out.transmissions = CodingMatrix(0, m, field);
  for (const auto& code : codes) {
    out.transmissions.append_rows(promote(code, field));
  }
  out.witness = std::move(summaries);
  return out;
}

HeuristicRun run_heuristic(const GicInstance& instance, HeuristicInit init) {
  HeuristicRun run;
  run.initial = init == HeuristicInit::user ? initial_subsets_user(instance)
                                            : initial_subsets_packet(instance);
  auto merged = step2_merge(instance, run.initial);
  run.merged = std::move(merged.subsets);
  run.trace = std::move(merged.trace);
  run.solution = step3_rate(instance, run.merged, scheme_name(init));
  if (init == HeuristicInit::packet) {
    run.solution.detail = "CAPM-variant";
  }
  return run;
}

}  // namespace gic
