#include "gic/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace gic {

std::string to_string(UserId id) {
  return "(" + std::to_string(id.packet) + "," + std::to_string(id.copy) + ")";
}

GicInstance::GicInstance(int packet_count, std::vector<User> users)
    : packet_count_(packet_count), users_(std::move(users)) {
  for (auto& u : users_) {
    std::sort(u.side_info.begin(), u.side_info.end());
    u.side_info.erase(std::unique(u.side_info.begin(), u.side_info.end()), u.side_info.end());
  }
  std::stable_sort(users_.begin(), users_.end(),
                   [](const User& a, const User& b) { return a.id < b.id; });
}

std::optional<std::size_t> GicInstance::find(UserId id) const {
  auto it = std::lower_bound(users_.begin(), users_.end(), id,
                             [](const User& u, UserId key) { return u.id < key; });
  if (it == users_.end() || it->id != id) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - users_.begin());
}

int GicInstance::copies(int packet) const {
  return static_cast<int>(std::count_if(users_.begin(), users_.end(),
                                        [&](const User& u) { return u.id.packet == packet; }));
}

std::vector<std::size_t> GicInstance::demanders(int packet) const {
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < users_.size(); ++idx) {
    if (users_[idx].id.packet == packet) {
      out.push_back(idx);
    }
  }
  return out;
}

bool GicInstance::knows(std::size_t index, int packet) const {
  const auto& side = users_.at(index).side_info;
  return std::binary_search(side.begin(), side.end(), packet);
}

std::size_t GicInstance::side_info_total() const {
  std::size_t total = 0;
  for (const auto& u : users_) {
    total += u.side_info.size();
  }
  return total;
}

std::vector<std::string> validate(const GicInstance& instance) {
  std::vector<std::string> out;
  const int m = instance.packet_count();
  if (m < 1) {
    out.push_back("invalid packet count: m = " + std::to_string(m));
  }

  std::vector<bool> demanded(static_cast<std::size_t>(std::max(m, 0)) + 1, false);
  const auto users = instance.users();
  for (std::size_t idx = 0; idx < users.size(); ++idx) {
    const auto& u = users[idx];
    const auto name = to_string(u.id);
    if (u.id.packet < 1 || u.id.packet > m) {
      out.push_back("demand out of range: user " + name + " demands a packet outside [1.." +
                    std::to_string(m) + "]");
    } else {
      demanded[static_cast<std::size_t>(u.id.packet)] = true;
    }
    if (idx > 0 && users[idx - 1].id == u.id) {
      out.push_back("duplicate user: " + name + " appears more than once");
    }
    const bool first_copy = idx == 0 || users[idx - 1].id.packet != u.id.packet;
    const int expected_copy = first_copy ? 1 : users[idx - 1].id.copy + 1;
    if (u.id.copy != expected_copy && !(idx > 0 && users[idx - 1].id == u.id)) {
      out.push_back("copy gap: user " + name + " found where copy " +
                    std::to_string(expected_copy) + " was expected");
    }
    for (int p : u.side_info) {
      if (p == u.id.packet) {
        out.push_back("self-inclusion: user " + name + " lists its own packet");
      } else if (p < 1 || p > m) {
        out.push_back("side info out of range: user " + name + " lists packet " +
                      std::to_string(p));
      }
    }
  }
  for (int p = 1; p <= m; ++p) {
    if (!demanded[static_cast<std::size_t>(p)]) {
      out.push_back("undemanded packet: packet " + std::to_string(p) + " has no user");
    }
  }
  return out;
}

GroupStructure::GroupStructure(int k, std::vector<PacketSet> first, std::vector<PacketSet> second)
    : k_(k), first_(std::move(first)), second_(std::move(second)) {
  if (first_.size() != static_cast<std::size_t>(k) || second_.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("group structure needs k first and k second index sets");
  }
  members_.resize(static_cast<std::size_t>(k));
  for (std::size_t l = 0; l < members_.size(); ++l) {
    auto& all = members_[l];
    std::merge(first_[l].begin(), first_[l].end(), second_[l].begin(), second_[l].end(),
               std::back_inserter(all));
  }
}

std::size_t GroupStructure::checked(int group) const {
  if (group < 1 || group > k_) {
    throw std::out_of_range("group index " + std::to_string(group) + " outside [1.." +
                            std::to_string(k_) + "]");
  }
  return static_cast<std::size_t>(group - 1);
}

std::vector<UserId> GroupStructure::users(int group) const {
  std::vector<UserId> out;
  for (int p : first(group)) {
    out.push_back({p, 1});
  }
  for (int p : second(group)) {
    out.push_back({p, 2});
  }
  std::sort(out.begin(), out.end());
  return out;
}

int position_index(int k, int group, int offset, int variant) {
  if (k < 2 || group < 1 || group > k) {
    throw std::invalid_argument("position_index: group outside [1..k]");
  }
  switch (variant) {
    case 1:
      if (offset < 1 || offset > k - group) {
        throw std::invalid_argument("position_index: offset outside [1..k-l]");
      }
      return (group - 1) * k + offset - group * (group - 1) / 2;
    case 2:
      if (offset < 1 || offset > group - 1) {
        throw std::invalid_argument("position_index: offset outside [1..l-1]");
      }
      return (offset - 1) * k + group - offset * (offset + 1) / 2;
    default:
      throw std::invalid_argument("position_index: variant must be 1 or 2");
  }
}

K2Instance generate_k2(int k) {
  if (k < 2) {
    throw std::invalid_argument("generate_k2 requires k >= 2");
  }
  std::vector<PacketSet> first(static_cast<std::size_t>(k));
  std::vector<PacketSet> second(static_cast<std::size_t>(k));
  for (int l = 1; l <= k; ++l) {
    for (int a = 1; a <= k - l; ++a) {
      first[static_cast<std::size_t>(l - 1)].push_back(position_index(k, l, a, 1));
    }
    for (int a = 1; a <= l - 1; ++a) {
      second[static_cast<std::size_t>(l - 1)].push_back(position_index(k, l, a, 2));
    }
    std::sort(second[static_cast<std::size_t>(l - 1)].begin(),
              second[static_cast<std::size_t>(l - 1)].end());
  }
  GroupStructure groups(k, std::move(first), std::move(second));

  const int m = k * (k - 1) / 2;
  std::vector<User> users;
  users.reserve(static_cast<std::size_t>(2 * m));
  for (int l = 1; l <= k; ++l) {
    const auto& closure = groups.members(l);
    for (int copy = 1; copy <= 2; ++copy) {
      for (int p : copy == 1 ? groups.first(l) : groups.second(l)) {
        PacketSet side;
        std::copy_if(closure.begin(), closure.end(), std::back_inserter(side),
                     [p](int q) { return q != p; });
        users.push_back({{p, copy}, std::move(side)});
      }
    }
  }
  return {GicInstance(m, std::move(users)), std::move(groups)};
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) {
      break;
    }
    const auto end = s.find_first_of(" \t\r", start);
    out.push_back(s.substr(start, end == std::string_view::npos ? s.size() - start : end - start));
    pos = end == std::string_view::npos ? s.size() : end;
  }
  return out;
}

int parse_int(std::string_view token, std::size_t line, const char* what) {
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

GicInstance load_instance(std::string_view text) {
  std::optional<int> m;
  std::vector<User> users;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    if (!m) {
      const auto tokens = split_ws(line);
      if (tokens.size() != 2 || tokens[0] != "gic") {
        throw ParseError(line_no, "expected header 'gic <m>'");
      }
      m = parse_int(tokens[1], line_no, "packet count");
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "expected 'user <i> <j> : <side info>'");
    }
    const auto head = split_ws(line.substr(0, colon));
    if (head.size() != 3 || head[0] != "user") {
      throw ParseError(line_no, "expected 'user <i> <j> : <side info>'");
    }
    User u;
    u.id = {parse_int(head[1], line_no, "packet index"), parse_int(head[2], line_no, "copy index")};
    for (auto token : split_ws(line.substr(colon + 1))) {
      u.side_info.push_back(parse_int(token, line_no, "side-info packet index"));
    }
    if (!users.empty() && !(users.back().id < u.id)) {
      throw ParseError(line_no, "user " + to_string(u.id) + " is out of canonical order");
    }
    users.push_back(std::move(u));
  }
  if (!m) {
    throw ParseError(line_no, "missing header 'gic <m>'");
  }
  return GicInstance(*m, std::move(users));
}

std::string save_instance(const GicInstance& instance) {
  std::ostringstream out;
  out << "gic " << instance.packet_count() << '\n';
  for (const auto& u : instance.users()) {
    out << "user " << u.id.packet << ' ' << u.id.copy << " :";
    for (int p : u.side_info) {
      out << ' ' << p;
    }
    out << '\n';
  }
  return out.str();
}

GicInstance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open instance file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_instance(buffer.str());
}

}  // namespace gic
