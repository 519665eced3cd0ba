#include "tausynth/interactions.hpp"

#include <stdexcept>

namespace tausynth {

namespace {

constexpr std::string_view kNames[kInteractionCount] = {
    "nop", "inp", "out", "set", "res", "swap", "used", "free",
};

}  // namespace

std::optional<int> interaction_apply(Interaction i, int x) {
  if (x != 0 && x != 1) throw std::invalid_argument("interaction_apply: bit out of range");
  std::int8_t r = kInteractionTable[static_cast<int>(i)][x];
  if (r < 0) return std::nullopt;
  return static_cast<int>(r);
}

bool interaction_partial(Interaction i) {
  const auto* row = kInteractionTable[static_cast<int>(i)];
  return row[0] < 0 || row[1] < 0;
}

std::string_view interaction_name(Interaction i) { return kNames[static_cast<int>(i)]; }

std::optional<Interaction> interaction_from_name(std::string_view name) {
  for (int i = 0; i < kInteractionCount; ++i)
    if (kNames[i] == name) return static_cast<Interaction>(i);
  return std::nullopt;
}

NetType::NetType(std::initializer_list<Interaction> members) : mask_(0) {
  for (Interaction i : members) mask_ |= static_cast<std::uint8_t>(1u << static_cast<int>(i));
  if (mask_ == 0) throw std::invalid_argument("net type must be non-empty");
}

NetType::NetType(std::uint8_t mask) : mask_(mask) {
  if (mask_ == 0) throw std::invalid_argument("net type must be non-empty");
}

std::optional<NetType> NetType::parse(std::string_view text) {
  std::uint8_t mask = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    auto i = interaction_from_name(item);
    if (!i) return std::nullopt;
    mask |= static_cast<std::uint8_t>(1u << static_cast<int>(*i));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (mask == 0) return std::nullopt;
  return NetType(mask);
}

int NetType::size() const {
  int n = 0;
  for (int i = 0; i < kInteractionCount; ++i) n += (mask_ >> i) & 1;
  return n;
}

std::vector<Interaction> NetType::members() const {
  std::vector<Interaction> out;
  for (int i = 0; i < kInteractionCount; ++i)
    if ((mask_ >> i) & 1) out.push_back(static_cast<Interaction>(i));
  return out;
}

std::vector<Interaction> NetType::non_nop_members() const {
  std::vector<Interaction> out;
  for (int i = 1; i < kInteractionCount; ++i)
    if ((mask_ >> i) & 1) out.push_back(static_cast<Interaction>(i));
  return out;
}

std::optional<int> NetType::step(int x, Interaction i) const {
  if (!contains(i))
    throw std::invalid_argument("interaction " + std::string(interaction_name(i)) +
                                " is not a member of type " + to_string());
  return interaction_apply(i, x);
}

std::string NetType::to_string() const {
  std::string out;
  for (Interaction i : members()) {
    if (!out.empty()) out += ',';
    out += interaction_name(i);
  }
  return out;
}

}  // namespace tausynth
