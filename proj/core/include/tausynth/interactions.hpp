#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tausynth {

// The eight Boolean interactions between a place and a transition.  Each one
// is a partial function {0,1} -> {0,1}; inp, out, used and free are undefined
// on one of the two inputs, the others are total.
enum class Interaction : std::uint8_t {
  nop = 0,
  inp,
  out,
  set,
  res,
  swap,
  used,
  free,
};

inline constexpr int kInteractionCount = 8;

// i(x), with -1 encoding "undefined".  Row order follows the Interaction enum.
inline constexpr std::int8_t kInteractionTable[kInteractionCount][2] = {
    /* nop  */ {0, 1},
    /* inp  */ {-1, 0},
    /* out  */ {1, -1},
    /* set  */ {1, 1},
    /* res  */ {0, 0},
    /* swap */ {1, 0},
    /* used */ {-1, 1},
    /* free */ {0, -1},
};

std::optional<int> interaction_apply(Interaction i, int x);

// True when i is undefined on some input (inp, out, used, free).
bool interaction_partial(Interaction i);

std::string_view interaction_name(Interaction i);
std::optional<Interaction> interaction_from_name(std::string_view name);

// A Boolean type of net: a non-empty subset of the eight interactions viewed
// as a deterministic transition system over {0,1}.
class NetType {
 public:
  NetType(std::initializer_list<Interaction> members);
  explicit NetType(std::uint8_t mask);

  // Parses a comma-separated list such as "nop,inp,swap".
  static std::optional<NetType> parse(std::string_view text);

  bool contains(Interaction i) const { return (mask_ >> static_cast<int>(i)) & 1u; }
  int size() const;

  // Members in the fixed enum order (nop first when present).
  std::vector<Interaction> members() const;
  std::vector<Interaction> non_nop_members() const;

  // delta_tau(x, i) = i(x) for members; throws std::invalid_argument when i is
  // not a member of the type.
  std::optional<int> step(int x, Interaction i) const;

  std::string to_string() const;

  bool operator==(const NetType&) const = default;

 private:
  std::uint8_t mask_;
};

}  // namespace tausynth
