#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rednow {

// Ternary direction signal; the numeric mapping UP=+1, NEUTRAL=0, DOWN=-1 is
// load-bearing (daily sums add these values).
enum class SignalLabel : int { down = -1, neutral = 0, up = 1 };

inline int label_value(SignalLabel l) { return static_cast<int>(l); }

inline SignalLabel label_from_value(int v) {
  return v > 0 ? SignalLabel::up : v < 0 ? SignalLabel::down : SignalLabel::neutral;
}

inline std::string_view label_name(SignalLabel l) {
  switch (l) {
    case SignalLabel::up: return "UP";
    case SignalLabel::down: return "DOWN";
    default: return "NEUTRAL";
  }
}

inline std::optional<SignalLabel> label_from_name(std::string_view s) {
  if (s == "UP") return SignalLabel::up;
  if (s == "DOWN") return SignalLabel::down;
  if (s == "NEUTRAL") return SignalLabel::neutral;
  return std::nullopt;
}

// 0-based index for confusion matrices and transition tables: down,neutral,up.
inline int label_slot(SignalLabel l) { return label_value(l) + 1; }

struct LabeledItem {
  std::string post_id;
  SignalLabel label = SignalLabel::neutral;
  std::string classifier_id;
  std::string raw_response;
  bool fallback = false;
};

}  // namespace rednow
