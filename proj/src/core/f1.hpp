#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "core/label.hpp"

namespace rednow {

struct ClassScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct F1Result {
  // confusion[truth][pred], slots down/neutral/up
  std::array<std::array<std::int64_t, 3>, 3> confusion{};
  std::array<ClassScore, 3> per_class{};
  double macro_f1 = 0;
};

// Macro-F1 over the three classes. A class with an empty prediction or truth
// side (TP+FP==0 or TP+FN==0) contributes F1=0.
F1Result f1_macro(std::span<const SignalLabel> pred, std::span<const SignalLabel> truth);

}  // namespace rednow
