#include "core/f1.hpp"

#include "core/errors.hpp"

namespace rednow {

F1Result f1_macro(std::span<const SignalLabel> pred, std::span<const SignalLabel> truth) {
  if (pred.size() != truth.size())
    throw ValidationError("f1_macro: prediction and truth lengths differ");
  if (pred.empty()) throw ValidationError("f1_macro: empty label sequences");

  F1Result r;
  for (std::size_t i = 0; i < pred.size(); ++i)
    ++r.confusion[label_slot(truth[i])][label_slot(pred[i])];

  double sum = 0;
  for (int c = 0; c < 3; ++c) {
    std::int64_t tp = r.confusion[c][c];
    std::int64_t fp = 0, fn = 0;
    for (int o = 0; o < 3; ++o) {
      if (o == c) continue;
      fp += r.confusion[o][c];
      fn += r.confusion[c][o];
    }
    ClassScore& s = r.per_class[c];
    s.precision = (tp + fp) > 0 ? double(tp) / double(tp + fp) : 0.0;
    s.recall = (tp + fn) > 0 ? double(tp) / double(tp + fn) : 0.0;
    s.f1 = (s.precision + s.recall) > 0
               ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    if ((tp + fp) == 0 || (tp + fn) == 0) s.f1 = 0.0;
    sum += s.f1;
  }
  r.macro_f1 = sum / 3.0;
  return r;
}

}  // namespace rednow
