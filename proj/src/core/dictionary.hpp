#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "core/label.hpp"

namespace rednow {

// Polarity word lists. Terms are lowercase token sequences; multi-word terms
// ("upside risk", "set back") match as contiguous token runs.
struct Dictionary {
  std::vector<std::vector<std::string>> positive;
  std::vector<std::vector<std::string>> negative;

  // CSV with header `term,polarity`, polarity in {+1,-1}.
  static Dictionary load_csv(const std::filesystem::path& path);

  // The built-in economic sentiment word table.
  static const Dictionary& bundled();

  void validate() const;  // non-empty sides, disjoint term sets
};

// Net occurrence count: >0 -> UP, <0 -> DOWN, 0 -> NEUTRAL. Each term
// occurrence counts once; terms are counted independently (a token can
// contribute to both a single-word and a multi-word term).
SignalLabel dict_classify(std::string_view text, const Dictionary& dict);

// Exposed for the classification harness: signed net count before bucketing.
int dict_net_count(std::string_view text, const Dictionary& dict);

}  // namespace rednow
