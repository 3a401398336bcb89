#include "core/dictionary.hpp"

#include <set>

#include "core/corpus.hpp"
#include "core/csvio.hpp"
#include "core/errors.hpp"

namespace rednow {

namespace {

const char* const kPositiveTerms[] = {
    "boost",   "climb",     "elevate", "escalate", "expand",  "foster",
    "high",    "increase",  "height",  "intensify", "jump",   "persist",
    "pressure", "moderate", "rise",    "risk",     "remain",  "rising",
    "rose",    "risen",     "soar",    "solid",    "spike",   "sustain",
    "strong",  "strength",  "surge",   "upward",   "up",      "upside risk",
};

const char* const kNegativeTerms[] = {
    "below",     "collapse", "damp",     "deteriorate", "decline", "diminish",
    "down",      "drop",     "ease",     "fall",        "low",     "modest",
    "moderated", "muted",    "plummet",  "reduction",   "restrain", "retreat",
    "set back",  "slow",     "soft",     "subdued",     "weak",
};

std::vector<std::string> term_tokens(std::string_view term) {
  auto toks = tokenize_lower(term);
  if (toks.empty()) throw ValidationError("empty dictionary term");
  return toks;
}

int count_occurrences(const std::vector<std::string>& tokens,
                      const std::vector<std::string>& term) {
  if (term.size() > tokens.size()) return 0;
  int n = 0;
  for (std::size_t i = 0; i + term.size() <= tokens.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < term.size(); ++j) {
      if (tokens[i + j] != term[j]) {
        hit = false;
        break;
      }
    }
    if (hit) ++n;
  }
  return n;
}

}  // namespace

Dictionary Dictionary::load_csv(const std::filesystem::path& path) {
  Dictionary d;
  for (const auto& row : read_csv(path)) {
    if (row.size() != 2)
      throw ValidationError("dictionary row needs `term,polarity`: " + path.string());
    const std::string& pol = row[1];
    if (pol == "+1" || pol == "1")
      d.positive.push_back(term_tokens(row[0]));
    else if (pol == "-1")
      d.negative.push_back(term_tokens(row[0]));
    else
      throw ValidationError("dictionary polarity must be +1 or -1, got '" + pol + "'");
  }
  d.validate();
  return d;
}

const Dictionary& Dictionary::bundled() {
  static const Dictionary d = [] {
    Dictionary b;
    for (const char* t : kPositiveTerms) b.positive.push_back(term_tokens(t));
    for (const char* t : kNegativeTerms) b.negative.push_back(term_tokens(t));
    b.validate();
    return b;
  }();
  return d;
}

void Dictionary::validate() const {
  if (positive.empty() || negative.empty())
    throw ValidationError("dictionary needs terms on both sides");
  std::set<std::vector<std::string>> pos(positive.begin(), positive.end());
  for (const auto& t : negative)
    if (pos.count(t)) {
      std::string term;
      for (const auto& w : t) term += (term.empty() ? "" : " ") + w;
      throw ValidationError("dictionary term on both sides: '" + term + "'");
    }
}

int dict_net_count(std::string_view text, const Dictionary& dict) {
  const auto tokens = tokenize_lower(text);
  int net = 0;
  for (const auto& t : dict.positive) net += count_occurrences(tokens, t);
  for (const auto& t : dict.negative) net -= count_occurrences(tokens, t);
  return net;
}

SignalLabel dict_classify(std::string_view text, const Dictionary& dict) {
  return label_from_value(dict_net_count(text, dict));
}

}  // namespace rednow
