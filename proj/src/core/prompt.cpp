#include "core/prompt.hpp"

namespace rednow {

std::string build_prompt(std::string_view concept_phrase, std::string_view document) {
  std::string c(concept_phrase);
  std::string out;
  out.reserve(640 + document.size());
  out += "You are a forecaster and want to predict the future ";
  out += c;
  out += " in Europe from textual documents. ";
  out += "The following document will report sentences potentially referring to Europe: ";
  out += document;
  out += ". You have to print a signal that can be UP (if the document is signalling ";
  out += c;
  out += " going up in the short/long-term run), DOWN (if the sentence is signalling ";
  out += c;
  out += " going down in the short/long-term run) or NEUTRAL (if the sentence is neutral "
         "or does not signal a particular direction on ";
  out += c;
  out += "). Print only the results of the signal, do not summarize the sentence nor give "
         "any reason on your choice. Even if more sentences or paragraphs are provided to "
         "you, you only have to print one signal that can be UP, DOWN or NEUTRAL.";
  return out;
}

std::string concept_phrase(const Concept& c) { return c.name + " rate"; }

std::optional<SignalLabel> parse_llm_response(std::string_view raw) {
  auto is_trim = [](unsigned char c) {
    if (c <= ' ') return true;  // whitespace and control chars
    switch (c) {
      case '.': case ',': case ';': case ':': case '!': case '?':
      case '"': case '\'': case '`': case '(': case ')': case '[':
      case ']': case '{': case '}': case '*': case '-':
        return true;
      default:
        return false;
    }
  };
  std::size_t b = 0, e = raw.size();
  while (b < e && is_trim(raw[b])) ++b;
  while (e > b && is_trim(raw[e - 1])) --e;

  std::string word;
  word.reserve(e - b);
  for (std::size_t i = b; i < e; ++i) {
    char c = raw[i];
    if (c >= 'a' && c <= 'z') c = char(c - 'a' + 'A');
    word += c;
  }
  return label_from_name(word);
}

}  // namespace rednow
