#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "core/label.hpp"
#include "core/post.hpp"

namespace rednow {

// Chat-completion instruction asking for a single UP/DOWN/NEUTRAL signal on
// the future direction of `concept_phrase` ("inflation rate" or
// "unemployment rate"). Byte-stable for identical inputs.
std::string build_prompt(std::string_view concept_phrase, std::string_view document);

std::string concept_phrase(const Concept& c);  // "inflation" -> "inflation rate"

// Accepts exactly one of UP/DOWN/NEUTRAL after trimming surrounding
// whitespace/punctuation and uppercasing; anything else is a parse failure.
std::optional<SignalLabel> parse_llm_response(std::string_view raw);

}  // namespace rednow
