#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "core/post.hpp"

namespace rednow {

struct ParseStats {
  std::uint64_t lines = 0;
  std::uint64_t parsed = 0;
  std::uint64_t skipped = 0;          // schema violations, with line numbers counted
  std::uint64_t dropped_deleted = 0;  // "[deleted]"/"[removed]"/empty text
};

struct ParseOptions {
  bool include_selftext = true;  // submission text = title [+ " " + selftext]
};

using PostSink = std::function<void(Post&&)>;

// Streams newline-delimited dump records; one Post per valid line, in file
// order. Never buffers the whole input. Schema violations bump
// stats.skipped and are not fatal; an unreadable stream throws IoError.
void parse_dump(std::istream& in, PostKind kind, const PostSink& sink,
                ParseStats& stats, const ParseOptions& opt = {});

std::vector<Post> parse_dump_all(std::istream& in, PostKind kind,
                                 ParseStats* stats = nullptr,
                                 const ParseOptions& opt = {});

// Writes a post back in the dump schema (submissions: id, created_utc,
// title, score; comments: id, created_utc, body, score, link_id, parent_id),
// plus a `concept` field when non-empty.
void write_ndjson_line(std::ostream& out, const Post& p, std::string_view topic = {});

}  // namespace rednow
