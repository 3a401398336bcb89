#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "core/post.hpp"

namespace rednow {

// Lowercased ASCII-alphanumeric token runs; everything else separates.
std::vector<std::string> tokenize_lower(std::string_view text);

// A text matches a concept when some token equals a keyword or a keyword
// with a trailing "s" (price -> prices). Token equality avoids substring
// false positives.
bool matches_concept(std::string_view text, const Concept& topic);

std::vector<Post> keyword_filter(std::span<const Post> posts, const Concept& topic);

struct TreeBuildStats {
  std::uint64_t dangling_attached = 0;  // parent missing, re-homed under the root
  std::uint64_t dropped_unrooted = 0;   // root_id does not match this tree
};

// Reconstructs the reply tree for one submission from its comments, in any
// input order. Comments whose parent is absent from the dump attach under
// the root when their root_id resolves; child lists are ordered by
// (created_utc, id).
CommentTree build_tree(Post root, std::vector<Post> comments, TreeBuildStats* stats = nullptr);

struct CommentSets {
  std::vector<Post> first_level;  // direct replies to the submission, unfiltered
  std::vector<Post> keyword_all;  // keyword-matching comments at any depth
};

// Both sets exclude comments posted more than max_lag_days after the root
// (boundary inclusive: exactly root+max_lag_days is kept).
CommentSets build_comment_sets(const CommentTree& tree, const Concept& topic,
                               int max_lag_days = 7);

// All comments reachable from the root, depth-first, child order as stored.
std::vector<Post> all_comments(const CommentTree& tree);

}  // namespace rednow
