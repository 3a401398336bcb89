#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/dates.hpp"

namespace rednow {

enum class PostKind { submission, comment };

// One submission or comment. Comments carry parent_id (the post replied to)
// and root_id (the submission at the top of the thread); submissions carry
// neither. net_score is upvotes minus downvotes.
struct Post {
  std::string id;
  PostKind kind = PostKind::submission;
  std::int64_t created_utc = 0;
  std::string parent_id;
  std::string root_id;
  std::string text;
  int net_score = 0;

  Date day() const { return date_from_epoch_seconds(created_utc); }
};

struct Concept {
  std::string name;
  std::vector<std::string> keywords;  // lowercase
};

const Concept& concept_inflation();
const Concept& concept_unemployment();
const Concept* find_concept(std::string_view name);  // nullptr if unknown

// Submission plus reply structure: parent id -> comments, each list ordered
// by (created_utc, id).
struct CommentTree {
  Post root;
  std::unordered_map<std::string, std::vector<Post>> children;

  const std::vector<Post>* replies_to(const std::string& id) const {
    auto it = children.find(id);
    return it == children.end() ? nullptr : &it->second;
  }
};

}  // namespace rednow
