#include "core/corpus.hpp"

#include <algorithm>
#include <unordered_set>

namespace rednow {

namespace {

const Concept kInflation{"inflation", {"inflation", "deflation", "hyperinflation", "price"}};
const Concept kUnemployment{"unemployment", {"unemployment", "employment", "unemployed", "job"}};

bool is_alnum_ascii(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char lower_ascii(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : char(c);
}

}  // namespace

const Concept& concept_inflation() { return kInflation; }
const Concept& concept_unemployment() { return kUnemployment; }

const Concept* find_concept(std::string_view name) {
  if (name == kInflation.name) return &kInflation;
  if (name == kUnemployment.name) return &kUnemployment;
  return nullptr;
}

std::vector<std::string> tokenize_lower(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (is_alnum_ascii(c)) {
      cur += lower_ascii(c);
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

bool matches_concept(std::string_view text, const Concept& topic) {
  for (const auto& tok : tokenize_lower(text)) {
    for (const auto& kw : topic.keywords) {
      if (tok == kw) return true;
      // singular -> plural allowance
      if (tok.size() == kw.size() + 1 && tok.back() == 's' &&
          tok.compare(0, kw.size(), kw) == 0)
        return true;
    }
  }
  return false;
}

std::vector<Post> keyword_filter(std::span<const Post> posts, const Concept& topic) {
  std::vector<Post> kept;
  for (const Post& p : posts)
    if (matches_concept(p.text, topic)) kept.push_back(p);
  return kept;
}

CommentTree build_tree(Post root, std::vector<Post> comments, TreeBuildStats* stats) {
  TreeBuildStats local;
  TreeBuildStats& st = stats ? *stats : local;

  CommentTree tree;
  tree.root = std::move(root);

  std::unordered_set<std::string> ids;
  ids.reserve(comments.size());
  for (const Post& c : comments) ids.insert(c.id);

  // deterministic regardless of input order
  std::sort(comments.begin(), comments.end(), [](const Post& a, const Post& b) {
    return a.created_utc != b.created_utc ? a.created_utc < b.created_utc : a.id < b.id;
  });

  for (Post& c : comments) {
    if (c.root_id != tree.root.id) {
      ++st.dropped_unrooted;
      continue;
    }
    std::string parent = c.parent_id;
    if (parent != tree.root.id && !ids.count(parent)) {
      parent = tree.root.id;  // dangling: parent absent from the dump
      ++st.dangling_attached;
    }
    c.parent_id = parent;
    tree.children[parent].push_back(std::move(c));
  }

  // Re-home anything not reachable from the root (orphan cycles or chains
  // hanging off dropped comments) so the tree invariant holds.
  std::unordered_set<std::string> reachable;
  std::vector<const Post*> stack;
  if (auto* top = tree.replies_to(tree.root.id))
    for (const Post& c : *top) stack.push_back(&c);
  while (!stack.empty()) {
    const Post* c = stack.back();
    stack.pop_back();
    reachable.insert(c->id);
    if (auto* kids = tree.replies_to(c->id))
      for (const Post& k : *kids) stack.push_back(&k);
  }

  std::vector<Post> orphans;
  for (auto it = tree.children.begin(); it != tree.children.end();) {
    if (it->first == tree.root.id || reachable.count(it->first)) {
      ++it;
      continue;
    }
    for (Post& c : it->second) {
      c.parent_id = tree.root.id;
      ++st.dangling_attached;
      orphans.push_back(std::move(c));
    }
    it = tree.children.erase(it);
  }
  if (!orphans.empty()) {
    auto& top = tree.children[tree.root.id];
    top.insert(top.end(), std::make_move_iterator(orphans.begin()),
               std::make_move_iterator(orphans.end()));
    std::sort(top.begin(), top.end(), [](const Post& a, const Post& b) {
      return a.created_utc != b.created_utc ? a.created_utc < b.created_utc : a.id < b.id;
    });
  }
  return tree;
}

std::vector<Post> all_comments(const CommentTree& tree) {
  std::vector<Post> out;
  std::vector<const Post*> stack;
  if (auto* top = tree.replies_to(tree.root.id))
    for (auto it = top->rbegin(); it != top->rend(); ++it) stack.push_back(&*it);
  while (!stack.empty()) {
    const Post* c = stack.back();
    stack.pop_back();
    out.push_back(*c);
    if (auto* kids = tree.replies_to(c->id))
      for (auto it = kids->rbegin(); it != kids->rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

CommentSets build_comment_sets(const CommentTree& tree, const Concept& topic,
                               int max_lag_days) {
  const std::int64_t cutoff =
      tree.root.created_utc + std::int64_t(max_lag_days) * 86400;

  CommentSets sets;
  if (auto* top = tree.replies_to(tree.root.id))
    for (const Post& c : *top)
      if (c.created_utc <= cutoff) sets.first_level.push_back(c);

  for (const Post& c : all_comments(tree))
    if (c.created_utc <= cutoff && matches_concept(c.text, topic))
      sets.keyword_all.push_back(c);

  return sets;
}

}  // namespace rednow
