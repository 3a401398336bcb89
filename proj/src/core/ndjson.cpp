#include "core/ndjson.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "core/errors.hpp"

namespace rednow {

namespace {

using json = nlohmann::json;

bool get_string(const json& j, const char* key, std::string& out) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return false;
  out = it->get<std::string>();
  return true;
}

bool get_epoch(const json& j, const char* key, std::int64_t& out) {
  auto it = j.find(key);
  if (it == j.end()) return false;
  if (it->is_number_integer()) {
    out = it->get<std::int64_t>();
    return true;
  }
  if (it->is_number_float()) {
    out = std::int64_t(it->get<double>());
    return true;
  }
  if (it->is_string()) {
    // old dumps carry created_utc as a decimal string
    const std::string& s = it->get_ref<const std::string&>();
    if (s.empty()) return false;
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
      v = v * 10 + (c - '0');
    }
    out = v;
    return true;
  }
  return false;
}

int get_score(const json& j) {
  auto it = j.find("score");
  if (it == j.end()) return 0;
  if (it->is_number_integer()) return it->get<int>();
  if (it->is_number_float()) return int(it->get<double>());
  return 0;
}

// "t3_abc1" -> "abc1"; ids without a type prefix pass through
std::string strip_prefix(std::string s) {
  if (s.size() > 3 && s[0] == 't' && s[1] >= '0' && s[1] <= '9' && s[2] == '_')
    return s.substr(3);
  return s;
}

bool is_removed_marker(std::string_view s) {
  return s.empty() || s == "[deleted]" || s == "[removed]";
}

}  // namespace

void parse_dump(std::istream& in, PostKind kind, const PostSink& sink,
                ParseStats& stats, const ParseOptions& opt) {
  std::string line;
  while (std::getline(in, line)) {
    ++stats.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      ++stats.skipped;
      continue;
    }
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      ++stats.skipped;
      continue;
    }

    Post p;
    p.kind = kind;
    if (!get_string(j, "id", p.id) || p.id.empty() || !get_epoch(j, "created_utc", p.created_utc)) {
      ++stats.skipped;
      continue;
    }
    p.net_score = get_score(j);

    if (kind == PostKind::submission) {
      std::string title;
      if (!get_string(j, "title", title)) {
        ++stats.skipped;
        continue;
      }
      p.text = std::move(title);
      std::string selftext;
      if (opt.include_selftext && get_string(j, "selftext", selftext) &&
          !is_removed_marker(selftext)) {
        if (!p.text.empty()) p.text += ' ';
        p.text += selftext;
      }
    } else {
      std::string body;
      if (!get_string(j, "body", body)) {
        ++stats.skipped;
        continue;
      }
      std::string link_id;
      if (!get_string(j, "link_id", link_id) || link_id.empty()) {
        ++stats.skipped;
        continue;
      }
      p.root_id = strip_prefix(std::move(link_id));
      std::string parent;
      if (get_string(j, "parent_id", parent) && !parent.empty())
        p.parent_id = strip_prefix(std::move(parent));
      else
        p.parent_id = p.root_id;
      p.text = std::move(body);
    }

    if (is_removed_marker(p.text)) {
      ++stats.dropped_deleted;
      continue;
    }

    ++stats.parsed;
    sink(std::move(p));
  }
  if (in.bad()) throw IoError("I/O failure while reading dump stream");
}

std::vector<Post> parse_dump_all(std::istream& in, PostKind kind, ParseStats* stats,
                                 const ParseOptions& opt) {
  std::vector<Post> out;
  ParseStats local;
  parse_dump(in, kind, [&out](Post&& p) { out.push_back(std::move(p)); },
             stats ? *stats : local, opt);
  return out;
}

void write_ndjson_line(std::ostream& out, const Post& p, std::string_view topic) {
  json j;
  j["id"] = p.id;
  j["created_utc"] = p.created_utc;
  j["score"] = p.net_score;
  if (p.kind == PostKind::submission) {
    j["title"] = p.text;
  } else {
    j["body"] = p.text;
    j["link_id"] = "t3_" + p.root_id;
    j["parent_id"] = (p.parent_id == p.root_id ? "t3_" : "t1_") + p.parent_id;
  }
  if (!topic.empty()) j["concept"] = topic;
  out << j.dump() << '\n';
}

}  // namespace rednow
