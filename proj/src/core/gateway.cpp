#include "core/gateway.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "core/csvio.hpp"
#include "core/errors.hpp"
#include "core/prompt.hpp"
#include "core/rng.hpp"

namespace rednow {

using json = nlohmann::json;

void GatewayConfig::validate() const {
  if (endpoint.empty()) throw ValidationError("gateway: endpoint not configured");
  if (temperature < 0 || temperature > 1)
    throw ValidationError("gateway: temperature must lie in [0,1]");
  if (max_concurrency < 1) throw ValidationError("gateway: concurrency must be >= 1");
  if (max_retries < 0) throw ValidationError("gateway: max_retries must be >= 0");
  if (timeout_s <= 0) throw ValidationError("gateway: timeout must be positive");
}

std::uint64_t cache_key(std::string_view model, double temperature,
                        std::string_view prompt) {
  std::string material(model);
  material += '\x1f';
  material += format_double(temperature);
  material += '\x1f';
  material += prompt;
  return fnv1a64(material);
}

ResponseCache::ResponseCache(std::filesystem::path journal) : journal_(std::move(journal)) {
  if (journal_.empty() || !std::filesystem::exists(journal_)) return;
  std::ifstream in(journal_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    auto k = j.find("key");
    auto r = j.find("response");
    auto l = j.find("label");
    if (k == j.end() || !k->is_string() || r == j.end() || !r->is_string() ||
        l == j.end() || !l->is_string())
      continue;
    auto label = label_from_name(l->get<std::string>());
    if (!label) continue;
    std::uint64_t key = 0;
    try {
      key = std::stoull(k->get<std::string>(), nullptr, 16);
    } catch (...) {
      continue;
    }
    map_[key] = Entry{r->get<std::string>(), *label};
  }
}

std::optional<ResponseCache::Entry> ResponseCache::find(std::uint64_t key) const {
  std::scoped_lock lk(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::put(std::uint64_t key, const Entry& e) {
  std::scoped_lock lk(mu_);
  map_[key] = e;
  if (journal_.empty()) return;
  ensure_parent_dir(journal_);
  std::ofstream out(journal_, std::ios::app);
  char hex[24];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(key));
  json j;
  j["key"] = hex;
  j["response"] = e.response;
  j["label"] = std::string(label_name(e.label));
  j["ts"] = std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count();
  out << j.dump() << '\n';
}

std::size_t ResponseCache::size() const {
  std::scoped_lock lk(mu_);
  return map_.size();
}

namespace {

// scheme://host[:port][/prefix] -> (scheme://host[:port], /prefix)
std::pair<std::string, std::string> split_endpoint(const std::string& url) {
  auto scheme_end = url.find("://");
  std::size_t authority_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  auto path_start = url.find('/', authority_start);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

}  // namespace

LlmGateway::LlmGateway(GatewayConfig cfg)
    : cfg_(std::move(cfg)), cache_(cfg_.cache_path) {
  cfg_.validate();
  std::tie(host_, path_prefix_) = split_endpoint(cfg_.endpoint);
}

std::vector<LabeledItem> LlmGateway::classify_batch(std::span<const Post> items,
                                                    const Concept& topic,
                                                    GatewayStats* stats) {
  GatewayStats local;
  GatewayStats& st = stats ? *stats : local;
  const std::string phrase = concept_phrase(topic);

  std::vector<LabeledItem> out(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> requests{0}, cache_hits{0}, retries{0}, fallbacks{0},
      truncated{0};
  std::atomic<bool> any_http_success{false};
  std::atomic<bool> any_connect_failure{false};

  auto worker = [&](unsigned worker_id) {
    httplib::Client client(host_);
    client.set_connection_timeout(int(cfg_.timeout_s), 0);
    client.set_read_timeout(int(cfg_.timeout_s), 0);
    Rng jitter(derive_seed(cfg_.seed, std::uint64_t(worker_id) + 1));

    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      const Post& post = items[i];

      std::string doc = post.text;
      if (cfg_.max_document_chars > 0 &&
          doc.size() > std::size_t(cfg_.max_document_chars)) {
        doc.resize(std::size_t(cfg_.max_document_chars));
        ++truncated;
      }
      const std::string prompt = build_prompt(phrase, doc);
      const std::uint64_t key = cache_key(cfg_.model, cfg_.temperature, prompt);

      LabeledItem& li = out[i];
      li.post_id = post.id;
      li.classifier_id = "llm:" + cfg_.model;

      if (auto hit = cache_.find(key)) {
        li.label = hit->label;
        li.raw_response = hit->response;
        ++cache_hits;
        continue;
      }

      json body;
      body["model"] = cfg_.model;
      body["temperature"] = cfg_.temperature;
      body["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});
      const std::string payload = body.dump();

      bool done = false;
      for (int attempt = 0; attempt <= cfg_.max_retries && !done; ++attempt) {
        if (attempt > 0) {
          ++retries;
          const double base = double(cfg_.backoff_base_ms) * double(1 << (attempt - 1));
          const double wait =
              std::min(base + jitter.uniform01() * cfg_.backoff_base_ms,
                       double(cfg_.backoff_cap_ms));
          std::this_thread::sleep_for(std::chrono::milliseconds(std::int64_t(wait)));
        }
        ++requests;
        auto res = client.Post(path_prefix_ + "/chat/completions", payload,
                               "application/json");
        if (!res) {
          any_connect_failure.store(true);
          continue;
        }
        any_http_success.store(true);
        if (res->status != 200) continue;
        json rj = json::parse(res->body, nullptr, false);
        if (rj.is_discarded()) continue;
        std::string content;
        try {
          content = rj.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (...) {
          continue;
        }
        auto label = parse_llm_response(content);
        if (!label) continue;  // unparseable: retry
        li.label = *label;
        li.raw_response = content;
        cache_.put(key, {content, *label});
        done = true;
      }
      if (!done) {
        li.label = SignalLabel::neutral;
        li.fallback = true;
        ++fallbacks;
      }
    }
  };

  const unsigned n_workers =
      unsigned(std::min<std::size_t>(std::size_t(cfg_.max_concurrency), items.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker, w);
  for (auto& t : pool) t.join();

  st.requests += requests;
  st.cache_hits += cache_hits;
  st.retries += retries;
  st.fallbacks += fallbacks;
  st.truncated += truncated;

  if (!items.empty() && any_connect_failure.load() && !any_http_success.load() &&
      cache_hits.load() == 0)
    throw ConnectivityError("gateway: endpoint " + cfg_.endpoint +
                            " unreachable and the response cache is empty");
  return out;
}

}  // namespace rednow
