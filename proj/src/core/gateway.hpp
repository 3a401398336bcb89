#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/label.hpp"
#include "core/post.hpp"

namespace rednow {

struct GatewayConfig {
  std::string endpoint;  // e.g. http://127.0.0.1:8089 or http://host/v1
  std::string model = "llama-3-70b-instruct";
  double temperature = 0.5;
  int max_concurrency = 4;
  int max_retries = 2;
  double timeout_s = 60.0;
  std::filesystem::path cache_path;  // empty disables persistence
  int max_document_chars = 8000;     // longer documents are truncated
  int backoff_base_ms = 1000;
  int backoff_cap_ms = 30000;
  std::uint64_t seed = 0;  // retry jitter only; labels never depend on it

  void validate() const;
};

struct GatewayStats {
  std::uint64_t requests = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t retries = 0;
  std::uint64_t fallbacks = 0;
  std::uint64_t truncated = 0;
};

// Deterministic key over (model, temperature, prompt bytes).
std::uint64_t cache_key(std::string_view model, double temperature,
                        std::string_view prompt);

// Append-only NDJSON journal of responses; concurrent put is serialized,
// identical keys are last-writer-wins (values agree by construction).
class ResponseCache {
 public:
  ResponseCache() = default;
  explicit ResponseCache(std::filesystem::path journal);

  struct Entry {
    std::string response;
    SignalLabel label = SignalLabel::neutral;
  };

  std::optional<Entry> find(std::uint64_t key) const;
  void put(std::uint64_t key, const Entry& e);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::uint64_t, Entry> map_;
  std::filesystem::path journal_;
};

// Client for a chat-completion service: POST {endpoint}/chat/completions
// with {model, temperature, messages:[{role:"user", content}]}; the label is
// read from choices[0].message.content. Per item: cache hit short-circuits;
// otherwise up to max_retries re-requests on transport errors or unparseable
// responses, then NEUTRAL with fallback=true. Output order equals input
// order regardless of completion order.
class LlmGateway {
 public:
  explicit LlmGateway(GatewayConfig cfg);

  std::vector<LabeledItem> classify_batch(std::span<const Post> items,
                                          const Concept& topic,
                                          GatewayStats* stats = nullptr);

  const ResponseCache& cache() const { return cache_; }
  const GatewayConfig& config() const { return cfg_; }

 private:
  GatewayConfig cfg_;
  ResponseCache cache_;
  std::string host_;        // scheme://host[:port]
  std::string path_prefix_; // anything after the authority
};

}  // namespace rednow
