// Copyright 2026 The crossdoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crossdoc/provider.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <thread>

#include "crossdoc/model.hpp"
#include "httplib.h"
#include "json.hpp"

namespace crossdoc {
namespace {

using nlohmann::json;

void for_each_line(const std::string& path,
                   const std::function<void(const json&)>& handle) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t' && c != '\r') {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    try {
      handle(json::parse(line));
    } catch (const std::exception& e) {
      throw SchemaError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

double checked_score(double score, const std::string& context) {
  if (!(score >= 0.0) || score > 1.0) {
    throw ProviderError(context + ": similarity " + std::to_string(score) +
                        " outside [0, 1]");
  }
  return score;
}

}  // namespace

FileProvider::FileProvider(const std::string& similarity_path,
                           const std::string& embedding_path) {
  if (!similarity_path.empty()) {
    for_each_line(similarity_path, [&](const json& rec) {
      const std::string report = rec.at("report").get<std::string>();
      const std::string source = rec.at("source").get<std::string>();
      const double score = rec.at("score").get<double>();
      scores_[{report, source}] = score;
    });
    has_scores_ = true;
  }
  if (!embedding_path.empty()) {
    for_each_line(embedding_path, [&](const json& rec) {
      const std::string key = rec.contains("text")
                                  ? rec.at("text").get<std::string>()
                                  : rec.at("id").get<std::string>();
      vectors_[key] = rec.at("vector").get<std::vector<double>>();
    });
    has_vectors_ = true;
  }
}

double FileProvider::similarity(const std::string& a, const std::string& b) {
  if (!has_scores_) throw ProviderError("no similarity cache loaded");
  auto it = scores_.find({a, b});
  if (it == scores_.end()) {
    throw ProviderError("no cached similarity for (\"" + a + "\", \"" + b +
                        "\")");
  }
  return checked_score(it->second, "cached score");
}

std::vector<double> FileProvider::embed(const std::string& text) {
  if (!has_vectors_) throw ProviderError("no embedding cache loaded");
  auto it = vectors_.find(text);
  if (it == vectors_.end()) {
    throw ProviderError("no cached embedding for \"" + text + "\"");
  }
  return it->second;
}

HttpProvider::HttpProvider(const std::string& host, int port, RetryPolicy policy)
    : host_(host), port_(port), policy_(policy) {
  if (policy_.max_attempts < 1) {
    throw ProviderError("retry policy needs at least one attempt");
  }
}

HttpProvider::~HttpProvider() = default;

std::string HttpProvider::post_json(const std::string& path,
                                    const std::string& body) {
  std::string last_failure = "no attempt made";
  int backoff_ms = policy_.backoff_initial_ms;
  for (int attempt = 1; attempt <= policy_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
      backoff_ms *= 2;
    }
    httplib::Client client(host_, port_);
    client.set_connection_timeout(policy_.timeout_ms / 1000,
                                  policy_.timeout_ms % 1000 * 1000);
    client.set_read_timeout(policy_.timeout_ms / 1000,
                            policy_.timeout_ms % 1000 * 1000);
    client.set_write_timeout(policy_.timeout_ms / 1000,
                             policy_.timeout_ms % 1000 * 1000);
    httplib::Result res = client.Post(path, body, "application/json");
    if (res && res->status == 200) return res->body;
    if (res && res->status >= 400 && res->status < 500) {
      // The request itself is bad; retrying cannot help.
      throw ProviderError("POST " + path + " rejected with status " +
                          std::to_string(res->status));
    }
    last_failure = res ? "status " + std::to_string(res->status)
                       : "transport error (" + httplib::to_string(res.error()) +
                             ")";
  }
  throw ProviderError("POST " + path + " failed after " +
                      std::to_string(policy_.max_attempts) + " attempts: " +
                      last_failure);
}

double HttpProvider::similarity(const std::string& a, const std::string& b) {
  json request;
  request["a"] = a;
  request["b"] = b;
  const std::string body = post_json("/similarity", request.dump());
  try {
    const json response = json::parse(body);
    return checked_score(response.at("score").get<double>(),
                         "provider response");
  } catch (const ProviderError&) {
    throw;
  } catch (const std::exception& e) {
    throw ProviderError(std::string("malformed /similarity response: ") +
                        e.what());
  }
}

std::vector<double> HttpProvider::embed(const std::string& text) {
  json request;
  request["text"] = text;
  const std::string body = post_json("/embed", request.dump());
  try {
    const json response = json::parse(body);
    return response.at("vector").get<std::vector<double>>();
  } catch (const std::exception& e) {
    throw ProviderError(std::string("malformed /embed response: ") + e.what());
  }
}

}  // namespace crossdoc
