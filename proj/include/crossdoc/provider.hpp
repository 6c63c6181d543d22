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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

// Pluggable text-pair similarity and text embedding backends. Scoring and
// mining never compute their own similarities; they go through this
// interface so a precomputed cache and a remote model server are
// interchangeable.

namespace crossdoc {

class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;

  // Similarity of two texts in [0, 1]. Throws ProviderError on failure.
  virtual double similarity(const std::string& a, const std::string& b) = 0;

  // Fixed-width embedding of one text. Throws ProviderError on failure.
  virtual std::vector<double> embed(const std::string& text) = 0;
};

// Serves lookups from files of precomputed scores and vectors; any miss is a
// ProviderError (the cache is expected to be complete for the run).
class FileProvider : public SimilarityProvider {
 public:
  // similarity_path: newline-delimited records {"report","source","score"}.
  // embedding_path: newline-delimited records {"text","vector"}. Either may
  // be empty to leave that capability unloaded.
  FileProvider(const std::string& similarity_path,
               const std::string& embedding_path);

  double similarity(const std::string& a, const std::string& b) override;
  std::vector<double> embed(const std::string& text) override;

 private:
  std::map<std::pair<std::string, std::string>, double> scores_;
  std::map<std::string, std::vector<double>> vectors_;
  bool has_scores_ = false;
  bool has_vectors_ = false;
};

struct RetryPolicy {
  int max_attempts = 3;
  int timeout_ms = 10000;
  int backoff_initial_ms = 100;  // doubles per retry
};

// Talks to a model server over HTTP. POST /similarity with
// {"a":...,"b":...} -> {"score":...}; POST /embed with {"text":...} ->
// {"vector":[...]}. Retries transient failures per the policy, then throws
// ProviderError.
class HttpProvider : public SimilarityProvider {
 public:
  HttpProvider(const std::string& host, int port, RetryPolicy policy = {});
  ~HttpProvider() override;

  double similarity(const std::string& a, const std::string& b) override;
  std::vector<double> embed(const std::string& text) override;

 private:
  std::string post_json(const std::string& path, const std::string& body);

  std::string host_;
  int port_;
  RetryPolicy policy_;
};

}  // namespace crossdoc
