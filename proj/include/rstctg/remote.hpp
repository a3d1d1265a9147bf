#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rstctg/discourse.hpp"
#include "rstctg/lm.hpp"

namespace httplib {
class Client;
}

namespace rstctg {

/// Envelope encoding and validation for the model-service wire protocol
/// (docs/protocol.md). Decoders throw ProtocolMismatch on a version
/// mismatch and MalformedResponse on any contract violation.
namespace wire {

inline constexpr int kProtocolVersion = 1;
inline constexpr double kMassTolerance = 1e-6;

inline constexpr const char* kHealthPath = "/health";
inline constexpr const char* kLmVocabularyPath = "/v1/lm/vocabulary";
inline constexpr const char* kNextDistributionPath = "/v1/lm/next_distribution";
inline constexpr const char* kParserVocabularyPath = "/v1/parser/vocabulary";
inline constexpr const char* kRelationLogitsPath = "/v1/parser/relation_logits";
inline constexpr const char* kSegmentPath = "/v1/parser/segment";

using nlohmann::json;

json next_distribution_request(std::span<const Token> prompt, std::span<const Token> generated);
json relation_logits_request(std::string_view left, std::string_view right);
json segment_request(std::span<const Token> tokens);

struct VocabularyInfo {
  Vocabulary vocabulary;
  bool lowercase = false;
  std::size_t relation_count = 0;  // parser vocabularies only
};

void check_version(const json& envelope);
VocabularyInfo decode_vocabulary(const json& response, bool parser);
/// Sparse (id, probability) pairs plus `remainder`, the unlisted mass,
/// spread evenly over the unlisted ids. Listed mass above 1 + 1e-6, or
/// listed + remainder away from 1 by more than 1e-6, is malformed.
TokenDistribution decode_distribution(const json& response, std::size_t vocab_size);
std::vector<double> decode_relation_logits(const json& response, std::size_t relation_count);
Segmentation decode_segmentation(const json& response, std::size_t length);

}  // namespace wire

/// HTTP transport shared by the remote backends. Requests are serialized.
class RemoteEndpoint {
 public:
  /// `url` like "http://127.0.0.1:8080".
  explicit RemoteEndpoint(const std::string& url, double timeout_seconds = 30.0);
  ~RemoteEndpoint();
  RemoteEndpoint(const RemoteEndpoint&) = delete;
  RemoteEndpoint& operator=(const RemoteEndpoint&) = delete;

  nlohmann::json get(const std::string& path) const;
  nlohmann::json post(const std::string& path, const nlohmann::json& body) const;

  const std::string& url() const { return url_; }

 private:
  nlohmann::json handle(const std::string& path, int status, const std::string& body) const;

  std::string url_;
  std::unique_ptr<httplib::Client> client_;
  mutable std::mutex mu_;
};

class RemoteLanguageModel final : public LanguageModel {
 public:
  explicit RemoteLanguageModel(std::shared_ptr<RemoteEndpoint> endpoint);

  const Codec& codec() const override { return codec_; }
  TokenDistribution next_distribution(std::span<const Token> prompt, std::span<const Token> generated) const override;

 private:
  std::shared_ptr<RemoteEndpoint> endpoint_;
  Codec codec_;
};

class RemoteDiscourseParser final : public DiscourseParser {
 public:
  explicit RemoteDiscourseParser(std::shared_ptr<RemoteEndpoint> endpoint);

  const Codec& codec() const override { return codec_; }
  std::size_t relation_count() const override { return relation_count_; }

 protected:
  std::vector<double> compute_relation_logits(std::span<const Token> left, std::span<const Token> right) const override;
  Segmentation compute_segmentation(std::span<const Token> tokens) const override;

 private:
  std::shared_ptr<RemoteEndpoint> endpoint_;
  Codec codec_;
  std::size_t relation_count_ = 0;
};

/// Convenience wrapper over RemoteLanguageModel::next_distribution.
TokenDistribution remote_next_distribution(const std::string& url, std::span<const Token> prompt,
                                           std::span<const Token> generated);

}  // namespace rstctg
