#include "rstctg/remote.hpp"

#include <cmath>
#include <set>

#include "httplib.h"
#include "rstctg/error.hpp"

namespace rstctg {

namespace wire {

namespace {

Error malformed(const std::string& what) { return Error(ErrorCode::MalformedResponse, what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw malformed(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

json next_distribution_request(std::span<const Token> prompt, std::span<const Token> generated) {
  json p = json::array();
  for (const auto& t : prompt) p.push_back(t.id);
  json g = json::array();
  for (const auto& t : generated) g.push_back(t.id);
  return json{{"protocol_version", kProtocolVersion}, {"prompt_ids", std::move(p)}, {"generated_ids", std::move(g)}};
}

json relation_logits_request(std::string_view left, std::string_view right) {
  return json{{"protocol_version", kProtocolVersion}, {"left", std::string(left)}, {"right", std::string(right)}};
}

json segment_request(std::span<const Token> tokens) {
  json t = json::array();
  for (const auto& tok : tokens) t.push_back(tok.surface);
  return json{{"protocol_version", kProtocolVersion}, {"tokens", std::move(t)}};
}

void check_version(const json& envelope) {
  if (!envelope.is_object() || !envelope.contains("protocol_version")) {
    throw Error(ErrorCode::ProtocolMismatch, "envelope has no protocol_version");
  }
  const auto& v = envelope.at("protocol_version");
  if (!v.is_number_integer() || v.get<int>() != kProtocolVersion) {
    throw Error(ErrorCode::ProtocolMismatch, "expected protocol_version " + std::to_string(kProtocolVersion) +
                                                 ", got " + v.dump());
  }
}

VocabularyInfo decode_vocabulary(const json& response, bool parser) {
  check_version(response);
  try {
    auto tokens = field(response, "tokens").get<std::vector<std::string>>();
    const auto unknown = field(response, "unknown_id").get<long long>();
    if (unknown < 0 || static_cast<std::size_t>(unknown) >= tokens.size()) throw malformed("unknown_id out of range");
    std::optional<std::string> eos;
    if (response.contains("eos_id") && !response.at("eos_id").is_null()) {
      const auto e = response.at("eos_id").get<long long>();
      if (e < 0 || static_cast<std::size_t>(e) >= tokens.size()) throw malformed("eos_id out of range");
      eos = tokens[static_cast<std::size_t>(e)];
    }
    const std::string unk = tokens[static_cast<std::size_t>(unknown)];
    const bool lowercase = response.value("lowercase", false);
    std::size_t relations = 0;
    if (parser) {
      relations = field(response, "relation_count").get<std::size_t>();
      if (relations == 0) throw malformed("relation_count must be positive");
    }
    std::optional<std::string_view> eos_view;
    if (eos) eos_view = *eos;
    return VocabularyInfo{Vocabulary(std::move(tokens), unk, eos_view), lowercase, relations};
  } catch (const nlohmann::json::exception& e) {
    throw malformed(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidModel) throw malformed(e.what());
    throw;
  }
}

TokenDistribution decode_distribution(const json& response, std::size_t vocab_size) {
  check_version(response);
  const auto& pairs = field(response, "pairs");
  const auto& rem = field(response, "remainder");
  if (!pairs.is_array()) throw malformed("pairs must be an array");
  if (!rem.is_number()) throw malformed("remainder must be a number");
  const double remainder = rem.get<double>();
  if (!std::isfinite(remainder) || remainder < 0.0 || remainder > 1.0) throw malformed("remainder outside [0, 1]");

  TokenDistribution dist(vocab_size, 0.0);
  std::vector<bool> listed(vocab_size, false);
  std::size_t n_listed = 0;
  double mass = 0.0;
  for (const auto& pair : pairs) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number()) {
      throw malformed("pairs entries must be [id, probability]");
    }
    const auto id = pair[0].get<long long>();
    const double prob = pair[1].get<double>();
    if (id < 0 || static_cast<std::size_t>(id) >= vocab_size) throw malformed("token id out of range");
    if (!std::isfinite(prob) || prob < 0.0 || prob > 1.0) throw malformed("probability outside [0, 1]");
    if (listed[static_cast<std::size_t>(id)]) throw malformed("duplicate token id " + std::to_string(id));
    listed[static_cast<std::size_t>(id)] = true;
    dist[static_cast<std::size_t>(id)] = prob;
    mass += prob;
    ++n_listed;
  }
  if (mass > 1.0 + kMassTolerance) throw malformed("listed mass " + std::to_string(mass) + " exceeds 1");
  if (std::abs(mass + remainder - 1.0) > kMassTolerance) {
    throw malformed("listed mass plus remainder is " + std::to_string(mass + remainder) + ", not 1");
  }
  const std::size_t n_unlisted = vocab_size - n_listed;
  if (n_unlisted > 0) {
    const double share = remainder / static_cast<double>(n_unlisted);
    for (std::size_t i = 0; i < vocab_size; ++i) {
      if (!listed[i]) dist[i] = share;
    }
  }
  double total = 0.0;
  for (double v : dist) total += v;
  if (!(total > 0.0)) throw malformed("distribution has no mass");
  for (auto& v : dist) v /= total;
  return dist;
}

std::vector<double> decode_relation_logits(const json& response, std::size_t relation_count) {
  check_version(response);
  const auto& logits = field(response, "logits");
  if (!logits.is_array()) throw malformed("logits must be an array");
  if (logits.size() != relation_count) {
    throw malformed("expected " + std::to_string(relation_count) + " logits, got " + std::to_string(logits.size()));
  }
  std::vector<double> out;
  out.reserve(relation_count);
  for (const auto& v : logits) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) throw malformed("logits must be finite numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Segmentation decode_segmentation(const json& response, std::size_t length) {
  check_version(response);
  const auto& starts = field(response, "edu_starts");
  if (!starts.is_array()) throw malformed("edu_starts must be an array");
  std::vector<std::size_t> offsets;
  std::size_t prev = 0;
  for (const auto& s : starts) {
    if (!s.is_number_integer()) throw malformed("edu_starts must be integers");
    const auto v = s.get<long long>();
    if (v <= 0 || static_cast<std::size_t>(v) >= length || static_cast<std::size_t>(v) <= prev) {
      throw malformed("edu_starts must be strictly increasing offsets inside the input");
    }
    prev = static_cast<std::size_t>(v);
    offsets.push_back(prev);
  }
  return Segmentation::from_starts(offsets, length);
}

}  // namespace wire

RemoteEndpoint::RemoteEndpoint(const std::string& url, double timeout_seconds)
    : url_(url), client_(std::make_unique<httplib::Client>(url)) {
  if (!client_->is_valid()) throw Error(ErrorCode::BackendUnavailable, "invalid endpoint URL '" + url + "'");
  const auto sec = static_cast<time_t>(timeout_seconds);
  const auto usec = static_cast<time_t>((timeout_seconds - static_cast<double>(sec)) * 1e6);
  client_->set_connection_timeout(sec, usec);
  client_->set_read_timeout(sec, usec);
  client_->set_write_timeout(sec, usec);
}

RemoteEndpoint::~RemoteEndpoint() = default;

nlohmann::json RemoteEndpoint::handle(const std::string& path, int status, const std::string& body) const {
  if (status >= 500) throw Error(ErrorCode::BackendUnavailable, url_ + path + " returned HTTP " + std::to_string(status));
  if (status >= 400) {
    throw Error(ErrorCode::ProtocolMismatch, url_ + path + " rejected the request (HTTP " + std::to_string(status) + "): " + body);
  }
  if (status != 200) throw Error(ErrorCode::MalformedResponse, url_ + path + " returned HTTP " + std::to_string(status));
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, url_ + path + ": " + e.what());
  }
}

nlohmann::json RemoteEndpoint::get(const std::string& path) const {
  std::lock_guard lock(mu_);
  auto res = client_->Get(path);
  if (!res) throw Error(ErrorCode::BackendUnavailable, url_ + path + ": " + httplib::to_string(res.error()));
  return handle(path, res->status, res->body);
}

nlohmann::json RemoteEndpoint::post(const std::string& path, const nlohmann::json& body) const {
  std::lock_guard lock(mu_);
  auto res = client_->Post(path, body.dump(), "application/json");
  if (!res) throw Error(ErrorCode::BackendUnavailable, url_ + path + ": " + httplib::to_string(res.error()));
  return handle(path, res->status, res->body);
}

RemoteLanguageModel::RemoteLanguageModel(std::shared_ptr<RemoteEndpoint> endpoint) : endpoint_(std::move(endpoint)) {
  auto info = wire::decode_vocabulary(endpoint_->get(wire::kLmVocabularyPath), false);
  codec_ = Codec(std::move(info.vocabulary), info.lowercase);
}

TokenDistribution RemoteLanguageModel::next_distribution(std::span<const Token> prompt, std::span<const Token> generated) const {
  const auto response = endpoint_->post(wire::kNextDistributionPath, wire::next_distribution_request(prompt, generated));
  return wire::decode_distribution(response, codec_.vocabulary().size());
}

RemoteDiscourseParser::RemoteDiscourseParser(std::shared_ptr<RemoteEndpoint> endpoint) : endpoint_(std::move(endpoint)) {
  auto info = wire::decode_vocabulary(endpoint_->get(wire::kParserVocabularyPath), true);
  codec_ = Codec(std::move(info.vocabulary), info.lowercase);
  relation_count_ = info.relation_count;
}

std::vector<double> RemoteDiscourseParser::compute_relation_logits(std::span<const Token> left, std::span<const Token> right) const {
  const auto response = endpoint_->post(wire::kRelationLogitsPath,
                                        wire::relation_logits_request(codec_.detokenize(left), codec_.detokenize(right)));
  return wire::decode_relation_logits(response, relation_count_);
}

Segmentation RemoteDiscourseParser::compute_segmentation(std::span<const Token> tokens) const {
  const auto response = endpoint_->post(wire::kSegmentPath, wire::segment_request(tokens));
  return wire::decode_segmentation(response, tokens.size());
}

TokenDistribution remote_next_distribution(const std::string& url, std::span<const Token> prompt,
                                           std::span<const Token> generated) {
  RemoteLanguageModel lm(std::make_shared<RemoteEndpoint>(url));
  return lm.next_distribution(prompt, generated);
}

}  // namespace rstctg
