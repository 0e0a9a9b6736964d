// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/transport.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <bit>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <semaphore>

#include "httplib.h"
#include "wcam/error.hpp"
#include "wcam/io.hpp"

namespace wcam {

using nlohmann::json;

json encode_request(const std::string& id, std::span<const Image> images) {
  json req;
  req["id"] = id;
  json list = json::array();
  for (const Image& img : images) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(img.size() * 4);
    for (float v : img.data()) {
      const auto u = std::bit_cast<std::uint32_t>(v);
      for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
    }
    list.push_back({{"w", img.width()},
                    {"h", img.height()},
                    {"c", img.channels()},
                    {"dtype", "f32"},
                    {"data", base64_encode(bytes)}});
  }
  req["images"] = std::move(list);
  return req;
}

std::vector<Image> decode_request(const json& request) {
  try {
    if (!request.is_object() || !request.contains("id") || !request["id"].is_string() ||
        !request.contains("images") || !request["images"].is_array()) {
      throw ProtocolError("request must be an object with string 'id' and array 'images'");
    }
    std::vector<Image> out;
    for (const auto& entry : request["images"]) {
      const int w = entry.at("w").get<int>();
      const int h = entry.at("h").get<int>();
      const int c = entry.at("c").get<int>();
      if (entry.at("dtype").get<std::string>() != "f32") throw ProtocolError("unsupported dtype");
      const auto bytes = base64_decode(entry.at("data").get<std::string>());
      const std::size_t n = static_cast<std::size_t>(w) * h * c;
      if (w <= 0 || h <= 0 || bytes.size() != n * 4) throw ProtocolError("image payload size mismatch");
      std::vector<float> samples(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t u = 0;
        for (int b = 0; b < 4; ++b) u |= static_cast<std::uint32_t>(bytes[4 * i + b]) << (8 * b);
        samples[i] = std::bit_cast<float>(u);
      }
      out.emplace_back(w, h, c, std::move(samples));
    }
    return out;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed request: ") + e.what());
  } catch (const IoError& e) {
    throw ProtocolError(std::string("malformed request: ") + e.what());
  } catch (const DimensionError& e) {
    throw ProtocolError(std::string("malformed request: ") + e.what());
  }
}

json encode_response(const std::string& id, std::span<const double> scores) {
  return json{{"id", id}, {"scores", std::vector<double>(scores.begin(), scores.end())}};
}

std::vector<double> decode_response(const std::string& line, const std::string& expected_id) {
  json msg;
  try {
    msg = json::parse(line);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("response is not valid JSON: ") + e.what());
  }
  if (!msg.is_object() || !msg.contains("id") || !msg["id"].is_string()) {
    throw ProtocolError("response lacks a string 'id'");
  }
  const auto id = msg["id"].get<std::string>();
  if (id != expected_id) throw ProtocolError("response id '" + id + "' does not match request '" + expected_id + "'");
  if (msg.contains("error")) throw ModelError("scorer reported an error: " + msg["error"].dump());
  if (!msg.contains("scores") || !msg["scores"].is_array()) throw ProtocolError("response lacks a 'scores' array");
  std::vector<double> scores;
  for (const auto& v : msg["scores"]) {
    if (v.is_null()) {
      // JSON has no NaN; serializers commonly emit null for it.
      scores.push_back(std::nan(""));
    } else if (v.is_number()) {
      scores.push_back(v.get<double>());
    } else {
      throw ProtocolError("non-numeric score in response");
    }
  }
  return scores;
}

void AdapterConfig::validate() const {
  if (endpoint.empty()) throw ConfigError("adapter endpoint is empty");
  if (timeout_ms <= 0) throw ConfigError("adapter timeout must be positive");
  if (max_batch == 0) throw ConfigError("adapter max batch must be positive");
  if (retries < 0) throw ConfigError("adapter retries must be >= 0");
  if (max_in_flight < 1) throw ConfigError("adapter in-flight bound must be >= 1");
}

void apply_endpoint_override(AdapterConfig& config) {
  if (const char* env = std::getenv(kEndpointEnv); env && *env) config.endpoint = env;
}

namespace {

std::string next_id() {
  static std::atomic<unsigned long long> counter{0};
  return "req-" + std::to_string(++counter);
}

// Splits oversized batches into max_batch requests, preserving order.
class ChunkedScorer : public ScoreFn {
 public:
  explicit ChunkedScorer(std::size_t max_batch) : max_batch_(max_batch) {}

  std::vector<double> score(std::span<const Image> images) final {
    std::vector<double> out;
    out.reserve(images.size());
    for (std::size_t off = 0; off < images.size(); off += max_batch_) {
      const std::size_t want = std::min(max_batch_, images.size() - off);
      const auto part = score_chunk(images.subspan(off, want));
      if (part.size() != want) {
        throw ProtocolError("scorer returned " + std::to_string(part.size()) + " scores for " +
                            std::to_string(want) + " images");
      }
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  std::size_t max_batch() const final { return max_batch_; }

 protected:
  virtual std::vector<double> score_chunk(std::span<const Image> images) = 0;

 private:
  std::size_t max_batch_;
};

// Long-running child speaking the protocol on stdin/stdout.
class SubprocessScorer : public ChunkedScorer {
 public:
  explicit SubprocessScorer(AdapterConfig config) : ChunkedScorer(config.max_batch), config_(std::move(config)) {
    ::signal(SIGPIPE, SIG_IGN);
    start();
  }
  ~SubprocessScorer() override { stop(); }

  SubprocessScorer(const SubprocessScorer&) = delete;
  SubprocessScorer& operator=(const SubprocessScorer&) = delete;

 protected:
  std::vector<double> score_chunk(std::span<const Image> images) override {
    std::lock_guard lock(mutex_);
    const std::string id = next_id();
    const std::string line = encode_request(id, images).dump() + "\n";
    for (int attempt = 0;; ++attempt) {
      try {
        if (pid_ <= 0) start();
        send(line);
        return decode_response(receive(), id);
      } catch (const TimeoutError&) {
        stop();
        if (attempt >= config_.retries) throw;
      } catch (const ProtocolError&) {
        stop();
        throw;
      } catch (const ModelError&) {
        throw;
      }
    }
  }


 public:
  std::string model_id() const override {
    return config_.model_id.empty() ? "stdio:" + config_.endpoint : config_.model_id;
  }

 private:
  void start() {
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0) throw ModelError("pipe() failed");
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw ModelError("pipe() failed");
    }
    const pid_t pid = ::fork();
    if (pid < 0) throw ModelError("fork() failed");
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", config_.endpoint.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    ::fcntl(to_child[1], F_SETFD, FD_CLOEXEC);
    ::fcntl(from_child[0], F_SETFD, FD_CLOEXEC);
    pid_ = pid;
    write_fd_ = to_child[1];
    read_fd_ = from_child[0];
    buffer_.clear();
  }

  void stop() {
    if (write_fd_ >= 0) ::close(write_fd_);
    if (read_fd_ >= 0) ::close(read_fd_);
    write_fd_ = read_fd_ = -1;
    if (pid_ > 0) {
      ::kill(pid_, SIGTERM);
      ::waitpid(pid_, nullptr, 0);
    }
    pid_ = -1;
  }

  void send(const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      const ssize_t n = ::write(write_fd_, data.data() + off, data.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        stop();
        throw ModelError("scorer process closed its input (command: " + config_.endpoint + ")");
      }
      off += static_cast<std::size_t>(n);
    }
  }

  std::string receive() {
    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + std::chrono::milliseconds(config_.timeout_ms);
    char chunk[65536];
    for (;;) {
      if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
      if (left <= 0) throw TimeoutError("scorer did not answer within " + std::to_string(config_.timeout_ms) + " ms");
      pollfd pfd{read_fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(left));
      if (ready < 0 && errno == EINTR) continue;
      if (ready == 0) continue;
      const ssize_t n = ::read(read_fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        stop();
        throw ModelError("scorer process exited before answering (command: " + config_.endpoint + ")");
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  AdapterConfig config_;
  std::mutex mutex_;
  pid_t pid_ = -1;
  int write_fd_ = -1;
  int read_fd_ = -1;
  std::string buffer_;
};

class HttpScorer : public ChunkedScorer {
 public:
  explicit HttpScorer(AdapterConfig config)
      : ChunkedScorer(config.max_batch), config_(std::move(config)), slots_(config_.max_in_flight) {}

  std::string model_id() const override {
    return config_.model_id.empty() ? "http:" + config_.endpoint : config_.model_id;
  }

 protected:
  std::vector<double> score_chunk(std::span<const Image> images) override {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<1024>& s;
      ~Release() { s.release(); }
    } release{slots_};

    const std::string id = next_id();
    const std::string body = encode_request(id, images).dump();
    const auto secs = config_.timeout_ms / 1000;
    const auto usecs = (config_.timeout_ms % 1000) * 1000;
    for (int attempt = 0;; ++attempt) {
      httplib::Client client(config_.endpoint);
      client.set_connection_timeout(secs, usecs);
      client.set_read_timeout(secs, usecs);
      client.set_write_timeout(secs, usecs);
      auto res = client.Post("/score", body, "application/json");
      if (!res) {
        const bool timeout = res.error() == httplib::Error::Read || res.error() == httplib::Error::Write ||
                             res.error() == httplib::Error::ConnectionTimeout;
        if (attempt < config_.retries) continue;
        const std::string what = "HTTP scorer at " + config_.endpoint + " failed: " + httplib::to_string(res.error());
        if (timeout) throw TimeoutError(what);
        throw ModelError(what);
      }
      if (res->status >= 500 && attempt < config_.retries) continue;
      if (res->status != 200) {
        // Error bodies may still carry an {"id", "error"} message.
        try {
          decode_response(res->body, id);
        } catch (const ModelError& e) {
          throw ModelError("HTTP " + std::to_string(res->status) + ": " + e.what());
        }
        throw ModelError("HTTP scorer answered status " + std::to_string(res->status));
      }
      return decode_response(res->body, id);
    }
  }


 private:
  AdapterConfig config_;
  std::counting_semaphore<1024> slots_;
};

}  // namespace

std::unique_ptr<ScoreFn> make_adapter(const AdapterConfig& config) {
  config.validate();
  if (config.transport == Transport::Http) return std::make_unique<HttpScorer>(config);
  return std::make_unique<SubprocessScorer>(config);
}

}  // namespace wcam
