// Copyright 2026 The srlkit Authors.
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

#include "srl/bridge.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "srl/error.h"

namespace srl {

namespace {

using nlohmann::json;

const json &Field(const json &obj, const char *name) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw ProtocolError(std::string("missing field '") + name + "'");
  }
  return obj.at(name);
}

template <typename T>
std::vector<T> IntArray(const json &value, const char *name) {
  if (!value.is_array()) {
    throw ProtocolError(std::string("'") + name + "' is not an array");
  }
  std::vector<T> out;
  out.reserve(value.size());
  for (const auto &v : value) {
    if (!v.is_number_integer()) {
      throw ProtocolError(std::string("'") + name +
                          "' holds a non-integer entry");
    }
    out.push_back(v.get<T>());
  }
  return out;
}

// Flattens a rows x width matrix, checking that it is rectangular.
template <typename T>
std::vector<T> Matrix(const json &value, const char *name, std::size_t rows,
                      std::size_t *width) {
  if (!value.is_array() || value.size() != rows) {
    throw ProtocolError(std::string("'") + name + "' must have " +
                        std::to_string(rows) + " rows");
  }
  std::vector<T> out;
  for (const auto &row : value) {
    auto values = IntArray<T>(row, name);
    if (out.empty() && *width == 0) *width = values.size();
    if (values.size() != *width) {
      throw ProtocolError(std::string("'") + name + "' is ragged");
    }
    out.insert(out.end(), values.begin(), values.end());
  }
  return out;
}

json ErrorResponse(const json &id, const std::string &code,
                   const std::string &message) {
  return {{"id", id}, {"error", {{"code", code}, {"message", message}}}};
}

std::string ErrnoText() { return std::strerror(errno); }

}  // namespace

json BatchToJson(const Batch &batch) {
  json ids = json::array(), segments = json::array(), mask = json::array();
  for (std::size_t r = 0; r < batch.rows; ++r) {
    const auto row_ids = batch.row_ids(r);
    const auto row_segments = batch.row_segments(r);
    const auto row_mask = batch.row_mask(r);
    ids.push_back(std::vector<SubwordId>(row_ids.begin(), row_ids.end()));
    segments.push_back(
        std::vector<std::int32_t>(row_segments.begin(), row_segments.end()));
    mask.push_back(std::vector<std::int32_t>(row_mask.begin(), row_mask.end()));
  }
  return {{"ids", ids},
          {"segment_ids", segments},
          {"attention_mask", mask},
          {"predicate_word_index", batch.predicate_word_index},
          {"first_subword_indices", batch.first_subword_indices}};
}

Batch BatchFromJson(const json &value) {
  if (!value.is_object()) throw ProtocolError("batch is not an object");
  Batch batch;
  batch.predicate_word_index = IntArray<std::size_t>(
      Field(value, "predicate_word_index"), "predicate_word_index");
  batch.rows = batch.predicate_word_index.size();
  const json &first = Field(value, "first_subword_indices");
  if (!first.is_array() || first.size() != batch.rows) {
    throw ProtocolError("'first_subword_indices' must have one entry per row");
  }
  for (const auto &row : first) {
    batch.first_subword_indices.push_back(
        IntArray<std::int32_t>(row, "first_subword_indices"));
  }
  std::size_t width = 0;
  batch.ids = Matrix<SubwordId>(Field(value, "ids"), "ids", batch.rows, &width);
  batch.segment_ids = Matrix<std::int32_t>(Field(value, "segment_ids"),
                                           "segment_ids", batch.rows, &width);
  batch.attention_mask = Matrix<std::int32_t>(
      Field(value, "attention_mask"), "attention_mask", batch.rows, &width);
  batch.width = width;
  for (std::size_t r = 0; r < batch.rows; ++r) {
    for (std::int32_t index : batch.first_subword_indices[r]) {
      if (index < 0 || static_cast<std::size_t>(index) >= width) {
        throw ProtocolError("first subword index " + std::to_string(index) +
                            " outside row of width " + std::to_string(width));
      }
    }
  }
  return batch;
}

json ScoresToJson(const ScoreTensor &scores) {
  json out = json::array();
  for (const RowScores &row : scores) {
    json words = json::array();
    for (std::size_t w = 0; w < row.words; ++w) {
      const auto values = row.word(w);
      words.push_back(std::vector<float>(values.begin(), values.end()));
    }
    out.push_back(std::move(words));
  }
  return out;
}

ScoreTensor ScoresFromJson(const json &value, std::size_t label_count) {
  if (!value.is_array()) throw ProtocolError("'scores' is not an array");
  ScoreTensor scores;
  for (const auto &row : value) {
    if (!row.is_array()) throw ProtocolError("score row is not an array");
    RowScores out;
    out.words = row.size();
    out.labels = label_count;
    out.values.reserve(out.words * label_count);
    for (const auto &word : row) {
      if (!word.is_array() || word.size() != label_count) {
        throw ProtocolError("score vector must have " +
                            std::to_string(label_count) + " entries");
      }
      for (const auto &v : word) {
        if (!v.is_number()) throw ProtocolError("non-numeric score");
        const float f = static_cast<float>(v.get<double>());
        if (!std::isfinite(f)) throw ProtocolError("non-finite score");
        out.values.push_back(f);
      }
    }
    scores.push_back(std::move(out));
  }
  return scores;
}

void StreamChannel::WriteLine(std::string_view line) {
  out_ << line << '\n';
  out_.flush();
  if (!out_) throw IoError("write to stream failed");
}

std::optional<std::string> StreamChannel::ReadLine() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  return line;
}

SocketChannel::~SocketChannel() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<SocketChannel> SocketChannel::Connect(
    const std::string &address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
    throw IoError("bridge address '" + address + "' is not host:port");
  }
  const std::string host = address.substr(0, colon);
  const std::string port = address.substr(colon + 1);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo *found = nullptr;
  if (int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &found);
      rc != 0) {
    throw IoError("cannot resolve '" + address + "': " + ::gai_strerror(rc));
  }
  int fd = -1;
  std::string last_error = "no address";
  for (addrinfo *ai = found; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_error = ErrnoText();
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    last_error = ErrnoText();
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(found);
  if (fd < 0) {
    throw IoError("cannot connect to bridge at " + address + ": " + last_error);
  }
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return std::make_unique<SocketChannel>(fd);
}

void SocketChannel::WriteLine(std::string_view line) {
  std::string data(line);
  data.push_back('\n');
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n =
        ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError("socket write failed: " + ErrnoText());
    }
    sent += static_cast<std::size_t>(n);
  }
}

std::optional<std::string> SocketChannel::ReadLine() {
  for (;;) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError("socket read failed: " + ErrnoText());
    }
    if (n == 0) {
      if (buffer_.empty()) return std::nullopt;
      std::string line = std::move(buffer_);
      buffer_.clear();
      return line;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

BridgeBackend::BridgeBackend(std::unique_ptr<LineChannel> channel,
                             SubwordVocab vocab)
    : channel_(std::move(channel)), vocab_(vocab) {
  const json response = Call({{"kind", "hello"}});
  const json &labels = Field(response, "labels");
  if (!labels.is_array() || labels.empty()) {
    throw ProtocolError("handshake returned no labels");
  }
  for (const auto &label : labels) {
    if (!label.is_string()) throw ProtocolError("non-string label");
    labels_.push_back(label.get<std::string>());
  }
}

std::unique_ptr<BridgeBackend> BridgeBackend::Connect(
    const std::string &address) {
  std::string target = address;
  if (target.empty()) {
    const char *env = std::getenv(kBridgeAddressEnv);
    if (env == nullptr || *env == '\0') {
      throw IoError(std::string("no bridge address given and ") +
                    kBridgeAddressEnv + " is unset");
    }
    target = env;
  }
  return std::make_unique<BridgeBackend>(SocketChannel::Connect(target));
}

json BridgeBackend::Call(json request) {
  const std::int64_t id = next_id_++;
  request["id"] = id;
  channel_->WriteLine(request.dump());
  const auto line = channel_->ReadLine();
  if (!line) throw ProtocolError("bridge closed the connection");
  json response;
  try {
    response = json::parse(*line);
  } catch (const json::parse_error &e) {
    throw ProtocolError(std::string("unparseable response: ") + e.what());
  }
  if (!response.is_object() || !response.contains("id") ||
      response["id"] != id) {
    throw ProtocolError("response does not echo request id " +
                        std::to_string(id));
  }
  if (response.contains("error")) {
    const json &error = response["error"];
    throw ProtocolError("bridge error " + error.value("code", std::string("?")) +
                        ": " + error.value("message", std::string()));
  }
  return response;
}

std::vector<SubwordId> BridgeBackend::Tokenize(std::string_view word) {
  const json response = Call({{"kind", "tokenize"}, {"word", word}});
  return IntArray<SubwordId>(Field(response, "ids"), "ids");
}

ScoreTensor BridgeBackend::Forward(const Batch &batch) {
  const json response = Call({{"kind", "forward"}, {"batch", BatchToJson(batch)}});
  return ScoresFromJson(Field(response, "scores"), labels_.size());
}

std::string HandleRequestLine(std::string_view line, TaggerBackend &backend) {
  json id = nullptr;
  try {
    const json request = json::parse(line);
    if (!request.is_object()) {
      return ErrorResponse(id, "protocol", "request is not an object").dump();
    }
    if (request.contains("id")) id = request["id"];
    if (!id.is_number_integer()) {
      return ErrorResponse(id, "protocol", "request lacks an integer id").dump();
    }
    const json &kind = Field(request, "kind");
    if (kind == "hello") {
      return json{{"id", id}, {"labels", backend.labels()}}.dump();
    }
    if (kind == "tokenize") {
      const json &word = Field(request, "word");
      if (!word.is_string()) throw ProtocolError("'word' is not a string");
      return json{{"id", id}, {"ids", backend.Tokenize(word.get<std::string>())}}
          .dump();
    }
    if (kind == "forward") {
      const Batch batch = BatchFromJson(Field(request, "batch"));
      return json{{"id", id}, {"scores", ScoresToJson(backend.Forward(batch))}}
          .dump();
    }
    return ErrorResponse(id, "protocol", "unknown kind " + kind.dump()).dump();
  } catch (const json::exception &e) {
    return ErrorResponse(id, "protocol", e.what()).dump();
  } catch (const Error &e) {
    return ErrorResponse(id, ErrorCodeName(e.code()), e.what()).dump();
  } catch (const std::exception &e) {
    return ErrorResponse(id, "internal", e.what()).dump();
  }
}

void ServeChannel(LineChannel &channel, TaggerBackend &backend) {
  while (const auto line = channel.ReadLine()) {
    if (line->empty()) continue;
    channel.WriteLine(HandleRequestLine(*line, backend));
  }
}

BridgeServer::BridgeServer(BackendFactory factory, std::uint16_t port)
    : factory_(std::move(factory)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw IoError("socket: " + ErrnoText());
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 16) != 0) {
    const std::string reason = ErrnoText();
    ::close(listen_fd_);
    throw IoError("cannot listen on port " + std::to_string(port) + ": " +
                  reason);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr *>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

BridgeServer::~BridgeServer() { Stop(); }

std::string BridgeServer::address() const {
  return "127.0.0.1:" + std::to_string(port_);
}

void BridgeServer::Start() {
  acceptor_ = std::thread([this] { AcceptLoop(0); });
}

void BridgeServer::Run(std::size_t max_connections) {
  AcceptLoop(max_connections);
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    workers.swap(workers_);
  }
  for (auto &worker : workers) worker.join();
}

void BridgeServer::AcceptLoop(std::size_t max_connections) {
  std::size_t accepted = 0;
  while (!stopping_ && (max_connections == 0 || accepted < max_connections)) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      return;
    }
    ++accepted;
    std::lock_guard<std::mutex> lock(mutex_);
    if (stopping_) {
      ::close(fd);
      return;
    }
    client_fds_.push_back(fd);
    workers_.emplace_back([this, fd] {
      // The channel does not own fd; Stop may shut it down concurrently.
      std::unique_ptr<TaggerBackend> backend = factory_();
      SocketChannel channel(::dup(fd));
      try {
        ServeChannel(channel, *backend);
      } catch (const std::exception &) {
        // Connection dropped mid-request.
      }
      std::lock_guard<std::mutex> inner(mutex_);
      std::erase(client_fds_, fd);
      ::close(fd);
    });
  }
}

void BridgeServer::Stop() {
  if (stopping_.exchange(true)) return;
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
  }
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto &worker : workers) worker.join();
  if (listen_fd_ >= 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
}

}  // namespace srl
