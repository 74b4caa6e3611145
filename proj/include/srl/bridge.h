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

// Newline-delimited JSON wire protocol for out-of-process tagger backends.
//
// Every request and response is one JSON object on one line. Requests carry
// an integer "id" that the response echoes.
//
//   {"id":1,"kind":"hello"}                  -> {"id":1,"labels":[...]}
//   {"id":2,"kind":"tokenize","word":"gave"} -> {"id":2,"ids":[...]}
//   {"id":3,"kind":"forward","batch":{...}}  -> {"id":3,"scores":[...]}
//
// A forward batch holds "ids", "segment_ids" and "attention_mask" as
// rows x width integer arrays, "predicate_word_index" as one integer per
// row and "first_subword_indices" as one integer array per row. "scores"
// is indexed [row][word][label] in handshake label order. Failures are
// answered with {"id":n,"error":{"code":"...","message":"..."}} and leave
// the connection open.

#ifndef SRL_BRIDGE_H_
#define SRL_BRIDGE_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"
#include "srl/encoding.h"
#include "srl/model_input.h"

namespace srl {

// Environment variable consulted when no bridge address is given.
inline constexpr const char *kBridgeAddressEnv = "SRL_BRIDGE_ADDRESS";

nlohmann::json BatchToJson(const Batch &batch);
// Throws ProtocolError on missing fields or ragged arrays.
Batch BatchFromJson(const nlohmann::json &json);

nlohmann::json ScoresToJson(const ScoreTensor &scores);
// Throws ProtocolError unless every score is a finite number and every
// word vector has `label_count` entries.
ScoreTensor ScoresFromJson(const nlohmann::json &json,
                           std::size_t label_count);

// A bidirectional line transport.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  // `line` must not contain a newline; one is appended.
  virtual void WriteLine(std::string_view line) = 0;
  // std::nullopt at end of stream.
  virtual std::optional<std::string> ReadLine() = 0;
};

// Channel over a pair of iostreams (stdio or in-memory).
class StreamChannel : public LineChannel {
 public:
  StreamChannel(std::istream &in, std::ostream &out) : in_(in), out_(out) {}
  void WriteLine(std::string_view line) override;
  std::optional<std::string> ReadLine() override;

 private:
  std::istream &in_;
  std::ostream &out_;
};

// Channel over a connected stream socket; owns the descriptor.
class SocketChannel : public LineChannel {
 public:
  explicit SocketChannel(int fd) : fd_(fd) {}
  ~SocketChannel() override;
  SocketChannel(const SocketChannel &) = delete;
  SocketChannel &operator=(const SocketChannel &) = delete;

  // "host:port". Throws IoError when the connection cannot be made.
  static std::unique_ptr<SocketChannel> Connect(const std::string &address);

  void WriteLine(std::string_view line) override;
  std::optional<std::string> ReadLine() override;

 private:
  int fd_;
  std::string buffer_;
};

// Client side of the protocol. Performs the handshake on construction.
// Not thread-safe: one request is in flight per connection, so parallel
// callers each open their own BridgeBackend.
class BridgeBackend : public TaggerBackend {
 public:
  explicit BridgeBackend(std::unique_ptr<LineChannel> channel,
                         SubwordVocab vocab = {});

  // Connects to `address`, or to $SRL_BRIDGE_ADDRESS when empty.
  static std::unique_ptr<BridgeBackend> Connect(const std::string &address);

  std::vector<SubwordId> Tokenize(std::string_view word) override;
  ScoreTensor Forward(const Batch &batch) override;
  const SubwordVocab &vocab() const override { return vocab_; }
  const std::vector<std::string> &labels() const override { return labels_; }

 private:
  nlohmann::json Call(nlohmann::json request);

  std::unique_ptr<LineChannel> channel_;
  SubwordVocab vocab_;
  std::vector<std::string> labels_;
  std::int64_t next_id_ = 1;
};

// Handles one request line against `backend` and returns the response
// line. Never throws for malformed input.
std::string HandleRequestLine(std::string_view line, TaggerBackend &backend);

// Answers requests until the channel reaches end of stream.
void ServeChannel(LineChannel &channel, TaggerBackend &backend);

// TCP server on 127.0.0.1. Each accepted connection gets a fresh backend
// from the factory and its own thread.
class BridgeServer {
 public:
  using BackendFactory = std::function<std::unique_ptr<TaggerBackend>()>;

  // Port 0 picks a free port. Throws IoError when binding fails.
  BridgeServer(BackendFactory factory, std::uint16_t port = 0);
  ~BridgeServer();
  BridgeServer(const BridgeServer &) = delete;
  BridgeServer &operator=(const BridgeServer &) = delete;

  std::uint16_t port() const { return port_; }
  std::string address() const;

  // Accepts connections on a background thread.
  void Start();
  // Accepts connections on the calling thread until Stop or until
  // `max_connections` (0 = unlimited) have been accepted and served.
  void Run(std::size_t max_connections = 0);
  // Closes the listener and all open connections, then joins workers.
  void Stop();

 private:
  void AcceptLoop(std::size_t max_connections);

  BackendFactory factory_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex mutex_;
  std::vector<int> client_fds_;
  std::vector<std::thread> workers_;
};

}  // namespace srl

#endif  // SRL_BRIDGE_H_
