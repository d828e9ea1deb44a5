// Copyright 2026 The securebio Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SECUREBIO_SMC_NET_H_
#define SECUREBIO_SMC_NET_H_

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "securebio/paillier.h"
#include "securebio/smc.h"

// Client/device split of the encrypted matcher over TCP.
//
// Messages are newline-delimited JSON objects
//   {"v": 1, "type": <TYPE>, "sid": <session id>, "payload": {...}}
// with big integers hex-encoded. A session runs
//
//   claimant                       device
//   HELLO {id, n}          ->
//                          <-      HELLO {id}                (or ERROR)
//   AUTH_START {probe}     ->
//                          <-      DIST_BLINDED {c, check}
//   SIGN_REPLY {negative, check} ->
//                          <-      DECISION {accept, reason}
//
// `check` is an encryption of a fresh random value; the claimant must return
// its plaintext, which proves possession of the decryption key. ENROLL
// {id, n, elements, sum_squares, theta} registers a template and is answered
// with DECISION {accept: true}. Failures are reported as ERROR {code,
// message} with the codes below.
namespace securebio::smc {

inline constexpr int kProtocolVersion = 1;

namespace msg {
inline constexpr const char* kHello = "HELLO";
inline constexpr const char* kEnroll = "ENROLL";
inline constexpr const char* kAuthStart = "AUTH_START";
inline constexpr const char* kDistBlinded = "DIST_BLINDED";
inline constexpr const char* kSignReply = "SIGN_REPLY";
inline constexpr const char* kDecision = "DECISION";
inline constexpr const char* kError = "ERROR";
}  // namespace msg

namespace err {
inline constexpr const char* kMalformed = "malformed";
inline constexpr const char* kVersion = "version_mismatch";
inline constexpr const char* kUnknownId = "unknown_id";
inline constexpr const char* kKeyMismatch = "key_mismatch";
inline constexpr const char* kProtocol = "protocol_failure";
inline constexpr const char* kUnexpected = "unexpected_message";
inline constexpr const char* kBadProbe = "bad_probe";
}  // namespace err

struct Message {
  int version = kProtocolVersion;
  std::string type;
  std::string sid;
  nlohmann::json payload = nlohmann::json::object();
};

/// One JSON line (terminated by '\n').
std::string encode_message(const Message& m);
/// Throws FormatError for invalid JSON or missing fields.
Message decode_message(const std::string& line);

Message make_error(const std::string& sid, const std::string& code,
                   const std::string& message);

/// Network or peer failure seen by the client.
class ConnectionError : public Error {
 public:
  using Error::Error;
};

/// The peer answered with an ERROR message.
class RemoteError : public Error {
 public:
  RemoteError(std::string code, const std::string& message)
      : Error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct StoredEntry {
  paillier::PublicKey pub;
  EncryptedTemplate tmpl;
  std::size_t theta = 0;  // accept iff squared distance <= theta
};

nlohmann::json entry_to_json(const StoredEntry& e);
StoredEntry entry_from_json(const nlohmann::json& j);

/// Enrolled encrypted templates keyed by user id. Reads run concurrently;
/// enrollments are serialized and, when a path is set, persisted.
class TemplateStore {
 public:
  TemplateStore() = default;
  explicit TemplateStore(std::string path);

  /// Loads `path` if it exists; an absent file gives an empty store.
  static std::shared_ptr<TemplateStore> Open(const std::string& path);

  void put(const std::string& id, StoredEntry entry);
  std::optional<StoredEntry> get(const std::string& id) const;
  std::vector<std::string> ids() const;
  void save() const;

 private:
  void save_locked() const;

  std::string path_;
  mutable std::shared_mutex mu_;
  std::map<std::string, StoredEntry> entries_;
};

/// Device side. Each accepted connection runs on its own (detached) thread
/// with its own session state; stop() closes open connections and waits for
/// those threads to finish.
class SmcServer {
 public:
  using Logger = std::function<void(const std::string&)>;

  SmcServer(std::shared_ptr<TemplateStore> store, std::uint64_t seed,
            Logger log = {});
  ~SmcServer();
  SmcServer(const SmcServer&) = delete;
  SmcServer& operator=(const SmcServer&) = delete;

  /// Binds 127.0.0.1 (or `host`) on `port` (0 picks a free port) and starts
  /// accepting in the background. Returns the bound port.
  std::uint16_t start(std::uint16_t port, const std::string& host = "127.0.0.1");
  /// Blocks until stop() is called from another thread.
  void wait();
  void stop();

  /// Sessions that ended with a protocol failure (diagnostics).
  std::size_t protocol_failures() const { return failures_.load(); }

 private:
  void accept_loop();
  void serve_connection(int fd, std::uint64_t session);

  std::shared_ptr<TemplateStore> store_;
  std::uint64_t seed_;
  Logger log_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::atomic<std::uint64_t> sessions_{0};
  std::atomic<std::size_t> failures_{0};
  std::thread acceptor_;
  std::mutex mu_;
  std::condition_variable idle_;
  std::set<int> open_fds_;
  std::size_t active_ = 0;
};

struct RemoteDecision {
  bool accepted = false;
  std::string reason;
};

/// Claimant side of one authentication round trip. Throws ConnectionError
/// on network failures and RemoteError when the device reports an ERROR.
RemoteDecision authenticate_remote(const std::string& host, std::uint16_t port,
                                   const std::string& claimed_id,
                                   const BitVector& probe,
                                   const paillier::Keypair& key);

/// Registers a template with the device.
void enroll_remote(const std::string& host, std::uint16_t port,
                   const std::string& id, const StoredEntry& entry);

}  // namespace securebio::smc

#endif  // SECUREBIO_SMC_NET_H_
