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

#include "securebio/smc_net.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "securebio/rng.h"

namespace securebio::smc {

using nlohmann::json;
using paillier::Ciphertext;
using paillier::from_hex;
using paillier::to_hex;

// ---------------------------------------------------------------------------
// Messages

std::string encode_message(const Message& m) {
  json j = {{"v", m.version}, {"type", m.type}, {"sid", m.sid},
            {"payload", m.payload}};
  return j.dump() + "\n";
}

Message decode_message(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("message is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("v") || !j.contains("type") ||
      !j["v"].is_number_integer() || !j["type"].is_string()) {
    throw FormatError("message lacks integer 'v' or string 'type'");
  }
  Message m;
  m.version = j["v"].get<int>();
  m.type = j["type"].get<std::string>();
  if (j.contains("sid") && j["sid"].is_string()) m.sid = j["sid"];
  if (j.contains("payload")) {
    if (!j["payload"].is_object()) throw FormatError("payload must be an object");
    m.payload = j["payload"];
  }
  return m;
}

Message make_error(const std::string& sid, const std::string& code,
                   const std::string& message) {
  return Message{kProtocolVersion, msg::kError, sid,
                 json{{"code", code}, {"message", message}}};
}

namespace {

template <typename T>
T field(const json& payload, const char* name) {
  if (!payload.contains(name)) {
    throw FormatError(std::string("payload lacks '") + name + "'");
  }
  try {
    return payload.at(name).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("payload field '") + name +
                      "' has the wrong type");
  }
}

// ---------------------------------------------------------------------------
// Sockets

class Socket {
 public:
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket() {
    if (fd_ >= 0) ::close(fd_);
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  int fd() const { return fd_; }

  void send_all(const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
      const ssize_t r =
          ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (r < 0) {
        if (errno == EINTR) continue;
        throw ConnectionError(std::string("send failed: ") + std::strerror(errno));
      }
      sent += static_cast<std::size_t>(r);
    }
  }

  /// Next line without the terminator; nullopt on orderly close.
  std::optional<std::string> read_line() {
    constexpr std::size_t kMaxLine = 16 << 20;
    for (;;) {
      const auto pos = buffer_.find('\n');
      if (pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        return line;
      }
      if (buffer_.size() > kMaxLine) throw FormatError("message line too long");
      char chunk[8192];
      const ssize_t r = ::recv(fd_, chunk, sizeof(chunk), 0);
      if (r == 0) return std::nullopt;
      if (r < 0) {
        if (errno == EINTR) continue;
        throw ConnectionError(std::string("recv failed: ") + std::strerror(errno));
      }
      buffer_.append(chunk, static_cast<std::size_t>(r));
    }
  }

  void send(const Message& m) { send_all(encode_message(m)); }

  Message receive() {
    auto line = read_line();
    if (!line) throw ConnectionError("peer closed the connection");
    return decode_message(*line);
  }

 private:
  int fd_;
  std::string buffer_;
};

void set_timeout(int fd, int seconds) {
  timeval tv{seconds, 0};
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

int connect_to(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
      rc != 0) {
    throw ConnectionError("cannot resolve " + host + ": " + gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    throw ConnectionError("cannot connect to " + host + ":" + service);
  }
  set_timeout(fd, 60);
  return fd;
}

json ciphertexts_to_json(const std::vector<Ciphertext>& cts) {
  json arr = json::array();
  for (const auto& c : cts) arr.push_back(to_hex(c.value));
  return arr;
}

}  // namespace

// ---------------------------------------------------------------------------
// Template store

json entry_to_json(const StoredEntry& e) {
  return json{{"n", to_hex(e.pub.n)},
              {"elements", ciphertexts_to_json(e.tmpl.elements)},
              {"sum_squares", to_hex(e.tmpl.sum_squares.value)},
              {"theta", e.theta}};
}

StoredEntry entry_from_json(const json& j) {
  StoredEntry e;
  e.pub = paillier::PublicKey(from_hex(field<std::string>(j, "n")));
  for (const auto& s : field<std::vector<std::string>>(j, "elements")) {
    e.tmpl.elements.push_back(Ciphertext{from_hex(s)});
  }
  e.tmpl.sum_squares = Ciphertext{from_hex(field<std::string>(j, "sum_squares"))};
  e.theta = field<std::size_t>(j, "theta");
  return e;
}

TemplateStore::TemplateStore(std::string path) : path_(std::move(path)) {}

std::shared_ptr<TemplateStore> TemplateStore::Open(const std::string& path) {
  auto store = std::make_shared<TemplateStore>(path);
  std::ifstream in(path);
  if (!in) return store;
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("template store " + path + " is not valid JSON: " +
                      e.what());
  }
  if (!j.is_object()) throw FormatError("template store must be a JSON object");
  for (const auto& [id, entry] : j.items()) {
    store->entries_.emplace(id, entry_from_json(entry));
  }
  return store;
}

void TemplateStore::put(const std::string& id, StoredEntry entry) {
  std::unique_lock lock(mu_);
  entries_[id] = std::move(entry);
  if (!path_.empty()) save_locked();
}

std::optional<StoredEntry> TemplateStore::get(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> TemplateStore::ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

void TemplateStore::save() const {
  std::shared_lock lock(mu_);
  save_locked();
}

void TemplateStore::save_locked() const {
  json j = json::object();
  for (const auto& [id, e] : entries_) j[id] = entry_to_json(e);
  const std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write template store " + tmp);
    out << j.dump(2) << "\n";
  }
  if (std::rename(tmp.c_str(), path_.c_str()) != 0) {
    throw Error("cannot replace template store " + path_);
  }
}

// ---------------------------------------------------------------------------
// Server

SmcServer::SmcServer(std::shared_ptr<TemplateStore> store, std::uint64_t seed,
                     Logger log)
    : store_(std::move(store)), seed_(seed), log_(std::move(log)) {
  if (!log_) log_ = [](const std::string& line) { std::clog << line << "\n"; };
}

SmcServer::~SmcServer() { stop(); }

std::uint16_t SmcServer::start(std::uint16_t port, const std::string& host) {
  if (running_) throw Error("server already running");
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw ConnectionError("socket() failed");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw ConnectionError("invalid IPv4 listen address " + host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 64) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw ConnectionError("cannot listen on " + host + ":" +
                          std::to_string(port) + ": " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
  return ntohs(addr.sin_port);
}

void SmcServer::wait() {
  if (acceptor_.joinable()) acceptor_.join();
}

void SmcServer::stop() {
  if (!running_.exchange(false)) {
    if (acceptor_.joinable()) acceptor_.join();
    return;
  }
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  if (acceptor_.joinable() && acceptor_.get_id() != std::this_thread::get_id()) {
    acceptor_.join();
  }
  std::unique_lock lock(mu_);
  for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
  idle_.wait(lock, [this] { return active_ == 0; });
}

void SmcServer::accept_loop() {
  while (running_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    set_timeout(fd, 60);
    const std::uint64_t session = sessions_.fetch_add(1);
    {
      std::lock_guard lock(mu_);
      open_fds_.insert(fd);
      ++active_;
    }
    std::thread([this, fd, session] {
      serve_connection(fd, session);
      std::lock_guard lock(mu_);
      open_fds_.erase(fd);
      ::close(fd);
      if (--active_ == 0) idle_.notify_all();
    }).detach();
  }
}

namespace {

// Per-connection protocol state.
struct Session {
  std::string sid;
  std::optional<StoredEntry> entry;
  std::string id;
  mpz_class check_plain;
  bool awaiting_sign = false;
};

}  // namespace

void SmcServer::serve_connection(int fd, std::uint64_t session_index) {
  // The Socket wrapper must not close fd; accept_loop's worker does that.
  Socket sock(::dup(fd));
  paillier::RandomSource rng(mix64(seed_ ^ mix64(session_index + 1)));
  Session s;
  s.sid = "s" + std::to_string(session_index);

  auto fail = [&](const std::string& code, const std::string& why) {
    if (code == err::kProtocol) failures_.fetch_add(1);
    log_("session " + s.sid + ": " + code + ": " + why);
    try {
      sock.send(make_error(s.sid, code, why));
    } catch (const Error&) {
    }
  };

  for (;;) {
    std::optional<std::string> line;
    try {
      line = sock.read_line();
    } catch (const Error& e) {
      log_("session " + s.sid + ": connection error: " + e.what());
      return;
    }
    if (!line) return;

    Message m;
    try {
      m = decode_message(*line);
    } catch (const FormatError& e) {
      fail(err::kMalformed, e.what());
      return;
    }
    if (m.version != kProtocolVersion) {
      fail(err::kVersion, "expected protocol version " +
                              std::to_string(kProtocolVersion) + ", got " +
                              std::to_string(m.version));
      return;
    }

    try {
      if (m.type == msg::kEnroll) {
        StoredEntry e = entry_from_json(m.payload);
        const std::string id = field<std::string>(m.payload, "id");
        store_->put(id, std::move(e));
        log_("session " + s.sid + ": enrolled " + id);
        sock.send(Message{kProtocolVersion, msg::kDecision, s.sid,
                          json{{"accept", true}, {"reason", "enrolled"}}});
        continue;
      }

      if (m.type == msg::kHello) {
        s.id = field<std::string>(m.payload, "id");
        s.entry = store_->get(s.id);
        if (!s.entry) {
          fail(err::kUnknownId, "no template enrolled for '" + s.id + "'");
          return;
        }
        if (from_hex(field<std::string>(m.payload, "n")) != s.entry->pub.n) {
          fail(err::kKeyMismatch,
               "public key does not match the enrolled key for '" + s.id + "'");
          return;
        }
        sock.send(Message{kProtocolVersion, msg::kHello, s.sid,
                          json{{"id", s.id}}});
        continue;
      }

      if (m.type == msg::kAuthStart) {
        if (!s.entry) {
          fail(err::kUnexpected, "AUTH_START before HELLO");
          return;
        }
        const auto probe_text = field<std::string>(m.payload, "probe");
        BitVector probe;
        try {
          probe = BitVector::FromString(probe_text);
          require_size(probe, s.entry->tmpl.size(), "probe");
        } catch (const Error& e) {
          fail(err::kBadProbe, e.what());
          return;
        }
        const auto& pub = s.entry->pub;
        const Ciphertext dist = encrypted_distance(pub, s.entry->tmpl, probe, rng);
        const Blinding b =
            draw_blinding(pub, probe.size(), s.entry->theta, rng);
        const Ciphertext blinded =
            blind_difference(pub, dist, s.entry->theta, b, rng);
        s.check_plain = rng.below(pub.n);
        const Ciphertext check = paillier::encrypt(pub, s.check_plain, rng);
        s.awaiting_sign = true;
        sock.send(Message{kProtocolVersion, msg::kDistBlinded, s.sid,
                          json{{"c", to_hex(blinded.value)},
                               {"check", to_hex(check.value)}}});
        continue;
      }

      if (m.type == msg::kSignReply) {
        if (!s.awaiting_sign) {
          fail(err::kUnexpected, "SIGN_REPLY without a pending comparison");
          return;
        }
        s.awaiting_sign = false;
        const bool negative = field<bool>(m.payload, "negative");
        const mpz_class check = from_hex(field<std::string>(m.payload, "check"));
        json decision;
        if (check != s.check_plain) {
          failures_.fetch_add(1);
          log_("session " + s.sid + ": protocol failure for '" + s.id +
               "': key check failed, claimant decryption is garbage");
          decision = {{"accept", false}, {"reason", "key check failed"}};
        } else {
          decision = {{"accept", negative},
                      {"reason", negative ? "distance within threshold"
                                          : "distance above threshold"}};
        }
        sock.send(Message{kProtocolVersion, msg::kDecision, s.sid, decision});
        continue;
      }

      fail(err::kUnexpected, "unexpected message type '" + m.type + "'");
      return;
    } catch (const FormatError& e) {
      fail(err::kMalformed, e.what());
      return;
    } catch (const Error& e) {
      fail(err::kProtocol, e.what());
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Client

namespace {

Message expect(Socket& sock, const char* type) {
  Message m = sock.receive();
  if (m.type == msg::kError) {
    throw RemoteError(field<std::string>(m.payload, "code"),
                      m.payload.value("message", std::string()));
  }
  if (m.type != type) {
    throw ConnectionError(std::string("expected ") + type + ", got " + m.type);
  }
  return m;
}

}  // namespace

RemoteDecision authenticate_remote(const std::string& host, std::uint16_t port,
                                   const std::string& claimed_id,
                                   const BitVector& probe,
                                   const paillier::Keypair& key) {
  Socket sock(connect_to(host, port));
  sock.send(Message{kProtocolVersion, msg::kHello, "",
                    json{{"id", claimed_id}, {"n", to_hex(key.pub.n)}}});
  const std::string sid = expect(sock, msg::kHello).sid;

  sock.send(Message{kProtocolVersion, msg::kAuthStart, sid,
                    json{{"probe", probe.to_string()}}});
  const Message blinded = expect(sock, msg::kDistBlinded);

  bool negative = false;
  mpz_class check = 0;
  try {
    negative = reveal_sign(key, Ciphertext{from_hex(field<std::string>(
                                    blinded.payload, "c"))})
                   .negative;
    check = paillier::decrypt(
        key, Ciphertext{from_hex(field<std::string>(blinded.payload, "check"))});
  } catch (const paillier::DecryptionError&) {
    // Report garbage; the device will reject on the failed check.
  }
  sock.send(Message{kProtocolVersion, msg::kSignReply, sid,
                    json{{"negative", negative}, {"check", to_hex(check)}}});
  const Message decision = expect(sock, msg::kDecision);
  return RemoteDecision{field<bool>(decision.payload, "accept"),
                        decision.payload.value("reason", std::string())};
}

void enroll_remote(const std::string& host, std::uint16_t port,
                   const std::string& id, const StoredEntry& entry) {
  Socket sock(connect_to(host, port));
  json payload = entry_to_json(entry);
  payload["id"] = id;
  sock.send(Message{kProtocolVersion, msg::kEnroll, "", payload});
  expect(sock, msg::kDecision);
}

}  // namespace securebio::smc
