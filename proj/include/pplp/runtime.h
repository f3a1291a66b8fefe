// Copyright 2026 The pplp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPLP_RUNTIME_H_
#define PPLP_RUNTIME_H_

#include <coroutine>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pplp/random.h"
#include "pplp/wire.h"

namespace pplp {

// 1-based party index.
struct PartyId {
  std::size_t index = 0;
  friend auto operator<=>(const PartyId&, const PartyId&) = default;
};

std::string ToString(PartyId id);

struct Message {
  PartyId from;
  PartyId to;
  std::uint64_t round = 0;  // global send order, strictly increasing
  std::string kind;
  Bytes payload;

  friend bool operator==(const Message&, const Message&) = default;
};

enum class LogCategory {
  kDecrypted,  // plaintext recovered with the party's secret key
  kComputed,   // plaintext the party derived locally (e.g. a solver result)
};

struct LogEntry {
  std::string step;
  LogCategory category = LogCategory::kDecrypted;
  std::vector<mpq_class> values;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct PartyLog {
  std::vector<Message> sent;
  std::vector<Message> received;
  std::vector<LogEntry> log;

  friend bool operator==(const PartyLog&, const PartyLog&) = default;
};

class Transcript {
 public:
  explicit Transcript(std::size_t parties = 0) : parties_(parties) {}

  std::size_t party_count() const { return parties_.size(); }
  const PartyLog& party(PartyId id) const { return parties_.at(id.index - 1); }
  PartyLog& party(PartyId id) { return parties_.at(id.index - 1); }
  // Every message in send order.
  const std::vector<Message>& messages() const { return messages_; }
  void RecordSend(const Message& m);

  // One line per message: `round|from|to|kind|payload-sha256`.
  std::string Export() const;
  // SHA-256 over the export plus every party's plaintext log.
  std::string Digest() const;

  // Most recent log entry of `party` with this step tag, if any.
  const LogEntry* FindLog(PartyId party, const std::string& step) const;

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  std::vector<PartyLog> parties_;
  std::vector<Message> messages_;
};

// Lazily started coroutine. Awaiting a Task runs it to completion (across any
// number of message waits) and yields its value.
template <typename T = void>
class Task;

namespace internal {

struct PromiseBase {
  std::coroutine_handle<> continuation;
  std::exception_ptr error;

  std::suspend_always initial_suspend() noexcept { return {}; }
  struct FinalAwaiter {
    bool await_ready() noexcept { return false; }
    template <typename P>
    std::coroutine_handle<> await_suspend(std::coroutine_handle<P> h) noexcept {
      auto next = h.promise().continuation;
      return next ? next : std::noop_coroutine();
    }
    void await_resume() noexcept {}
  };
  FinalAwaiter final_suspend() noexcept { return {}; }
  void unhandled_exception() { error = std::current_exception(); }
};

}  // namespace internal

template <typename T>
class Task {
 public:
  struct promise_type : internal::PromiseBase {
    std::optional<T> value;
    Task get_return_object() {
      return Task(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    template <typename U>
    void return_value(U&& v) {
      value.emplace(std::forward<U>(v));
    }
  };

  Task(Task&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  Task& operator=(Task&& other) noexcept {
    if (this != &other) {
      if (handle_) handle_.destroy();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  ~Task() {
    if (handle_) handle_.destroy();
  }

  bool await_ready() const noexcept { return false; }
  std::coroutine_handle<> await_suspend(std::coroutine_handle<> caller) noexcept {
    handle_.promise().continuation = caller;
    return handle_;
  }
  T await_resume() {
    if (handle_.promise().error) std::rethrow_exception(handle_.promise().error);
    return std::move(*handle_.promise().value);
  }

  std::coroutine_handle<promise_type> handle() const { return handle_; }

 private:
  explicit Task(std::coroutine_handle<promise_type> h) : handle_(h) {}
  std::coroutine_handle<promise_type> handle_;
};

template <>
class Task<void> {
 public:
  struct promise_type : internal::PromiseBase {
    Task get_return_object() {
      return Task(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    void return_void() {}
  };

  Task(Task&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  Task& operator=(Task&& other) noexcept {
    if (this != &other) {
      if (handle_) handle_.destroy();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  ~Task() {
    if (handle_) handle_.destroy();
  }

  bool await_ready() const noexcept { return false; }
  std::coroutine_handle<> await_suspend(std::coroutine_handle<> caller) noexcept {
    handle_.promise().continuation = caller;
    return handle_;
  }
  void await_resume() {
    if (handle_.promise().error) std::rethrow_exception(handle_.promise().error);
  }

  std::coroutine_handle<promise_type> handle() const { return handle_; }

 private:
  explicit Task(std::coroutine_handle<promise_type> h) : handle_(h) {}
  std::coroutine_handle<promise_type> handle_;
};

class Session;

// A party's view of the session: its identity, its private randomness, and
// its channels. Only valid inside the party's program.
class PartyContext {
 public:
  PartyId id() const { return id_; }
  std::size_t party_count() const;
  Rng& rng() { return rng_; }

  void Send(PartyId to, std::string kind, Bytes payload);

  struct ReceiveAwaiter {
    PartyContext* ctx;
    PartyId from;
    std::string kind;
    bool await_ready() const;
    void await_suspend(std::coroutine_handle<> h);
    Bytes await_resume();
  };
  // Next message on the (from -> this) channel; its kind must equal `kind`.
  ReceiveAwaiter Receive(PartyId from, std::string kind) {
    return ReceiveAwaiter{this, from, std::move(kind)};
  }

  void Log(std::string step, LogCategory category, std::vector<mpq_class> values);

 private:
  friend class Session;
  PartyContext(Session* session, PartyId id, Rng rng)
      : session_(session), id_(id), rng_(std::move(rng)) {}

  Session* session_;
  PartyId id_;
  Rng rng_;
  std::vector<std::deque<Message>> inbox_;  // per sender
  std::coroutine_handle<> waiting_;
  std::optional<std::pair<PartyId, std::string>> awaiting_;
};

using PartyProgram = std::function<Task<void>(PartyContext&)>;

// Runs one program per party (programs[k] is party k+1) under a
// deterministic round-robin scheduler until every program finishes.
// Throws SessionError on deadlock, kind mismatch or undelivered messages;
// exceptions raised inside a program propagate unchanged.
Transcript RunSession(const std::vector<PartyProgram>& programs,
                      std::uint64_t seed);

struct Violation {
  std::string source;  // "received:<kind>" or "log:<step>"
  mpq_class value;
};

struct AssertionReport {
  PartyId party;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Scans every plaintext the party received and every value in its log for
// entries matching `forbidden`.
AssertionReport TranscriptAssert(const Transcript& t, PartyId party,
                                 const std::function<bool(const mpq_class&)>& forbidden);

// Predicate matching any entry of the given matrices.
std::function<bool(const mpq_class&)> AnyEntryOf(
    const std::vector<RationalMatrix>& secrets, bool ignore_zero = true);

}  // namespace pplp

#endif  // PPLP_RUNTIME_H_
