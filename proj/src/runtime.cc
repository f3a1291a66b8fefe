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

#include "pplp/runtime.h"

#include <set>
#include <sstream>

#include "pplp/error.h"

namespace pplp {

std::string ToString(PartyId id) { return "P" + std::to_string(id.index); }

void Transcript::RecordSend(const Message& m) {
  messages_.push_back(m);
  party(m.from).sent.push_back(m);
}

std::string Transcript::Export() const {
  std::ostringstream os;
  for (const auto& m : messages_) {
    os << m.round << '|' << m.from.index << '|' << m.to.index << '|' << m.kind
       << '|' << Sha256Hex(m.payload) << '\n';
  }
  return os.str();
}

std::string Transcript::Digest() const {
  std::ostringstream os;
  os << Export();
  for (std::size_t p = 0; p < parties_.size(); ++p) {
    for (const auto& e : parties_[p].log) {
      os << "log|" << (p + 1) << '|' << e.step << '|'
         << (e.category == LogCategory::kDecrypted ? 'd' : 'c');
      for (const auto& v : e.values) os << '|' << v.get_str();
      os << '\n';
    }
  }
  return Sha256Hex(os.str());
}

const LogEntry* Transcript::FindLog(PartyId party_id, const std::string& step) const {
  const auto& log = party(party_id).log;
  for (auto it = log.rbegin(); it != log.rend(); ++it)
    if (it->step == step) return &*it;
  return nullptr;
}

class Session {
 public:
  Session(std::size_t parties, std::uint64_t seed) : transcript_(parties) {
    for (std::size_t k = 1; k <= parties; ++k) {
      auto ctx = std::unique_ptr<PartyContext>(
          new PartyContext(this, PartyId{k}, Rng::Derive(seed, "party", k)));
      ctx->inbox_.resize(parties);
      contexts_.push_back(std::move(ctx));
    }
  }

  std::size_t party_count() const { return contexts_.size(); }

  void Deliver(Message m) {
    if (m.to.index < 1 || m.to.index > contexts_.size()) {
      throw SessionError(ToString(m.from) + " sent '" + m.kind +
                         "' to nonexistent party " + std::to_string(m.to.index));
    }
    if (m.to == m.from) throw SessionError(ToString(m.from) + " sent a message to itself");
    m.round = ++round_;
    transcript_.RecordSend(m);
    contexts_[m.to.index - 1]->inbox_[m.from.index - 1].push_back(std::move(m));
  }

  void RecordReceive(const Message& m) { transcript_.party(m.to).received.push_back(m); }

  void RecordLog(PartyId id, LogEntry e) { transcript_.party(id).log.push_back(std::move(e)); }

  Transcript Run(const std::vector<PartyProgram>& programs) {
    std::vector<Task<void>> tasks;
    tasks.reserve(programs.size());
    for (std::size_t k = 0; k < programs.size(); ++k) {
      tasks.push_back(programs[k](*contexts_[k]));
      contexts_[k]->waiting_ = tasks.back().handle();
    }
    std::vector<bool> done(programs.size(), false);
    for (;;) {
      bool progress = false;
      bool all_done = true;
      for (std::size_t k = 0; k < tasks.size(); ++k) {
        if (done[k]) continue;
        PartyContext& ctx = *contexts_[k];
        if (ctx.awaiting_ && ctx.inbox_[ctx.awaiting_->first.index - 1].empty()) {
          all_done = false;
          continue;
        }
        auto h = std::exchange(ctx.waiting_, {});
        ctx.awaiting_.reset();
        h.resume();
        progress = true;
        auto top = tasks[k].handle();
        if (top.done()) {
          done[k] = true;
          if (top.promise().error) std::rethrow_exception(top.promise().error);
        } else {
          all_done = false;
        }
      }
      if (all_done) break;
      if (!progress) {
        for (std::size_t k = 0; k < tasks.size(); ++k) {
          if (done[k]) continue;
          const auto& awaited = *contexts_[k]->awaiting_;
          throw SessionError("deadlock: " + ToString(PartyId{k + 1}) +
                             " is blocked waiting for '" + awaited.second +
                             "' from " + ToString(awaited.first));
        }
      }
    }
    for (std::size_t k = 0; k < contexts_.size(); ++k) {
      for (const auto& queue : contexts_[k]->inbox_) {
        if (!queue.empty()) {
          throw SessionError("undelivered message '" + queue.front().kind + "' from " +
                             ToString(queue.front().from) + " to " +
                             ToString(PartyId{k + 1}));
        }
      }
    }
    return std::move(transcript_);
  }

 private:
  std::vector<std::unique_ptr<PartyContext>> contexts_;
  Transcript transcript_;
  std::uint64_t round_ = 0;
};

std::size_t PartyContext::party_count() const { return session_->party_count(); }

void PartyContext::Send(PartyId to, std::string kind, Bytes payload) {
  session_->Deliver(Message{id_, to, 0, std::move(kind), std::move(payload)});
}

bool PartyContext::ReceiveAwaiter::await_ready() const {
  if (from.index < 1 || from.index > ctx->inbox_.size()) {
    throw SessionError(ToString(ctx->id_) + " waits on nonexistent party " +
                       std::to_string(from.index));
  }
  return !ctx->inbox_[from.index - 1].empty();
}

void PartyContext::ReceiveAwaiter::await_suspend(std::coroutine_handle<> h) {
  ctx->waiting_ = h;
  ctx->awaiting_ = std::make_pair(from, kind);
}

Bytes PartyContext::ReceiveAwaiter::await_resume() {
  auto& queue = ctx->inbox_[from.index - 1];
  Message m = std::move(queue.front());
  queue.pop_front();
  if (m.kind != kind) {
    throw SessionError(ToString(ctx->id_) + " expected '" + kind + "' from " +
                       ToString(from) + " but received '" + m.kind + "'");
  }
  ctx->session_->RecordReceive(m);
  return std::move(m.payload);
}

void PartyContext::Log(std::string step, LogCategory category,
                       std::vector<mpq_class> values) {
  session_->RecordLog(id_, LogEntry{std::move(step), category, std::move(values)});
}

Transcript RunSession(const std::vector<PartyProgram>& programs, std::uint64_t seed) {
  if (programs.empty()) throw SessionError("session needs at least one party");
  Session session(programs.size(), seed);
  return session.Run(programs);
}

AssertionReport TranscriptAssert(const Transcript& t, PartyId party,
                                 const std::function<bool(const mpq_class&)>& forbidden) {
  AssertionReport report{party, {}};
  for (const auto& m : t.party(party).received) {
    if (PeekPayloadType(m.payload) != PayloadType::kRationalMatrix) continue;
    const RationalMatrix plain = DecodeRationalMatrixPayload(m.payload);
    for (const auto& v : plain.entries())
      if (forbidden(v)) report.violations.push_back({"received:" + m.kind, v});
  }
  for (const auto& e : t.party(party).log) {
    for (const auto& v : e.values)
      if (forbidden(v)) report.violations.push_back({"log:" + e.step, v});
  }
  return report;
}

std::function<bool(const mpq_class&)> AnyEntryOf(
    const std::vector<RationalMatrix>& secrets, bool ignore_zero) {
  auto values = std::make_shared<std::set<mpq_class>>();
  for (const auto& m : secrets)
    for (const auto& v : m.entries())
      if (!(ignore_zero && v == 0)) values->insert(v);
  return [values](const mpq_class& v) { return values->count(v) > 0; };
}

}  // namespace pplp
