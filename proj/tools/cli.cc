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

#include "cli.h"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pplp/attack.h"
#include "pplp/crypto.h"
#include "pplp/encoding.h"
#include "pplp/error.h"
#include "pplp/problem_io.h"
#include "pplp/protocols.h"
#include "pplp/random.h"
#include "pplp/solver.h"

namespace pplp::cli {
namespace {

struct CommonOptions {
  int key_bits = kDefaultKeyBits;
  unsigned delta_exp = 20;
  std::string coeff_max = "65536";
  std::optional<std::uint64_t> seed;
  std::size_t solver_party = 0;
  std::string mode = "reveal";
  std::string transcript_path;
};

void AddProtocolFlags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--key-bits", o.key_bits, "Paillier modulus size in bits")->capture_default_str();
  cmd->add_option("--delta-exp", o.delta_exp, "fixed-point scale is 2^delta-exp")->capture_default_str();
  cmd->add_option("--coeff-max", o.coeff_max, "largest monomial coefficient")->capture_default_str();
  cmd->add_option("--seed", o.seed, "deterministic seed (default: random)");
  cmd->add_option("--solver-party", o.solver_party,
                  "party that solves the transformed LP (default: variant default)");
  cmd->add_option("--mode", o.mode, "reconstruction mode")
      ->check(CLI::IsMember({"reveal", "shares"}))
      ->capture_default_str();
  cmd->add_option("--transcript", o.transcript_path, "write the message transcript here");
}

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

mpz_class ParseCoeffMax(const std::string& text) {
  mpz_class v;
  if (v.set_str(text, 10) != 0 || v < 1) {
    throw std::invalid_argument("--coeff-max must be a positive integer, got '" + text + "'");
  }
  return v;
}

ProtocolConfig MakeConfig(const CommonOptions& o) {
  ProtocolConfig cfg;
  cfg.key_bits = o.key_bits;
  cfg.scale.delta_exp = o.delta_exp;
  cfg.coeff_max = ParseCoeffMax(o.coeff_max);
  cfg.solver_party = o.solver_party;
  cfg.mode = o.mode == "shares" ? ReconstructMode::kShares : ReconstructMode::kReveal;
  return cfg;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool LooksPartitioned(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string first;
    if (tokens >> first && first == "share") return true;
  }
  return false;
}

struct Shares {
  std::vector<PartyShare> shares;
  bool negated = false;
};

Shares LoadShares(const std::string& path) {
  std::istringstream in(ReadFile(path));
  const PartitionedProblem p = ParsePartition(in);
  const auto canonical = p.CanonicalShares();
  return {SharesFromPartition(canonical), canonical.front().negated_objective};
}

// The objective/constraint split takes a plain problem, or a two-share
// partition where share 1 holds only c and share 2 only M and b.
LpProblem LoadSplitProblem(const std::string& path) {
  const std::string text = ReadFile(path);
  std::istringstream in(text);
  if (!LooksPartitioned(text)) return Canonicalize(ParseProblem(in));
  const PartitionedProblem p = ParsePartition(in);
  if (p.shares.size() != 2) throw std::invalid_argument("alg2 expects exactly 2 shares");
  const auto s = p.CanonicalShares();
  auto is_zero = [](const RationalVector& v) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  };
  if (!s[0].m.IsZero() || !is_zero(s[0].b) || !is_zero(s[1].c)) {
    throw std::invalid_argument("alg2 expects share 1 to hold only c and share 2 only M and b");
  }
  return LpProblem{s[0].c, s[1].m, s[1].b, s[0].negated_objective};
}

PipelineResult RunVariant(const std::string& variant, const std::string& path,
                          const ProtocolConfig& cfg, std::uint64_t seed) {
  if (variant == "alg2") return RunObjectiveConstraintSplit(LoadSplitProblem(path), cfg, seed);
  const Shares s = LoadShares(path);
  if (variant == "alg3") return RunTwoPartyArbitrary(s.shares, cfg, seed, s.negated);
  return RunMultiParty(s.shares, cfg, seed, s.negated);
}

void WriteTranscript(const std::string& path, const Transcript& t) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << t.Export();
}

int CmdKeygen(int bits, const std::string& path, const std::optional<std::uint64_t>& seed,
              std::ostream& out) {
  Rng rng(ResolveSeed(seed));
  const KeyPair kp = GenerateKeyPair(bits, rng);
  std::ofstream priv(path);
  if (!priv) throw Error("cannot write '" + path + "'");
  WritePrivateKey(priv, kp.priv);
  std::ofstream pub(path + ".pub");
  if (!pub) throw Error("cannot write '" + path + ".pub'");
  WritePublicKey(pub, kp.pub);
  out << "key_id " << kp.pub.key_id << " bits " << kp.pub.bits() << '\n';
  return 0;
}

int CmdSolve(const std::string& path, std::ostream& out) {
  std::istringstream in(ReadFile(path));
  const LpProblem p = Canonicalize(ParseProblem(in));
  out << FormatSolution(p, SimplexSolve(p)) << '\n';
  return 0;
}

int CmdRun(const std::string& variant, const std::string& path, const CommonOptions& o,
           std::ostream& out) {
  const std::uint64_t seed = ResolveSeed(o.seed);
  const ProtocolConfig cfg = MakeConfig(o);
  const PipelineResult r = RunVariant(variant, path, cfg, seed);
  WriteTranscript(o.transcript_path, r.transcript);
  const LpStatus status = r.status();
  if (status != LpStatus::kOptimal) {
    out << ToString(status) << '\n';
  } else if (cfg.mode == ReconstructMode::kReveal) {
    out << "Optimal obj=" << r.objective().get_str() << " x=" << ToString(r.solution()) << '\n';
  } else {
    out << "Optimal obj=" << r.objective().get_str() << '\n';
    for (std::size_t k = 1; k <= r.parties.size(); ++k)
      out << "share " << ToString(PartyId{k}) << " x=" << ToString(r.at(PartyId{k}).x) << '\n';
  }
  out << "solver " << ToString(r.solver) << '\n';
  out << "seed " << seed << '\n';
  out << "transcript " << r.transcript.Digest() << '\n';
  return 0;
}

AttackInput ParseEvidence(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::string line;
  std::size_t number = 0;
  std::optional<std::size_t> n;
  std::map<std::string, RationalVector> fields;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream tokens(line);
    std::string key;
    if (!(tokens >> key) || key[0] == '#') continue;
    if (!n) {
      std::string count;
      if (key != "evidence" || !(tokens >> count)) throw ParseError(number, "expected 'evidence <n>'");
      std::size_t used = 0;
      long v = -1;
      try {
        v = std::stol(count, &used);
      } catch (const std::exception&) {
      }
      if (used != count.size() || v < 1) throw ParseError(number, "expected 'evidence <n>'");
      n = static_cast<std::size_t>(v);
      continue;
    }
    if (key != "ct" && key != "ctq" && key != "ystar" && key != "xstar") {
      throw ParseError(number, "unknown evidence field '" + key + "'");
    }
    if (fields.count(key) != 0) throw ParseError(number, "duplicate field '" + key + "'");
    RationalVector v;
    std::string tok;
    while (tokens >> tok) v.push_back(ParseRational(tok, number));
    if (v.size() != *n) {
      throw ParseError(number, "field '" + key + "' needs " + std::to_string(*n) + " values");
    }
    fields[key] = std::move(v);
  }
  if (!n) throw ParseError(number + 1, "missing 'evidence <n>' header");
  if (fields.count("ctq") == 0) throw ParseError(number + 1, "missing required field 'ctq'");
  AttackInput input;
  input.c_q = fields["ctq"];
  if (fields.count("ct")) input.c = fields["ct"];
  if (fields.count("ystar")) input.y_star = fields["ystar"];
  if (fields.count("xstar")) input.x_star = fields["xstar"];
  return input;
}

void PrintAttack(const AttackInput& in, const AttackResult& r, std::size_t max_print,
                 std::ostream& out) {
  out << "evidence ctq";
  if (in.c) out << " ct";
  if (in.y_star) out << " ystar";
  if (in.x_star) out << " xstar";
  out << '\n';
  out << "unique: " << (r.unique ? "true" : "false") << ", candidates=" << r.candidates.size() << '\n';
  for (std::size_t k = 0; k < r.candidates.size() && k < max_print; ++k) {
    const AttackCandidate& c = r.candidates[k];
    out << "candidate " << (k + 1) << '\n';
    const RationalMatrix d = c.q.Dense();
    for (std::size_t i = 0; i < d.rows(); ++i) out << ToString(d.Row(i)) << '\n';
    if (!c.fully_determined()) {
      out << "# undetermined rows:";
      for (std::size_t i = 0; i < c.determined.size(); ++i)
        if (!c.determined[i]) out << ' ' << (i + 1);
      out << '\n';
    }
  }
}

struct AttackOptions {
  bool evidence = false;
  bool leak_c = false;
  bool leak_x = false;
  std::size_t max_print = 10;
};

int CmdAttack(const std::string& scenario, const std::string& path, const AttackOptions& a,
              CommonOptions o, std::ostream& out) {
  if (a.evidence) {
    const AttackInput in = ParseEvidence(path);
    out << "scenario " << scenario << " evidence-file\n";
    PrintAttack(in, BednarzEnumerate(in), a.max_print, out);
    return 0;
  }
  const std::uint64_t seed = ResolveSeed(o.seed);
  SideKnowledge side;
  AttackScenario kind;
  PartyId attacker;
  Transcript transcript;
  if (scenario == "alg2") {
    // P2 is assumed to know the original objective.
    const LpProblem p = LoadSplitProblem(path);
    const PipelineResult r = RunObjectiveConstraintSplit(p, MakeConfig(o), seed);
    transcript = r.transcript;
    side.c = p.c;
    kind = AttackScenario::kObjectiveConstraintSplit;
    attacker = PartyId{2};
  } else {
    o.mode = "shares";
    const Shares s = LoadShares(path);
    const PipelineResult r = RunTwoPartyArbitrary(s.shares, MakeConfig(o), seed, s.negated);
    transcript = r.transcript;
    if (r.status() != LpStatus::kOptimal) throw Error("no optimal solution to audit");
    if (a.leak_c) side.c = SumShares(s.shares).c;
    if (a.leak_x) side.x_star = r.solution();
    kind = AttackScenario::kTwoPartyArbitrary;
    attacker = r.solver;
  }
  WriteTranscript(o.transcript_path, transcript);
  out << "scenario " << scenario << " attacker " << ToString(attacker) << '\n';
  const AttackInput in = EvidenceFromTranscript(transcript, attacker, side);
  PrintAttack(in, AuditProtocolRun(transcript, attacker, kind, side), a.max_print, out);
  return 0;
}

struct BenchOptions {
  std::vector<std::size_t> sizes{4};
  std::vector<int> key_bits{256, 512};
  std::size_t parties = 3;
  int reps = 3;
  std::optional<std::uint64_t> seed;
};

// Always-optimal instance: positive M, negative c, b >= 10.
LpProblem BenchProblem(std::size_t m, std::size_t n, Rng& rng) {
  LpProblem p;
  p.m = RationalMatrix(m, n);
  for (auto& v : p.m.entries()) v = mpq_class(rng.Range(1, 9));
  p.c.resize(n);
  for (auto& v : p.c) v = mpq_class(rng.Range(-9, -1));
  p.b.resize(m);
  for (auto& v : p.b) v = mpq_class(rng.Range(10, 99));
  return p;
}

std::vector<PartyShare> BenchShares(const LpProblem& p, std::size_t parties, Rng& rng) {
  std::vector<PartyShare> shares(parties, PartyShare{p.m, p.c, p.b});
  for (std::size_t k = 0; k + 1 < parties; ++k) {
    for (auto& v : shares[k].m.entries()) v = mpq_class(rng.Range(-99, 99));
    for (auto& v : shares[k].c) v = mpq_class(rng.Range(-99, 99));
    for (auto& v : shares[k].b) v = mpq_class(rng.Range(-99, 99));
  }
  for (std::size_t k = 0; k + 1 < parties; ++k) {
    shares.back().m = shares.back().m - shares[k].m;
    shares.back().c = shares.back().c - shares[k].c;
    shares.back().b = shares.back().b - shares[k].b;
  }
  return shares;
}

template <typename F>
double MeanSeconds(int reps, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f(i);
  const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
  return d.count() / reps;
}

int CmdBench(const BenchOptions& b, std::ostream& out) {
  if (b.reps < 1) throw std::invalid_argument("--reps must be positive");
  if (b.parties < 3) throw std::invalid_argument("multi-party transformation requires at least 3 parties");
  Rng rng(ResolveSeed(b.seed));
  out << "operation\tkey_bits\tn\tm\tparties\tseconds\n";
  auto row = [&](const char* op, int bits, std::size_t n, std::size_t m, std::size_t l, double s) {
    out << op << '\t' << bits << '\t' << n << '\t' << m << '\t' << l << '\t' << std::fixed
        << std::setprecision(6) << s << '\n';
  };
  const ScaleConfig scale;
  for (const int bits : b.key_bits) {
    if (bits < kMinKeyBits) {
      throw std::invalid_argument("key size " + std::to_string(bits) + " is below the " +
                                  std::to_string(kMinKeyBits) + "-bit floor");
    }
    KeyPair kp;
    row("keygen", bits, 0, 0, 1, MeanSeconds(b.reps, [&](int) { kp = GenerateKeyPair(bits, rng); }));
    const int cells = 64;
    row("encrypt_cell", bits, 0, 0, 1, MeanSeconds(b.reps, [&](int) {
          for (int i = 0; i < cells; ++i) Encrypt(kp.pub, rng.Below(kp.pub.n), rng);
        }) / cells);
    for (const std::size_t n : b.sizes) {
      const LpProblem p = BenchProblem(n, n, rng);
      const CipherMatrix enc = EncryptMatrix(p.m, 1, kp.pub, scale, rng);
      const Monomial q = GenerateMonomial(n, 1, 65536, rng);
      row("right_mul", bits, n, n, 1, MeanSeconds(b.reps, [&](int) {
            HomomorphicRightMul(kp.pub, enc, q, nullptr, scale, rng);
          }));
      ProtocolConfig cfg;
      cfg.key_bits = bits;
      row("alg2", bits, n, n, 2, MeanSeconds(b.reps, [&](int i) {
            RunObjectiveConstraintSplit(p, cfg, rng.Next64() + i);
          }));
      const auto two = BenchShares(p, 2, rng);
      row("alg3", bits, n, n, 2, MeanSeconds(b.reps, [&](int i) {
            RunTwoPartyArbitrary(two, cfg, rng.Next64() + i);
          }));
      const auto many = BenchShares(p, b.parties, rng);
      row("alg4", bits, n, n, b.parties, MeanSeconds(b.reps, [&](int i) {
            RunMultiParty(many, cfg, rng.Next64() + i);
          }));
    }
  }
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Privacy-preserving linear programming over Paillier encryption", "pplp"};
  app.require_subcommand(1);

  int keygen_bits = 0;
  std::string keygen_path;
  std::optional<std::uint64_t> keygen_seed;
  auto* keygen = app.add_subcommand("keygen", "generate a Paillier key pair");
  keygen->add_option("bits", keygen_bits, "modulus size in bits")->required();
  keygen->add_option("path", keygen_path, "private key path; the public key goes to <path>.pub")
      ->required();
  keygen->add_option("--seed", keygen_seed, "deterministic seed");

  std::string solve_path;
  auto* solve = app.add_subcommand("solve", "solve a problem file centrally");
  solve->add_option("problem", solve_path, "problem file")->required();

  std::string variant;
  std::string run_path;
  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "run a protocol on a partition file");
  run->add_option("variant", variant, "alg2 | alg3 | alg4")
      ->required()
      ->check(CLI::IsMember({"alg2", "alg3", "alg4"}));
  run->add_option("input", run_path, "partition file (alg2 also takes a problem file)")->required();
  AddProtocolFlags(run, run_opts);

  std::string scenario;
  std::string attack_path;
  CommonOptions attack_opts;
  AttackOptions attack_flags;
  auto* attack = app.add_subcommand("attack", "audit a run with the permutation-enumeration attack");
  attack->add_option("scenario", scenario, "alg2 | alg3")
      ->required()
      ->check(CLI::IsMember({"alg2", "alg3"}));
  attack->add_option("input", attack_path, "problem/partition file, or evidence file")->required();
  attack->add_flag("--evidence", attack_flags.evidence, "input is an evidence file");
  attack->add_flag("--leak-c", attack_flags.leak_c, "alg3: give the attacker the full objective");
  attack->add_flag("--leak-x", attack_flags.leak_x, "alg3: give the attacker the full solution");
  attack->add_option("--max-print", attack_flags.max_print, "candidates to print")
      ->capture_default_str();
  AddProtocolFlags(attack, attack_opts);

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "time primitives and protocols (TSV)");
  bench->add_option("--sizes", bench_opts.sizes, "problem sizes n = m")->delimiter(',');
  bench->add_option("--key-bits", bench_opts.key_bits, "key sizes")->delimiter(',');
  bench->add_option("--parties", bench_opts.parties, "parties for the multi-party run")
      ->capture_default_str();
  bench->add_option("--reps", bench_opts.reps, "repetitions per row")->capture_default_str();
  bench->add_option("--seed", bench_opts.seed, "deterministic seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*keygen) return CmdKeygen(keygen_bits, keygen_path, keygen_seed, out);
    if (*solve) return CmdSolve(solve_path, out);
    if (*run) return CmdRun(variant, run_path, run_opts, out);
    if (*attack) return CmdAttack(scenario, attack_path, attack_flags, attack_opts, out);
    if (*bench) return CmdBench(bench_opts, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace pplp::cli
