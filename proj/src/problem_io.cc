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

#include "pplp/problem_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pplp/error.h"

namespace pplp {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool Next(Line& line) {
    std::string text;
    while (std::getline(in_, text)) {
      ++number_;
      std::istringstream ss(text);
      std::vector<std::string> tokens;
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      line = Line{number_, std::move(tokens)};
      return true;
    }
    return false;
  }

  Line Expect(const char* what) {
    Line line;
    if (!Next(line)) throw ParseError(number_ + 1, std::string("unexpected end of input, expected ") + what);
    return line;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::size_t ParseCount(const std::string& token, std::size_t line) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a count, got '" + token + "'");
  }
  if (pos != token.size() || v < 0) throw ParseError(line, "expected a count, got '" + token + "'");
  return static_cast<std::size_t>(v);
}

struct Header {
  std::size_t rows;
  std::size_t cols;
  Sense sense;
};

Header ParseHeader(LineReader& reader) {
  const Line line = reader.Expect("header 'lp <m> <n> min|max'");
  if (line.tokens.size() != 4 || line.tokens[0] != "lp") {
    throw ParseError(line.number, "expected header 'lp <m> <n> min|max'");
  }
  Header h{ParseCount(line.tokens[1], line.number),
           ParseCount(line.tokens[2], line.number), Sense::kMinimize};
  if (h.cols == 0) throw ParseError(line.number, "problem needs at least one variable");
  if (line.tokens[3] == "max") {
    h.sense = Sense::kMaximize;
  } else if (line.tokens[3] != "min") {
    throw ParseError(line.number, "sense must be 'min' or 'max'");
  }
  return h;
}

// Reads the c line and `rows` constraint rows into `out`. When `expected`
// is given, each row's relation must match it.
void ParseBody(LineReader& reader, const Header& h, RawProblem& out,
               const std::vector<Relation>* expected = nullptr) {
  const Line cline = reader.Expect("objective coefficients");
  if (cline.tokens.size() != h.cols) {
    throw ParseError(cline.number, "expected " + std::to_string(h.cols) +
                                       " objective coefficients, got " +
                                       std::to_string(cline.tokens.size()));
  }
  out.sense = h.sense;
  out.c.clear();
  for (const auto& tok : cline.tokens) out.c.push_back(ParseRational(tok, cline.number));
  out.m = RationalMatrix(h.rows, h.cols);
  out.relations.assign(h.rows, Relation::kLessEqual);
  out.b.assign(h.rows, mpq_class(0));
  for (std::size_t r = 0; r < h.rows; ++r) {
    const Line row = reader.Expect("constraint row");
    if (row.tokens.size() != h.cols + 2) {
      throw ParseError(row.number, "constraint row needs " + std::to_string(h.cols) +
                                       " coefficients, a relation and a right-hand side");
    }
    for (std::size_t j = 0; j < h.cols; ++j) out.m(r, j) = ParseRational(row.tokens[j], row.number);
    const std::string& rel = row.tokens[h.cols];
    if (rel == "<=") {
      out.relations[r] = Relation::kLessEqual;
    } else if (rel == ">=") {
      out.relations[r] = Relation::kGreaterEqual;
    } else {
      throw ParseError(row.number, "relation must be '<=' or '>=', got '" + rel + "'");
    }
    if (expected != nullptr && !expected->empty() && (*expected)[r] != out.relations[r]) {
      throw ParseError(row.number, "relation disagrees with share 1");
    }
    out.b[r] = ParseRational(row.tokens[h.cols + 1], row.number);
  }
}

void WriteBody(std::ostream& out, const RawProblem& p) {
  out << ToString(p.c) << '\n';
  for (std::size_t r = 0; r < p.m.rows(); ++r) {
    out << ToString(p.m.Row(r)) << ' '
        << (p.relations[r] == Relation::kLessEqual ? "<=" : ">=") << ' '
        << p.b[r].get_str() << '\n';
  }
}

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

mpq_class ParseRational(const std::string& token, std::size_t line) {
  mpq_class q;
  const auto slash = token.find('/');
  const std::string num = token.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : token.substr(slash + 1);
  mpz_class n, d;
  auto valid = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!valid(num, true) || !valid(den, false)) {
    throw ParseError(line, "malformed rational '" + token + "'");
  }
  n.set_str(num[0] == '+' ? num.substr(1) : num, 10);
  d.set_str(den, 10);
  if (d == 0) throw ParseError(line, "zero denominator in '" + token + "'");
  q = mpq_class(n, d);
  q.canonicalize();
  return q;
}

RawProblem ParseProblem(std::istream& in) {
  LineReader reader(in);
  const Header h = ParseHeader(reader);
  RawProblem p;
  ParseBody(reader, h, p);
  Line extra;
  if (reader.Next(extra)) throw ParseError(extra.number, "unexpected trailing content");
  return p;
}

RawProblem ParseProblemFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  return ParseProblem(in);
}

void WriteProblem(std::ostream& out, const RawProblem& p) {
  out << "lp " << p.m.rows() << ' ' << p.c.size() << ' '
      << (p.sense == Sense::kMinimize ? "min" : "max") << '\n';
  WriteBody(out, p);
}

RawProblem PartitionedProblem::Sum() const {
  if (shares.empty()) throw DimensionError("partition has no shares");
  RawProblem total = shares.front();
  for (std::size_t k = 1; k < shares.size(); ++k) {
    total.c = total.c + shares[k].c;
    total.m = total.m + shares[k].m;
    total.b = total.b + shares[k].b;
  }
  return total;
}

std::vector<LpProblem> PartitionedProblem::CanonicalShares() const {
  std::vector<LpProblem> out;
  out.reserve(shares.size());
  for (const auto& s : shares) out.push_back(Canonicalize(s));
  return out;
}

PartitionedProblem ParsePartition(std::istream& in) {
  LineReader reader(in);
  const Header h = ParseHeader(reader);
  PartitionedProblem p;
  p.sense = h.sense;
  p.rows = h.rows;
  p.cols = h.cols;
  Line line;
  while (reader.Next(line)) {
    if (line.tokens.size() != 2 || line.tokens[0] != "share") {
      throw ParseError(line.number, "expected 'share <party-index>'");
    }
    const std::size_t index = ParseCount(line.tokens[1], line.number);
    if (index != p.shares.size() + 1) {
      throw ParseError(line.number, "share indices must be 1, 2, ... in order; got " +
                                        std::to_string(index));
    }
    RawProblem share;
    ParseBody(reader, h, share, &p.relations);
    if (p.shares.empty()) p.relations = share.relations;
    p.shares.push_back(std::move(share));
  }
  if (p.shares.empty()) throw ParseError(reader.number(), "partition file has no shares");
  return p;
}

PartitionedProblem ParsePartitionFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  return ParsePartition(in);
}

void WritePartition(std::ostream& out, const PartitionedProblem& p) {
  out << "lp " << p.rows << ' ' << p.cols << ' '
      << (p.sense == Sense::kMinimize ? "min" : "max") << '\n';
  for (std::size_t k = 0; k < p.shares.size(); ++k) {
    out << "share " << (k + 1) << '\n';
    WriteBody(out, p.shares[k]);
  }
}

std::string FormatSolution(const LpProblem& p, const LpSolution& s) {
  if (s.status != LpStatus::kOptimal) return ToString(s.status);
  return "Optimal obj=" + ReportedObjective(p, s).get_str() + " x=" + ToString(s.x);
}

}  // namespace pplp
