#pragma once

// Line-oriented circuit format.
//
//   # comment
//   qubits 3
//   h 0
//   cp 0 1 1.5707963267948966
//   ccx 0 1 2
//
// First non-comment line is the header. Each later line holds a mnemonic
// (h x y z s t p cp cx ccx id, any case), its qubit indices (controls
// first), then a radian angle for p and cp. Blank lines and lines whose
// first non-blank character is '#' are skipped; CR before LF is accepted.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pathsum/circuit.hpp"

namespace pathsum {

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    MissingHeader,
    MalformedHeader,
    UnknownMnemonic,
    ArityMismatch,
    BadIndex,
    IndexOutOfRange,
    DuplicateOperand,
    MissingAngle,
    ExtraAngle,
    BadAngle,
  };

  static const char* describe(Kind kind) {
    switch (kind) {
      case Kind::MissingHeader: return "missing header";
      case Kind::MalformedHeader: return "malformed header";
      case Kind::UnknownMnemonic: return "unknown mnemonic";
      case Kind::ArityMismatch: return "arity mismatch";
      case Kind::BadIndex: return "invalid qubit index";
      case Kind::IndexOutOfRange: return "qubit index out of range";
      case Kind::DuplicateOperand: return "duplicate operand";
      case Kind::MissingAngle: return "missing angle";
      case Kind::ExtraAngle: return "unexpected angle";
      case Kind::BadAngle: return "invalid angle";
    }
    return "parse error";
  }

  // Message: "<kind>, line L, column C: <detail>".
  ParseError(Kind kind, const std::string& detail, int line, int column)
      : std::runtime_error(std::string(describe(kind)) + ", line " +
                           std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + detail),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

namespace detail {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

inline std::optional<long long> parse_int(std::string_view s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

inline std::optional<GateKind> parse_mnemonic(std::string_view s) {
  std::string lower(s);
  for (char& ch : lower)
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (GateKind k : {GateKind::I, GateKind::H, GateKind::X, GateKind::Y,
                     GateKind::Z, GateKind::S, GateKind::T, GateKind::P,
                     GateKind::CP, GateKind::CX, GateKind::CCX})
    if (lower == mnemonic(k)) return k;
  return std::nullopt;
}

}  // namespace detail

inline Circuit parse_circuit(std::istream& in) {
  using K = ParseError::Kind;
  std::optional<int> n;
  std::vector<Gate> gates;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto toks = detail::tokenize(line);
    if (toks.empty() || toks.front().text.front() == '#') continue;

    if (!n) {
      if (toks[0].text != "qubits")
        throw ParseError(K::MalformedHeader,
                         "expected header 'qubits <n>', found '" +
                             std::string(toks[0].text) + "'",
                         lineno, toks[0].column);
      if (toks.size() != 2)
        throw ParseError(K::MalformedHeader,
                         "header takes exactly one qubit count", lineno,
                         toks.size() < 2 ? static_cast<int>(line.size()) + 1
                                         : toks[2].column);
      auto v = detail::parse_int(toks[1].text);
      if (!v || *v < 1 || *v > kMaxQubits)
        throw ParseError(K::MalformedHeader,
                         "qubit count must be an integer in [1, " +
                             std::to_string(kMaxQubits) + "]",
                         lineno, toks[1].column);
      n = static_cast<int>(*v);
      continue;
    }

    auto kind = detail::parse_mnemonic(toks[0].text);
    if (!kind) {
      if (toks[0].text == "qubits")
        throw ParseError(K::MalformedHeader, "duplicate header", lineno,
                         toks[0].column);
      throw ParseError(K::UnknownMnemonic,
                       "'" + std::string(toks[0].text) + "'",
                       lineno, toks[0].column);
    }
    const std::size_t want = static_cast<std::size_t>(arity(*kind));
    const std::size_t have = toks.size() - 1;
    const int eol = static_cast<int>(line.size()) + 1;

    if (has_angle(*kind)) {
      if (have == want)
        throw ParseError(K::MissingAngle,
                         std::string(mnemonic(*kind)) + " needs an angle in radians",
                         lineno, eol);
      if (have != want + 1)
        throw ParseError(K::ArityMismatch,
                         std::string(mnemonic(*kind)) + " takes " +
                             std::to_string(want) + " qubit(s) and an angle",
                         lineno,
                         have < want ? eol : toks[want + 2].column);
    } else if (have != want) {
      if (have == want + 1 && !detail::parse_int(toks.back().text) &&
          detail::parse_double(toks.back().text))
        throw ParseError(K::ExtraAngle,
                         std::string(mnemonic(*kind)) + " does not take an angle",
                         lineno, toks.back().column);
      throw ParseError(K::ArityMismatch,
                       std::string(mnemonic(*kind)) + " takes " +
                           std::to_string(want) + " qubit(s), got " +
                           std::to_string(have),
                       lineno, have < want ? eol : toks[want + 1].column);
    }

    std::vector<int> qs;
    for (std::size_t a = 0; a < want; ++a) {
      const auto& tok = toks[a + 1];
      auto v = detail::parse_int(tok.text);
      if (!v || *v < 0)
        throw ParseError(K::BadIndex,
                         "'" + std::string(tok.text) + "' is not a non-negative integer",
                         lineno, tok.column);
      if (*v >= *n)
        throw ParseError(K::IndexOutOfRange,
                         "qubit " + std::to_string(*v) + " on a " +
                             std::to_string(*n) + "-qubit circuit",
                         lineno, tok.column);
      for (int prev : qs)
        if (prev == *v)
          throw ParseError(K::DuplicateOperand,
                           "qubit " + std::to_string(*v) + " appears twice", lineno,
                           tok.column);
      qs.push_back(static_cast<int>(*v));
    }
    double theta = 0.0;
    if (has_angle(*kind)) {
      const auto& tok = toks.back();
      auto v = detail::parse_double(tok.text);
      if (!v)
        throw ParseError(K::BadAngle,
                         "'" + std::string(tok.text) + "' is not a finite decimal",
                         lineno, tok.column);
      theta = *v;
    }
    gates.emplace_back(*kind, std::span<const int>(qs), theta);
  }
  if (!n)
    throw ParseError(K::MissingHeader, "expected 'qubits <n>'",
                     lineno + 1, 1);
  return make_circuit(*n, std::move(gates));
}

inline Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_circuit(in);
}

// 17 significant digits reads back bit-exactly.
inline std::string format_angle(double theta) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", theta);
  return buf;
}

inline std::string serialize_circuit(const Circuit& c) {
  std::string out = "qubits " + std::to_string(c.num_qubits()) + "\n";
  for (const Gate& g : c.gates()) {
    out += mnemonic(g.kind());
    for (int q : g.qubits()) {
      out += ' ';
      out += std::to_string(q);
    }
    if (has_angle(g.kind())) {
      out += ' ';
      out += format_angle(g.theta());
    }
    out += '\n';
  }
  return out;
}

class BasisStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Character i (leftmost = 0) is qubit i.
inline BasisState parse_basis_state(std::string_view text, int n) {
  if (static_cast<int>(text.size()) != n)
    throw BasisStateError("basis state '" + std::string(text) + "' has length " +
                          std::to_string(text.size()) + ", expected " +
                          std::to_string(n));
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      bits |= std::uint64_t{1} << i;
    else if (text[i] != '0')
      throw BasisStateError("basis state '" + std::string(text) +
                            "' has invalid character at position " +
                            std::to_string(i) + " (expected 0 or 1)");
  }
  return BasisState(bits, n);
}

inline std::string format_basis_state(const BasisState& s) {
  std::string out(static_cast<std::size_t>(s.width()), '0');
  for (int i = 0; i < s.width(); ++i)
    if (s.test(i)) out[static_cast<std::size_t>(i)] = '1';
  return out;
}

}  // namespace pathsum
