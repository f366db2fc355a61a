#pragma once

#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "bms/bms_construct.hpp"
#include "bms/matrix_ops.hpp"
#include "bms/ortho_array.hpp"

// Text codecs.
//
// Matrix files:   "HAD <order>" | "QHAD <order>" | "BMS <q>" | "QBMS <q>", then one
//                 line per row. Real entries are '+' / '-', quaternary entries are
//                 digits 0..3 meaning i^e. BMS headers imply block widths
//                 (1, q-1 x (q+1)) and an order of q^2.
// Array files:    "OA <N> <k> <q> <t> <lambda>", then N lines of k space-separated
//                 symbols in 1..q.
// Every line ends in '\n'; no trailing whitespace, no blank lines.

namespace bms {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MatrixKind { hadamard, quaternary_hadamard, bms, quaternary_bms };

inline const char* header_keyword(MatrixKind k) {
  switch (k) {
    case MatrixKind::hadamard: return "HAD";
    case MatrixKind::quaternary_hadamard: return "QHAD";
    case MatrixKind::bms: return "BMS";
    case MatrixKind::quaternary_bms: return "QBMS";
  }
  return "?";
}

inline bool is_quaternary(MatrixKind k) { return k == MatrixKind::quaternary_hadamard || k == MatrixKind::quaternary_bms; }
inline bool is_bms(MatrixKind k) { return k == MatrixKind::bms || k == MatrixKind::quaternary_bms; }

struct MatrixFile {
  MatrixKind kind = MatrixKind::hadamard;
  unsigned header_value = 0;  // order for HAD/QHAD, q for BMS/QBMS
  std::variant<SignMatrix, QuatMatrix> matrix;

  template <UnitMatrix M>
  BmsMatrix<M> as_bms() const {
    if (!is_bms(kind)) throw ParseError("file is not a BMS matrix file");
    return BmsMatrix<M>::with_standard_blocks(header_value, std::get<M>(matrix));
  }
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.empty() || text.back() != '\n') throw ParseError("file must be newline-terminated");
  std::vector<std::string_view> lines;
  std::size_t at = 0;
  while (at < text.size()) {
    const std::size_t nl = text.find('\n', at);
    std::string_view line = text.substr(at, nl - at);
    if (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      throw ParseError("line " + std::to_string(lines.size() + 1) + " has trailing whitespace");
    lines.push_back(line);
    at = nl + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_spaces(std::string_view line, std::size_t line_no) {
  std::vector<std::string_view> out;
  std::size_t at = 0;
  while (at <= line.size()) {
    const std::size_t sp = line.find(' ', at);
    const std::string_view tok = line.substr(at, sp == std::string_view::npos ? std::string_view::npos : sp - at);
    if (tok.empty()) throw ParseError("line " + std::to_string(line_no) + ": malformed spacing");
    out.push_back(tok);
    if (sp == std::string_view::npos) break;
    at = sp + 1;
  }
  return out;
}

inline unsigned long long parse_count(std::string_view tok, std::size_t line_no) {
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
    throw ParseError("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

template <UnitMatrix M>
std::string encode_matrix(MatrixKind kind, unsigned header_value, const M& m) {
  std::string out = std::string(header_keyword(kind)) + " " + std::to_string(header_value) + "\n";
  out.reserve(out.size() + m.rows() * (m.cols() + 1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::same_as<M, SignMatrix>) {
        out.push_back(m.negative(i, j) ? '-' : '+');
      } else {
        out.push_back(static_cast<char>('0' + m.exp(i, j)));
      }
    }
    out.push_back('\n');
  }
  return out;
}

inline std::string encode_hadamard(const SignMatrix& m) { return encode_matrix(MatrixKind::hadamard, static_cast<unsigned>(m.rows()), m); }
inline std::string encode_hadamard(const QuatMatrix& m) {
  return encode_matrix(MatrixKind::quaternary_hadamard, static_cast<unsigned>(m.rows()), m);
}
inline std::string encode_bms(const BmsMatrix<SignMatrix>& b) { return encode_matrix(MatrixKind::bms, b.q, b.matrix); }
inline std::string encode_bms(const BmsMatrix<QuatMatrix>& b) { return encode_matrix(MatrixKind::quaternary_bms, b.q, b.matrix); }

inline MatrixFile decode_matrix_file(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const auto head = detail::split_spaces(lines.front(), 1);
  if (head.size() != 2) throw ParseError("line 1: expected '<KIND> <size>'");
  MatrixFile f;
  if (head[0] == "HAD") f.kind = MatrixKind::hadamard;
  else if (head[0] == "QHAD") f.kind = MatrixKind::quaternary_hadamard;
  else if (head[0] == "BMS") f.kind = MatrixKind::bms;
  else if (head[0] == "QBMS") f.kind = MatrixKind::quaternary_bms;
  else throw ParseError("line 1: unknown matrix kind '" + std::string(head[0]) + "'");

  const auto value = detail::parse_count(head[1], 1);
  if (value == 0 || value > 65536) throw ParseError("line 1: size out of range");
  f.header_value = static_cast<unsigned>(value);
  const std::size_t order = is_bms(f.kind) ? static_cast<std::size_t>(value * value) : static_cast<std::size_t>(value);
  if (order > 65536) throw ParseError("line 1: matrix order out of range");
  if (lines.size() != order + 1)
    throw ParseError("expected " + std::to_string(order) + " rows, found " + std::to_string(lines.size() - 1));

  auto fill = [&](auto& m, auto&& decode) {
    for (std::size_t i = 0; i < order; ++i) {
      const auto line = lines[i + 1];
      if (line.size() != order)
        throw ParseError("line " + std::to_string(i + 2) + ": expected " + std::to_string(order) + " entries, found " +
                         std::to_string(line.size()));
      for (std::size_t j = 0; j < order; ++j) decode(m, i, j, line[j], i + 2);
    }
  };
  if (is_quaternary(f.kind)) {
    QuatMatrix m(order, order);
    fill(m, [](QuatMatrix& mm, std::size_t i, std::size_t j, char c, std::size_t ln) {
      if (c < '0' || c > '3') throw ParseError("line " + std::to_string(ln) + ": invalid quaternary entry '" + std::string(1, c) + "'");
      mm.set_exp_unchecked(i, j, static_cast<unsigned>(c - '0'));
    });
    f.matrix = std::move(m);
  } else {
    SignMatrix m(order, order);
    fill(m, [](SignMatrix& mm, std::size_t i, std::size_t j, char c, std::size_t ln) {
      if (c != '+' && c != '-') throw ParseError("line " + std::to_string(ln) + ": invalid sign entry '" + std::string(1, c) + "'");
      mm.set_negative(i, j, c == '-');
    });
    f.matrix = std::move(m);
  }
  return f;
}

inline std::string encode_oa(const OrthogonalArray& a) {
  const auto& p = a.params();
  std::string out = "OA " + std::to_string(p.n_rows) + " " + std::to_string(p.n_cols) + " " + std::to_string(p.q) + " " +
                    std::to_string(p.strength) + " " + std::to_string(p.index) + "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out.push_back(' ');
      out += std::to_string(a(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

inline OrthogonalArray decode_oa(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const auto head = detail::split_spaces(lines.front(), 1);
  if (head.size() != 6 || head[0] != "OA") throw ParseError("line 1: expected 'OA <N> <k> <q> <t> <lambda>'");
  OaParams p;
  p.n_rows = detail::parse_count(head[1], 1);
  p.n_cols = detail::parse_count(head[2], 1);
  const auto q = detail::parse_count(head[3], 1);
  const auto t = detail::parse_count(head[4], 1);
  const auto lambda = detail::parse_count(head[5], 1);
  if (q == 0 || q > 65535 || t > 64 || lambda == 0 || lambda > 1u << 20 || p.n_rows > (1u << 24) || p.n_cols > 4096)
    throw ParseError("line 1: parameter out of range");
  p.q = static_cast<unsigned>(q);
  p.strength = static_cast<unsigned>(t);
  p.index = static_cast<unsigned>(lambda);
  if (lines.size() != p.n_rows + 1)
    throw ParseError("expected " + std::to_string(p.n_rows) + " rows, found " + std::to_string(lines.size() - 1));
  SymbolArray a(p.n_rows, p.n_cols, p.q);
  for (std::size_t i = 0; i < p.n_rows; ++i) {
    const auto toks = detail::split_spaces(lines[i + 1], i + 2);
    if (toks.size() != p.n_cols)
      throw ParseError("line " + std::to_string(i + 2) + ": expected " + std::to_string(p.n_cols) + " symbols");
    for (std::size_t j = 0; j < p.n_cols; ++j) {
      const auto s = detail::parse_count(toks[j], i + 2);
      if (s < 1 || s > p.q) throw ParseError("line " + std::to_string(i + 2) + ": symbol out of range 1.." + std::to_string(p.q));
      a.set(i, j, static_cast<int>(s));
    }
  }
  try {
    return OrthogonalArray(p, std::move(a));
  } catch (const std::exception& e) {
    throw ParseError(std::string("line 1: ") + e.what());
  }
}

}  // namespace bms
