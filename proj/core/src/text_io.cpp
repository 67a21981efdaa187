#include "gct/text_io.hpp"

#include <set>
#include <sstream>

#include "gct/errors.hpp"

namespace gct {

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  // Next non-blank, non-comment line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tokens.clear();
      for (std::string t; ls >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }
};

int parse_int(const std::string& tok, int line) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
}

// "<k1> ... <kn> : <value>"
std::pair<Index, Rational> parse_entry(const std::vector<std::string>& tokens, size_t arity, int line) {
  if (tokens.size() != arity + 2 || tokens[arity] != ":") {
    throw ParseError(line, "expected " + std::to_string(arity) + " integers, ':' and a rational");
  }
  Index key(arity);
  for (size_t i = 0; i < arity; ++i) key[i] = parse_int(tokens[i], line);
  try {
    return {key, parse_rational(tokens[arity + 1])};
  } catch (const InvalidInput& e) {
    throw ParseError(line, e.what());
  }
}

std::string join_entry(const Index& key, const Rational& v) {
  std::string s;
  for (int k : key) s += std::to_string(k) + " ";
  return s + ": " + to_string(v) + "\n";
}

}  // namespace

SparseForm parse_form(std::istream& in) {
  LineReader r{in};
  std::vector<std::string> tok;
  if (!r.next(tok)) throw ParseError(r.line_no, "empty input, expected 'form <m> <D>'");
  if (tok.size() != 3 || tok[0] != "form") throw ParseError(r.line_no, "expected header 'form <m> <D>'");
  const int m = parse_int(tok[1], r.line_no);
  const int D = parse_int(tok[2], r.line_no);
  if (m < 1 || D < 0) throw ParseError(r.line_no, "form needs m >= 1 and D >= 0");
  SparseForm f(m, D);
  std::set<Index> seen;
  while (r.next(tok)) {
    auto [alpha, c] = parse_entry(tok, static_cast<size_t>(m), r.line_no);
    if (!seen.insert(alpha).second) throw ParseError(r.line_no, "duplicate exponent vector");
    try {
      f.set(alpha, c);
    } catch (const InvalidInput& e) {
      throw ParseError(r.line_no, e.what());
    }
  }
  return f;
}

SparseForm parse_form(const std::string& text) {
  std::istringstream in(text);
  return parse_form(in);
}

std::string serialize_form(const SparseForm& f) {
  std::string s = "form " + std::to_string(f.m()) + " " + std::to_string(f.degree()) + "\n";
  for (const auto& [alpha, c] : f.coeffs()) s += join_entry(alpha, c);
  return s;
}

SparseTensor parse_tensor(std::istream& in) {
  LineReader r{in};
  std::vector<std::string> tok;
  if (!r.next(tok)) throw ParseError(r.line_no, "empty input, expected a tensor header");
  std::vector<int> shape;
  if (tok[0] == "tensor" && tok.size() == 4) {
    for (int i = 1; i <= 3; ++i) shape.push_back(parse_int(tok[i], r.line_no));
  } else if (tok[0] == "tensor-cubic" && tok.size() == 3) {
    const int m = parse_int(tok[1], r.line_no);
    const int D = parse_int(tok[2], r.line_no);
    if (D < 1) throw ParseError(r.line_no, "tensor order must be positive");
    shape.assign(D, m);
  } else {
    throw ParseError(r.line_no, "expected 'tensor <m1> <m2> <m3>' or 'tensor-cubic <m> <D>'");
  }
  for (int d : shape) {
    if (d < 1) throw ParseError(r.line_no, "tensor axes must be positive");
  }
  SparseTensor t(shape);
  std::set<Index> seen;
  while (r.next(tok)) {
    auto [idx, c] = parse_entry(tok, shape.size(), r.line_no);
    if (!seen.insert(idx).second) throw ParseError(r.line_no, "duplicate index tuple");
    try {
      t.set(idx, c);
    } catch (const InvalidInput& e) {
      throw ParseError(r.line_no, e.what());
    }
  }
  return t;
}

SparseTensor parse_tensor(const std::string& text) {
  std::istringstream in(text);
  return parse_tensor(in);
}

std::string serialize_tensor(const SparseTensor& t) {
  std::string s;
  if (t.order() == 3) {
    s = "tensor " + std::to_string(t.shape()[0]) + " " + std::to_string(t.shape()[1]) + " " +
        std::to_string(t.shape()[2]) + "\n";
  } else {
    if (!t.is_cubic()) throw InvalidInput("only order-3 tensors may have distinct axes");
    s = "tensor-cubic " + std::to_string(t.shape()[0]) + " " + std::to_string(t.order()) + "\n";
  }
  for (const auto& [idx, c] : t.entries()) s += join_entry(idx, c);
  return s;
}

Tableau parse_tableau(std::istream& in) {
  LineReader r{in};
  std::vector<std::string> tok;
  if (!r.next(tok)) throw ParseError(r.line_no, "empty input, expected 'tableau <m> <s>'");
  if (tok.size() != 3 || tok[0] != "tableau") throw ParseError(r.line_no, "expected header 'tableau <m> <s>'");
  const int m = parse_int(tok[1], r.line_no);
  const int s = parse_int(tok[2], r.line_no);
  if (m < 1 || s < 1) throw ParseError(r.line_no, "tableau needs m >= 1 and s >= 1");
  std::vector<int> cells;
  for (int row = 0; row < m; ++row) {
    if (!r.next(tok)) throw ParseError(r.line_no, "expected " + std::to_string(m) + " rows");
    if (static_cast<int>(tok.size()) != s) throw ParseError(r.line_no, "row needs " + std::to_string(s) + " entries");
    for (const auto& t : tok) cells.push_back(parse_int(t, r.line_no));
  }
  if (r.next(tok)) throw ParseError(r.line_no, "unexpected content after the last row");
  try {
    return Tableau(m, s, std::move(cells));
  } catch (const InvalidInput& e) {
    throw ParseError(r.line_no, e.what());
  }
}

Tableau parse_tableau(const std::string& text) {
  std::istringstream in(text);
  return parse_tableau(in);
}

std::string serialize_tableau(const Tableau& T) {
  std::string s = "tableau " + std::to_string(T.rows()) + " " + std::to_string(T.cols()) + "\n";
  for (int row = 1; row <= T.rows(); ++row) {
    for (int col = 1; col <= T.cols(); ++col) {
      if (col > 1) s += " ";
      s += std::to_string(T.at(row, col));
    }
    s += "\n";
  }
  return s;
}

}  // namespace gct
