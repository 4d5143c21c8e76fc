#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

#include "algebroid/series.hpp"

namespace algebroid {

namespace {

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Number, std::string(s.substr(start, i - start)), start});
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = i++;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Ident, std::string(s.substr(start, i - start)), start});
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      out.push_back({Token::Op, std::string(1, c), i});
      ++i;
    } else {
      fail(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "' at column " + std::to_string(i + 1));
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Field& f, std::vector<std::string> vars)
      : toks_(std::move(toks)), f_(f), vars_(std::move(vars)) {}

  Series run() {
    Series s = expr();
    if (peek().kind != Token::End) error("unexpected '" + peek().text + "'");
    return s;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool is_op(char c) const { return peek().kind == Token::Op && peek().text[0] == c; }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::SyntaxError, what + " at column " + std::to_string(peek().pos + 1));
  }

  Series constant(const Elem& c) const { return Series::constant(f_, vars_, c); }

  Series expr() {
    Series acc(f_, vars_);
    bool first = true;
    while (true) {
      bool negate = false;
      if (is_op('+') || is_op('-')) {
        negate = is_op('-');
        ++i_;
      } else if (!first) {
        break;
      }
      Series t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  bool starts_factor() const {
    return peek().kind == Token::Number || peek().kind == Token::Ident || is_op('(');
  }

  Series term() {
    Series acc = factor();
    while (true) {
      if (is_op('*')) {
        ++i_;
        acc = acc * factor();
      } else if (is_op('/')) {
        ++i_;
        const Series d = factor();
        if (d.terms().size() != 1 || total_degree(d.terms().begin()->first) != 0)
          error("division only by nonzero constants");
        acc = acc.scaled(d.terms().begin()->second.inv());
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Series factor() {
    Series base = atom();
    if (is_op('^')) {
      ++i_;
      if (peek().kind != Token::Number) error("expected exponent");
      const unsigned long e = std::stoul(peek().text);
      ++i_;
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Series atom() {
    const Token& t = peek();
    if (t.kind == Token::Number) {
      ++i_;
      return constant(f_.from_rational(mpq_class(mpz_class(t.text))));
    }
    if (t.kind == Token::Ident) {
      ++i_;
      if (f_.kind() == Field::Kind::Extension && t.text == f_.generator_name()) return constant(f_.generator());
      for (std::size_t k = 0; k < vars_.size(); ++k)
        if (vars_[k] == t.text) return Series::variable(f_, vars_, k);
      fail(ErrorCode::VariableMismatch, "variable '" + t.text + "' is not declared");
    }
    if (is_op('(')) {
      ++i_;
      Series s = expr();
      if (!is_op(')')) error("expected ')'");
      ++i_;
      return s;
    }
    error(t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const Field& f_;
  std::vector<std::string> vars_;
};

std::string coeff_text(const Elem& c) {
  std::string s = c.to_string();
  if (c.field().kind() == Field::Kind::Extension && s.find('+') != std::string::npos) return "(" + s + ")";
  return s;
}

}  // namespace

Series Series::parse(std::string_view text, const Field& field, std::vector<std::string> vars, int precision) {
  // A trailing O(v1,..,vn)^N, as printed for truncated series, sets the
  // precision and, when no variables are given, their order.
  static const std::regex big_o(R"(\s*(\+\s*)?O\(([A-Za-z0-9_,\s]*)\)\s*\^\s*([0-9]+)\s*$)");
  std::string body(text);
  std::smatch m;
  if (std::regex_search(body, m, big_o)) {
    precision = std::min(precision, std::stoi(m[3].str()));
    if (vars.empty()) {
      std::stringstream names(m[2].str());
      for (std::string v; std::getline(names, v, ',');) {
        v.erase(std::remove_if(v.begin(), v.end(), [](unsigned char c) { return std::isspace(c); }), v.end());
        if (!v.empty()) vars.push_back(v);
      }
    }
    body = m.prefix().str();
    if (body.find_first_not_of(" \t\n") == std::string::npos) body = "0";
  }
  text = body;
  std::vector<Token> toks = tokenize(text);
  if (vars.empty()) {
    std::set<std::string> seen;
    for (const auto& t : toks)
      if (t.kind == Token::Ident && !(field.kind() == Field::Kind::Extension && t.text == field.generator_name()))
        seen.insert(t.text);
    vars.assign(seen.begin(), seen.end());
  }
  Parser p(std::move(toks), field, std::move(vars));
  return p.run().truncated(precision);
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = coeff_text(c);
    std::string piece;
    if (mono.empty()) {
      piece = coef;
    } else if (c.is_one()) {
      piece = mono;
    } else if (coef == "-1") {
      piece = "-" + mono;
    } else {
      piece = coef + "*" + mono;
    }
    if (!first && piece[0] != '-') os << '+';
    os << piece;
    first = false;
  }
  if (prec_ != kExact) {
    if (!first) os << '+';
    os << "O(";
    for (std::size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : "") << vars_[i];
    os << ")^" << prec_;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace algebroid
