#include "eqloc/expr.hpp"

#include <cctype>

#include "eqloc/errors.hpp"

namespace eqloc {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::map<std::string, Divisor>& divisors, int n_top)
      : s_(text), divisors_(divisors), n_top_(n_top) {}

  ClassExpr parse() {
    ClassExpr e = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::InvalidInput, "expression: " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  ClassExpr expr() {
    ClassExpr e = term();
    for (;;) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e = e - term();
      else
        return e;
    }
  }

  ClassExpr term() {
    bool neg = accept('-');
    ClassExpr e = factor();
    for (;;) {
      if (accept('*')) {
        e *= factor();
      } else if (accept('/')) {
        const Rational q = parse_rational(digits());
        if (q == 0) error("division by zero");
        e = scaled(e, PiScalar(1 / q));
      } else {
        break;
      }
    }
    return neg ? scaled(e, PiScalar(-1)) : e;
  }

  ClassExpr factor() {
    ClassExpr e = atom();
    if (accept('^')) {
      const std::string k = digits();
      if (k.size() > 3) error("exponent too large");
      e = e.pow(std::stoi(k));
    }
    return e;
  }

  const Divisor& named(const std::string& name) {
    auto it = divisors_.find(name);
    if (it == divisors_.end()) error("unknown divisor '" + name + "'");
    return it->second;
  }

  ClassExpr atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    if (accept('(')) {
      ClassExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::string num = digits();
      if (accept('/')) num += "/" + digits();
      return ClassExpr::scalar(PiScalar(parse_rational(num)));
    }
    const std::string w = word();
    if (w == "pi") return ClassExpr::scalar(PiScalar::pi());
    if (w == "omega") return Generator::omega();
    if (w == "ric") return Generator::ric();
    if (w == "fs") return Generator::fs();
    if (w == "div" || w == "geom") {
      expect('(');
      const std::string name = word();
      expect(')');
      const Divisor& d = named(name);
      if (w == "div") return Generator::div(d);
      return geometric_series_truncate(Generator::div(d), n_top_);
    }
    error(w.empty() ? "expected a term" : "unknown name '" + w + "'");
  }

  std::string_view s_;
  const std::map<std::string, Divisor>& divisors_;
  int n_top_;
  std::size_t pos_ = 0;
};

}  // namespace

ClassExpr parse_class_expr(std::string_view text, const std::map<std::string, Divisor>& divisors, int n_top) {
  return Parser(text, divisors, n_top).parse();
}

}  // namespace eqloc
