#include "dioph/poly_parse.hpp"

#include <cctype>

namespace dioph {

ParseError::ParseError(const std::string& what, std::size_t position)
    : DomainError(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& fixed)
      : text_(text), fixed_(!fixed.empty()), names_(fixed) {}

  TermPoly run() {
    TermPoly p = sum();
    skip();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p.over(names_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  bool fixed_;
  std::vector<std::string> names_;

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  TermPoly sum() {
    skip();
    TermPoly acc = product();
    while (true) {
      if (accept('+')) {
        acc = acc + product();
      } else if (accept('-')) {
        acc = acc - product();
      } else {
        return acc;
      }
    }
  }

  TermPoly product() {
    TermPoly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  TermPoly factor() {
    if (accept('-')) return -factor();
    TermPoly base = atom();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      BigInt e = digits();
      if (!e.fits_ulong_p()) throw ParseError("exponent too large", start);
      base = base.pow(e.get_ui());
    }
    return base;
  }

  BigInt digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected an unsigned integer", start);
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  TermPoly atom() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return TermPoly::constant(digits());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      bool known = false;
      for (const auto& n : names_) known = known || n == name;
      if (!known) {
        if (fixed_) throw ParseError("undeclared variable '" + name + "'", start);
        names_.push_back(name);
      }
      return TermPoly::variable(name);
    }
    if (c == '(') {
      ++pos_;
      TermPoly inner = sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }
};

}  // namespace

TermPoly parse_poly(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).run();
}

std::string serialize_poly(const TermPoly& poly) {
  if (poly.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : poly.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const BigInt mag = abs(c);
    std::string body;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!body.empty()) body += "*";
      body += poly.variables()[i];
      if (m[i] > 1) body += "^" + std::to_string(m[i]);
    }
    if (body.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += body;
    } else {
      out += to_string(mag) + "*" + body;
    }
  }
  return out;
}

}  // namespace dioph
