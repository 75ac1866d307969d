#pragma once

// ASCII polynomial text:
//   poly   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' uint)?
//   atom   := uint | name | '(' poly ')'
// Names match [a-zA-Z][a-zA-Z0-9_]*; whitespace is ignored.

#include "dioph/term_poly.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dioph {

class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Variables are ordered by first appearance unless `variables` is given, in
/// which case it fixes the order and any other name is an error.
TermPoly parse_poly(std::string_view text, const std::vector<std::string>& variables = {});

/// Canonical text: terms in graded-lex descending order, e.g. "3*x^2*y - x1 + 4".
std::string serialize_poly(const TermPoly& poly);

}  // namespace dioph
