#pragma once

// Polynomials in base variables and radical symbols s_i with s_i^2 = x_i, and
// the expansion of the product over all sign choices of the radicals.

#include "dioph/term_poly.hpp"

#include <string>
#include <vector>

namespace dioph {

class RadicalPoly {
 public:
  /// `symbols[i]` stands for the square root of variable `radicands[i]`.
  RadicalPoly(TermPoly poly, std::vector<std::string> radicands, std::vector<std::string> symbols);

  const TermPoly& poly() const { return poly_; }
  const std::vector<std::string>& radicands() const { return radicands_; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  /// Rewrites s_i^2 -> x_i until every symbol exponent is 0 or 1.
  RadicalPoly reduced() const;

 private:
  TermPoly poly_;
  std::vector<std::string> radicands_;
  std::vector<std::string> symbols_;
};

/// prod over eps in {+-1}^k of offset(eps_1 s_1, ..., eps_k s_k), reduced.
/// Every odd symbol power cancels; a survivor is an InvariantViolation. The
/// result is over the base variables only. Requires k <= 4.
TermPoly sign_product_expand(const std::vector<std::string>& radicands, const RadicalPoly& offset,
                             std::size_t budget = kDefaultTermBudget);

/// prod over eps of (t + sum_j eps_j sqrt(y_j)), as a polynomial in t, y1..yk.
TermPoly sign_product_core(unsigned k, std::size_t budget = kDefaultTermBudget);

}  // namespace dioph
