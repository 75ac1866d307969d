#pragma once

// Expanded multivariate polynomials with integer coefficients.

#include "dioph/bigint.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dioph {

using Monomial = std::vector<std::uint32_t>;
using Assignment = std::map<std::string, BigInt>;

inline constexpr std::size_t kDefaultTermBudget = 1'000'000;

/// Graded lexicographic order, larger monomials first.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

std::uint64_t total_degree(const Monomial& m);

/// Sparse term table over an ordered variable list. Binary operations on
/// polynomials over different lists work over the union (left list first).
class TermPoly {
 public:
  using TermMap = std::map<Monomial, BigInt, GradedLexGreater>;

  TermPoly() = default;
  explicit TermPoly(std::vector<std::string> variables);

  static TermPoly constant(const BigInt& c, std::vector<std::string> variables = {});
  static TermPoly variable(const std::string& name);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::uint64_t degree() const;
  /// Largest absolute coefficient (0 for the zero polynomial).
  BigInt height() const;
  BigInt coefficient(const Monomial& m) const;
  BigInt constant_term() const;

  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;

  /// Adds c * monomial (monomial arity must match the variable list).
  void add_term(const Monomial& m, const BigInt& c);

  /// Same polynomial over `variables`, which must contain every variable
  /// that occurs in a term.
  TermPoly over(const std::vector<std::string>& variables) const;
  /// Drops variables that occur in no term.
  TermPoly compacted() const;
  /// Names that occur with a positive exponent somewhere.
  std::vector<std::string> occurring_variables() const;

  TermPoly operator-() const;
  TermPoly add(const TermPoly& other, std::size_t budget = kDefaultTermBudget) const;
  TermPoly sub(const TermPoly& other, std::size_t budget = kDefaultTermBudget) const;
  TermPoly mul(const TermPoly& other, std::size_t budget = kDefaultTermBudget) const;
  TermPoly pow(std::uint64_t e, std::size_t budget = kDefaultTermBudget) const;
  TermPoly scaled(const BigInt& c) const;

  /// Simultaneous substitution of polynomials for variables.
  TermPoly substitute(const std::map<std::string, TermPoly>& repl,
                      std::size_t budget = kDefaultTermBudget) const;

  /// Exact value. Every declared variable must be assigned.
  BigInt eval(const Assignment& at) const;

  bool operator==(const TermPoly& other) const = default;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
};

TermPoly operator+(const TermPoly& a, const TermPoly& b);
TermPoly operator-(const TermPoly& a, const TermPoly& b);
TermPoly operator*(const TermPoly& a, const TermPoly& b);

/// Ordered union, `a` first then new names from `b`.
std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

}  // namespace dioph
