#pragma once

// Lucas sequences u_n(A, B), v_n(A, B), their two-sided extension for B = 1,
// square characterisation of the u-values, and Pell solution streams.

#include "dioph/bigint.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dioph::lucas {

/// The recurrence pair (A, B). The discriminant is fixed at construction.
class LucasParams {
 public:
  LucasParams(BigInt a, BigInt b);

  const BigInt& A() const { return a_; }
  const BigInt& B() const { return b_; }
  const BigInt& discriminant() const { return disc_; }

 private:
  BigInt a_;
  BigInt b_;
  BigInt disc_;
};

/// u_n. Negative n is only defined for B = 1 (throws DomainError otherwise).
BigInt u(const LucasParams& params, std::int64_t n);
/// Companion v_n with v_0 = 2, v_1 = A.
BigInt v(const LucasParams& params, std::int64_t n);
/// (u_n, v_n) from one fast-doubling pass.
std::pair<BigInt, BigInt> uv(const LucasParams& params, std::int64_t n);

/// u_n(A, 1) mod m for n >= 0, m > 0.
BigInt u_mod(const BigInt& A, std::uint64_t n, const BigInt& m);

/// v_n^2 - disc * u_n^2 == 4 B^n, evaluated exactly.
bool check_norm_identity(const LucasParams& params, std::uint64_t n);

/// Set of integer indices. Either a finite list (period == 0) or every m with
/// m mod period in `indices`.
struct IndexSet {
  std::vector<std::int64_t> indices;
  std::int64_t period = 0;

  bool empty() const { return indices.empty(); }
  bool contains(std::int64_t m) const;
};

/// All m in Z with u_m(A, 1) = X, found by enumeration (strict growth bounds
/// the walk when |A| >= 2; A in {0, +-1} is periodic).
IndexSet index_of(const BigInt& A, const BigInt& X);

/// (A^2 - 4) X^2 + 4 is a perfect square.
bool square_test(const BigInt& A, const BigInt& X);

struct PellSolution {
  BigInt y;
  BigInt z;
  BigInt discriminant;

  bool satisfies() const { return y * y - discriminant * z * z == 1; }
};

/// Minimal solution of y^2 - D z^2 = 1 with z >= 1, from the continued
/// fraction of sqrt(D). Throws DomainError("degenerate Pell") when D <= 0 or D
/// is a square, BudgetExceeded past max_steps partial quotients.
PellSolution pell_fundamental(const BigInt& D, std::uint64_t max_steps = 50'000'000);

/// First `count` solutions in increasing z.
std::vector<PellSolution> pell_stream(const BigInt& D, std::size_t count);

/// (UV)^(B-1) u_B(A, 1) is congruent to sum_{r<B} U^(2r) V^(2(B-1-r)) modulo
/// U^2 - AUV + V^2 (a zero modulus means equality).
bool check_power_sum_congruence(const BigInt& A, std::uint64_t B, const BigInt& U,
                                const BigInt& V);

/// Premises of the power certificate: |A| >= max(V^(4B), W^4), C = u_B(A, 1)
/// and (V^2 - 1) W C == V (W^2 - 1) mod (AV - V^2 - 1). Whenever this holds,
/// W = V^B.
bool power_certificate_holds(const BigInt& V, const BigInt& W, std::uint64_t B,
                             const BigInt& A);

}  // namespace dioph::lucas
