#pragma once

// Diophantine coding by digits: binomial divisibility through carries, digit
// windows read off with a mask, and polynomial zeros read off one digit.

#include "dioph/term_poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dioph::coding {

/// Whether N^2 divides C(P (N-1)/(P-1) R, (N-1)/(P-1) R) with
/// R = (S + T + 1) N + T + 1, decided from the carries of (N-1)R plus
/// (N-1)/(P-1) R in base p. Requires P a power of p, N a power of P, and
/// S, T in [0, N). Agrees with tau_p(S, T) == 0.
bool binomial_divisible_by_carry(unsigned long p, const BigInt& P, const BigInt& N, const BigInt& S,
                                 const BigInt& T);

/// Mask for digit windows: M = sum_{j <= n_k} m_j B^j with m_j = B - b on the
/// window positions and B - 1 elsewhere. b <= B, both powers of p.
struct DigitMask {
  unsigned long p = 2;
  BigInt b;
  BigInt B;
  unsigned long b_exp = 0;
  unsigned long B_exp = 0;
  std::vector<std::uint64_t> indices;
  BigInt M;
};

DigitMask mask_build(unsigned long p, const BigInt& b, const BigInt& B,
                     std::vector<std::uint64_t> indices);

/// The window digits z_i in [0, b) with c = sum z_i B^(n_i), or nothing when c
/// is outside [0, C) or adding c to M carries. Requires
/// b B^(n_k) <= C <= B^(n_k + 1).
std::optional<std::vector<BigInt>> mask_decode(const BigInt& c, const DigitMask& mask, const BigInt& C);

/// i_0! ... i_v! (delta - sum i)!, never more than delta!.
BigInt multinomial_weight(const Monomial& m, std::uint64_t delta);

/// D(B) = sum over terms a_i of weight(i) a_i B^(n_{v+1} - sum_s i_s n_s),
/// n_s = (delta+1)^s, with the polynomial's variables read as z_0..z_v.
BigInt d_number(const TermPoly& P, std::uint64_t delta, const BigInt& B);

struct CarryTest {
  bool zero = false;        // tau_p(K, (X-1) B^(n_{v+1})) == 0
  BigInt K;
  std::uint64_t carries = 0;
  std::uint64_t mask_position = 0;  // n_{v+1}
};

/// K = c^delta D(B) + X sum_{i <= (2 delta + 1) n_v} B^i with
/// c = 1 + sum z_i B^(n_i). The bracket B^((2delta+1)n_v) < K < B^((2delta+1)n_v+1)
/// is asserted. The result is zero iff P(z) = 0. Requires B > X >
/// delta! L (1 + sum z)^delta with B, X powers of p and z >= 0.
CarryTest polynomial_zero_by_carry(const TermPoly& P, unsigned long p, const BigInt& B,
                                   const BigInt& X, const std::vector<BigInt>& z);

}  // namespace dioph::coding
