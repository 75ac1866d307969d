#pragma once

// Base-p digit arithmetic: expansions, digit sums, carry counts and p-adic
// valuations of factorials and binomial coefficients.

#include "dioph/bigint.hpp"

#include <cstdint>
#include <vector>

namespace dioph::padic {

/// Little-endian digits of a nonnegative integer. Canonical: no trailing
/// zero digit, so zero is the empty vector.
struct DigitVector {
  unsigned long base = 2;
  std::vector<unsigned long> digits;

  BigInt value() const;
  bool operator==(const DigitVector&) const = default;
};

DigitVector digits(const BigInt& n, unsigned long base);

/// Digit sum of n in base p.
BigInt sigma(const BigInt& n, unsigned long p);

/// Number of carries when adding a and b in the given base (any base >= 2).
/// Works on the digit vectors, linear in the digit count.
std::uint64_t carries(const BigInt& a, const BigInt& b, unsigned long base);

/// Kummer carry count tau_p(a, b) = ord_p C(a+b, a); p must be prime.
std::uint64_t tau(const BigInt& a, const BigInt& b, unsigned long p);

/// Legendre's sum of floor(n / p^i), i >= 1.
BigInt ord_factorial(const BigInt& n, unsigned long p);

/// ord_p C(m, k) from the digits of k and m - k. The binomial is never formed.
std::uint64_t ord_binom(const BigInt& m, const BigInt& k, unsigned long p);

/// Throws DomainError unless p is a prime (trial division).
void require_prime(unsigned long p);

}  // namespace dioph::padic
