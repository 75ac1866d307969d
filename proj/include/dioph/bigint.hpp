#pragma once

// Exact integer helpers shared by every module. All arithmetic is GMP-backed
// (subquadratic multiplication), values are immutable once returned.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dioph {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Precondition violated by the caller.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An effort, term-count or bit-size budget ran out. Distinct from a
/// mathematical failure so drivers can report it separately.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Something that a lemma guarantees did not happen. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline BigInt big(long v) { return BigInt(v); }
BigInt big_from_string(const std::string& s);
std::string to_string(const BigInt& v);

BigInt pow(const BigInt& base, unsigned long exp);
BigInt pow_ui(unsigned long base, unsigned long exp);

/// Floor square root, n >= 0.
BigInt isqrt(const BigInt& n);
bool is_square(const BigInt& n);

/// Floor division and remainder with the divisor's sign convention of floor.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt mod_floor(const BigInt& a, const BigInt& m);

/// Deterministic trial division. Intended for the tiny primes and moduli the
/// constructions use.
bool is_prime_trial(const BigInt& n);
std::vector<std::pair<BigInt, unsigned>> factor_trial(const BigInt& n);
BigInt euler_phi(const BigInt& n);

/// If n = base^e for some e >= 0, returns e.
std::optional<unsigned long> exact_log(const BigInt& n, const BigInt& base);

/// Throws BudgetExceeded when the value has more than max_bits bits.
void check_bits(const BigInt& v, std::size_t max_bits, const char* what);
std::size_t bit_length(const BigInt& v);

/// Signed 64-bit view when the value fits.
std::optional<std::int64_t> fits_int64(const BigInt& v);

}  // namespace dioph
