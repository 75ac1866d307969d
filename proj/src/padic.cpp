#include "dioph/padic.hpp"

#include <string>

namespace dioph::padic {

namespace {

void require_base(unsigned long base) {
  if (base < 2) throw DomainError("base must be at least 2");
}

void require_nonneg(const BigInt& n) {
  if (n < 0) throw DomainError("expected a nonnegative integer");
}

unsigned long char_digit(char c, unsigned long base) {
  // mpz_get_str alphabet: base <= 36 uses 0-9a-z, larger bases 0-9A-Za-z.
  if (c >= '0' && c <= '9') return static_cast<unsigned long>(c - '0');
  if (base <= 36) return static_cast<unsigned long>(c - 'a' + 10);
  if (c >= 'A' && c <= 'Z') return static_cast<unsigned long>(c - 'A' + 10);
  return static_cast<unsigned long>(c - 'a' + 36);
}

std::vector<unsigned long> small_digits(std::uint64_t n, unsigned long base) {
  std::vector<unsigned long> out;
  while (n > 0) {
    out.push_back(n % base);
    n /= base;
  }
  return out;
}

std::vector<unsigned long> digit_list(const BigInt& n, unsigned long base) {
  if (n == 0) return {};
  if (mpz_fits_ulong_p(n.get_mpz_t())) return small_digits(n.get_ui(), base);
  std::vector<unsigned long> out;
  if (base <= 62) {
    std::string s = n.get_str(static_cast<int>(base));
    out.reserve(s.size());
    for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(char_digit(*it, base));
    return out;
  }
  BigInt m = n;
  while (m > 0) {
    out.push_back(mpz_fdiv_q_ui(m.get_mpz_t(), m.get_mpz_t(), base));
  }
  return out;
}

}  // namespace

BigInt DigitVector::value() const {
  BigInt v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    v *= base;
    v += *it;
  }
  return v;
}

DigitVector digits(const BigInt& n, unsigned long base) {
  require_base(base);
  require_nonneg(n);
  return DigitVector{base, digit_list(n, base)};
}

BigInt sigma(const BigInt& n, unsigned long p) {
  require_base(p);
  require_nonneg(n);
  BigInt s = 0;
  unsigned long acc = 0;
  for (unsigned long d : digit_list(n, p)) {
    acc += d;
    if (acc > (1UL << 62)) {
      s += acc;
      acc = 0;
    }
  }
  s += acc;
  return s;
}

std::uint64_t carries(const BigInt& a, const BigInt& b, unsigned long base) {
  require_base(base);
  require_nonneg(a);
  require_nonneg(b);
  if (base < (1UL << 62) && mpz_fits_ulong_p(a.get_mpz_t()) &&
      mpz_fits_ulong_p(b.get_mpz_t())) {
    std::uint64_t x = a.get_ui();
    std::uint64_t y = b.get_ui();
    if (x <= (~0UL >> 1) && y <= (~0UL >> 1)) {
      std::uint64_t count = 0;
      unsigned long carry = 0;
      while (x > 0 || y > 0) {
        unsigned long s = x % base + y % base + carry;
        carry = s >= base ? 1 : 0;
        count += carry;
        x /= base;
        y /= base;
      }
      return count;
    }
  }
  auto da = digit_list(a, base);
  auto db = digit_list(b, base);
  const std::size_t n = std::max(da.size(), db.size());
  std::uint64_t count = 0;
  unsigned long carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned long s = carry;
    if (i < da.size()) s += da[i];
    if (i < db.size()) s += db[i];
    carry = s >= base ? 1 : 0;
    count += carry;
  }
  return count;
}

void require_prime(unsigned long p) {
  bool prime = p >= 2;
  for (unsigned long d = 2; prime && d <= p / d; ++d) {
    if (p % d == 0) prime = false;
  }
  if (!prime) {
    throw DomainError("p = " + std::to_string(p) + " is not prime");
  }
}

std::uint64_t tau(const BigInt& a, const BigInt& b, unsigned long p) {
  require_prime(p);
  return carries(a, b, p);
}

BigInt ord_factorial(const BigInt& n, unsigned long p) {
  require_prime(p);
  require_nonneg(n);
  BigInt total = 0;
  BigInt q = n / p;
  while (q > 0) {
    total += q;
    q /= p;
  }
  return total;
}

std::uint64_t ord_binom(const BigInt& m, const BigInt& k, unsigned long p) {
  require_prime(p);
  if (k < 0 || k > m) throw DomainError("ord_binom needs 0 <= k <= m");
  return carries(k, m - k, p);
}

}  // namespace dioph::padic
