#include "dioph/bigint.hpp"

namespace dioph {

BigInt big_from_string(const std::string& s) {
  BigInt v;
  std::string t = s;
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  if (t.empty() || v.set_str(t, 10) != 0) {
    throw DomainError("not an integer: '" + s + "'");
  }
  return v;
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigInt pow_ui(unsigned long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt r = isqrt(n);
  return r * r == n;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw DomainError("division by zero");
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  if (m == 0) throw DomainError("modulus zero");
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_prime_trial(const BigInt& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (BigInt d = 3; d * d <= n; d += 2) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
  }
  return true;
}

std::vector<std::pair<BigInt, unsigned>> factor_trial(const BigInt& n) {
  if (n <= 0) throw DomainError("factor_trial needs a positive integer");
  std::vector<std::pair<BigInt, unsigned>> out;
  BigInt m = n;
  for (BigInt d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
      m /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

BigInt euler_phi(const BigInt& n) {
  BigInt phi = n;
  for (const auto& [q, e] : factor_trial(n)) {
    phi = phi / q * (q - 1);
  }
  return phi;
}

std::optional<unsigned long> exact_log(const BigInt& n, const BigInt& base) {
  if (base < 2 || n < 1) return std::nullopt;
  BigInt rest;
  const auto e = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), base.get_mpz_t());
  if (rest != 1) return std::nullopt;
  return e;
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

void check_bits(const BigInt& v, std::size_t max_bits, const char* what) {
  if (bit_length(v) > max_bits) {
    throw BudgetExceeded(std::string(what) + " exceeds the bit-size budget of " +
                         std::to_string(max_bits) + " bits");
  }
}

std::optional<std::int64_t> fits_int64(const BigInt& v) {
  if (!mpz_fits_slong_p(v.get_mpz_t())) return std::nullopt;
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return static_cast<std::int64_t>(v.get_si());
}

}  // namespace dioph
