#include "dioph/coding.hpp"

#include "dioph/padic.hpp"

namespace dioph::coding {

namespace {

unsigned long require_power(const BigInt& v, unsigned long p, const char* what) {
  auto e = exact_log(v, BigInt(p));
  if (!e) throw DomainError(std::string(what) + " must be a power of " + std::to_string(p));
  return *e;
}

BigInt factorial(std::uint64_t n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace

bool binomial_divisible_by_carry(unsigned long p, const BigInt& P, const BigInt& N, const BigInt& S,
                                 const BigInt& T) {
  padic::require_prime(p);
  const unsigned long p_exp = require_power(P, p, "P");
  if (p_exp == 0) throw DomainError("P must exceed 1");
  auto n_over_P = exact_log(N, P);
  if (!n_over_P || *n_over_P == 0) throw DomainError("N must be a positive power of P");
  if (S < 0 || S >= N || T < 0 || T >= N) throw DomainError("S and T must lie in [0, N)");
  const BigInt R = (S + T + 1) * N + T + 1;
  const BigInt bottom = (N - 1) / (P - 1) * R;
  const BigInt rest = (N - 1) * R;
  const std::uint64_t log_N = static_cast<std::uint64_t>(p_exp) * *n_over_P;
  return padic::tau(bottom, rest, p) >= 2 * log_N;
}

DigitMask mask_build(unsigned long p, const BigInt& b, const BigInt& B,
                     std::vector<std::uint64_t> indices) {
  DigitMask mask;
  mask.p = p;
  mask.b = b;
  mask.B = B;
  mask.b_exp = require_power(b, p, "b");
  mask.B_exp = require_power(B, p, "B");
  if (b > B) throw DomainError("b must not exceed B");
  if (indices.empty()) throw DomainError("at least one window index is needed");
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] <= indices[i - 1]) throw DomainError("window indices must increase strictly");
  }
  mask.indices = std::move(indices);
  std::size_t next = 0;
  BigInt M = 0;
  BigInt scale = 1;
  for (std::uint64_t j = 0; j <= mask.indices.back(); ++j) {
    const bool window = next < mask.indices.size() && mask.indices[next] == j;
    if (window) ++next;
    M += (window ? BigInt(B - b) : BigInt(B - 1)) * scale;
    scale *= B;
  }
  mask.M = M;
  return mask;
}

std::optional<std::vector<BigInt>> mask_decode(const BigInt& c, const DigitMask& mask, const BigInt& C) {
  const BigInt top = pow(mask.B, mask.indices.back());
  if (C < mask.b * top || C > top * mask.B) {
    throw DomainError("C must satisfy b B^n_k <= C <= B^(n_k + 1)");
  }
  if (c < 0 || c >= C) return std::nullopt;
  if (padic::carries(c, mask.M, mask.p) != 0) return std::nullopt;
  std::vector<BigInt> z;
  for (auto n : mask.indices) {
    BigInt digit;
    mpz_fdiv_q(digit.get_mpz_t(), c.get_mpz_t(), pow(mask.B, n).get_mpz_t());
    z.push_back(mod_floor(digit, mask.B));
  }
  return z;
}

BigInt multinomial_weight(const Monomial& m, std::uint64_t delta) {
  const auto used = total_degree(m);
  if (used > delta) throw DomainError("monomial degree exceeds delta");
  BigInt w = factorial(delta - used);
  for (auto e : m) w *= factorial(e);
  return w;
}

BigInt d_number(const TermPoly& P, std::uint64_t delta, const BigInt& B) {
  const std::size_t nu = P.variables().size() - 1;
  std::vector<std::uint64_t> n(nu + 2, 1);
  for (std::size_t i = 1; i < n.size(); ++i) n[i] = n[i - 1] * (delta + 1);
  BigInt D = 0;
  for (const auto& [m, a] : P.terms()) {
    std::uint64_t shift = 0;
    for (std::size_t s = 0; s < m.size(); ++s) shift += m[s] * n[s];
    D += multinomial_weight(m, delta) * a * pow(B, n[nu + 1] - shift);
  }
  return D;
}

CarryTest polynomial_zero_by_carry(const TermPoly& P, unsigned long p, const BigInt& B,
                                   const BigInt& X, const std::vector<BigInt>& z) {
  if (P.variables().size() != z.size() || z.empty()) {
    throw DomainError("one value per polynomial variable is needed");
  }
  require_power(B, p, "B");
  require_power(X, p, "X");
  const std::uint64_t delta = std::max<std::uint64_t>(1, P.degree());
  BigInt total = 1;
  for (const auto& v : z) {
    if (v < 0) throw DomainError("z must be nonnegative");
    total += v;
  }
  const BigInt L = std::max<BigInt>(1, P.height());
  if (!(B > X && X > factorial(delta) * L * pow(total, delta))) {
    throw DomainError("need B > X > delta! L (1 + sum z)^delta");
  }
  const std::size_t nu = z.size() - 1;
  std::vector<std::uint64_t> n(nu + 2, 1);
  for (std::size_t i = 1; i < n.size(); ++i) n[i] = n[i - 1] * (delta + 1);
  BigInt c = 1;
  for (std::size_t i = 0; i <= nu; ++i) c += z[i] * pow(B, n[i]);
  const std::uint64_t top = (2 * delta + 1) * n[nu];
  BigInt ones = 0;
  for (std::uint64_t i = 0; i <= top; ++i) ones = ones * B + 1;
  CarryTest out;
  out.K = pow(c, delta) * d_number(P, delta, B) + X * ones;
  if (!(pow(B, top) < out.K && out.K < pow(B, top + 1))) {
    throw InvariantViolation("K left its digit bracket");
  }
  out.mask_position = n[nu + 1];
  out.carries = padic::carries(out.K, (X - 1) * pow(B, n[nu + 1]), p);
  out.zero = out.carries == 0;
  return out;
}

}  // namespace dioph::coding
