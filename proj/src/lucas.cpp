#include "dioph/lucas.hpp"

#include <algorithm>
#include <bit>

namespace dioph::lucas {

LucasParams::LucasParams(BigInt a, BigInt b)
    : a_(std::move(a)), b_(std::move(b)), disc_(a_ * a_ - 4 * b_) {}

namespace {

// (u_n, u_{n+1}) for n >= 0 by fast doubling:
//   u_2k   = u_k (2 u_{k+1} - A u_k)
//   u_2k+1 = u_{k+1}^2 - B u_k^2
std::pair<BigInt, BigInt> u_pair(const BigInt& A, const BigInt& B, std::uint64_t n) {
  BigInt uk = 0;
  BigInt uk1 = 1;
  if (n == 0) return {uk, uk1};
  const int top = 63 - std::countl_zero(n);
  const bool b_is_one = (B == 1);
  for (int bit = top; bit >= 0; --bit) {
    BigInt u2k = uk * (2 * uk1 - A * uk);
    BigInt u2k1 = b_is_one ? BigInt(uk1 * uk1 - uk * uk) : BigInt(uk1 * uk1 - B * uk * uk);
    if ((n >> bit) & 1U) {
      BigInt u2k2 = b_is_one ? BigInt(A * u2k1 - u2k) : BigInt(A * u2k1 - B * u2k);
      uk = std::move(u2k1);
      uk1 = std::move(u2k2);
    } else {
      uk = std::move(u2k);
      uk1 = std::move(u2k1);
    }
  }
  return {uk, uk1};
}

std::uint64_t magnitude(std::int64_t n) {
  return n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
}

void require_two_sided(const LucasParams& params, std::int64_t n) {
  if (n < 0 && params.B() != 1) {
    throw DomainError("negative Lucas indices are only defined for B = 1");
  }
}

}  // namespace

std::pair<BigInt, BigInt> uv(const LucasParams& params, std::int64_t n) {
  require_two_sided(params, n);
  auto [un, un1] = u_pair(params.A(), params.B(), magnitude(n));
  BigInt vn = 2 * un1 - params.A() * un;
  if (n < 0) un = -un;
  return {un, vn};
}

BigInt u(const LucasParams& params, std::int64_t n) { return uv(params, n).first; }

BigInt v(const LucasParams& params, std::int64_t n) { return uv(params, n).second; }

BigInt u_mod(const BigInt& A, std::uint64_t n, const BigInt& m) {
  if (m <= 0) throw DomainError("u_mod needs a positive modulus");
  BigInt uk = 0;
  BigInt uk1 = 1 % m;
  if (n == 0) return uk;
  const BigInt a = mod_floor(A, m);
  const int top = 63 - std::countl_zero(n);
  for (int bit = top; bit >= 0; --bit) {
    BigInt u2k = mod_floor(uk * (2 * uk1 - a * uk), m);
    BigInt u2k1 = mod_floor(uk1 * uk1 - uk * uk, m);
    if ((n >> bit) & 1U) {
      uk1 = mod_floor(a * u2k1 - u2k, m);
      uk = std::move(u2k1);
    } else {
      uk = std::move(u2k);
      uk1 = std::move(u2k1);
    }
  }
  return uk;
}

bool check_norm_identity(const LucasParams& params, std::uint64_t n) {
  const auto [un, un1] = u_pair(params.A(), params.B(), n);
  const BigInt vn = 2 * un1 - params.A() * un;
  BigInt bn;
  mpz_pow_ui(bn.get_mpz_t(), params.B().get_mpz_t(), n);
  return vn * vn - params.discriminant() * un * un == 4 * bn;
}

bool IndexSet::contains(std::int64_t m) const {
  if (period == 0) return std::find(indices.begin(), indices.end(), m) != indices.end();
  std::int64_t r = ((m % period) + period) % period;
  return std::find(indices.begin(), indices.end(), r) != indices.end();
}

IndexSet index_of(const BigInt& A, const BigInt& X) {
  IndexSet out;
  const BigInt absA = abs(A);
  if (absA <= 1) {
    // u_n(0, 1) has period 4 and u_n(+-1, 1) period 6.
    out.period = (A == 0) ? 4 : 6;
    BigInt prev = 0;
    BigInt cur = 1;
    for (std::int64_t r = 0; r < out.period; ++r) {
      if (prev == X) out.indices.push_back(r);
      BigInt next = A * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    if (out.indices.empty()) out.period = 0;
    return out;
  }
  auto push = [&](const BigInt& m) {
    auto m64 = fits_int64(m);
    if (!m64) throw BudgetExceeded("Lucas index does not fit in 64 bits");
    out.indices.push_back(*m64);
  };
  if (absA == 2) {
    // u_m(2, 1) = m and u_m(-2, 1) = (-1)^(m+1) m.
    if (A == 2 || X == 0 || mpz_odd_p(X.get_mpz_t())) {
      push(X);
    } else {
      push(-X);
    }
    return out;
  }
  // |u_n| is strictly increasing in n >= 0 once |A| >= 2, and u_{-n} = -u_n.
  const BigInt absX = abs(X);
  BigInt prev = 0;
  BigInt cur = 1;
  std::int64_t n = 0;
  while (abs(prev) <= absX) {
    if (prev == X) out.indices.push_back(n);
    if (n != 0 && -prev == X) out.indices.push_back(-n);
    BigInt next = A * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
    ++n;
  }
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

bool square_test(const BigInt& A, const BigInt& X) {
  return is_square((A * A - 4) * X * X + 4);
}

PellSolution pell_fundamental(const BigInt& D, std::uint64_t max_steps) {
  if (D <= 0 || is_square(D)) {
    throw DomainError("degenerate Pell: y^2 - D z^2 = 1 only has z = 0 for D = " + to_string(D));
  }
  const BigInt a0 = isqrt(D);
  BigInt m = 0;
  BigInt d = 1;
  BigInt a = a0;
  BigInt h_prev = 1, h = a0;
  BigInt k_prev = 0, k = 1;
  for (std::uint64_t step = 0; step < max_steps; ++step) {
    if (h * h - D * k * k == 1) return PellSolution{h, k, D};
    m = d * a - m;
    d = (D - m * m) / d;
    a = (a0 + m) / d;
    BigInt h_next = a * h + h_prev;
    BigInt k_next = a * k + k_prev;
    h_prev = std::move(h);
    h = std::move(h_next);
    k_prev = std::move(k);
    k = std::move(k_next);
  }
  throw BudgetExceeded("continued fraction period exceeded the step budget");
}

std::vector<PellSolution> pell_stream(const BigInt& D, std::size_t count) {
  std::vector<PellSolution> out;
  if (count == 0) return out;
  const PellSolution first = pell_fundamental(D);
  out.push_back(first);
  while (out.size() < count) {
    const PellSolution& last = out.back();
    out.push_back(PellSolution{last.y * first.y + D * last.z * first.z,
                               last.y * first.z + last.z * first.y, D});
  }
  return out;
}

bool check_power_sum_congruence(const BigInt& A, std::uint64_t B, const BigInt& U,
                                const BigInt& V) {
  if (B == 0) throw DomainError("B must be positive");
  const BigInt modulus = U * U - A * U * V + V * V;
  const BigInt lhs = pow(U * V, B - 1) * u(LucasParams(A, 1), static_cast<std::int64_t>(B));
  BigInt rhs = 0;
  const BigInt U2 = U * U;
  const BigInt V2 = V * V;
  for (std::uint64_t r = 0; r < B; ++r) rhs += pow(U2, r) * pow(V2, B - 1 - r);
  if (modulus == 0) return lhs == rhs;
  return mpz_divisible_p(BigInt(lhs - rhs).get_mpz_t(), modulus.get_mpz_t()) != 0;
}

bool power_certificate_holds(const BigInt& V, const BigInt& W, std::uint64_t B,
                             const BigInt& A) {
  if (B == 0) throw DomainError("B must be positive");
  if (abs(V) <= 1) throw DomainError("|V| must exceed 1");
  const BigInt bound = std::max<BigInt>(pow(V, 4 * B), pow(W, 4));
  if (abs(A) < bound) return false;
  const BigInt C = u(LucasParams(A, 1), static_cast<std::int64_t>(B));
  const BigInt modulus = A * V - V * V - 1;
  const BigInt diff = (V * V - 1) * W * C - V * (W * W - 1);
  return mpz_divisible_p(diff.get_mpz_t(), modulus.get_mpz_t()) != 0;
}

}  // namespace dioph::lucas
