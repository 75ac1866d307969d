#include "dioph/reducer.hpp"

#include "dioph/coding.hpp"
#include "dioph/padic.hpp"

#include <algorithm>

namespace dioph::reducer {

namespace {

std::uint64_t ipow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 40) / base) throw BudgetExceeded("digit position overflows");
    r *= base;
  }
  return r;
}

BigInt factorial(std::uint64_t n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

BigInt geometric(const BigInt& base, std::uint64_t last) {
  BigInt s = 0;
  for (std::uint64_t i = 0; i <= last; ++i) s = s * base + 1;
  return s;
}

std::vector<BigInt> full_point(const BigInt& a, const std::vector<BigInt>& z) {
  std::vector<BigInt> point{a};
  point.insert(point.end(), z.begin(), z.end());
  return point;
}

BigInt eval_at(const ReductionContext& ctx, const std::vector<BigInt>& point) {
  Assignment at;
  for (std::size_t i = 0; i < point.size(); ++i) at[ctx.poly.variables()[i]] = point[i];
  return ctx.poly.eval(at);
}

}  // namespace

std::uint64_t ReductionContext::n_nu() const { return ipow(delta + 1, nu); }
std::uint64_t ReductionContext::n_top() const { return ipow(delta + 1, nu + 1); }

std::vector<std::string> ReductionContext::unknowns() const {
  return {poly.variables().begin() + 1, poly.variables().end()};
}

ReductionContext build_context(const TermPoly& P, unsigned long p, const std::string& parameter,
                               bool assert_positive) {
  padic::require_prime(p);
  if (P.is_zero()) throw DomainError("the zero polynomial represents every set");
  ReductionContext ctx;
  ctx.p = p;
  ctx.input = P;
  ctx.parameter = parameter;
  std::vector<std::string> order = merge_variables({parameter}, P.variables());
  if (order.size() < 2) throw DomainError("at least one unknown besides the parameter is needed");
  TermPoly poly = P.over(order);
  if (!assert_positive) {
    std::string extra = "z" + std::to_string(order.size());
    while (std::find(order.begin(), order.end(), extra) != order.end()) extra += "_";
    const TermPoly shifted = TermPoly::variable(extra) - TermPoly::constant(1);
    poly = poly * poly + shifted * shifted;
    order.push_back(extra);
    poly = poly.over(order);
    ctx.wrapped = true;
  } else {
    for (long a = 0; a <= 100; ++a) {
      std::vector<BigInt> point(order.size(), 0);
      point[0] = a;
      Assignment at;
      for (std::size_t i = 0; i < order.size(); ++i) at[order[i]] = point[i];
      if (poly.eval(at) <= 0) {
        throw DomainError("asserted positivity fails: P(" + std::to_string(a) + ", 0, ..., 0) <= 0");
      }
    }
  }
  ctx.poly = poly;
  ctx.delta = std::max<std::uint64_t>(1, poly.degree());
  ctx.nu = order.size() - 1;
  ctx.L = poly.height();
  const BigInt bound = pow(BigInt(ctx.nu + 2), ctx.delta) * factorial(ctx.delta) * p * ctx.L;
  ctx.alpha = 1;
  while (pow_ui(p, ctx.alpha * p) <= bound) ++ctx.alpha;
  ctx.beta = pow_ui(p, ctx.alpha * p);
  return ctx;
}

InstanceValues instance_values(const ReductionContext& ctx, const BigInt& a, const BigInt& f,
                               const BigInt& g) {
  const unsigned long p = ctx.p;
  const std::uint64_t nn = ctx.n_nu();
  const std::uint64_t nt = ctx.n_top();
  InstanceValues v;
  v.a = a;
  v.f = f;
  v.g = g;
  v.b = 1 + BigInt(p * p - 1) * (a * p + 1) * f;
  v.BB = ctx.beta * pow(v.b, ctx.delta);
  const std::size_t predicted = (bit_length(v.BB) + 2) * (2 * nt + 2) * 3;
  if (predicted > ctx.max_bits) {
    throw BudgetExceeded("instance needs about " + std::to_string(predicted) + " bits, budget is " +
                         std::to_string(ctx.max_bits));
  }
  const BigInt& BB = v.BB;
  std::vector<std::uint64_t> windows;
  for (std::uint64_t i = 1; i <= ctx.nu; ++i) windows.push_back(ipow(ctx.delta + 1, i));
  v.M = 0;
  for (std::uint64_t j = nn + 1; j-- > 0;) {
    const bool window = std::find(windows.begin(), windows.end(), j) != windows.end();
    v.M = v.M * BB + (window ? BigInt(BB - v.b) : BigInt(BB - 1));
  }
  v.N0 = pow(BB, nn + 1);
  v.N1 = BigInt(p * p) * pow(BB, (2 * ctx.delta + 1) * nn + 1);
  v.N = v.N0 * v.N1;
  v.CC = v.b * pow(BB, nn);
  v.D = coding::d_number(ctx.poly, ctx.delta, BB);
  v.J = BigInt(p) * pow(1 + a * BB + g, ctx.delta) * v.D + BB * geometric(BB, (2 * ctx.delta + 1) * nn);
  v.T = v.M + (BB - p) * pow(BB, nt) * v.N0;
  v.S = g + v.J * v.N0;
  v.R = (v.S + v.T + 1) * v.N + v.T + 1;
  const BigInt num = v.N - 1;
  if (!mpz_divisible_ui_p(num.get_mpz_t(), p - 1)) throw InvariantViolation("p - 1 does not divide N - 1");
  BigInt quotient;
  mpz_divexact_ui(quotient.get_mpz_t(), num.get_mpz_t(), p - 1);
  v.X = quotient * v.R;
  v.Y = v.N * v.N;
  if (v.N > 0) {
    if (auto e = exact_log(v.N, BigInt(p))) v.log_N = *e;
  }
  check_bits(v.X, ctx.max_bits, "X");
  check_bits(v.Y, ctx.max_bits, "Y");
  return v;
}

bool size_conditions_hold(const ReductionContext& ctx, const InstanceValues& v) {
  const unsigned long p = ctx.p;
  return mpz_divisible_ui_p(v.X.get_mpz_t(), p + 1) != 0 && v.X >= 3 * v.b &&
         v.Y >= std::max<BigInt>(v.b, pow_ui(p, 4 * p));
}

bool carry_divisibility(const ReductionContext& ctx, const InstanceValues& v) {
  if (v.log_N == 0) throw DomainError("N is not a power of p");
  return padic::tau(v.X, (ctx.p - 1) * v.X, ctx.p) >= 2 * v.log_N;
}

Encoding encode_membership(const ReductionContext& ctx, const BigInt& a, std::vector<BigInt> z,
                           const BigInt& Z) {
  if (a < 0) throw DomainError("the parameter must be nonnegative");
  if (Z <= 0) throw DomainError("Z must be positive");
  if (ctx.wrapped && z.size() + 1 == ctx.nu) z.push_back(1);
  if (z.size() != ctx.nu) throw DomainError("expected " + std::to_string(ctx.nu) + " unknowns");
  for (const auto& zi : z) {
    if (zi < 0) throw DomainError("unknowns must be nonnegative");
  }
  if (eval_at(ctx, full_point(a, z)) != 0) throw DomainError("z is not a zero of the polynomial");

  const unsigned long p = ctx.p;
  const BigInt modulus = BigInt(p * p - 1) * (a * p + 1);
  const BigInt phi = euler_phi(modulus);
  if (!phi.fits_ulong_p()) throw BudgetExceeded("totient too large");
  BigInt floor_value = 1 + modulus * Z;
  for (const auto& zi : z) floor_value = std::max(floor_value, zi);

  Encoding enc;
  BigInt b0;
  for (enc.n = 1;; ++enc.n) {
    b0 = pow_ui(p, 2 * enc.n * phi.get_ui());
    if (b0 > floor_value) break;
  }
  enc.f = (b0 - 1) / modulus;
  if (1 + modulus * enc.f != b0) throw InvariantViolation("b0 is not 1 mod (p^2-1)(ap+1)");

  const BigInt BB = ctx.beta * pow(b0, ctx.delta);
  enc.g = 0;
  for (std::uint64_t i = 1; i <= ctx.nu; ++i) enc.g += z[i - 1] * pow(BB, ipow(ctx.delta + 1, i));
  enc.values = instance_values(ctx, a, enc.f, enc.g);
  const auto& v = enc.values;
  if (!(v.b <= enc.g && enc.g < v.CC)) throw InvariantViolation("g left [b, CC)");
  if (padic::tau(v.S, v.T, p) != 0 || !carry_divisibility(ctx, v)) {
    throw InvariantViolation("encoded instance fails the carry condition");
  }
  if (!size_conditions_hold(ctx, v)) throw InvariantViolation("size conditions fail");
  return enc;
}

std::optional<std::vector<BigInt>> decode_membership(const ReductionContext& ctx, const BigInt& a,
                                                     const BigInt& f, const BigInt& g) {
  if (a < 0) throw DomainError("the parameter must be nonnegative");
  if (f == 0) throw DomainError("f must be nonzero");
  const InstanceValues v = instance_values(ctx, a, f, g);
  if (!is_square(v.b)) throw DomainError("b is not a square");
  if (!exact_log(v.b, BigInt(ctx.p))) throw DomainError("b is not a power of p");
  if (g < 0 || g >= 2 * v.CC) throw DomainError("g must lie in [0, 2 CC)");
  if (!size_conditions_hold(ctx, v)) throw InvariantViolation("size conditions fail");

  const bool no_carry = padic::tau(v.S, v.T, ctx.p) == 0;
  const bool divides = carry_divisibility(ctx, v);
  if (no_carry != divides) throw InvariantViolation("carry forms of the divisibility disagree");
  if (!divides) return std::nullopt;

  std::vector<std::uint64_t> windows;
  for (std::uint64_t i = 1; i <= ctx.nu; ++i) windows.push_back(ipow(ctx.delta + 1, i));
  const auto mask = coding::mask_build(ctx.p, v.b, v.BB, windows);
  auto z = coding::mask_decode(g, mask, 2 * v.CC);
  if (!z) throw InvariantViolation("divisible instance with undecodable g");
  if (eval_at(ctx, full_point(a, *z)) != 0) {
    throw InvariantViolation("decoded digits are not a zero of the polynomial");
  }
  return z;
}

}  // namespace dioph::reducer
