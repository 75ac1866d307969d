// Acceptance run: one PASS/FAIL line per criterion. Each check compares the
// library against a reference computed here (see oracles.hpp) or against a
// value that can be read off the definitions. Exit status 1 if any line fails.

#include "dioph/campaign.hpp"
#include "dioph/coding.hpp"
#include "dioph/gadgets.hpp"
#include "dioph/lucas.hpp"
#include "dioph/padic.hpp"
#include "dioph/poly_parse.hpp"
#include "dioph/polygonal.hpp"
#include "dioph/reducer.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace dioph;
using i64 = std::int64_t;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  // Records the first failure only; later ones rarely add information.
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string s(const BigInt& v) { return v.get_str(); }

BigInt factorial(std::uint64_t n) {
  BigInt f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

i64 ipow(i64 base, std::uint64_t e) {
  i64 r = 1;
  while (e-- > 0) r *= base;
  return r;
}

template <class... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  ((os << args), ...);
  return os.str();
}

int failures = 0;

void run(int number, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.expect(false, cat("exception: ", e.what()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.expect(secs < limit_s, cat("took ", secs, " s, limit ", limit_s, " s"));
  if (!out.ok) ++failures;
  std::printf("[%s] %2d %s (%.1f s)%s%s\n", out.ok ? "PASS" : "FAIL", number, title, secs,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

// ------------------------------------------------------------------ digits

void kummer_legendre(Outcome& out) {
  const i64 lim = 2000;
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    const auto fact = oracle::factorial_valuations(2 * lim, p);
    for (i64 a = 0; a <= lim; ++a) {
      for (i64 b = 0; b <= lim; ++b) {
        const std::uint64_t t = padic::tau(a, b, p);
        const std::uint64_t direct = fact[a + b] - fact[a] - fact[b];
        const std::uint64_t via_sums =
            (oracle::digit_sum(a, p) + oracle::digit_sum(b, p) - oracle::digit_sum(a + b, p)) / (p - 1);
        if (t != direct || t != via_sums) {
          out.expect(false, cat("tau_", p, "(", a, ", ", b, ") = ", t, ", oracle ", direct));
          return;
        }
      }
    }
  }
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    const auto fact = oracle::factorial_valuations(100000, p);
    for (i64 n = 0; n <= 100000; ++n) {
      std::uint64_t floors = 0;
      for (i64 q = n / static_cast<i64>(p); q > 0; q /= static_cast<i64>(p)) floors += q;
      const BigInt sigma = padic::sigma(n, p);
      const bool ok = sigma == n - static_cast<i64>((p - 1) * floors) &&
                      sigma == oracle::digit_sum(n, p) && padic::ord_factorial(n, p) == fact[n];
      if (!ok) {
        out.expect(false, cat("digit-sum identity at n = ", n, ", p = ", p));
        return;
      }
    }
  }
}

void carry_divisibility(Outcome& out) {
  struct Config {
    unsigned long p, P, N;
  };
  for (const Config c : {Config{2, 2, 4}, Config{2, 2, 16}, Config{2, 4, 16}, Config{3, 3, 9}, Config{3, 3, 27}}) {
    const unsigned long q = (c.N - 1) / (c.P - 1);
    const BigInt N2 = BigInt(c.N) * c.N;
    for (unsigned long S = 0; S < c.N; ++S) {
      for (unsigned long T = 0; T < c.N; ++T) {
        const unsigned long R = (S + T + 1) * c.N + T + 1;
        BigInt binom;
        mpz_bin_uiui(binom.get_mpz_t(), c.P * q * R, q * R);
        const bool direct = mpz_divisible_p(binom.get_mpz_t(), N2.get_mpz_t()) != 0;
        const bool carry = coding::binomial_divisible_by_carry(c.p, c.P, c.N, S, T);
        const bool no_carry = oracle::digit_sum(S, c.p) + oracle::digit_sum(T, c.p) == oracle::digit_sum(S + T, c.p);
        if (carry != direct || direct != no_carry) {
          out.expect(false, cat("(p, P, N) = (", c.p, ", ", c.P, ", ", c.N, "), S = ", S, ", T = ", T));
          return;
        }
      }
    }
  }
}

void masks_and_zero_test(Outcome& out) {
  // Digit windows: brute force over every c below C.
  const std::vector<std::vector<std::uint64_t>> index_sets{{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 3}};
  std::size_t mask_cases = 0;
  for (unsigned long p : {2ul, 3ul}) {
    for (unsigned long be = 1; be <= 2; ++be) {
      for (unsigned long Be = be; Be <= be + 1; ++Be) {
        const i64 b = ipow(p, be);
        const i64 B = ipow(p, Be);
        for (const auto& idx : index_sets) {
          const i64 top = ipow(B, idx.back());
          const auto mask = coding::mask_build(p, b, B, idx);
          i64 M = 0, scale = 1;
          for (std::uint64_t j = 0; j <= idx.back(); ++j, scale *= B) {
            const bool window = std::find(idx.begin(), idx.end(), j) != idx.end();
            M += (window ? B - b : B - 1) * scale;
          }
          out.expect(mask.M == M, cat("mask integer for p = ", p, ", b = ", b, ", B = ", B));
          for (const i64 C : {b * top, top * B}) {
            if (C > 300000) continue;
            std::map<i64, std::vector<i64>> sums;
            std::vector<i64> z(idx.size(), 0);
            std::function<void(std::size_t, i64)> fill = [&](std::size_t i, i64 acc) {
              if (i == idx.size()) {
                sums[acc] = z;
                return;
              }
              for (z[i] = 0; z[i] < b; ++z[i]) fill(i + 1, acc + z[i] * ipow(B, idx[i]));
            };
            fill(0, 0);
            for (i64 c = 0; c < C; ++c) {
              ++mask_cases;
              const auto got = coding::mask_decode(c, mask, C);
              const auto it = sums.find(c);
              bool ok = got.has_value() == (it != sums.end());
              for (std::size_t i = 0; ok && got && i < idx.size(); ++i) ok = (*got)[i] == it->second[i];
              if (!ok) {
                out.expect(false, cat("mask decode p = ", p, ", b = ", b, ", B = ", B, ", C = ", C, ", c = ", c));
                return;
              }
            }
          }
        }
      }
    }
  }
  out.expect(mask_cases > 10000, "mask grid unexpectedly small");

  // Polynomial zeros read off one carry.
  const std::vector<std::pair<std::string, std::vector<std::string>>> polys{
      {"z0 - 2", {"z0"}},
      {"z0 - z1", {"z0", "z1"}},
      {"z0^2 - z1", {"z0", "z1"}},
      {"z0*z1 - 2", {"z0", "z1"}},
      {"z0^2 + z1^2 - z2^2", {"z0", "z1", "z2"}},
  };
  for (const auto& [text, vars] : polys) {
    const TermPoly P = parse_poly(text, vars);
    const std::uint64_t delta = P.degree();
    std::vector<i64> z(vars.size(), 0);
    const i64 box = vars.size() == 3 ? 5 : 6;
    while (true) {
      i64 sum = 1, value = 0;
      for (i64 v : z) sum += v;
      // Direct evaluation of each test polynomial.
      if (text == "z0 - 2") value = z[0] - 2;
      if (text == "z0 - z1") value = z[0] - z[1];
      if (text == "z0^2 - z1") value = z[0] * z[0] - z[1];
      if (text == "z0*z1 - 2") value = z[0] * z[1] - 2;
      if (text == "z0^2 + z1^2 - z2^2") value = z[0] * z[0] + z[1] * z[1] - z[2] * z[2];
      const BigInt need = factorial(delta) * P.height() * pow(BigInt(sum), delta);
      for (unsigned long p : {2ul, 3ul}) {
        BigInt X = p;
        while (X <= need) X *= p;
        std::vector<BigInt> zb(z.begin(), z.end());
        const auto r = coding::polynomial_zero_by_carry(P, p, X * p, X, zb);
        if (r.zero != (value == 0)) {
          out.expect(false, cat("zero-by-carry for ", text, " at p = ", p));
          return;
        }
      }
      std::size_t i = 0;
      while (i < z.size() && z[i] == box) z[i++] = 0;
      if (i == z.size()) break;
      ++z[i];
    }
  }

  // i_0! ... i_v! (delta - sum i)! <= delta!.
  for (std::uint64_t delta = 0; delta <= 6; ++delta) {
    for (std::size_t arity = 1; arity <= 3; ++arity) {
      Monomial m(arity, 0);
      while (true) {
        std::uint64_t total = 0;
        for (auto e : m) total += e;
        if (total <= delta) {
          BigInt w = factorial(delta - total);
          for (auto e : m) w *= factorial(e);
          out.expect(coding::multinomial_weight(m, delta) == w && w <= factorial(delta),
                     cat("multinomial weight, delta = ", delta));
        }
        std::size_t i = 0;
        while (i < m.size() && m[i] == delta) m[i++] = 0;
        if (i == m.size()) break;
        ++m[i];
      }
    }
  }
}

// ------------------------------------------------------------------ Lucas

void lucas_suite(Outcome& out) {
  for (i64 A = -20; A <= 20; ++A) {
    for (i64 B : {1, -1}) {
      const lucas::LucasParams par(A, B);
      for (i64 n = 0; n <= 30; ++n) {
        const BigInt u = oracle::lucas_u(A, B, n), v = oracle::lucas_v(A, B, n);
        const bool ok = lucas::u(par, n) == u && lucas::v(par, n) == v && lucas::check_norm_identity(par, n) &&
                        v * v - BigInt(A * A - 4 * B) * u * u == 4 * pow(BigInt(B), n);
        out.expect(ok, cat("norm identity A = ", A, ", B = ", B, ", n = ", n));
      }
    }
    const lucas::LucasParams par(A, 1);
    for (i64 n = -30; n <= 30; ++n) {
      const BigInt u = lucas::u(par, n), v = lucas::v(par, n);
      out.expect(u == oracle::lucas_u(A, 1, n), cat("u_n at negative index, A = ", A, ", n = ", n));
      out.expect(lucas::u(par, n - 1) + lucas::u(par, n + 1) == A * u, cat("u recurrence, A = ", A, ", n = ", n));
      out.expect(lucas::v(par, n - 1) + lucas::v(par, n + 1) == A * v, cat("v recurrence, A = ", A, ", n = ", n));
      const BigInt sign = (n % 2 == 0) ? 1 : -1;
      out.expect(lucas::u(par, -n) == -u && -u == sign * lucas::u(lucas::LucasParams(-A, 1), n),
                 cat("index reflection, A = ", A, ", n = ", n));
    }
    out.expect(lucas::v(par, 0) == 2 && lucas::v(par, 1) == A, cat("v initial terms, A = ", A));
  }
  for (i64 n = 0; n <= 60; ++n) {
    out.expect(lucas::u(lucas::LucasParams(1, -1), n) == oracle::fibonacci(n), cat("u_n(1, -1) = F_n at ", n));
    out.expect(lucas::u(lucas::LucasParams(3, 1), n) == oracle::fibonacci(2 * n), cat("u_n(3, 1) = F_2n at ", n));
  }
  for (i64 A = 2; A <= 12; ++A) {
    const lucas::LucasParams par(A, 1);
    for (i64 n = 0; n <= 25; ++n) {
      const BigInt next = lucas::u(par, n + 1);
      out.expect(pow(BigInt(A - 1), n) <= next && next <= pow(BigInt(A), n) && lucas::u(par, n) < next,
                 cat("growth bounds A = ", A, ", n = ", n));
    }
  }
  // Square characterisation of u-values, both directions.
  const i64 Xmax = 10000;
  for (i64 A = -8; A <= 8; ++A) {
    const i64 reach = std::abs(A) == 2 ? Xmax + 1 : 40;
    std::map<i64, std::set<i64>> where;  // value -> indices in [-reach, reach]
    for (i64 m = -reach; m <= reach; ++m) {
      const BigInt u = oracle::lucas_u(A, 1, m);
      if (abs(u) <= Xmax) where[u.get_si()].insert(m);
    }
    for (i64 X = -Xmax; X <= Xmax; ++X) {
      const auto it = where.find(X);
      const bool member = it != where.end();
      const bool square = oracle::perfect_square(BigInt(A * A - 4) * X * X + 4);
      const auto idx = lucas::index_of(A, X);
      bool ok = lucas::square_test(A, X) == square && square == member && idx.empty() == !member;
      for (i64 m = -reach; ok && m <= reach && std::abs(A) <= 1; ++m) {
        ok = idx.contains(m) == (member && it->second.count(m) > 0);
      }
      if (ok && member && std::abs(A) >= 2) {
        ok = std::set<i64>(idx.indices.begin(), idx.indices.end()) == it->second;
      }
      if (!ok) {
        out.expect(false, cat("square characterisation A = ", A, ", X = ", X));
        return;
      }
    }
  }
}

void congruences(Outcome& out) {
  std::mt19937_64 rng(20241016);
  auto pick = [&](i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); };
  for (int i = 0; i < 1000; ++i) {
    const i64 A = pick(-50, 50), B = pick(1, 12), U = pick(-50, 50), V = pick(-50, 50);
    const BigInt modulus = abs(BigInt(U * U - A * U * V + V * V));
    BigInt lhs = pow(BigInt(U * V), B - 1) * oracle::lucas_u(A, 1, B), rhs = 0;
    for (i64 r = 0; r < B; ++r) rhs += pow(BigInt(U), 2 * r) * pow(BigInt(V), 2 * (B - 1 - r));
    const bool holds = modulus == 0 ? lhs == rhs : mod_floor(lhs - rhs, modulus) == 0;
    out.expect(holds, cat("power-sum congruence fails for (", A, ", ", B, ", ", U, ", ", V, ")"));
    out.expect(lucas::check_power_sum_congruence(A, B, U, V), cat("library rejects (", A, ", ", B, ", ", U, ", ", V, ")"));
  }
  // Only W = V^B survives in a window around V^B.
  for (i64 V : {2, 3}) {
    for (i64 B = 1; B <= 4; ++B) {
      const BigInt target = pow(BigInt(V), B);
      for (i64 d = -50; d <= 50; ++d) {
        const BigInt W = target + d;
        BigInt A = pow(BigInt(V), 4 * B);
        if (pow(abs(W), 4) > A) A = pow(abs(W), 4);
        const BigInt C = oracle::lucas_u(A, 1, B);
        const BigInt mod = A * V - V * V - 1;
        const bool cong = mod_floor((V * V - 1) * W * C - V * (W * W - 1), mod) == 0;
        const bool lib = lucas::power_certificate_holds(V, W, B, A);
        out.expect(lib == cong, cat("certificate disagrees with direct check, V = ", V, ", B = ", B, ", W = ", s(W)));
        out.expect(cong == (W == target), cat("W = ", s(W), " passes for V = ", V, ", B = ", B));
      }
    }
  }
}

// ------------------------------------------------------------------ gadgets

void gadget_suite(Outcome& out) {
  // J_2 equals the hand expansion as a polynomial: agreement on a grid wider
  // than the degree in every variable.
  const auto J2 = gadgets::build_J(2);
  for (i64 a1 = -5; a1 <= 5; ++a1)
    for (i64 a2 = -6; a2 <= 6; ++a2)
      for (i64 x = -3; x <= 3; ++x)
        out.expect(J2.eval({{"x1", a1}, {"x2", a2}, {"x", x}}) == oracle::j2_closed(a1, a2, x),
                   cat("J_2 expansion at (", a1, ", ", a2, ", ", x, ")"));
  const auto J1 = gadgets::build_J(1);
  for (i64 a = -20; a <= 40; ++a) {
    bool found = false;
    const i64 bound = static_cast<i64>(std::ceil(std::sqrt(static_cast<double>(std::abs(a))))) + 1;
    for (i64 x = -bound; x <= bound; ++x) found = found || J1.eval({{"x1", a}, {"x", x}}) == 0;
    out.expect(found == (a >= 0 && oracle::perfect_square(a)), cat("J_1 zero set at A = ", a));
  }
  auto ceil_sqrt = [](i64 v) {
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(v)));
    while (r * r < v) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= v) --r;
    return r;
  };
  for (i64 a1 = -20; a1 <= 40; ++a1) {
    for (i64 a2 = -20; a2 <= 40; ++a2) {
      const __int128 X = 1 + a1 * a1 + a2 * a2;
      const i64 bound = ceil_sqrt(std::abs(a1)) + ceil_sqrt(std::abs(a2)) * static_cast<i64>(X);
      bool found = false;
      for (i64 x = -bound; x <= bound && !found; ++x) {
        const __int128 xx = static_cast<__int128>(x) * x;
        const __int128 t = xx + a1 - a2 * X * X;
        found = t * t == 4 * a1 * xx;
      }
      const bool squares = a1 >= 0 && a2 >= 0 && oracle::perfect_square(a1) && oracle::perfect_square(a2);
      if (found != squares) {
        out.expect(false, cat("J_2 zero set at (", a1, ", ", a2, ")"));
        return;
      }
    }
  }

  // Closed-form witnesses for M_k and H_k on satisfying instances.
  std::vector<gadgets::GadgetInstance> M, H;
  for (unsigned k = 1; k <= 4; ++k) {
    M.push_back(gadgets::build_M(k));
    H.push_back(gadgets::build_H(k));
  }
  std::mt19937_64 rng(77);
  auto pick = [&](i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); };
  for (int i = 0; i < 200; ++i) {
    const unsigned k = static_cast<unsigned>(pick(1, 4));
    std::vector<BigInt> A, roots;
    BigInt X = 1;
    for (unsigned j = 0; j < k; ++j) {
      roots.push_back(pick(0, 20));
      A.push_back(roots.back() * roots.back());
      X += A.back() * A.back();
    }
    i64 S = 0;
    while (S == 0) S = pick(-20, 20);
    const BigInt T = BigInt(S) * pick(-20, 20);
    const BigInt R = pick(1, 20);
    BigInt weighted = 0;
    for (unsigned j = 0; j < k; ++j) weighted += roots[j] * pow(X, j);
    const BigInt m = (2 * R - 1) * (T * T + pow(X, k) + weighted) - (T / S) * (T / S);
    const BigInt z = T / S + weighted;
    const auto mw = gadgets::M_witness(A, S, T, R);
    const auto hw = gadgets::H_witness(A, S, T);
    out.expect(mw && *mw == m && m >= 0, cat("M witness formula, instance ", i));
    out.expect(hw && *hw == z, cat("H witness formula, instance ", i));
    Assignment am, ah;
    for (unsigned j = 0; j < k; ++j) am["x" + std::to_string(j + 1)] = ah["x" + std::to_string(j + 1)] = A[j];
    am["w"] = S;
    am["x"] = T;
    am["y"] = R;
    am["z"] = m;
    ah["x"] = S;
    ah["y"] = T;
    ah["z"] = z;
    out.expect(M[k - 1].eval(am) == 0, cat("M_", k, " at its witness, instance ", i));
    out.expect(H[k - 1].eval(ah) == 0, cat("H_", k, " at its witness, instance ", i));
  }

  // Small one-relation gadgets.
  for (i64 m = -10000; m <= 10000; ++m) {
    const BigInt mb = m;
    if (m >= 0) {
      const auto w = gadgets::nonneg_witness(mb);
      out.expect(w.x * w.x + w.y * w.y + w.z * w.z + w.z == mb, cat("nonneg witness m = ", m));
    } else {
      bool threw = false;
      try {
        gadgets::nonneg_witness(mb);
      } catch (const DomainError&) {
        threw = true;
      }
      out.expect(threw, cat("nonneg witness accepted m = ", m));
    }
    if (m != 0) {
      const auto w = gadgets::nonzero_witness(mb);
      out.expect((2 * w.x + 1) * (3 * w.y + 1) == mb, cat("nonzero witness m = ", m));
    } else {
      bool threw = false;
      try {
        gadgets::nonzero_witness(mb);
      } catch (const DomainError&) {
        threw = true;
      }
      out.expect(threw, "nonzero witness accepted m = 0");
    }
    const auto x = gadgets::positivity_witness(mb);
    if (m >= 0) {
      out.expect(x && *x != 0 && oracle::perfect_square((3 * mb - 1) * *x * *x + 1), cat("positivity witness m = ", m));
    } else {
      // (3m - 1) x^2 + 1 <= -4 x^2 + 1 < 0 for x != 0, so a short scan is conclusive.
      out.expect(!x, cat("positivity witness returned for m = ", m));
      for (i64 t = 1; t <= 5; ++t) out.expect(!oracle::perfect_square((3 * mb - 1) * t * t + 1), "negative m square");
    }
  }
  for (i64 root = 0; root <= 60; ++root) {
    const TermPoly P = parse_poly("x - " + std::to_string(root), {"x"});
    const TermPoly Pbar = gadgets::putnam_transform(P, "x");
    std::set<i64> hits;
    for (i64 x = 0; x <= 50; ++x) {
      const i64 px = x - root;
      const i64 direct = (x + 1) * (1 - px * px) - 1;
      out.expect(Pbar.eval({{"x", x}}) == direct, cat("range transform at x = ", x));
      if (direct >= 0) hits.insert(direct);
    }
    out.expect(hits == (root <= 50 ? std::set<i64>{root} : std::set<i64>{}), cat("range transform root ", root));
  }
}

// ------------------------------------------------------------------ reduction

bool power_of(BigInt n, unsigned long p) {
  if (n < 1) return false;
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
  return n == 1;
}

void toy_membership(Outcome& out) {
  // Even numbers: a - 2 z1 = 0, wrapped with a second variable fixed at 1.
  const auto ctx = reducer::build_context(parse_poly("a - 2*z1", {"a", "z1"}), 2);
  out.expect(ctx.delta == 2 && ctx.nu == 2 && ctx.L == 4 && ctx.alpha == 5 && ctx.beta == 1024,
             "toy context constants");
  for (i64 a = 0; a <= 12; ++a) {
    if (a % 2 == 0) {
      const auto enc = reducer::encode_membership(ctx, a, {a / 2});
      const auto& v = enc.values;
      out.expect(oracle::perfect_square(v.b) && power_of(v.b, 2), cat("b not a square power of 2 at a = ", a));
      out.expect(v.b <= enc.g && enc.g < v.CC, cat("g outside [b, C) at a = ", a));
      // ord_2 C(2X, X) is the number of one bits of X; Y = N^2.
      const auto logN = exact_log(v.N, 2);
      out.expect(logN && v.Y == v.N * v.N && mpz_popcount(v.X.get_mpz_t()) >= 2 * *logN,
                 cat("divisibility condition at a = ", a));
      out.expect(bit_length(v.X) < 40000, cat("numbers larger than expected at a = ", a));
      const auto z = reducer::decode_membership(ctx, a, enc.f, enc.g);
      out.expect(z && z->size() == 2 && a - 2 * (*z)[0] == 0 && (*z)[1] == 1, cat("decode at a = ", a));
      const auto bumped = reducer::decode_membership(ctx, a, enc.f, enc.g + 1);
      out.expect(!bumped, cat("g + 1 decoded at a = ", a));
      out.expect(!reducer::decode_membership(ctx, a, enc.f, 0), cat("g = 0 decoded at a = ", a));
      continue;
    }
    bool threw = false;
    try {
      reducer::encode_membership(ctx, a, {a / 2});
    } catch (const DomainError&) {
      threw = true;
    }
    out.expect(threw, cat("forward construction accepted odd a = ", a));
    // Candidates built the same way as for members: b a square power of 2,
    // g a window sum with small digits.
    const BigInt modulus = BigInt(3) * (2 * a + 1);
    const unsigned long phi = euler_phi(modulus).get_ui();
    for (unsigned long n = 1; n <= 2; ++n) {
      const BigInt b0 = pow_ui(2, 2 * n * phi);
      const BigInt f = (b0 - 1) / modulus;
      const BigInt BB = ctx.beta * pow(b0, ctx.delta);
      for (i64 z1 = 0; z1 <= 7; ++z1) {
        for (i64 z2 = 0; z2 <= 2; ++z2) {
          const BigInt g = z1 * pow(BB, 3) + z2 * pow(BB, 9);
          out.expect(!reducer::decode_membership(ctx, a, f, g), cat("odd a = ", a, " decoded"));
        }
      }
    }
  }
}

struct StandaloneCase {
  BigInt Y;
  reducer::WitnessBundle bundle;
};

std::vector<StandaloneCase>& standalone_cases() {
  static std::vector<StandaloneCase> cases;
  return cases;
}

void standalone_bundle(Outcome& out) {
  const long X = 12;
  const BigInt binom = oracle::binomial(24, 12);
  out.expect(binom == 2704156, "C(24, 12)");
  // Divisors by trial division of the binomial itself.
  std::vector<BigInt> divisors;
  for (long d = 256; d <= binom; ++d) {
    if (mpz_divisible_ui_p(binom.get_mpz_t(), d)) divisors.emplace_back(d);
  }
  out.expect(!divisors.empty(), "no divisor above 256");
  std::size_t max_C = 0, max_K = 0;
  for (const BigInt& Y : divisors) {
    auto w = reducer::derive_witness_bundle(2, 1, 1, 2, 1, X, Y, 200);
    const std::string at = cat("Y = ", s(Y));
    for (const char* name : {"bw = p^B", "K square", "congruence", "16g^2(C - KL)^2 < K^2", "D = v_B(A,1)^2",
                             "|C/K - L| < 1/(4g)"}) {
      const auto* c = w.find(name);
      out.expect(c && c->holds, cat(name, " fails at ", at));
    }
    // Recompute each claim from the recurrences.
    const BigInt AK = pow(w.U, 2) * w.V;  // U^P V with P = 2
    const BigInt K = oracle::lucas_u(AK, 1, X + 1);
    const BigInt vK = oracle::lucas_v(AK, 1, X + 1);
    const BigInt C = oracle::lucas_u(w.A, 1, 2 * X + 1);
    const BigInt vC = oracle::lucas_v(w.A, 1, 2 * X + 1);
    out.expect(w.K == K && w.K_root == vK && (AK * AK - 4) * K * K + 4 == vK * vK, cat("K certificate at ", at));
    out.expect(w.C == C && w.D == vC * vC && w.D_root == vC, cat("C, D at ", at));
    out.expect(w.b * w.w == pow_ui(2, 2 * X + 1), cat("bw at ", at));
    const BigInt p = 2;
    out.expect(mod_floor((p * p - 1) * w.W * C - p * (w.W * w.W - 1), p * w.A - p * p - 1) == 0,
               cat("congruence at ", at));
    out.expect(16 * w.g * w.g * (C - K * w.L) * (C - K * w.L) < K * K, cat("inequality at ", at));
    max_C = std::max(max_C, bit_length(C));
    max_K = std::max(max_K, bit_length(K));
    standalone_cases().push_back({Y, std::move(w)});
  }
  out.expect(max_C > 2000 && max_K > 2000, cat("C, K only ", max_C, " / ", max_K, " bits"));
  out.detail = out.ok ? cat(divisors.size(), " divisors, C up to ", max_C, " bits, K up to ", max_K, " bits") : out.detail;
}

void soundness(Outcome& out) {
  out.expect(!standalone_cases().empty(), "no bundles from the previous criterion");
  for (const auto& c : standalone_cases()) {
    const auto v = reducer::verify_witness_bundle(c.bundle);
    // Y | C(24, 12) by Kummer carries, recomputed through the factorisation.
    bool divides = true;
    for (const auto& [q, e] : factor_trial(c.Y)) {
      const auto f = oracle::factorial_valuations(24, q.get_ui());
      divides = divides && f[24] - 2 * f[12] >= e;
    }
    out.expect(v.premises_hold && v.accepted && !v.unsound && v.b_is_power && v.divides == divides && divides,
               cat("bundle for Y = ", s(c.Y), " not accepted"));
  }
  if (standalone_cases().empty()) return;
  const auto& base = standalone_cases().front().bundle;
  auto fails = [](const reducer::Verification& v, const std::string& name) {
    const auto* c = v.find(name);
    return c && !c->holds && !v.accepted;
  };
  {
    auto b = base;
    b.K += 1;
    out.expect(fails(reducer::verify_witness_bundle(b), "K square"), "K + 1 passes the square condition");
  }
  {
    auto b = base;
    b.w += 1;
    b = reducer::recompute_derived(b);
    out.expect(fails(reducer::verify_witness_bundle(b), "congruence"), "w + 1 passes the congruence");
  }
  {
    auto b = base;
    b.h += 1;
    b = reducer::recompute_derived(b);
    out.expect(fails(reducer::verify_witness_bundle(b), "congruence"), "h + 1 passes the congruence");
  }
}

// ------------------------------------------------------------------ polygonal

void polygonal_suite(Outcome& out) {
  using polygonal::Kind;
  for (i64 x = -10000; x <= 10000; ++x) {
    const i64 t = oracle::triangular(x), q = oracle::octagonal(x), r = oracle::pentagonal(x);
    out.expect(polygonal::value(Kind::Triangular, x) == t && polygonal::value(Kind::Octagonal, x) == q &&
                   polygonal::value(Kind::Pentagonal, x) == r && polygonal::value(Kind::Square, x) == x * x,
               cat("values at x = ", x));
    out.expect(8 * t + 1 == (2 * x + 1) * (2 * x + 1) && 3 * q + 1 == (3 * x - 1) * (3 * x - 1) &&
                   24 * r + 1 == (6 * x - 1) * (6 * x - 1),
               cat("shift identity at x = ", x));
    out.expect(polygonal::shift_identity_check(Kind::Triangular, x) &&
                   polygonal::shift_identity_check(Kind::Octagonal, x) &&
                   polygonal::shift_identity_check(Kind::Pentagonal, x),
               cat("library shift check at x = ", x));
    out.expect(x == oracle::triangular(x) - oracle::triangular(-x) &&
                   x == oracle::pentagonal(-x) - oracle::pentagonal(x),
               cat("difference identity at x = ", x));
  }
  // Set equalities by double inclusion on the range each side covers fully.
  const i64 bound = 10000;
  struct Shift {
    polygonal::ShiftSet which;
    std::function<i64(i64)> value;
    i64 scale;
    std::function<bool(i64)> root_ok;
  };
  const std::vector<Shift> shifts{
      {polygonal::ShiftSet::Triangular, oracle::triangular, 8, [](i64 r) { return r % 2 != 0; }},
      {polygonal::ShiftSet::Octagonal, oracle::octagonal, 3, [](i64 r) { return r % 3 != 0; }},
      {polygonal::ShiftSet::Pentagonal, oracle::pentagonal, 24, [](i64 r) { return r % 2 != 0 && r % 3 != 0; }},
  };
  for (const auto& sh : shifts) {
    i64 cap = INT64_MAX;
    for (i64 x : {bound, -bound}) cap = std::min(cap, sh.scale * sh.value(x) + 1);
    std::set<i64> lhs, rhs;
    for (i64 x = -bound; x <= bound; ++x) {
      const i64 v = sh.scale * sh.value(x) + 1;
      if (v <= cap) lhs.insert(v);
    }
    for (i64 r = 0; r * r <= cap; ++r) {
      if (sh.root_ok(r)) rhs.insert(r * r);
    }
    out.expect(lhs == rhs && polygonal::set_equality_scan(sh.which, bound),
               cat("set equality for scale ", sh.scale));
  }
  // Completeness of the sum shapes.
  using polygonal::Shape;
  auto reconstruct = [](const polygonal::Decomposition& d) -> i64 {
    std::vector<i64> a;
    for (const auto& v : d.args) a.push_back(v.get_si());
    switch (d.shape) {
      case Shape::ThreeTriangular: return oracle::triangular(a[0]) + oracle::triangular(a[1]) + oracle::triangular(a[2]);
      case Shape::ThreePentagonal: return oracle::pentagonal(a[0]) + oracle::pentagonal(a[1]) + oracle::pentagonal(a[2]);
      case Shape::FourOctagonal:
        return oracle::octagonal(a[0]) + oracle::octagonal(a[1]) + oracle::octagonal(a[2]) + oracle::octagonal(a[3]);
      case Shape::TwoSquaresPlusTwice: return a[0] * a[0] + a[1] * a[1] + 2 * a[2] * a[2];
      case Shape::OctagonalTwoPlusTwice: return oracle::octagonal(a[0]) + oracle::octagonal(a[1]) + 2 * oracle::octagonal(a[2]);
      case Shape::DiffSquares: return (i64{1} << d.delta) * (a[0] * a[0] - a[1] * a[1]);
      case Shape::DiffOctagonal: return (i64{1} << d.delta) * (oracle::octagonal(a[0]) - oracle::octagonal(a[1]));
    }
    return -1;
  };
  for (i64 n = 0; n <= 100000; ++n) {
    for (Shape shape : {Shape::ThreeTriangular, Shape::ThreePentagonal, Shape::FourOctagonal}) {
      const auto d = polygonal::decompose(n, shape);
      if (reconstruct(d) != n) {
        out.expect(false, cat(polygonal::shape_name(shape), " at n = ", n));
        return;
      }
    }
    if (n % 2 == 1) {
      const auto d = polygonal::decompose(n, Shape::TwoSquaresPlusTwice);
      if (reconstruct(d) != n) {
        out.expect(false, cat("x^2 + y^2 + 2z^2 at n = ", n));
        return;
      }
    }
  }
  for (i64 n = -2000; n <= 2000; ++n) {
    for (Shape shape : {Shape::DiffSquares, Shape::DiffOctagonal}) {
      out.expect(reconstruct(polygonal::decompose(n, shape)) == n, cat(polygonal::shape_name(shape), " at n = ", n));
    }
  }
  const auto two = polygonal::decompose(2, Shape::OctagonalTwoPlusTwice);
  out.expect(reconstruct(two) == 2, "2 as p8 + p8 + 2 p8");
}

// ------------------------------------------------------------------ assembly

void assembly_structure(Outcome& out) {
  using Names = std::vector<std::string>;
  {
    const auto toy = reducer::build_context(parse_poly("a - 2*z1", {"a", "z1"}), 2);
    const auto nonneg = reducer::assemble_nonneg_form(toy);
    const auto nonzero = reducer::assemble_nonzero_form(toy);
    const auto squares = reducer::to_squares_form(nonneg);
    const auto tung = reducer::to_tung_form(nonzero);
    out.expect(nonneg.variables == Names{"a", "f", "g", "h", "k", "l", "m", "w", "x", "y"}, "nonnegative form variables");
    out.expect(nonzero.variables == Names{"a", "f", "g", "h", "k", "l", "m", "w", "x", "y", "z"}, "nonzero form variables");
    out.expect(squares.variables == Names{"a", "f", "g", "h", "k", "l", "m1", "m2", "m3", "w", "x", "y"} &&
                   squares.unknown_count() == 11,
               "squares form variables");
    out.expect(tung.variables == Names{"a", "f", "g", "h", "k", "l", "m", "w", "x", "y", "z1", "z2"} &&
                   tung.unknown_count() == 11,
               "product form variables");
    out.expect(nonzero.dag.contains(nonzero.root, nonzero.positivity_term), "positivity subterm missing");
  }
  // Dual evaluation on a context small enough for 100 points per graph.
  const auto ctx = reducer::build_context(parse_poly("1 + a - z1", {"a", "z1"}), 2, "a", true);
  const auto nonneg = reducer::assemble_nonneg_form(ctx);
  const auto nonzero = reducer::assemble_nonzero_form(ctx);
  const auto squares = reducer::to_squares_form(nonneg);
  const auto tung = reducer::to_tung_form(nonzero);
  std::mt19937_64 rng(4242);
  auto pick = [&](i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); };
  std::size_t checked = 0;
  for (const auto& [form, kind] : std::vector<std::pair<const reducer::Assembly*, reducer::FormKind>>{
           {&nonneg, reducer::FormKind::Nonneg},
           {&nonzero, reducer::FormKind::Nonzero},
           {&squares, reducer::FormKind::Squares},
           {&tung, reducer::FormKind::Tung}}) {
    for (int i = 0; i < 100; ++i) {
      Assignment at;
      for (const auto& name : form->variables) at[name] = pick(-2, 2);
      at["a"] = pick(0, 2);
      const BigInt graph = form->eval(at);
      const BigInt direct = reducer::direct_eval(ctx, kind, at);
      ++checked;
      if (graph != direct) {
        out.expect(false, cat("evaluators disagree on ", form->variables.size(), "-name form, point ", i));
        return;
      }
    }
  }
  out.detail = cat(checked, " points agree");
}

}  // namespace

int main() {
  run(1, "Kummer carries vs factorial valuations, digit-sum identity", 30, kummer_legendre);
  run(2, "binomial divisibility by carries vs direct binomials", 120, carry_divisibility);
  run(3, "digit-window decoding, zero-by-carry, multinomial bound", 60, masks_and_zero_test);
  run(4, "Lucas identities, Fibonacci cases, growth, square characterisation", 60, lucas_suite);
  run(5, "power-sum congruence and power certificate window", 60, congruences);
  run(6, "combiners J, M, H and the small gadgets", 120, gadget_suite);
  run(7, "membership coding round trip on the even numbers", 120, toy_membership);
  run(8, "standalone witness bundle for Y | C(24, 12)", 300, standalone_bundle);
  run(9, "verifier soundness and perturbations", 120, soundness);
  run(10, "polygonal shifts, set equalities, decompositions", 180, polygonal_suite);
  run(11, "assembled forms: variables and dual evaluation", 60, assembly_structure);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
