#include "dioph/campaign.hpp"

#include "dioph/coding.hpp"
#include "dioph/gadgets.hpp"
#include "dioph/lucas.hpp"
#include "dioph/padic.hpp"
#include "dioph/poly_parse.hpp"
#include "dioph/polygonal.hpp"
#include "dioph/reducer.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>

namespace dioph::campaign {

namespace {

using nlohmann::json;
using i64 = std::int64_t;

constexpr std::size_t kMaxCounterexamples = 100;

class Sink {
 public:
  Sink(Report& report, std::uint64_t budget) : report_(report), budget_(budget) {}

  void check(bool ok, json input, const std::string& detail = {}) {
    if (budget_ && report_.cases >= budget_) {
      throw BudgetExceeded("case budget of " + std::to_string(budget_) + " exhausted");
    }
    ++report_.cases;
    if (ok) {
      ++report_.passed;
      return;
    }
    ++report_.failed;
    if (report_.counterexamples.size() < kMaxCounterexamples) {
      report_.counterexamples.push_back({{"input", std::move(input)}, {"detail", detail}});
    }
  }

 private:
  Report& report_;
  std::uint64_t budget_;
};

struct Context {
  const CampaignSpec& spec;
  std::map<std::string, Range> ranges;
  Sink& sink;
  std::mt19937_64 rng;

  Range range(const std::string& key) const { return ranges.at(key); }
  i64 uniform(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }
};

std::string str(const BigInt& v) { return to_string(v); }

// Coefficients in `var` after fixing every other variable.
std::vector<BigInt> univariate(const TermPoly& poly, const std::string& var, const Assignment& fixed) {
  const std::size_t slot = poly.index_of(var);
  std::vector<BigInt> coeffs;
  for (const auto& [mono, c] : poly.terms()) {
    BigInt term = c;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (i != slot && mono[i]) term *= pow(fixed.at(poly.variables()[i]), mono[i]);
    }
    if (coeffs.size() <= mono[slot]) coeffs.resize(mono[slot] + 1, 0);
    coeffs[mono[slot]] += term;
  }
  return coeffs;
}

BigInt horner(const std::vector<BigInt>& coeffs, const BigInt& x) {
  BigInt acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

bool has_root_within(const std::vector<BigInt>& coeffs, const BigInt& bound) {
  for (BigInt x = -bound; x <= bound; ++x) {
    if (horner(coeffs, x) == 0) return true;
  }
  return false;
}

BigInt direct_binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::uint64_t valuation(BigInt n, unsigned long p) {
  return mpz_remove(n.get_mpz_t(), n.get_mpz_t(), BigInt(p).get_mpz_t());
}

// ---------------------------------------------------------------- digits

void kummer_carries(Context& c) {
  const Range ab = c.range("ab");
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (i64 a = ab.lo; a <= ab.hi; ++a) {
      for (i64 b = ab.lo; b <= ab.hi; ++b) {
        const std::uint64_t t = padic::tau(a, b, p);
        std::uint64_t expect;
        if (c.spec.oracle) {
          expect = valuation(direct_binomial(a + b, a), p);
        } else {
          expect = BigInt(padic::ord_factorial(a + b, p) - padic::ord_factorial(a, p) - padic::ord_factorial(b, p)).get_ui();
        }
        c.sink.check(t == expect, {{"p", p}, {"a", a}, {"b", b}},
                     "carries " + std::to_string(t) + " vs valuation " + std::to_string(expect));
      }
    }
  }
}

void legendre_digit_sum(Context& c) {
  const Range n = c.range("n");
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (i64 v = n.lo; v <= n.hi; ++v) {
      const BigInt ord = padic::ord_factorial(v, p);
      bool ok = (p - 1) * ord == v - padic::sigma(v, p);
      if (ok && c.spec.oracle && v <= 3000) {
        BigInt f;
        mpz_fac_ui(f.get_mpz_t(), v);
        ok = valuation(f, p) == ord;
      }
      c.sink.check(ok, {{"p", p}, {"n", v}});
    }
  }
}

void binomial_carry_divisibility(Context& c) {
  const Range N_range = c.range("N");
  const std::vector<std::array<unsigned long, 3>> configs{{2, 2, 4}, {2, 2, 16}, {2, 4, 16}, {3, 3, 9}, {3, 3, 27}};
  for (const auto& [p, P, N] : configs) {
    if (static_cast<i64>(N) < N_range.lo || static_cast<i64>(N) > N_range.hi) continue;
    for (unsigned long S = 0; S < N; ++S) {
      for (unsigned long T = 0; T < N; ++T) {
        const bool carry = coding::binomial_divisible_by_carry(p, P, N, S, T);
        bool expect = padic::tau(S, T, p) == 0;
        if (c.spec.oracle) {
          const unsigned long R = (S + T + 1) * N + T + 1;
          const unsigned long X = (N - 1) / (P - 1) * R;
          const BigInt binom = direct_binomial(P * X, X);
          const BigInt N2 = BigInt(N) * N;
          expect = mpz_divisible_p(binom.get_mpz_t(), N2.get_mpz_t()) != 0;
        }
        c.sink.check(carry == expect, {{"p", p}, {"P", P}, {"N", N}, {"S", S}, {"T", T}});
      }
    }
  }
}

void digit_mask(Context& c) {
  const std::vector<std::vector<std::uint64_t>> index_sets{{0}, {1}, {0, 2}, {1, 2}};
  for (unsigned long p : {2ul, 3ul}) {
    for (unsigned long be = 1; be <= 2; ++be) {
      for (unsigned long Be = be; Be <= be + 1; ++Be) {
        const BigInt b = pow_ui(p, be), B = pow_ui(p, Be);
        for (const auto& idx : index_sets) {
          const auto mask = coding::mask_build(p, b, B, idx);
          const BigInt top = pow(B, idx.back());
          for (const BigInt& C : {BigInt(b * top), BigInt(top * B)}) {
            if (!C.fits_slong_p() || C > 600000) continue;
            std::set<long> sums;
            std::vector<long> z(idx.size(), 0);
            std::function<void(std::size_t, long)> fill = [&](std::size_t i, long acc) {
              if (i == idx.size()) {
                sums.insert(acc);
                return;
              }
              for (long d = 0; d < b.get_si(); ++d) fill(i + 1, acc + d * pow(B, idx[i]).get_si());
            };
            fill(0, 0);
            for (long v = 0; v < C.get_si(); ++v) {
              const auto got = coding::mask_decode(v, mask, C);
              bool ok = got.has_value() == (sums.count(v) > 0);
              if (ok && got) {
                BigInt back = 0;
                for (std::size_t i = 0; i < idx.size(); ++i) back += (*got)[i] * pow(B, idx[i]);
                ok = back == v;
              }
              c.sink.check(ok, {{"p", p}, {"b", str(b)}, {"B", str(B)}, {"indices", idx}, {"C", str(C)}, {"c", v}});
            }
          }
        }
      }
    }
  }
}

void zero_by_carry(Context& c) {
  const Range box = c.range("z");
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
    std::vector<BigInt> z(vars.size(), box.lo);
    while (true) {
      BigInt sum = 1;
      for (const auto& v : z) sum += v;
      BigInt fact;
      mpz_fac_ui(fact.get_mpz_t(), delta);
      const BigInt need = fact * P.height() * pow(sum, delta);
      BigInt X = 2;
      while (X <= need) X *= 2;
      const auto result = coding::polynomial_zero_by_carry(P, 2, 2 * X, X, z);
      Assignment at;
      json input = {{"P", text}};
      for (std::size_t i = 0; i < z.size(); ++i) {
        at[vars[i]] = z[i];
        input[vars[i]] = str(z[i]);
      }
      c.sink.check(result.zero == (P.eval(at) == 0), input);
      std::size_t i = 0;
      while (i < z.size() && z[i] == box.hi) z[i++] = box.lo;
      if (i == z.size()) break;
      ++z[i];
    }
  }
}

// ---------------------------------------------------------------- Lucas

void lucas_identities(Context& c) {
  const Range A_r = c.range("A"), n_r = c.range("n");
  for (i64 A = A_r.lo; A <= A_r.hi; ++A) {
    for (i64 B = A_r.lo; B <= A_r.hi; ++B) {
      const lucas::LucasParams params(A, B);
      BigInt u0 = 0, u1 = 1, v0 = 2, v1 = A;
      for (i64 n = 0; n <= n_r.hi; ++n) {
        if (n >= n_r.lo) {
          const auto [un, vn] = lucas::uv(params, n);
          const bool ok = un == u0 && vn == v0 && lucas::check_norm_identity(params, n) &&
                          2 * lucas::u(params, n + 1) == A * un + vn;
          c.sink.check(ok, {{"A", A}, {"B", B}, {"n", n}});
        }
        BigInt u2 = A * u1 - B * u0, v2 = A * v1 - B * v0;
        u0 = u1, u1 = u2, v0 = v1, v1 = v2;
      }
    }
  }
  BigInt f0 = 0, f1 = 1;
  std::vector<BigInt> fib;
  for (i64 n = 0; n <= 2 * n_r.hi + 2; ++n) {
    fib.push_back(f0);
    BigInt f2 = f0 + f1;
    f0 = f1, f1 = f2;
  }
  for (i64 n = 0; n <= n_r.hi; ++n) {
    c.sink.check(lucas::u(lucas::LucasParams(1, -1), n) == fib[n] &&
                     lucas::u(lucas::LucasParams(3, 1), n) == fib[2 * n],
                 {{"fibonacci", n}});
  }
  for (i64 A = 2; A <= 12; ++A) {
    const lucas::LucasParams params(A, 1);
    for (i64 n = 0; n <= 25; ++n) {
      const BigInt next = lucas::u(params, n + 1);
      const bool ok = pow(BigInt(A - 1), n) <= next && next <= pow(BigInt(A), n) && lucas::u(params, n) < next &&
                      lucas::u(params, -n) == -lucas::u(params, n);
      c.sink.check(ok, {{"growth_A", A}, {"n", n}});
    }
  }
}

void lucas_square_index(Context& c) {
  const Range A_r = c.range("A"), X_r = c.range("X");
  for (i64 A = A_r.lo; A <= A_r.hi; ++A) {
    const lucas::LucasParams params(A, 1);
    for (i64 X = X_r.lo; X <= X_r.hi; ++X) {
      const bool square = lucas::square_test(A, X);
      const auto idx = lucas::index_of(A, X);
      bool ok = square == !idx.empty();
      for (std::int64_t m : idx.indices) ok = ok && lucas::u(params, m) == X;
      c.sink.check(ok, {{"A", A}, {"X", X}}, square ? "square without index" : "index without square");
    }
  }
}

void power_sum_congruence(Context& c) {
  const Range cases = c.range("cases"), B_r = c.range("B");
  for (i64 i = cases.lo; i <= cases.hi; ++i) {
    const i64 A = c.uniform(-60, 60), U = c.uniform(-60, 60), V = c.uniform(-60, 60);
    const i64 B = c.uniform(std::max<i64>(1, B_r.lo), B_r.hi);
    c.sink.check(lucas::check_power_sum_congruence(A, B, U, V), {{"A", A}, {"B", B}, {"U", U}, {"V", V}});
  }
}

void power_certificate(Context& c) {
  const Range B_r = c.range("B"), window = c.range("window");
  for (i64 V : {2, 3}) {
    for (i64 B = std::max<i64>(1, B_r.lo); B <= B_r.hi; ++B) {
      const BigInt target = pow(BigInt(V), B);
      for (i64 d = window.lo; d <= window.hi; ++d) {
        const BigInt W = target + d;
        const BigInt bound = std::max<BigInt>(pow(BigInt(V), 4 * B), pow(W, 4));
        bool any = false, all = true;
        for (i64 s = 0; s < 6; ++s) {
          for (const BigInt& A : {BigInt(bound + s), BigInt(-bound - s)}) {
            const bool holds = lucas::power_certificate_holds(V, W, B, A);
            any = any || holds;
            all = all && holds;
          }
        }
        const bool ok = d == 0 ? all : !any;
        c.sink.check(ok, {{"V", V}, {"B", B}, {"W", str(W)}});
      }
    }
  }
}

// ---------------------------------------------------------------- gadgets

void combiner_J(Context& c) {
  const Range k_r = c.range("k"), A_r = c.range("A");
  for (i64 k = std::max<i64>(1, k_r.lo); k <= std::min<i64>(2, k_r.hi); ++k) {
    const TermPoly J = gadgets::build_J(k).expand();
    std::vector<i64> A(k, A_r.lo);
    while (true) {
      Assignment fixed;
      std::vector<BigInt> Abig;
      bool squares = true;
      for (i64 j = 0; j < k; ++j) {
        fixed["x" + std::to_string(j + 1)] = A[j];
        Abig.emplace_back(static_cast<long>(A[j]));
        squares = squares && A[j] >= 0 && is_square(A[j]);
      }
      const auto coeffs = univariate(J, "x", fixed);
      const BigInt bound = gadgets::root_bound_J(Abig);
      const i64 R = bound.get_si();
      bool found = false;
      std::vector<__int128> cs;
      for (const auto& q : coeffs) cs.push_back(static_cast<__int128>(q.get_si()));
      for (i64 x = -R; x <= R && !found; ++x) {
        __int128 acc = 0;
        for (std::size_t i = cs.size(); i-- > 0;) acc = acc * x + cs[i];
        found = acc == 0;
      }
      json input = {{"k", k}, {"A", A}};
      c.sink.check(found == squares, input);
      std::size_t i = 0;
      while (i < A.size() && A[i] == A_r.hi) A[i++] = A_r.lo;
      if (i == A.size()) break;
      ++A[i];
    }
  }
}

void combiner_witnesses(Context& c) {
  const Range cases = c.range("cases");
  std::vector<gadgets::GadgetInstance> M, H;
  for (unsigned k = 1; k <= 4; ++k) {
    M.push_back(gadgets::build_M(k));
    H.push_back(gadgets::build_H(k));
  }
  for (i64 i = cases.lo; i <= cases.hi; ++i) {
    const unsigned k = static_cast<unsigned>(c.uniform(1, 4));
    std::vector<BigInt> A;
    Assignment at;
    for (unsigned j = 1; j <= k; ++j) {
      const i64 r = c.uniform(0, 12);
      A.emplace_back(static_cast<long>(r * r));
      at["x" + std::to_string(j)] = A.back();
    }
    i64 S = 0;
    while (S == 0) S = c.uniform(-15, 15);
    const BigInt T = BigInt(static_cast<long>(S)) * static_cast<long>(c.uniform(-15, 15));
    const BigInt R = static_cast<long>(c.uniform(1, 15));
    const auto m = gadgets::M_witness(A, S, T, R);
    const auto z = gadgets::H_witness(A, S, T);
    bool ok = m && z && *m >= 0;
    if (ok) {
      Assignment am = at;
      am["w"] = S;
      am["x"] = T;
      am["y"] = R;
      am["z"] = *m;
      Assignment ah = at;
      ah["x"] = S;
      ah["y"] = T;
      ah["z"] = *z;
      ok = M[k - 1].eval(am) == 0 && H[k - 1].eval(ah) == 0;
    }
    c.sink.check(ok, {{"k", k}, {"S", S}, {"T", str(T)}, {"R", str(R)}});
  }
  // Violations in one conjunct: no zero below the root bound.
  const TermPoly M1 = M[0].expand();
  const TermPoly H1 = H[0].expand();
  for (i64 i = cases.lo; i <= cases.hi; ++i) {
    const i64 r = c.uniform(0, 4);
    BigInt A1 = r * r;
    i64 S = 0;
    while (S == 0) S = c.uniform(-4, 4);
    BigInt T = BigInt(static_cast<long>(S)) * static_cast<long>(c.uniform(-3, 3));
    BigInt R = static_cast<long>(c.uniform(1, 3));
    const i64 broken = c.uniform(0, 2);
    if (broken == 0) A1 += 1 + (r > 0 ? 2 * r - 1 : 1);  // strictly between squares
    if (broken == 1) {
      if (std::abs(S) == 1) S = 2;
      T = BigInt(static_cast<long>(S)) * static_cast<long>(c.uniform(-3, 3)) + 1;
    }
    if (broken == 2) R = -static_cast<long>(c.uniform(0, 3));
    Assignment am{{"x1", A1}, {"w", S}, {"x", T}, {"y", R}};
    Assignment ah{{"x1", A1}, {"x", S}, {"y", T}};
    bool ok = true;
    if (broken != 2) {
      ok = ok && !has_root_within(univariate(H1, "z", ah), gadgets::root_bound_H({A1}, S, T));
    }
    const BigInt bound = gadgets::root_bound_M({A1}, S, T, R);
    const auto coeffs = univariate(M1, "z", am);
    for (BigInt n = 0; n <= bound && ok; ++n) ok = horner(coeffs, n) != 0;
    c.sink.check(ok, {{"A1", str(A1)}, {"S", S}, {"T", str(T)}, {"R", str(R)}, {"broken", broken}});
  }
}

void small_gadgets(Context& c) {
  const Range m_r = c.range("m");
  for (i64 m = m_r.lo; m <= m_r.hi; ++m) {
    const BigInt M = m;
    bool ok = true;
    if (m >= 0) {
      const auto w = gadgets::nonneg_witness(M);
      ok = w.x * w.x + w.y * w.y + w.z * w.z + w.z == M;
    } else {
      try {
        gadgets::nonneg_witness(M);
        ok = false;
      } catch (const DomainError&) {
      }
    }
    if (m != 0) {
      const auto w = gadgets::nonzero_witness(M);
      ok = ok && (2 * w.x + 1) * (3 * w.y + 1) == M;
    } else {
      try {
        gadgets::nonzero_witness(M);
        ok = false;
      } catch (const DomainError&) {
      }
    }
    const auto x = gadgets::positivity_witness(M);
    if (m >= 0) {
      ok = ok && x && *x != 0 && is_square((3 * M - 1) * *x * *x + 1);
    } else {
      ok = ok && !x;
      for (long t = 1; t <= 50 && ok; ++t) ok = !is_square((3 * M - 1) * t * t + 1);
    }
    c.sink.check(ok, {{"m", m}});
  }
  const Range shift = c.range("putnam");
  for (i64 k = shift.lo; k <= shift.hi; ++k) {
    const TermPoly P = parse_poly("x - " + std::to_string(k), {"x"});
    const TermPoly Pbar = gadgets::putnam_transform(P, "x");
    std::set<i64> hits;
    for (long x = 0; x <= 50; ++x) {
      const BigInt v = Pbar.eval({{"x", x}});
      if (v >= 0) hits.insert(v.get_si());
    }
    const std::set<i64> expect = k <= 50 ? std::set<i64>{k} : std::set<i64>{};
    c.sink.check(hits == expect, {{"putnam_root", k}});
  }
}

// ---------------------------------------------------------------- reduction

void membership_coding(Context& c) {
  const Range a_r = c.range("a");
  const auto ctx = reducer::build_context(parse_poly("a - 2*z1", {"a", "z1"}), 2);
  for (i64 a = a_r.lo; a <= a_r.hi; ++a) {
    if (a % 2 == 0) {
      const auto enc = reducer::encode_membership(ctx, a, {a / 2});
      const auto z = reducer::decode_membership(ctx, a, enc.f, enc.g);
      const bool ok = z && (*z)[0] == a / 2 && (*z)[1] == 1 && is_square(enc.values.b);
      c.sink.check(ok, {{"a", a}, {"f", str(enc.f)}, {"g", str(enc.g)}});
      continue;
    }
    const BigInt modulus = BigInt(3) * (2 * a + 1);
    const unsigned long phi = euler_phi(modulus).get_ui();
    for (unsigned long n = 1; n <= 2; ++n) {
      const BigInt f = (pow_ui(2, 2 * n * phi) - 1) / modulus;
      const BigInt BB = ctx.beta * pow(pow_ui(2, 2 * n * phi), ctx.delta);
      for (long z1 = 0; z1 <= 3; ++z1) {
        for (long z2 = 0; z2 <= 3; ++z2) {
          const BigInt g = z1 * pow(BB, 3) + z2 * pow(BB, 9);
          const auto z = reducer::decode_membership(ctx, a, f, g);
          c.sink.check(!z, {{"a", a}, {"f", str(f)}, {"g", str(g)}});
        }
      }
    }
  }
}

void binomial_witness(Context& c) {
  const Range X_r = c.range("X");
  for (i64 X = X_r.lo; X <= X_r.hi; ++X) {
    const BigInt binom = direct_binomial(2 * X, X);
    std::vector<BigInt> divisors;
    for (long Y = 256; Y <= 1 << 16 && Y <= binom; ++Y) {
      if (mpz_divisible_ui_p(binom.get_mpz_t(), Y)) divisors.emplace_back(Y);
    }
    for (const auto& Y : divisors) {
      const auto w = reducer::derive_witness_bundle(2, 1, 1, 2, 1, X, Y, 200);
      const auto v = reducer::verify_witness_bundle(w);
      const bool ok = w.all_hold() && v.accepted && !v.unsound;
      c.sink.check(ok, {{"X", X}, {"Y", str(Y)}}, w.note);
    }
  }
}

// ---------------------------------------------------------------- polygonal

void polygonal_shifts(Context& c) {
  const Range x_r = c.range("x");
  for (i64 x = x_r.lo; x <= x_r.hi; ++x) {
    bool ok = true;
    for (auto kind : {polygonal::Kind::Triangular, polygonal::Kind::Pentagonal, polygonal::Kind::Octagonal}) {
      ok = ok && polygonal::shift_identity_check(kind, x);
    }
    ok = ok && x == polygonal::value(polygonal::Kind::Triangular, x) - polygonal::value(polygonal::Kind::Triangular, -x);
    ok = ok && x == polygonal::value(polygonal::Kind::Pentagonal, -x) - polygonal::value(polygonal::Kind::Pentagonal, x);
    c.sink.check(ok, {{"x", x}});
  }
}

void polygonal_sets(Context& c) {
  const Range b = c.range("bound");
  using polygonal::ShiftSet;
  for (auto which : {ShiftSet::Triangular, ShiftSet::Octagonal, ShiftSet::Pentagonal}) {
    c.sink.check(polygonal::set_equality_scan(which, b.hi), {{"set", static_cast<int>(which)}, {"bound", b.hi}});
  }
}

void polygonal_decompositions(Context& c) {
  const Range n_r = c.range("n");
  for (auto shape : polygonal::all_shapes()) {
    const bool difference = shape == polygonal::Shape::DiffSquares || shape == polygonal::Shape::DiffOctagonal;
    const bool odd_only = shape == polygonal::Shape::TwoSquaresPlusTwice ||
                          shape == polygonal::Shape::OctagonalTwoPlusTwice;
    for (i64 n = difference ? -n_r.hi : n_r.lo; n <= n_r.hi; ++n) {
      if (odd_only && (n <= 0 || n % 2 == 0)) continue;
      if (!difference && n < 0) continue;
      bool ok;
      std::string detail;
      try {
        const auto d = polygonal::decompose(n, shape);
        ok = polygonal::reconstruct(d) == n;
      } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
      }
      c.sink.check(ok, {{"shape", polygonal::shape_name(shape)}, {"n", n}}, detail);
    }
  }
}

struct Target {
  TargetInfo info;
  std::function<void(Context&)> run;
};

const std::vector<Target>& registry() {
  static const std::vector<Target> all{
      {{"kummer-carries", "carries of a + b in base p equal ord_p C(a+b, a)", {{"ab", {0, 200}}}}, kummer_carries},
      {{"legendre-digit-sum", "(p-1) ord_p(n!) = n - digit sum", {{"n", {0, 100000}}}}, legendre_digit_sum},
      {{"binomial-carry-divisibility", "digit-level divisibility of the structured binomial", {{"N", {1, 27}}}},
       binomial_carry_divisibility},
      {{"digit-mask", "mask decoding against brute-force window sums", {}}, digit_mask},
      {{"zero-by-carry", "polynomial zeros read off one carry test", {{"z", {0, 3}}}}, zero_by_carry},
      {{"lucas-identities", "recurrence, norm identity, Fibonacci cases, growth", {{"A", {-12, 12}}, {"n", {0, 40}}}},
       lucas_identities},
      {{"lucas-square-index", "square test agrees with membership in u_m(A, 1)", {{"A", {-8, 8}}, {"X", {-10000, 10000}}}},
       lucas_square_index},
      {{"power-sum-congruence", "power-sum congruence modulo U^2 - AUV + V^2", {{"cases", {1, 1000}}, {"B", {1, 12}}}},
       power_sum_congruence},
      {{"power-certificate", "only W = V^B passes the power certificate", {{"B", {1, 4}}, {"window", {-50, 50}}}},
       power_certificate},
      {{"combiner-J", "J_k has an integer zero iff every input is a square", {{"k", {1, 2}}, {"A", {-20, 40}}}},
       combiner_J},
      {{"combiner-witnesses", "closed-form M_k / H_k witnesses and violated instances", {{"cases", {1, 200}}}},
       combiner_witnesses},
      {{"small-gadgets", "nonnegativity, nonzero, positivity and range gadgets",
        {{"m", {-10000, 10000}}, {"putnam", {0, 60}}}},
       small_gadgets},
      {{"membership-coding", "digit coding of the even numbers, both directions", {{"a", {0, 12}}}},
       membership_coding},
      {{"binomial-witness", "witness bundles for Y | C(2X, X) and their verification", {{"X", {12, 12}}}},
       binomial_witness},
      {{"polygonal-shifts", "square shifts of polygonal numbers", {{"x", {-10000, 10000}}}}, polygonal_shifts},
      {{"polygonal-sets", "shifted polygonal sets equal the square classes", {{"bound", {1, 10000}}}}, polygonal_sets},
      {{"polygonal-decompositions", "every shape decomposes every valid n", {{"n", {0, 2000}}}},
       polygonal_decompositions},
  };
  return all;
}

}  // namespace

const std::vector<TargetInfo>& targets() {
  static const std::vector<TargetInfo> infos = [] {
    std::vector<TargetInfo> out;
    for (const auto& t : registry()) out.push_back(t.info);
    return out;
  }();
  return infos;
}

std::pair<std::string, Range> parse_range(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("range must look like key=lo..hi");
  const std::string key = text.substr(0, eq);
  const std::string rest = text.substr(eq + 1);
  Range r;
  try {
    const auto dots = rest.find("..");
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoll(rest);
    } else {
      r.lo = std::stoll(rest.substr(0, dots));
      r.hi = std::stoll(rest.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw DomainError("bad range '" + text + "'");
  }
  if (r.lo > r.hi) throw DomainError("empty range '" + text + "'");
  return {key, r};
}

Report run_campaign(const CampaignSpec& spec) {
  const Target* target = nullptr;
  for (const auto& t : registry()) {
    if (t.info.name == spec.target) target = &t;
  }
  if (!target) throw DomainError("unknown target '" + spec.target + "'");
  std::map<std::string, Range> ranges = target->info.defaults;
  for (const auto& [key, r] : spec.ranges) {
    if (!ranges.count(key)) throw DomainError("target '" + spec.target + "' has no range '" + key + "'");
    ranges[key] = r;
  }

  Report report;
  report.target = spec.target;
  json rj = json::object();
  for (const auto& [key, r] : ranges) rj[key] = {r.lo, r.hi};
  report.parameters = {{"ranges", rj}, {"oracle", spec.oracle}, {"seed", spec.seed}, {"budget", spec.budget}};

  const auto start = std::chrono::steady_clock::now();
  Sink sink(report, spec.budget);
  Context ctx{spec, ranges, sink, std::mt19937_64(spec.seed)};
  target->run(ctx);
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json to_json(const Report& r) {
  return {{"target", r.target},
          {"parameters", r.parameters},
          {"cases", r.cases},
          {"passed", r.passed},
          {"failed", r.failed},
          {"counterexamples", r.counterexamples},
          {"wall_time_s", r.wall_time_s},
          {"version", r.version}};
}

}  // namespace dioph::campaign
