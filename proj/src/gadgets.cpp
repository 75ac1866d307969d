#include "dioph/gadgets.hpp"

#include "dioph/lucas.hpp"
#include "dioph/radical.hpp"

#include <array>
#include <mutex>

namespace dioph::gadgets {

namespace {

const TermPoly& core(unsigned k) {
  if (k == 0 || k > 4) throw DomainError("k must be in 1..4");
  static std::array<TermPoly, 5> cores;
  static std::array<std::once_flag, 5> once;
  std::call_once(once[k], [k] { cores[k] = sign_product_core(k); });
  return cores[k];
}

struct Frame {
  GadgetInstance g;
  NodeId X = 0;
  std::vector<NodeId> x;
};

Frame start(unsigned k) {
  Frame f;
  f.g.k = k;
  std::vector<NodeId> squares{f.g.dag.constant(1)};
  for (unsigned j = 1; j <= k; ++j) {
    f.g.inputs.push_back("x" + std::to_string(j));
    f.x.push_back(f.g.dag.var(f.g.inputs.back()));
    squares.push_back(f.g.dag.pow(f.x.back(), 2));
  }
  f.X = f.g.dag.add(squares);
  return f;
}

// Binds the core to t and y_j = scale * x_j * X^(2(j-1)).
void finish(Frame& f, NodeId t, NodeId scale) {
  auto& dag = f.g.dag;
  std::vector<std::pair<std::string, NodeId>> bindings{{"t", t}};
  for (unsigned j = 1; j <= f.g.k; ++j) {
    bindings.emplace_back("y" + std::to_string(j),
                          dag.mul({scale, f.x[j - 1], dag.pow(f.X, 2 * (j - 1))}));
  }
  f.g.root = dag.subst(dag.embed(core(f.g.k)), std::move(bindings));
}

struct Roots {
  BigInt X;
  BigInt weighted;  // sum sqrt(A_j) X^(j-1)
};

std::optional<Roots> square_roots(const std::vector<BigInt>& A) {
  if (A.empty() || A.size() > 4) throw DomainError("k must be in 1..4");
  Roots r{weight_base(A), 0};
  BigInt scale = 1;
  for (const auto& a : A) {
    if (!is_square(a)) return std::nullopt;
    r.weighted += isqrt(a) * scale;
    scale *= r.X;
  }
  return r;
}

BigInt ceil_sqrt(const BigInt& n) {
  BigInt r = isqrt(n);
  return r * r == n ? r : BigInt(r + 1);
}

BigInt ceil_div_abs(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return abs(q) + (r != 0 ? 1 : 0);
}

}  // namespace

GadgetInstance build_J(unsigned k) {
  Frame f = start(k);
  f.g.witness_vars = {"x"};
  f.g.statement = "A_1..A_k all squares <=> exists x: J_k(A, x) = 0";
  finish(f, f.g.dag.var("x"), f.g.dag.constant(1));
  return std::move(f.g);
}

GadgetInstance build_M(unsigned k) {
  Frame f = start(k);
  auto& dag = f.g.dag;
  f.g.parameters = {"w", "x", "y"};
  f.g.witness_vars = {"z"};
  f.g.statement = "A_1..A_k all squares, S | T, R > 0 <=> exists n >= 0: M_k(A, S, T, R, n) = 0 (S != 0)";
  const NodeId w2 = dag.pow(dag.var("w"), 2);
  const NodeId x2 = dag.pow(dag.var("x"), 2);
  const NodeId c = dag.mul(w2, dag.sub(dag.scale(2, dag.var("y")), dag.constant(1)));
  const NodeId t = dag.add({x2, dag.mul(w2, dag.var("z")), dag.neg(dag.mul(c, dag.add(x2, dag.pow(f.X, k))))});
  finish(f, t, dag.pow(c, 2));
  return std::move(f.g);
}

GadgetInstance build_H(unsigned k) {
  Frame f = start(k);
  auto& dag = f.g.dag;
  f.g.parameters = {"x", "y"};
  f.g.witness_vars = {"z"};
  f.g.statement = "A_1..A_k all squares, S | T <=> exists z: H_k(A, S, T, z) = 0 (S != 0)";
  const NodeId t = dag.sub(dag.mul(dag.var("x"), dag.var("z")), dag.var("y"));
  finish(f, t, dag.pow(dag.var("x"), 2));
  return std::move(f.g);
}

BigInt weight_base(const std::vector<BigInt>& A) {
  BigInt X = 1;
  for (const auto& a : A) X += a * a;
  return X;
}

BigInt root_bound_J(const std::vector<BigInt>& A) {
  const BigInt X = weight_base(A);
  BigInt bound = 0;
  BigInt scale = 1;
  for (const auto& a : A) {
    bound += ceil_sqrt(abs(a)) * scale;
    scale *= X;
  }
  return bound;
}

BigInt root_bound_H(const std::vector<BigInt>& A, const BigInt& S, const BigInt& T) {
  if (S == 0) throw DomainError("S must be nonzero");
  return ceil_div_abs(T, S) + root_bound_J(A);
}

BigInt root_bound_M(const std::vector<BigInt>& A, const BigInt& S, const BigInt& T,
                    const BigInt& R) {
  if (S == 0) throw DomainError("S must be nonzero");
  const BigInt X = weight_base(A);
  return abs(2 * R - 1) * (T * T + pow(X, A.size()) + root_bound_J(A)) + T * T;
}

std::optional<BigInt> J_witness(const std::vector<BigInt>& A) {
  auto r = square_roots(A);
  if (!r) return std::nullopt;
  return BigInt(-r->weighted);
}

std::optional<BigInt> M_witness(const std::vector<BigInt>& A, const BigInt& S, const BigInt& T,
                                const BigInt& R) {
  if (S == 0) throw DomainError("S must be nonzero");
  auto r = square_roots(A);
  if (!r || R <= 0 || !mpz_divisible_p(T.get_mpz_t(), S.get_mpz_t())) return std::nullopt;
  const BigInt q = T / S;
  return BigInt((2 * R - 1) * (T * T + pow(r->X, A.size()) + r->weighted) - q * q);
}

std::optional<BigInt> H_witness(const std::vector<BigInt>& A, const BigInt& S, const BigInt& T) {
  if (S == 0) throw DomainError("S must be nonzero");
  auto r = square_roots(A);
  if (!r || !mpz_divisible_p(T.get_mpz_t(), S.get_mpz_t())) return std::nullopt;
  return BigInt(T / S + r->weighted);
}

NonnegWitness nonneg_witness(const BigInt& m) {
  if (m < 0) throw DomainError("x^2 + y^2 + z^2 + z is never negative");
  const BigInt n = 4 * m + 1;
  // Largest odd square first; the remainder must be 4(x^2 + y^2).
  BigInt odd = isqrt(n);
  if (mpz_even_p(odd.get_mpz_t())) --odd;
  for (; odd >= 1; odd -= 2) {
    const BigInt rest = n - odd * odd;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), 4)) continue;
    const BigInt r = rest / 4;
    for (BigInt x = isqrt(r); 2 * x * x >= r; --x) {
      const BigInt y2 = r - x * x;
      if (is_square(y2)) {
        NonnegWitness w{x, isqrt(y2), (odd - 1) / 2};
        if (w.x * w.x + w.y * w.y + w.z * w.z + w.z != m) throw InvariantViolation("nonneg witness");
        return w;
      }
    }
  }
  throw InvariantViolation("no three-square decomposition of 4m + 1");
}

NonzeroWitness nonzero_witness(const BigInt& m) {
  if (m == 0) throw DomainError("(2x + 1)(3y + 1) is never 0");
  auto accept = [&](const BigInt& d) -> std::optional<NonzeroWitness> {
    const BigInt q = m / d;
    if (mod_floor(q, 3) != 1) return std::nullopt;
    return NonzeroWitness{(d - 1) / 2, (q - 1) / 3};
  };
  const BigInt am = abs(m);
  constexpr unsigned long kScanLimit = 1'000'000;
  for (unsigned long d = 1; d <= kScanLimit && d <= am; d += 2) {
    if (!mpz_divisible_ui_p(am.get_mpz_t(), d)) continue;
    for (long sign : {1L, -1L}) {
      if (auto w = accept(BigInt(d) * sign)) return *w;
    }
  }
  // Odd part o of m: m / (+-o) = +-2^e, and one sign gives 1 mod 3.
  BigInt odd = am;
  const auto e = mpz_scan1(am.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(odd.get_mpz_t(), am.get_mpz_t(), e);
  for (long sign : {1L, -1L}) {
    if (auto w = accept(odd * sign)) return *w;
  }
  throw InvariantViolation("no odd divisor with cofactor 1 mod 3");
}

std::optional<BigInt> positivity_witness(const BigInt& m) {
  if (m < 0) return std::nullopt;
  if (m == 0) return BigInt(1);
  // 3m - 1 is 2 mod 3, never a square.
  return lucas::pell_fundamental(3 * m - 1).z;
}

TermPoly putnam_transform(const TermPoly& P, const std::string& z0) {
  const TermPoly one = TermPoly::constant(1);
  TermPoly z = TermPoly::variable(z0);
  TermPoly out = (z + one) * (one - P * P) - one;
  return out.over(merge_variables(merge_variables({z0}, P.variables()), out.variables()));
}

}  // namespace dioph::gadgets
