#pragma once

// Reduction pipeline: digit-coded membership constants, the exponential
// witness bundle and its verifier, and assembly of the final equations as
// expression graphs.

#include "dioph/poly_dag.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dioph::reducer {

inline constexpr std::size_t kDefaultBitBudget = 10'000'000;

/// Constants derived from a representation P(z_0, ..., z_nu) of a set, with
/// z_0 the parameter. `poly` is normalized so that P(a, 0, ..., 0) > 0.
struct ReductionContext {
  unsigned long p = 2;
  TermPoly input;
  TermPoly poly;  // variables: parameter first, then z_1..z_nu
  std::string parameter;
  bool wrapped = false;
  std::uint64_t delta = 0;
  std::uint64_t nu = 0;
  BigInt L;
  unsigned long alpha = 0;
  BigInt beta;  // p^(alpha p), the least with beta > (nu+2)^delta delta! p L
  std::size_t max_bits = kDefaultBitBudget;

  std::uint64_t n_nu() const;   // (delta+1)^nu
  std::uint64_t n_top() const;  // (delta+1)^(nu+1)
  std::vector<std::string> unknowns() const;
};

/// Builds the context. Unless `assert_positive`, P is replaced by
/// P^2 + (z_{nu+1} - 1)^2; otherwise P(a, 0, ..., 0) > 0 is sampled for
/// a in [0, 100].
ReductionContext build_context(const TermPoly& P, unsigned long p, const std::string& parameter = "a",
                               bool assert_positive = false);

/// Per-instance integers. BB and CC are the script-B and script-C quantities.
struct InstanceValues {
  BigInt a, f, g;
  BigInt b, BB, M, N0, N1, N, CC, D, J, S, T, R, X, Y;
  std::uint64_t log_N = 0;  // N = p^log_N when b is a power of p
};

/// Exact values for any integers a, f, g (b, BB may be nonpositive; the
/// formulas stay integral). Throws BudgetExceeded past ctx.max_bits.
InstanceValues instance_values(const ReductionContext& ctx, const BigInt& a, const BigInt& f,
                               const BigInt& g);

/// p + 1 | X, X >= 3b, Y >= max(b, p^(4p)).
bool size_conditions_hold(const ReductionContext& ctx, const InstanceValues& v);

/// Y | C(pX, X) decided by carries: tau_p(X, (p-1)X) >= 2 log_p N.
bool carry_divisibility(const ReductionContext& ctx, const InstanceValues& v);

struct Encoding {
  BigInt f, g;
  unsigned long n = 0;  // b = p^(2 n phi((p^2-1)(ap+1)))
  InstanceValues values;
};

/// For a zero (a, z) of the normalized polynomial (z may omit the trailing
/// wrap variable), returns f >= Z with b a square power of p and
/// g = sum z_i BB^((delta+1)^i) in [b, CC), such that Y | C(pX, X).
Encoding encode_membership(const ReductionContext& ctx, const BigInt& a, std::vector<BigInt> z,
                           const BigInt& Z = 1);

/// Given f != 0, 0 <= g < 2 CC and b a square power of p: when Y | C(pX, X),
/// the window digits of g form a zero of the normalized polynomial and are
/// returned; otherwise nothing.
std::optional<std::vector<BigInt>> decode_membership(const ReductionContext& ctx, const BigInt& a,
                                                     const BigInt& f, const BigInt& g);

struct Conjunct {
  std::string name;
  bool holds = false;
};

/// Witnesses (f, h, k, l, m, w, x, y) and derived quantities of the
/// exponential-binomial representation with P > Q > 0.
struct WitnessBundle {
  unsigned long p = 2;
  BigInt b, g, P, Q, X, Y;

  std::optional<BigInt> f;
  BigInt h, k, l, w;
  std::optional<BigInt> x, y, m;

  BigInt L, U, V, W, K, A, B, C, D;
  std::optional<BigInt> E, F, G, H, I, O;
  Rational rho;

  BigInt K_root;  // v_{QX+1}(U^P V, 1)
  BigInt D_root;  // v_B(A, 1)
  std::vector<Conjunct> checks;
  std::string note;

  bool all_hold() const;
  const Conjunct* find(const std::string& name) const;
};

/// Recomputes L..I from the inputs and h, k, l, w, x, y (rho, roots and
/// checks are left alone).
WitnessBundle recompute_derived(const WitnessBundle& bundle);

/// Derives the bundle for p prime, b a power of p, g >= 1, P > Q > 0,
/// X, Y >= b and Y | C(PX, QX). x, y come from search_square_witness within
/// `effort`; when that fails they stay empty and `note` says so.
WitnessBundle derive_witness_bundle(unsigned long p, const BigInt& b, const BigInt& g, const BigInt& P,
                                    const BigInt& Q, const BigInt& X, const BigInt& Y,
                                    std::uint64_t effort = 2000);

/// Best-effort search for x, y > 0 with DFI a square, given C = u_B(A, 1).
std::optional<std::pair<BigInt, BigInt>> search_square_witness(const BigInt& A, const BigInt& B,
                                                               const BigInt& C, std::uint64_t effort);

struct Verification {
  std::vector<Conjunct> hypotheses;
  std::vector<Conjunct> conjuncts;
  bool premises_hold = false;
  bool b_is_power = false;
  bool divides = false;
  /// Premises hold and the conclusion was re-derived independently.
  bool accepted = false;
  /// Premises hold but the conclusion failed: a counterexample.
  bool unsound = false;

  const Conjunct* find(const std::string& name) const;
};

/// Checks the premises on the stored values, then re-derives b in p-powers
/// and Y | C(PX, QX) from Kummer carries. Without x, y the square condition
/// on DFI is replaced by C == u_B(A, 1).
Verification verify_witness_bundle(const WitnessBundle& bundle);

/// 4(C - KL)^2 + g^2 K^2 / (8 CC^3) < K^2 / g, exactly.
bool o_inequality_holds(const WitnessBundle& bundle, const BigInt& CC);

/// O = f^2 l^2 x^2 (8 CC^3 g K^2 - g^2 (32 (C - KL)^2 CC^3 + g^2 K^2)).
BigInt o_value(const BigInt& f, const BigInt& l, const BigInt& x, const BigInt& g, const BigInt& CC,
               const BigInt& K, const BigInt& C, const BigInt& L);

/// An assembled equation with its graph and named subterms.
struct Assembly {
  PolyDag dag;
  NodeId root = 0;
  std::vector<std::string> parameters;  // {"a"}
  std::vector<std::string> variables;   // all free variables, sorted
  NodeId positivity_term = 0;           // (3O - 4) z^2 + 1 in the nonzero form

  std::size_t unknown_count() const { return variables.size() - parameters.size(); }
  BigInt eval(const Assignment& at) const { return dag.eval(root, at); }
};

/// M_3(b, DFI, (U^(2p) V^2 - 4) K^2 + 4, pA - p^2 - 1, (p^2-1) W C - p(W^2 - 1), O, m)
/// with P = p, Q = 1, in a, f, g, h, k, l, m, w, x, y; zero with m >= 0 iff a is in the set.
Assembly assemble_nonneg_form(const ReductionContext& ctx);
/// H_4(b, (3O - 4) z^2 + 1, DFI, ..., m) in a, f, g, h, k, l, m, w, x, y, z; z != 0.
Assembly assemble_nonzero_form(const ReductionContext& ctx);
/// m -> m1^2 + m2^2 + m3^2 + m3 in the nonnegative form.
Assembly to_squares_form(const Assembly& nonneg);
/// z -> (2 z1 + 1)(3 z2 + 1) in the nonzero form.
Assembly to_tung_form(const Assembly& nonzero);

enum class FormKind { Nonneg, Nonzero, Squares, Tung };

/// Second evaluator: instance values, witness formulas and the sign product
/// computed numerically in a multiquadratic ring, sharing nothing with the
/// graph.
BigInt direct_eval(const ReductionContext& ctx, FormKind kind, const Assignment& at);

/// prod over eps in {+-1}^k of (t + sum eps_j sqrt(y_j)), numerically.
BigInt sign_product_value(const BigInt& t, const std::vector<BigInt>& y);

}  // namespace dioph::reducer
