#pragma once

// Relation-combining polynomials J_k, M_k, H_k and small one-relation gadgets
// (nonnegativity, nonzero-ness, positivity, Putnam's range trick).
//
// J_k(x1..xk, x)         = prod_eps (x + sum_j eps_j sqrt(x_j) X^(j-1))
// M_k(x1..xk, w, x, y, z) = prod_eps (x^2 + w^2 z - w^2 (2y-1)(x^2 + X^k + sum_j eps_j sqrt(x_j) X^(j-1)))
// H_k(x1..xk, x, y, z)    = x^(2^k) J_k(x1..xk, z - y/x)
// with X = 1 + x1^2 + ... + xk^2. All three are built by substituting into the
// expanded core prod_eps (t + sum_j eps_j sqrt(y_j)).

#include "dioph/poly_dag.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dioph::gadgets {

struct GadgetInstance {
  PolyDag dag;
  NodeId root = 0;
  unsigned k = 0;
  std::vector<std::string> inputs;        // x1..xk
  std::vector<std::string> parameters;    // M: w, x, y; H: x, y
  std::vector<std::string> witness_vars;  // J: x; M, H: z
  std::string statement;

  BigInt eval(const Assignment& at) const { return dag.eval(root, at); }
  TermPoly expand(std::size_t budget = kDefaultTermBudget) const { return dag.expand(root, budget); }
};

GadgetInstance build_J(unsigned k);
GadgetInstance build_M(unsigned k);
GadgetInstance build_H(unsigned k);

/// X = 1 + sum A_j^2.
BigInt weight_base(const std::vector<BigInt>& A);
/// sum_j ceil(sqrt|A_j|) X^(j-1): every integer zero x of J_k(A, x) has |x| below it.
BigInt root_bound_J(const std::vector<BigInt>& A);
/// Bound on |z| for integer zeros of H_k(A, S, T, z), S != 0.
BigInt root_bound_H(const std::vector<BigInt>& A, const BigInt& S, const BigInt& T);
/// Bound on |z| for integer zeros of M_k(A, S, T, R, z), S != 0.
BigInt root_bound_M(const std::vector<BigInt>& A, const BigInt& S, const BigInt& T, const BigInt& R);

/// x = -sum sqrt(A_j) X^(j-1) when every A_j is a square.
std::optional<BigInt> J_witness(const std::vector<BigInt>& A);
/// m = (2R-1)(T^2 + X^k + sum sqrt(A_j) X^(j-1)) - T^2/S^2 when every A_j is a
/// square, S != 0, S | T and R > 0. Then M_k(A, S, T, R, m) = 0 and m >= 0.
std::optional<BigInt> M_witness(const std::vector<BigInt>& A, const BigInt& S, const BigInt& T,
                                const BigInt& R);
/// z = T/S + sum sqrt(A_j) X^(j-1) when every A_j is a square and S | T, S != 0.
std::optional<BigInt> H_witness(const std::vector<BigInt>& A, const BigInt& S, const BigInt& T);

struct NonnegWitness {
  BigInt x, y, z;
};
/// m = x^2 + y^2 + z^2 + z, from 4m + 1 = (2x)^2 + (2y)^2 + (2z+1)^2.
NonnegWitness nonneg_witness(const BigInt& m);

struct NonzeroWitness {
  BigInt x, y;
};
/// m = (2x + 1)(3y + 1).
NonzeroWitness nonzero_witness(const BigInt& m);

/// Nonzero x with (3m - 1) x^2 + 1 a square; none exists for m < 0.
std::optional<BigInt> positivity_witness(const BigInt& m);

/// (z0 + 1)(1 - P^2) - 1, where z0 is the designated variable of P.
TermPoly putnam_transform(const TermPoly& P, const std::string& z0);

}  // namespace dioph::gadgets
