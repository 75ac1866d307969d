#include "dioph/reducer.hpp"

#include "dioph/coding.hpp"
#include "dioph/gadgets.hpp"

#include <algorithm>

namespace dioph::reducer {

namespace {

struct Pipeline {
  PolyDag dag;
  NodeId b, DFI, Kc, S, T, O;
};

std::uint64_t power_of(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

// sum_{i <= last} x^i by Horner.
NodeId geometric_node(PolyDag& d, NodeId x, std::uint64_t last) {
  NodeId acc = d.constant(1);
  for (std::uint64_t i = 0; i < last; ++i) acc = d.add(d.mul(acc, x), d.constant(1));
  return acc;
}

Pipeline build_pipeline(const ReductionContext& ctx) {
  Pipeline out;
  PolyDag& d = out.dag;
  const unsigned long p = ctx.p;
  const std::uint64_t delta = ctx.delta;
  const std::uint64_t nn = ctx.n_nu();
  const std::uint64_t nt = ctx.n_top();
  auto c = [&](const BigInt& v) { return d.constant(v); };
  auto one = c(1);

  const NodeId a = d.var("a"), f = d.var("f"), g = d.var("g"), h = d.var("h"), k = d.var("k"),
               l = d.var("l"), w = d.var("w"), x = d.var("x"), y = d.var("y");

  const NodeId af = d.mul(d.add(d.scale(p, a), one), f);
  const NodeId b = d.add(one, d.scale(BigInt(p * p - 1), af));
  const NodeId BB = d.scale(ctx.beta, d.pow(b, delta));

  NodeId M = c(0);
  for (std::uint64_t j = nn + 1; j-- > 0;) {
    bool window = false;
    for (std::uint64_t i = 1; i <= ctx.nu; ++i) window = window || power_of(delta + 1, i) == j;
    M = d.add(d.mul(M, BB), d.sub(BB, window ? b : one));
  }
  const std::uint64_t e = 2 * nt + 2;
  const NodeId N0 = d.pow(BB, nn + 1);
  const NodeId N = d.scale(BigInt(p * p), d.pow(BB, e));
  const NodeId CC = d.mul(b, d.pow(BB, nn));

  std::vector<NodeId> dterms;
  for (const auto& [mono, coef] : ctx.poly.terms()) {
    std::uint64_t shift = 0;
    for (std::size_t s = 0; s < mono.size(); ++s) shift += mono[s] * power_of(delta + 1, s);
    dterms.push_back(d.scale(coding::multinomial_weight(mono, delta) * coef, d.pow(BB, nt - shift)));
  }
  const NodeId Dn = d.add(dterms);
  const NodeId J = d.add(d.scale(p, d.mul(d.pow(d.add({one, d.mul(a, BB), g}), delta), Dn)),
                         d.mul(BB, geometric_node(d, BB, (2 * delta + 1) * nn)));
  const NodeId T = d.add(M, d.mul({d.sub(BB, c(p)), d.pow(BB, nt), N0}));
  const NodeId S = d.add(g, d.mul(J, N0));
  const NodeId R = d.add({d.mul(d.add({S, T, one}), N), T, one});

  NodeId quotient;
  if (p == 2) {
    quotient = d.sub(N, one);
  } else {
    const BigInt head = BigInt(p * p) * pow(ctx.beta, e);
    const NodeId tail = d.mul({c(head * (p + 1)), af, geometric_node(d, b, delta * e - 1)});
    quotient = d.add(c((head - 1) / (p - 1)), tail);
  }
  const NodeId X = d.mul(quotient, R);
  const NodeId Y = d.pow(N, 2);

  const NodeId L = d.mul(l, Y);
  const NodeId U = d.mul({c(p), L, X});
  const NodeId V = d.mul({c(4), g, w, Y});
  const NodeId W = d.mul(b, w);
  const NodeId UpV = d.mul(d.pow(U, p), V);
  const NodeId K = d.add({X, one, d.mul(k, d.sub(UpV, c(2)))});
  const NodeId A = d.mul(U, d.add(V, one));
  const NodeId B = d.add(d.scale(p, X), one);
  const NodeId C = d.add(B, d.mul(d.sub(A, c(2)), h));
  const NodeId A2m4 = d.sub(d.pow(A, 2), c(4));
  const NodeId D = d.add(d.mul(A2m4, d.pow(C, 2)), c(4));
  const NodeId E = d.mul({d.pow(C, 2), D, x});
  const NodeId E2 = d.pow(E, 2);
  const NodeId F = d.add(d.mul({c(4), A2m4, E2}), one);
  const NodeId G = d.sub(d.add(one, d.mul({C, D, F})),
                         d.mul({c(2), d.add(A, c(2)), d.pow(d.sub(A, c(2)), 2), E2}));
  const NodeId H = d.add({C, d.mul(B, F), d.mul({d.sub(d.scale(2, y), one), C, F})});
  const NodeId I = d.add(d.mul(d.sub(d.pow(G, 2), one), d.pow(H, 2)), one);

  out.b = b;
  out.DFI = d.mul({D, F, I});
  out.Kc = d.add(d.mul(d.sub(d.mul(d.pow(U, 2 * p), d.pow(V, 2)), c(4)), d.pow(K, 2)), c(4));
  out.S = d.sub(d.scale(p, A), c(BigInt(p * p + 1)));
  out.T = d.sub(d.mul({c(p * p - 1), W, C}), d.scale(p, d.sub(d.pow(W, 2), one)));

  const NodeId C3 = d.pow(CC, 3);
  const NodeId K2 = d.pow(K, 2);
  const NodeId gap2 = d.pow(d.sub(C, d.mul(K, L)), 2);
  const NodeId inner = d.sub(d.mul({c(8), C3, g, K2}),
                             d.mul(d.pow(g, 2), d.add(d.mul({c(32), gap2, C3}), d.mul(d.pow(g, 2), K2))));
  out.O = d.mul({d.pow(f, 2), d.pow(l, 2), d.pow(x, 2), inner});
  return out;
}

Assembly finish(PolyDag dag, NodeId root) {
  Assembly out;
  out.dag = std::move(dag);
  out.root = root;
  out.parameters = {"a"};
  out.variables = out.dag.free_variables(root);
  return out;
}

}  // namespace

Assembly assemble_nonneg_form(const ReductionContext& ctx) {
  Pipeline pl = build_pipeline(ctx);
  PolyDag& d = pl.dag;
  const auto gadget = gadgets::build_M(3);
  const NodeId body = d.import(gadget.dag, gadget.root);
  const NodeId root = d.subst(body, {{"x1", pl.b},
                                     {"x2", pl.DFI},
                                     {"x3", pl.Kc},
                                     {"w", pl.S},
                                     {"x", pl.T},
                                     {"y", pl.O},
                                     {"z", d.var("m")}});
  return finish(std::move(pl.dag), root);
}

Assembly assemble_nonzero_form(const ReductionContext& ctx) {
  Pipeline pl = build_pipeline(ctx);
  PolyDag& d = pl.dag;
  const NodeId z = d.var("z");
  const NodeId positivity =
      d.add(d.mul(d.sub(d.scale(3, pl.O), d.constant(4)), d.pow(z, 2)), d.constant(1));
  const auto gadget = gadgets::build_H(4);
  const NodeId body = d.import(gadget.dag, gadget.root);
  const NodeId root = d.subst(body, {{"x1", pl.b},
                                     {"x2", positivity},
                                     {"x3", pl.DFI},
                                     {"x4", pl.Kc},
                                     {"x", pl.S},
                                     {"y", pl.T},
                                     {"z", d.var("m")}});
  Assembly out = finish(std::move(pl.dag), root);
  out.positivity_term = positivity;
  return out;
}

Assembly to_squares_form(const Assembly& nonneg) {
  PolyDag d = nonneg.dag;
  const NodeId m3 = d.var("m3");
  const NodeId sum = d.add({d.pow(d.var("m1"), 2), d.pow(d.var("m2"), 2), d.pow(m3, 2), m3});
  const NodeId root = d.subst(nonneg.root, {{"m", sum}});
  return finish(std::move(d), root);
}

Assembly to_tung_form(const Assembly& nonzero) {
  PolyDag d = nonzero.dag;
  const NodeId product = d.mul(d.add(d.scale(2, d.var("z1")), d.constant(1)),
                               d.add(d.scale(3, d.var("z2")), d.constant(1)));
  const NodeId root = d.subst(nonzero.root, {{"z", product}});
  Assembly out = finish(std::move(d), root);
  out.positivity_term = nonzero.positivity_term;
  return out;
}

BigInt sign_product_value(const BigInt& t, const std::vector<BigInt>& y) {
  // Elements of Z[sqrt(y_1), ..., sqrt(y_k)] as coefficient vectors indexed by
  // subsets; the product over sign patterns is the tower of norms.
  const std::size_t k = y.size();
  const std::size_t n = std::size_t{1} << k;
  std::vector<BigInt> alpha(n, 0);
  alpha[0] = t;
  for (std::size_t j = 0; j < k; ++j) alpha[std::size_t{1} << j] = 1;

  auto multiply = [&](const std::vector<BigInt>& u, const std::vector<BigInt>& v) {
    std::vector<BigInt> r(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (u[s] == 0) continue;
      for (std::size_t q = 0; q < n; ++q) {
        if (v[q] == 0) continue;
        BigInt term = u[s] * v[q];
        const std::size_t both = s & q;
        for (std::size_t j = 0; j < k; ++j) {
          if (both >> j & 1) term *= y[j];
        }
        r[s ^ q] += term;
      }
    }
    return r;
  };

  for (std::size_t j = 0; j < k; ++j) {
    std::vector<BigInt> conj = alpha;
    for (std::size_t s = 0; s < n; ++s) {
      if (s >> j & 1) conj[s] = -conj[s];
    }
    alpha = multiply(alpha, conj);
    for (std::size_t s = 0; s < n; ++s) {
      if ((s >> j & 1) && alpha[s] != 0) throw InvariantViolation("norm kept an odd radical part");
    }
  }
  for (std::size_t s = 1; s < n; ++s) {
    if (alpha[s] != 0) throw InvariantViolation("sign product is not rational");
  }
  return alpha[0];
}

BigInt direct_eval(const ReductionContext& ctx, FormKind kind, const Assignment& at) {
  auto get = [&](const std::string& name) -> const BigInt& {
    auto it = at.find(name);
    if (it == at.end()) throw DomainError("missing value for variable '" + name + "'");
    return it->second;
  };
  const unsigned long p = ctx.p;
  const InstanceValues iv = instance_values(ctx, get("a"), get("f"), get("g"));

  WitnessBundle wb;
  wb.p = p;
  wb.b = iv.b;
  wb.g = iv.g;
  wb.P = p;
  wb.Q = 1;
  wb.X = iv.X;
  wb.Y = iv.Y;
  wb.h = get("h");
  wb.k = get("k");
  wb.l = get("l");
  wb.w = get("w");
  wb.x = get("x");
  wb.y = get("y");
  wb = recompute_derived(wb);

  const BigInt DFI = wb.D * *wb.F * *wb.I;
  const BigInt Kc = (pow(wb.U, 2 * p) * wb.V * wb.V - 4) * wb.K * wb.K + 4;
  const BigInt S = p * wb.A - p * p - 1;
  const BigInt T = (p * p - 1) * wb.W * wb.C - p * (wb.W * wb.W - 1);
  const BigInt O = o_value(iv.f, wb.l, *wb.x, iv.g, iv.CC, wb.K, wb.C, wb.L);

  if (kind == FormKind::Nonneg || kind == FormKind::Squares) {
    BigInt m;
    if (kind == FormKind::Nonneg) {
      m = get("m");
    } else {
      m = get("m1") * get("m1") + get("m2") * get("m2") + get("m3") * get("m3") + get("m3");
    }
    const std::vector<BigInt> inputs{iv.b, DFI, Kc};
    BigInt Xw = 1;
    for (const auto& v : inputs) Xw += v * v;
    const BigInt cw = S * S * (2 * O - 1);
    const BigInt t = T * T + S * S * m - cw * (T * T + pow(Xw, 3));
    std::vector<BigInt> rad;
    BigInt scale = 1;
    for (const auto& v : inputs) {
      rad.push_back(cw * cw * v * scale * scale);
      scale *= Xw;
    }
    return sign_product_value(t, rad);
  }

  BigInt z;
  if (kind == FormKind::Nonzero) {
    z = get("z");
  } else {
    z = (2 * get("z1") + 1) * (3 * get("z2") + 1);
  }
  const std::vector<BigInt> inputs{iv.b, (3 * O - 4) * z * z + 1, DFI, Kc};
  BigInt Xh = 1;
  for (const auto& v : inputs) Xh += v * v;
  const BigInt t = S * get("m") - T;
  std::vector<BigInt> rad;
  BigInt scale = 1;
  for (const auto& v : inputs) {
    rad.push_back(S * S * v * scale * scale);
    scale *= Xh;
  }
  return sign_product_value(t, rad);
}

}  // namespace dioph::reducer
