#include "dioph/reducer.hpp"

#include "dioph/lucas.hpp"
#include "dioph/padic.hpp"

namespace dioph::reducer {

namespace {

constexpr std::size_t kSearchBitCap = 4'000'000;

unsigned long small_exponent(const BigInt& v, const char* what) {
  if (v <= 0 || !v.fits_ulong_p()) throw DomainError(std::string(what) + " must be a small positive integer");
  return v.get_ui();
}

std::int64_t lucas_index(const BigInt& v, const char* what) {
  if (v < 0 || v > BigInt(1) << 40) throw BudgetExceeded(std::string(what) + " is too large a Lucas index");
  return static_cast<std::int64_t>(v.get_si());
}

bool divides_binomial(const BigInt& Y, const BigInt& n, const BigInt& k) {
  if (Y == 0) return false;
  for (const auto& [q, e] : factor_trial(abs(BigInt(Y)))) {
    if (!q.fits_ulong_p()) throw BudgetExceeded("prime factor too large");
    if (padic::ord_binom(n, k, q.get_ui()) < e) return false;
  }
  return true;
}

std::pair<BigInt, BigInt> pell_power(const BigInt& y, const BigInt& z, const BigInt& d, std::uint64_t n) {
  BigInt ry = 1, rz = 0, by = y, bz = z;
  for (; n; n >>= 1) {
    if (n & 1) {
      BigInt ny = ry * by + d * rz * bz;
      rz = ry * bz + rz * by;
      ry = ny;
    }
    if (n > 1) {
      BigInt sy = by * by + d * bz * bz;
      bz = 2 * by * bz;
      by = sy;
    }
  }
  return {ry, rz};
}

}  // namespace

bool WitnessBundle::all_hold() const {
  for (const auto& c : checks) {
    if (!c.holds) return false;
  }
  return !checks.empty();
}

const Conjunct* WitnessBundle::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const Conjunct* Verification::find(const std::string& name) const {
  for (const auto* list : {&hypotheses, &conjuncts}) {
    for (const auto& c : *list) {
      if (c.name == name) return &c;
    }
  }
  return nullptr;
}

WitnessBundle recompute_derived(const WitnessBundle& in) {
  WitnessBundle w = in;
  const unsigned long P = small_exponent(w.P, "P");
  const unsigned long Q = small_exponent(w.Q, "Q");
  w.L = w.l * w.Y;
  w.U = w.P * w.L * w.X;
  w.V = 4 * w.g * w.w * w.Y;
  w.W = w.b * w.w;
  w.K = w.Q * w.X + 1 + w.k * (pow(w.U, P) * w.V - 2);
  w.A = pow(w.U, Q) * (w.V + 1);
  w.B = w.P * w.X + 1;
  w.C = w.B + (w.A - 2) * w.h;
  w.D = (w.A * w.A - 4) * w.C * w.C + 4;
  w.E.reset();
  w.F.reset();
  w.G.reset();
  w.H.reset();
  w.I.reset();
  if (w.x) {
    w.E = w.C * w.C * w.D * *w.x;
    w.F = 4 * (w.A * w.A - 4) * *w.E * *w.E + 1;
    w.G = 1 + w.C * w.D * *w.F - 2 * (w.A + 2) * (w.A - 2) * (w.A - 2) * *w.E * *w.E;
    if (w.y) {
      w.H = w.C + w.B * *w.F + (2 * *w.y - 1) * w.C * *w.F;
      w.I = (*w.G * *w.G - 1) * *w.H * *w.H + 1;
    }
  }
  return w;
}

std::optional<std::pair<BigInt, BigInt>> search_square_witness(const BigInt& A, const BigInt& B,
                                                               const BigInt& C, std::uint64_t effort) {
  if (A <= 2 || B <= 0) return std::nullopt;
  const BigInt D = (A * A - 4) * C * C + 4;
  const BigInt delta = A * A - 4;
  const lucas::PellSolution base = lucas::pell_fundamental(delta);
  const BigInt q = 2 * C * C * D;
  std::uint64_t spent = 0;

  auto try_candidate = [&](std::uint64_t n) -> std::optional<std::pair<BigInt, BigInt>> {
    const BigInt z = pell_power(base.y, base.z, delta, n).second;
    const BigInt E = z / 2;
    const BigInt x = E / (C * C * D);
    const BigInt F = 4 * delta * E * E + 1;
    const BigInt G = 1 + C * D * F - 2 * (A + 2) * (A - 2) * (A - 2) * E * E;
    if (G < 2) return std::nullopt;
    const BigInt m = 2 * C * F;
    const BigInt target = mod_floor(C + B * F + C * F, m);
    // H runs through u_j(2G, 1): H_{j+1} = 2G H_j - H_{j-1}.
    BigInt h0 = 0, h1 = 1;
    const BigInt twoG = mod_floor(2 * G, m);
    for (std::uint64_t j = 1; spent < effort; ++j, ++spent) {
      if (h1 == target) {
        if (j * bit_length(G) > kSearchBitCap) break;
        const BigInt H = lucas::u(lucas::LucasParams(2 * G, 1), static_cast<std::int64_t>(j));
        const BigInt odd = (H - C - B * F) / (C * F);
        if (odd > 0) {
          const BigInt y = (odd + 1) / 2;
          const BigInt I = (G * G - 1) * H * H + 1;
          if (is_square(D * F * I)) return std::make_pair(x, y);
        }
      }
      BigInt next = mod_floor(twoG * h1 - h0, m);
      h0 = h1;
      h1 = next;
    }
    return std::nullopt;
  };

  BigInt ym = mod_floor(base.y, q), zm = mod_floor(base.z, q);
  BigInt cy = ym, cz = zm;
  for (std::uint64_t n = 1; spent < effort; ++n, ++spent) {
    if (cz == 0) {
      if (n * (bit_length(base.y) + bit_length(base.z)) > kSearchBitCap) return std::nullopt;
      if (auto found = try_candidate(n)) return found;
    }
    BigInt ny = mod_floor(cy * ym + delta * cz * zm, q);
    cz = mod_floor(cy * zm + cz * ym, q);
    cy = ny;
  }
  return std::nullopt;
}

WitnessBundle derive_witness_bundle(unsigned long p, const BigInt& b, const BigInt& g, const BigInt& P,
                                    const BigInt& Q, const BigInt& X, const BigInt& Y, std::uint64_t effort) {
  padic::require_prime(p);
  if (b < 1 || !exact_log(b, BigInt(p))) throw DomainError("b must be a power of p");
  if (g < 1) throw DomainError("g must be positive");
  if (!(P > Q && Q > 0)) throw DomainError("need P > Q > 0");
  if (X < b || Y < b) throw DomainError("need X, Y >= b");
  if (!divides_binomial(Y, P * X, Q * X)) throw DomainError("Y does not divide C(PX, QX)");
  const unsigned long Pu = small_exponent(P, "P");
  const unsigned long Qu = small_exponent(Q, "Q");

  WitnessBundle w;
  w.p = p;
  w.b = b;
  w.g = g;
  w.P = P;
  w.Q = Q;
  w.X = X;
  w.Y = Y;

  const BigInt Bv = P * X + 1;
  const std::int64_t Bi = lucas_index(Bv, "B");
  const BigInt pB = pow_ui(p, static_cast<unsigned long>(Bi));
  w.w = pB / b;

  const BigInt V = 4 * g * w.w * Y;
  const unsigned long PX = small_exponent(P * X, "PX");
  const unsigned long QX = small_exponent(Q * X, "QX");
  w.rho = Rational(pow(V + 1, PX), pow(V, QX));
  w.rho.canonicalize();
  const BigInt Lfloor = floor_div(w.rho.get_num(), w.rho.get_den());
  if (!mpz_divisible_p(Lfloor.get_mpz_t(), Y.get_mpz_t())) throw InvariantViolation("Y does not divide floor(rho)");
  w.l = Lfloor / Y;

  const BigInt L = w.l * Y;
  const BigInt U = P * L * X;
  const BigInt A = pow(U, Qu) * (V + 1);
  const BigInt C = lucas::u(lucas::LucasParams(A, 1), Bi);
  if (!mpz_divisible_p(BigInt(C - Bv).get_mpz_t(), BigInt(A - 2).get_mpz_t())) {
    throw InvariantViolation("A - 2 does not divide C - B");
  }
  w.h = (C - Bv) / (A - 2);

  const BigInt UPV = pow(U, Pu) * V;
  const auto [K, K_root] = lucas::uv(lucas::LucasParams(UPV, 1), static_cast<std::int64_t>(QX + 1));
  w.K_root = K_root;
  w.k = (K - Q * X - 1) / (UPV - 2);
  w.D_root = lucas::v(lucas::LucasParams(A, 1), Bi);

  if (auto xy = search_square_witness(A, Bv, C, effort)) {
    w.x = xy->first;
    w.y = xy->second;
  } else {
    w.note = "witness search exhausted";
  }
  w = recompute_derived(w);
  if (w.C != C || w.K != K) throw InvariantViolation("recomputed C or K disagrees");

  const BigInt Kc = (pow(w.U, 2 * Pu) * w.V * w.V - 4) * w.K * w.K + 4;
  const BigInt modulus = p * w.A - p * p - 1;
  const BigInt residue = (p * p - 1) * w.W * w.C - p * (w.W * w.W - 1);
  const BigInt gap = w.C - w.K * w.L;
  w.checks = {
      {"bw = p^B", w.W == pB},
      {"K square", Kc == w.K_root * w.K_root},
      {"congruence", modulus != 0 && mpz_divisible_p(residue.get_mpz_t(), modulus.get_mpz_t())},
      {"16g^2(C - KL)^2 < K^2", 16 * g * g * gap * gap < w.K * w.K},
      {"D = v_B(A,1)^2", w.D == w.D_root * w.D_root},
      {"|C/K - L| < 1/(4g)", 4 * g * abs(gap) < abs(w.K)},
      {"h, k, l, w >= b", w.h >= b && w.k >= b && w.l >= b && w.w >= b},
  };
  if (w.x && w.y) w.checks.push_back({"DFI square", is_square(w.D * *w.F * *w.I)});
  return w;
}

Verification verify_witness_bundle(const WitnessBundle& bundle) {
  Verification out;
  const BigInt& b = bundle.b;
  const BigInt& Y = bundle.Y;
  const unsigned long p = bundle.p;
  const bool has_xy = bundle.x && bundle.y;

  out.hypotheses = {
      {"P > Q > 0", bundle.P > bundle.Q && bundle.Q > 0},
      {"X >= 3b", bundle.X >= 3 * b},
      {"Y >= max(b, p^(4P))", bundle.P.fits_ulong_p() && Y >= b && Y >= pow_ui(p, 4 * bundle.P.get_ui())},
      {has_xy ? "lx != 0" : "l != 0", bundle.l != 0 && (!bundle.x || *bundle.x != 0)},
  };
  bool hyp = true;
  for (const auto& h : out.hypotheses) hyp = hyp && h.holds;
  if (!hyp) return out;

  const WitnessBundle fresh = recompute_derived(bundle);
  const bool consistent = fresh.L == bundle.L && fresh.U == bundle.U && fresh.V == bundle.V &&
                          fresh.W == bundle.W && fresh.K == bundle.K && fresh.A == bundle.A &&
                          fresh.B == bundle.B && fresh.C == bundle.C && fresh.D == bundle.D &&
                          fresh.F == bundle.F && fresh.I == bundle.I;
  const BigInt& A = bundle.A;
  const BigInt& K = bundle.K;
  const unsigned long P = bundle.P.get_ui();
  const BigInt Kc = (pow(bundle.U, 2 * P) * bundle.V * bundle.V - 4) * K * K + 4;
  const BigInt modulus = p * A - p * p - 1;
  const BigInt residue = (p * p - 1) * bundle.W * bundle.C - p * (bundle.W * bundle.W - 1);
  const BigInt gap = bundle.C - K * bundle.L;

  out.conjuncts.push_back({"definitions consistent", consistent});
  if (has_xy) {
    out.conjuncts.push_back({"DFI square", bundle.F && bundle.I && is_square(bundle.D * *bundle.F * *bundle.I)});
  } else {
    const bool small = bundle.B > 0 && bundle.B <= BigInt(1) << 40;
    out.conjuncts.push_back(
        {"C = u_B(A,1)", small && bundle.C == lucas::u(lucas::LucasParams(A, 1), bundle.B.get_si())});
  }
  out.conjuncts.push_back({"K square", is_square(Kc)});
  out.conjuncts.push_back({"congruence", modulus != 0 && mpz_divisible_p(residue.get_mpz_t(), modulus.get_mpz_t())});
  out.conjuncts.push_back({"4(C - KL)^2 < K^2", 4 * gap * gap < K * K});

  out.premises_hold = true;
  for (const auto& c : out.conjuncts) out.premises_hold = out.premises_hold && c.holds;
  if (!out.premises_hold) return out;

  out.b_is_power = b >= 1 && exact_log(b, BigInt(p)).has_value();
  out.divides = divides_binomial(Y, bundle.P * bundle.X, bundle.Q * bundle.X);
  out.accepted = out.b_is_power && out.divides;
  out.unsound = !out.accepted;
  return out;
}

BigInt o_value(const BigInt& f, const BigInt& l, const BigInt& x, const BigInt& g, const BigInt& CC,
               const BigInt& K, const BigInt& C, const BigInt& L) {
  const BigInt C3 = CC * CC * CC;
  const BigInt gap = C - K * L;
  return f * f * l * l * x * x * (8 * C3 * g * K * K - g * g * (32 * gap * gap * C3 + g * g * K * K));
}

bool o_inequality_holds(const WitnessBundle& bundle, const BigInt& CC) {
  if (CC <= 0 || bundle.g <= 0) throw DomainError("CC and g must be positive");
  const Rational gap(bundle.C - bundle.K * bundle.L);
  const Rational g(bundle.g);
  const Rational K2(bundle.K * bundle.K);
  const Rational lhs = 4 * gap * gap + g * g * K2 / Rational(8 * CC * CC * CC);
  return lhs < K2 / g;
}

}  // namespace dioph::reducer
