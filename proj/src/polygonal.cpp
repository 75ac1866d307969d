#include "dioph/polygonal.hpp"

#include <cmath>
#include <set>

namespace dioph::polygonal {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

constexpr i64 kSearchLimit = i64{1} << 56;

i64 isqrt64(i64 n) {
  i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square64(i64 n) {
  if (n < 0) return false;
  const i64 r = isqrt64(n);
  return r * r == n;
}

i128 value128(Kind kind, i128 x) {
  switch (kind) {
    case Kind::Triangular: return x * (x + 1) / 2;
    case Kind::Pentagonal: return x * (3 * x - 1) / 2;
    case Kind::Octagonal: return x * (3 * x - 2);
    case Kind::Square: return x * x;
  }
  return 0;
}

// Values in increasing order: the i-th argument is 0, 1, -1, 2, -2, ... for
// pentagonal and octagonal, and 0, 1, 2, ... otherwise.
i64 argument_at(Kind kind, i64 i) {
  if (kind == Kind::Triangular || kind == Kind::Square) return i;
  return i % 2 == 1 ? (i + 1) / 2 : -(i / 2);
}

i128 value_at(Kind kind, i64 i) { return value128(kind, argument_at(kind, i)); }

// Largest i with value_at(i) <= n, n >= 0.
i64 top_index(Kind kind, i64 n) {
  i64 lo = 0, hi = 1;
  while (value_at(kind, hi) <= n) hi *= 2;
  while (hi - lo > 1) {
    const i64 mid = lo + (hi - lo) / 2;
    (value_at(kind, mid) <= n ? lo : hi) = mid;
  }
  return lo;
}

std::optional<i64> argument_of64(Kind kind, i64 v) {
  if (v < 0) return std::nullopt;
  i64 x = 0;
  switch (kind) {
    case Kind::Triangular: {
      if (!is_square64(8 * v + 1)) return std::nullopt;
      x = (isqrt64(8 * v + 1) - 1) / 2;
      break;
    }
    case Kind::Pentagonal: {
      if (!is_square64(24 * v + 1)) return std::nullopt;
      const i64 s = isqrt64(24 * v + 1);
      if (s % 2 == 0 || s % 3 == 0) return std::nullopt;
      x = (s + 1) % 6 == 0 ? (s + 1) / 6 : (1 - s) / 6;
      break;
    }
    case Kind::Octagonal: {
      if (!is_square64(3 * v + 1)) return std::nullopt;
      const i64 s = isqrt64(3 * v + 1);
      if (s % 3 == 0) return std::nullopt;
      x = (s + 1) % 3 == 0 ? (s + 1) / 3 : (1 - s) / 3;
      break;
    }
    case Kind::Square: {
      if (!is_square64(v)) return std::nullopt;
      x = isqrt64(v);
      break;
    }
  }
  if (value128(kind, x) != v) return std::nullopt;
  return x;
}

i64 search_input(const BigInt& n, Shape shape) {
  if (n < 0) throw DomainError(std::string(shape_name(shape)) + " needs n >= 0");
  if (n >= kSearchLimit) throw BudgetExceeded("decomposition search is limited to n < 2^56");
  return n.get_si();
}

// n as a sum of `count` values of `kind`, largest first.
bool sum_search(Kind kind, i64 n, int count, i64 cap, std::vector<i64>& out) {
  if (count == 1) {
    if (n > cap) return false;
    auto x = argument_of64(kind, n);
    if (!x) return false;
    out.push_back(*x);
    return true;
  }
  for (i64 i = top_index(kind, std::min(n, cap)); i >= 0; --i) {
    const i64 v = static_cast<i64>(value_at(kind, i));
    if (v * count < n) break;
    out.push_back(argument_at(kind, i));
    if (sum_search(kind, n - v, count - 1, v, out)) return true;
    out.pop_back();
  }
  return false;
}

// n = s(x) + s(y) + 2 s(z).
bool two_plus_twice(Kind kind, i64 n, std::vector<i64>& out) {
  for (i64 k = top_index(kind, n / 2); k >= 0; --k) {
    const i64 q = static_cast<i64>(value_at(kind, k));
    const i64 r = n - 2 * q;
    out.clear();
    if (sum_search(kind, r, 2, r, out)) {
      out.push_back(argument_at(kind, k));
      return true;
    }
  }
  return false;
}

std::vector<BigInt> to_big(const std::vector<i64>& v) {
  std::vector<BigInt> r;
  for (i64 x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

struct ShapeInfo {
  Shape shape;
  const char* name;
};

constexpr ShapeInfo kShapes[] = {
    {Shape::DiffSquares, "diff-squares"},
    {Shape::DiffOctagonal, "diff-octagonal"},
    {Shape::TwoSquaresPlusTwice, "two-sq-plus-2sq"},
    {Shape::OctagonalTwoPlusTwice, "octa-two-plus-2"},
    {Shape::ThreeTriangular, "three-triangular"},
    {Shape::ThreePentagonal, "three-pentagonal"},
    {Shape::FourOctagonal, "four-octagonal"},
};

}  // namespace

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::Triangular: return "triangular";
    case Kind::Pentagonal: return "pentagonal";
    case Kind::Octagonal: return "octagonal";
    case Kind::Square: return "square";
  }
  return "?";
}

BigInt value(Kind kind, const BigInt& x) {
  switch (kind) {
    case Kind::Triangular: return x * (x + 1) / 2;
    case Kind::Pentagonal: return x * (3 * x - 1) / 2;
    case Kind::Octagonal: return x * (3 * x - 2);
    case Kind::Square: return x * x;
  }
  return 0;
}

bool shift_identity_check(Kind kind, const BigInt& x) {
  const BigInt v = value(kind, x);
  switch (kind) {
    case Kind::Triangular: return 8 * v + 1 == (2 * x + 1) * (2 * x + 1);
    case Kind::Pentagonal: return 24 * v + 1 == (6 * x - 1) * (6 * x - 1);
    case Kind::Octagonal: return 3 * v + 1 == (3 * x - 1) * (3 * x - 1);
    case Kind::Square: return is_square(v);
  }
  return false;
}

std::optional<BigInt> argument_of(Kind kind, const BigInt& v) {
  if (v < 0) return std::nullopt;
  BigInt shifted;
  unsigned long scale = 1;
  switch (kind) {
    case Kind::Triangular: scale = 8; break;
    case Kind::Pentagonal: scale = 24; break;
    case Kind::Octagonal: scale = 3; break;
    case Kind::Square: scale = 0; break;
  }
  shifted = scale == 0 ? v : BigInt(scale * v + 1);
  if (!is_square(shifted)) return std::nullopt;
  const BigInt s = isqrt(shifted);
  BigInt x;
  switch (kind) {
    case Kind::Triangular: x = (s - 1) / 2; break;
    case Kind::Pentagonal: x = mod_floor(s + 1, 6) == 0 ? BigInt((s + 1) / 6) : BigInt((1 - s) / 6); break;
    case Kind::Octagonal: x = mod_floor(s + 1, 3) == 0 ? BigInt((s + 1) / 3) : BigInt((1 - s) / 3); break;
    case Kind::Square: x = s; break;
  }
  if (value(kind, x) != v) return std::nullopt;
  return x;
}

const char* shape_name(Shape shape) {
  for (const auto& info : kShapes) {
    if (info.shape == shape) return info.name;
  }
  return "?";
}

Shape parse_shape(const std::string& name) {
  for (const auto& info : kShapes) {
    if (name == info.name) return info.shape;
  }
  throw DomainError("unknown shape '" + name + "'");
}

std::vector<Shape> all_shapes() {
  std::vector<Shape> out;
  for (const auto& info : kShapes) out.push_back(info.shape);
  return out;
}

Decomposition decompose(const BigInt& n, Shape shape) {
  Decomposition d;
  d.shape = shape;
  d.n = n;
  switch (shape) {
    case Shape::DiffSquares: {
      if (n == 0) {
        d.args = {0, 0};
        break;
      }
      BigInt m = n;
      unsigned long k = mpz_scan1(m.get_mpz_t(), 0);
      mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), k);
      d.delta = k % 2;
      const BigInt scale = pow_ui(2, (k - d.delta) / 2);
      d.args = {scale * ((m + 1) / 2), scale * ((m - 1) / 2)};
      break;
    }
    case Shape::DiffOctagonal: {
      if (mod_floor(n, 4) == 0) {
        const BigInt x = n / 4;
        d.args = {-x, x};
      } else if (mod_floor(n, 2) == 1) {
        const BigInt x = floor_div(n - 1, 2);
        d.args = {x + 1, -x};
      } else {
        const BigInt x = n / 2;
        d.delta = 1;
        d.args = {(x + 1) / 2, (1 - x) / 2};
      }
      break;
    }
    case Shape::TwoSquaresPlusTwice:
    case Shape::OctagonalTwoPlusTwice: {
      const i64 v = search_input(n, shape);
      const Kind kind = shape == Shape::TwoSquaresPlusTwice ? Kind::Square : Kind::Octagonal;
      std::vector<i64> out;
      if (!two_plus_twice(kind, v, out)) {
        throw DomainError(std::string("no ") + shape_name(shape) + " representation of " + to_string(n) +
                          (v % 2 == 1 ? "" : " (only positive odd n are guaranteed)"));
      }
      d.args = to_big(out);
      break;
    }
    case Shape::ThreeTriangular:
    case Shape::ThreePentagonal:
    case Shape::FourOctagonal: {
      const i64 v = search_input(n, shape);
      const Kind kind = shape == Shape::ThreeTriangular   ? Kind::Triangular
                        : shape == Shape::ThreePentagonal ? Kind::Pentagonal
                                                          : Kind::Octagonal;
      std::vector<i64> out;
      if (!sum_search(kind, v, shape == Shape::FourOctagonal ? 4 : 3, v, out)) {
        throw InvariantViolation(std::string("no ") + shape_name(shape) + " representation of " + to_string(n));
      }
      d.args = to_big(out);
      break;
    }
  }
  if (reconstruct(d) != n) throw InvariantViolation("decomposition does not reconstruct n");
  return d;
}

BigInt reconstruct(const Decomposition& d) {
  const auto& a = d.args;
  auto need = [&](std::size_t count) {
    if (a.size() != count) throw DomainError("wrong number of arguments for the shape");
  };
  const BigInt twice = d.delta ? 2 : 1;
  switch (d.shape) {
    case Shape::DiffSquares: need(2); return twice * (a[0] * a[0] - a[1] * a[1]);
    case Shape::DiffOctagonal:
      need(2);
      return twice * (value(Kind::Octagonal, a[0]) - value(Kind::Octagonal, a[1]));
    case Shape::TwoSquaresPlusTwice: need(3); return a[0] * a[0] + a[1] * a[1] + 2 * a[2] * a[2];
    case Shape::OctagonalTwoPlusTwice:
      need(3);
      return value(Kind::Octagonal, a[0]) + value(Kind::Octagonal, a[1]) + 2 * value(Kind::Octagonal, a[2]);
    case Shape::ThreeTriangular:
    case Shape::ThreePentagonal:
    case Shape::FourOctagonal: {
      const Kind kind = d.shape == Shape::ThreeTriangular   ? Kind::Triangular
                        : d.shape == Shape::ThreePentagonal ? Kind::Pentagonal
                                                            : Kind::Octagonal;
      need(d.shape == Shape::FourOctagonal ? 4 : 3);
      BigInt s = 0;
      for (const auto& x : a) s += value(kind, x);
      return s;
    }
  }
  return 0;
}

bool set_equality_scan(ShiftSet which, std::int64_t bound) {
  if (bound < 1) throw DomainError("bound must be positive");
  if (bound > (i64{1} << 20)) throw BudgetExceeded("scan bound too large");
  Kind kind = Kind::Triangular;
  i64 scale = 8;
  switch (which) {
    case ShiftSet::Triangular: kind = Kind::Triangular; scale = 8; break;
    case ShiftSet::Octagonal: kind = Kind::Octagonal; scale = 3; break;
    case ShiftSet::Pentagonal: kind = Kind::Pentagonal; scale = 24; break;
  }
  // Every value up to `cap` is attained with |x| <= bound.
  const i64 cap = static_cast<i64>(std::min(value128(kind, bound + 1), value128(kind, -bound - 1))) - 1;
  std::set<i64> shifted;
  for (i64 x = -bound; x <= bound; ++x) {
    const i64 v = static_cast<i64>(value128(kind, x));
    if (v <= cap) shifted.insert(scale * v + 1);
  }
  std::set<i64> squares;
  const i64 top = scale * cap + 1;
  for (i64 s = 1; s * s <= top; ++s) {
    const bool keep = which == ShiftSet::Triangular   ? s % 2 == 1
                      : which == ShiftSet::Octagonal  ? s % 3 != 0
                                                      : s % 2 != 0 && s % 3 != 0;
    if (keep) squares.insert(s * s);
  }
  return shifted == squares;
}

}  // namespace dioph::polygonal
