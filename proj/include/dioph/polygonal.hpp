#pragma once

// Generalized polygonal numbers (negative arguments allowed), their square
// shifts, and decompositions into sums and differences of them.

#include "dioph/bigint.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dioph::polygonal {

enum class Kind { Triangular, Pentagonal, Octagonal, Square };

const char* kind_name(Kind kind);

/// T_x = x(x+1)/2, p5(x) = x(3x-1)/2, p8(x) = x(3x-2), x^2.
BigInt value(Kind kind, const BigInt& x);

/// 8 T_x + 1 = (2x+1)^2, 3 p8(x) + 1 = (3x-1)^2, 24 p5(x) + 1 = (6x-1)^2.
bool shift_identity_check(Kind kind, const BigInt& x);

/// Membership in the value set over all integer arguments; returns an argument.
std::optional<BigInt> argument_of(Kind kind, const BigInt& v);

enum class Shape {
  DiffSquares,        // 2^d (x^2 - y^2)
  DiffOctagonal,      // 2^d (p8(x) - p8(y))
  TwoSquaresPlusTwice,  // x^2 + y^2 + 2 z^2
  OctagonalTwoPlusTwice,  // p8(x) + p8(y) + 2 p8(z)
  ThreeTriangular,
  ThreePentagonal,
  FourOctagonal,
};

const char* shape_name(Shape shape);
Shape parse_shape(const std::string& name);
std::vector<Shape> all_shapes();

struct Decomposition {
  Shape shape = Shape::DiffSquares;
  BigInt n;
  unsigned delta = 0;  // difference shapes only
  std::vector<BigInt> args;
};

/// Difference shapes take any integer and are constructive. The sum shapes
/// search, largest summand first; n must be nonnegative and below 2^56.
/// Throws DomainError when the input violates the shape's hypothesis or no
/// representation exists.
Decomposition decompose(const BigInt& n, Shape shape);

/// The integer a decomposition stands for.
BigInt reconstruct(const Decomposition& d);

enum class ShiftSet { Triangular, Octagonal, Pentagonal };

/// {8t+1 : t in Tri} = odd squares, {3q+1 : q in Octa} = squares prime to 3,
/// {24r+1 : r in Pen} = squares prime to 6, compared on every value the
/// arguments |x| <= bound reach completely.
bool set_equality_scan(ShiftSet which, std::int64_t bound);

}  // namespace dioph::polygonal
