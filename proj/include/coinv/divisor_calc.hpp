#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coinv/fusion_ring.hpp"
#include "coinv/rational.hpp"

namespace coinv {

/// Set of marked points; bit (i - 1) stands for point i.
using PointSet = std::uint64_t;

constexpr int kMaxPoints = 62;

inline PointSet all_points(int n) { return n == 0 ? 0 : (~PointSet{0} >> (64 - n)); }
inline bool contains_point(PointSet s, int i) { return (s >> (i - 1)) & 1u; }
inline int point_count(PointSet s) { return __builtin_popcountll(s); }

/// "{1,3,4}"
std::string point_set_string(PointSet s);

/// Boundary divisor delta_{i:I}: genus i on the side carrying the points I.
struct BoundaryKey {
  int genus = 0;
  PointSet points = 0;
  friend auto operator<=>(const BoundaryKey&, const BoundaryKey&) = default;
};

/// Rational class in Pic(M_{g,n}) (x) Q written in the basis
/// lambda, psi_1..psi_n, delta_irr, delta_{i:I}.
///
/// Boundary keys are stored canonically: the side containing marked point 1,
/// or for n = 0 the side of smaller genus. In genus 0 the lambda and
/// delta_irr coefficients are identically zero.
class DivisorClass {
 public:
  /// Throws UnsupportedBase when 2g - 2 + n <= 0, InvalidParameters when n is
  /// out of range.
  DivisorClass(int g, int n);

  int genus() const { return g_; }
  int points() const { return n_; }

  const Rational& lambda() const { return lambda_; }
  const Rational& delta_irr() const { return delta_irr_; }
  /// Marked points are 1-based.
  const Rational& psi(int i) const { return psi_.at(i - 1); }
  const std::map<BoundaryKey, Rational>& boundary() const { return boundary_; }

  void set_lambda(const Rational& v);
  void set_delta_irr(const Rational& v);
  void set_psi(int i, const Rational& v);
  /// Accepts either representative of the divisor. Zero values erase.
  void set_boundary(int genus_part, PointSet pts, const Rational& v);

  /// True when (i, I) and its complement are both stable.
  bool is_boundary(int genus_part, PointSet pts) const;
  BoundaryKey canonical(int genus_part, PointSet pts) const;

  /// Coefficient of delta_{i:I}; 0 when (i, I) is not a boundary divisor.
  Rational boundary_coeff(int genus_part, PointSet pts) const;
  /// Genus-0 shorthand.
  Rational boundary_coeff(PointSet pts) const { return boundary_coeff(0, pts); }

  /// Every canonical boundary key of M_{g,n}, in increasing order.
  std::vector<BoundaryKey> boundary_keys() const;

  /// Nonzero terms keyed "lambda", "psi:i", "dirr", "d:i:{I}", in that order.
  std::vector<std::pair<std::string, Rational>> terms() const;

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

 private:
  int g_;
  int n_;
  Rational lambda_;
  std::vector<Rational> psi_;
  Rational delta_irr_;
  std::map<BoundaryKey, Rational> boundary_;
};

/// First Chern class of the sheaf of coinvariants:
///   rank (c/2 lambda + sum_i a_i psi_i) - b_irr delta_irr - sum b_{i:I} delta_{i:I}
/// with b_irr = sum_W a_W rank_{g-1}(ins + W + W') and
///      b_{i:I} = sum_W a_W rank_i(ins_I + W) rank_{g-i}(ins_{I^c} + W').
/// Each b_{i:I} is also evaluated from the complementary side and the two
/// must agree. Throws UnsupportedBase for g = 0, n < 3.
DivisorClass chern_class(const FusionModel& model, int g, const Insertion& ins, unsigned workers = 1);
DivisorClass chern_class(RankCalculator& ranks, int g, const Insertion& ins, unsigned workers = 1);

/// Degree on M_{0,4}: every psi_i and every boundary point has degree 1.
/// Throws DimensionError unless (g, n) = (0, 4).
Rational degree_m04(const DivisorClass& d);

/// S_n-invariant class on M_{0,n}: common psi coefficient and one boundary
/// coefficient per size k = 2..floor(n/2).
struct SymmetricDivisor {
  int n = 0;
  Rational psi_coeff;
  std::map<int, Rational> boundary_by_size;

  /// Coefficient of any delta_S with |S| = s (0 outside 2..n-2).
  Rational coeff_for_size(int s) const;
  friend bool operator==(const SymmetricDivisor&, const SymmetricDivisor&) = default;
};

struct AsymmetryWitness {
  std::string first;
  std::string second;
};

using SymmetrizeResult = std::variant<SymmetricDivisor, AsymmetryWitness>;

/// Compact form of a genus-0 class that is S_n-invariant, else the first pair
/// of basis terms that should agree and do not. Throws DimensionError for g > 0.
SymmetrizeResult symmetrize(const DivisorClass& d);

/// Expands a symmetric class into the full basis.
DivisorClass expand(const SymmetricDivisor& s);

}  // namespace coinv
