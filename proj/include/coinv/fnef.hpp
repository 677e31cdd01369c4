#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coinv/divisor_calc.hpp"
#include "coinv/fusion_ring.hpp"
#include "coinv/voa_models.hpp"

namespace coinv {

/// F-curve on M_{0,n}: a partition of {1..n} into four nonempty blocks.
/// Blocks are kept ordered by their smallest point.
class FCurve {
 public:
  /// Throws InvalidParameters unless the blocks partition {1..n}.
  FCurve(int n, std::array<PointSet, 4> blocks);

  /// Blocks of consecutive points with the given sizes.
  static FCurve from_sizes(std::array<int, 4> sizes);

  int points() const { return n_; }
  const std::array<PointSet, 4>& blocks() const { return blocks_; }
  std::array<int, 4> sizes() const;
  std::vector<std::vector<int>> block_lists() const;

  /// Lexicographic order on the sorted block lists.
  friend bool operator<(const FCurve& x, const FCurve& y) { return x.block_lists() < y.block_lists(); }
  friend bool operator==(const FCurve&, const FCurve&) = default;

 private:
  int n_;
  std::array<PointSet, 4> blocks_;
};

/// "{1},{2,3},{4},{5,6}"
std::string to_string(const FCurve& f);

/// Stirling number S(n, 4): the number of F-curves on M_{0,n}.
BigInt fcurve_count(int n);

/// Visits every F-curve on M_{0,n} once.
void for_each_fcurve(int n, const std::function<void(const FCurve&)>& visit);

/// D . F = sum over singleton blocks {i} of psi_i
///       + sum over the three pairings {a,b}|{c,d} of coeff(N_a u N_b)
///       - sum over blocks with |N_a| >= 2 of coeff(N_a).
/// Throws DimensionError when D is not a genus-0 class on the same n.
Rational intersect_fcurve(const DivisorClass& d, const FCurve& f);

/// Same rule for a symmetric class, which depends only on block sizes.
Rational intersect_sizes(const SymmetricDivisor& s, std::array<int, 4> sizes);

enum class NefStatus { FNef, NotFNef };

struct FCurveValue {
  FCurve curve;
  Rational value;
};

struct NefCertificate {
  NefStatus status = NefStatus::FNef;
  /// Only set for S_n-invariant classes with n <= 24.
  bool nef_concluded = false;
  /// Present iff status == NotFNef; the lexicographically least curve among
  /// those attaining the minimum.
  std::optional<FCurveValue> witness;
  /// Minimum over all curves checked, with the least minimizing curve.
  std::optional<FCurveValue> minimum;
  BigInt curves_checked = 0;
};

constexpr int kMaxExhaustivePoints = 15;
constexpr int kMaxSymmetricNefPoints = 24;

/// Intersects D with every F-curve (n <= 15), split across `workers`
/// threads by the block containing point 1. Never concludes nefness.
/// Throws EnumerationTooLarge beyond 15 points.
NefCertificate fnef_check(const DivisorClass& d, unsigned workers = 1);

/// Checks one curve per size composition a <= b <= c <= d. Concludes nef
/// when F-nef and n <= 24.
NefCertificate fnef_check_symmetric(const SymmetricDivisor& s);

/// Necessary-condition summary for a sheaf of coinvariants. Verdicts are
/// obstructions or the holomorphic line-bundle deduction; global generation
/// is otherwise never claimed.
struct GgReport {
  int genus = 0;
  BigInt rank = 0;
  IntegralityResult integrality;
  Rational central_charge;
  std::optional<DivisorClass> c1;
  std::optional<Rational> degree;  // n = 4, g = 0
  std::optional<NefCertificate> fnef;
  bool negative_central_charge = false;
  bool obstruction = false;
  std::vector<std::string> verdicts;
};

GgReport gg_report(const FusionModel& model, int g, const Insertion& ins, unsigned workers = 1);

}  // namespace coinv
