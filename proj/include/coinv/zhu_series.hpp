#pragma once

#include <functional>
#include <span>
#include <vector>

#include "coinv/rational.hpp"

namespace coinv {

/// Even positive-definite lattice, given by its integral Gram matrix
/// q(e_i, e_j). The norm used throughout is Q(x) = q(x, x) / 2.
class EvenLattice {
 public:
  /// Throws InvalidLattice unless the matrix is square, symmetric, has even
  /// diagonal and is positive definite (checked exactly).
  explicit EvenLattice(std::vector<std::vector<long>> gram);

  /// Ze with q(e, e) = m.
  static EvenLattice rank_one(long m);

  std::size_t rank() const { return gram_.size(); }
  long gram(std::size_t i, std::size_t j) const { return gram_[i][j]; }
  const std::vector<std::vector<long>>& gram() const { return gram_; }

  /// Q(x) = q(x, x) / 2.
  Rational norm(std::span<const Rational> x) const;

  /// True when q(x, e_i) is an integer for every basis vector, i.e. x lies in
  /// the dual lattice L'.
  bool in_dual(std::span<const Rational> x) const;

  /// Visits every vector y = alpha + shift (alpha in the lattice) with
  /// q(y, y) <= bound, passing q(y, y). Exact: uses an LDL^T factorization of
  /// the Gram matrix over the rationals, no square roots.
  void enumerate(std::span<const Rational> shift, const Rational& bound,
                 const std::function<void(const Rational&)>& visit) const;

 private:
  std::vector<std::vector<long>> gram_;
  // G = L D L^T, L unit lower triangular.
  std::vector<std::vector<Rational>> lower_;
  std::vector<Rational> diag_;
};

using Coset = std::vector<Rational>;

/// Coset (j/m) e of the rank-one lattice with q(e, e) = m.
Coset lattice_coset(long m, long j);

struct ShellQuery {
  EvenLattice lattice;
  Coset coset;
  Rational level;
};

/// Number of ways to write n as an ordered-colour partition: the coefficient
/// of q^n in prod_{k>=1} (1 - q^k)^{-colors}.
BigInt partition_count(long n, long colors = 1);

/// Coefficients 0..n_max of prod_{k>=1} (1 - q^k)^{-colors}.
std::vector<BigInt> partition_series(long n_max, long colors = 1);

/// |{alpha in L : Q(alpha + coset) = level}|. Levels that cannot occur give 0.
BigInt shell_count(const ShellQuery& query);

/// min over alpha of Q(alpha + coset); the conformal weight of V_{L+coset}.
Rational conformal_weight(const EvenLattice& lattice, const Coset& coset);

/// dim of the lowest weight space of V_{L+coset}:
///   sum_{N=0}^{floor(a)} |L^coset_{a-N}| P_d(N),  a = conformal_weight.
/// Levels a - N are negative for N > floor(a), so the sum is finite.
/// Throws InvalidParameters when the coset is not in the dual lattice.
BigInt lowest_weight_dim(const EvenLattice& lattice, const Coset& coset);

struct GradedSeries {
  Rational base_weight;
  /// coeffs[n] = dim W_{base_weight + n}.
  std::vector<BigInt> coeffs;
};

/// |L^coset_{a+k}| for k = 0..n_max, a = conformal_weight. One enumeration.
std::vector<BigInt> theta_coefficients(const EvenLattice& lattice, const Coset& coset, long n_max);

/// Graded dimensions of V_{L+coset} up to n_max: the theta series of the
/// coset times the rank-colored partition series. Throws InvalidParameters
/// when the coset is not in the dual lattice.
GradedSeries graded_dims(const EvenLattice& lattice, const Coset& coset, long n_max);

}  // namespace coinv
