#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coinv/fusion_ring.hpp"
#include "coinv/rational.hpp"

namespace coinv {

/// Ising model (c = 1/2): labels "1" (vacuum, alias "v"), "e" (weight 1/2)
/// and "s" (weight 1/16). All labels self-dual.
FusionModel ising_model();

/// Rank-1 even lattice Ze with q(e,e) = m. Label j is the coset (j/m)e,
/// fusion is addition mod m and conf_dim(j) = min(j, m-j)^2 / (2m).
/// Throws InvalidLattice unless m is even and >= 2.
FusionModel lattice_model(long m);

/// Conformal weight of label j in lattice_model(m).
Rational lattice_conf_dim(long m, long j);

/// Single-label model with central charge c. Adds an advisory when c is not
/// a positive multiple of 8.
FusionModel holomorphic_model(const Rational& c);

struct MinimalSeriesParams {
  long p = 0;
  long q = 0;
};

struct MinimalSeriesWeight {
  long m = 0;
  long n = 0;
  Rational h;
};

struct MinimalSeriesSpectrum {
  Rational central_charge;
  /// One representative per class (m,n) ~ (p-m, q-n), ordered by (m, n).
  std::vector<MinimalSeriesWeight> weights;
};

/// Kac-table weights h = ((np - mq)^2 - (p-q)^2) / 4pq and c = 1 - 6(p-q)^2/pq.
/// Fusion constants are not generated. Throws InvalidParameters unless
/// gcd(p, q) = 1 and p, q >= 2.
MinimalSeriesSpectrum minimal_series_spectrum(MinimalSeriesParams params);

struct IntegralityResult {
  Rational sum;
  bool integral = false;
};

/// Sum of the insertions' conformal dimensions and whether it is an integer.
IntegralityResult integrality_check(const FusionModel& model, const Insertion& ins);

}  // namespace coinv
