#include "coinv/zhu_series.hpp"

#include <map>

#include "coinv/error.hpp"

namespace coinv {

namespace {

// Integers t with (t + c)^2 <= bound, bound >= 0. Returns false when empty.
bool square_window(const Rational& c, const Rational& bound, BigInt& lo, BigInt& hi) {
  if (bound < 0) return false;
  BigInt s = sqrt(ceil(bound)) + 1;  // s >= sqrt(bound)
  lo = floor(-c - s);
  hi = ceil(-c + s);
  auto fits = [&](const BigInt& t) {
    Rational y = Rational(t) + c;
    return y * y <= bound;
  };
  while (lo <= hi && !fits(lo)) ++lo;
  while (hi >= lo && !fits(hi)) --hi;
  return lo <= hi;
}

}  // namespace

EvenLattice::EvenLattice(std::vector<std::vector<long>> gram) : gram_(std::move(gram)) {
  const std::size_t d = gram_.size();
  if (d == 0) throw InvalidLattice("lattice must have positive rank");
  for (const auto& row : gram_)
    if (row.size() != d) throw InvalidLattice("Gram matrix is not square");
  for (std::size_t i = 0; i < d; ++i) {
    if (gram_[i][i] % 2 != 0) throw InvalidLattice("Gram matrix diagonal must be even");
    for (std::size_t j = 0; j < i; ++j)
      if (gram_[i][j] != gram_[j][i]) throw InvalidLattice("Gram matrix is not symmetric");
  }

  lower_.assign(d, std::vector<Rational>(d, Rational(0)));
  diag_.assign(d, Rational(0));
  for (std::size_t j = 0; j < d; ++j) {
    Rational dj = gram_[j][j];
    for (std::size_t k = 0; k < j; ++k) dj -= lower_[j][k] * lower_[j][k] * diag_[k];
    if (dj <= 0) throw InvalidLattice("Gram matrix is not positive definite");
    diag_[j] = dj;
    lower_[j][j] = 1;
    for (std::size_t i = j + 1; i < d; ++i) {
      Rational v = gram_[i][j];
      for (std::size_t k = 0; k < j; ++k) v -= lower_[i][k] * lower_[j][k] * diag_[k];
      lower_[i][j] = v / dj;
    }
  }
}

EvenLattice EvenLattice::rank_one(long m) {
  if (m < 2 || m % 2 != 0) throw InvalidLattice("lattice pairing must be even and >= 2, got " + std::to_string(m));
  return EvenLattice(std::vector<std::vector<long>>{{m}});
}

Rational EvenLattice::norm(std::span<const Rational> x) const {
  if (x.size() != rank()) throw InvalidParameters("vector length does not match lattice rank");
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) s += x[i] * gram_[i][j] * x[j];
  return s / 2;
}

bool EvenLattice::in_dual(std::span<const Rational> x) const {
  if (x.size() != rank()) throw InvalidParameters("vector length does not match lattice rank");
  for (std::size_t j = 0; j < rank(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i) s += x[i] * gram_[i][j];
    if (!is_integer(s)) return false;
  }
  return true;
}

void EvenLattice::enumerate(std::span<const Rational> shift, const Rational& bound,
                            const std::function<void(const Rational&)>& visit) const {
  const std::size_t d = rank();
  if (shift.size() != d) throw InvalidParameters("coset length does not match lattice rank");
  if (bound < 0) return;
  std::vector<Rational> y(d);

  // q(y, y) = sum_i D_i z_i^2 with z_i = y_i + sum_{j>i} L_ji y_j.
  std::function<void(std::size_t, const Rational&)> descend = [&](std::size_t level, const Rational& used) {
    const std::size_t i = level - 1;
    Rational c = shift[i];
    for (std::size_t j = i + 1; j < d; ++j) c += lower_[j][i] * y[j];
    const Rational room = (bound - used) / diag_[i];
    BigInt lo, hi;
    if (!square_window(c, room, lo, hi)) return;
    for (BigInt t = lo; t <= hi; ++t) {
      y[i] = Rational(t) + shift[i];
      const Rational z = Rational(t) + c;
      const Rational next = used + diag_[i] * z * z;
      if (i == 0)
        visit(next);
      else
        descend(i, next);
    }
  };
  descend(d, Rational(0));
}

Coset lattice_coset(long m, long j) { return Coset{make_rational(j, m)}; }

std::vector<BigInt> partition_series(long n_max, long colors) {
  if (n_max < 0) return {};
  if (colors < 1) throw InvalidParameters("partition colors must be >= 1");
  std::vector<BigInt> p(static_cast<std::size_t>(n_max) + 1, BigInt(0));
  p[0] = 1;
  for (long k = 1; k <= n_max; ++k)
    for (long c = 0; c < colors; ++c)
      for (long i = k; i <= n_max; ++i) p[i] += p[i - k];
  return p;
}

BigInt partition_count(long n, long colors) {
  if (n < 0) return 0;
  return partition_series(n, colors).back();
}

namespace {

// Rank one: (m/2)(alpha + lambda)^2 = level  <=>  (alpha + lambda)^2 = 2 level / m.
BigInt rank_one_shell(long m, const Rational& lambda, const Rational& level) {
  if (level < 0) return 0;
  const Rational target = 2 * level / m;
  const BigInt& num = target.get_num();
  const BigInt& den = target.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return 0;
  const Rational r(BigInt(sqrt(num)), BigInt(sqrt(den)));
  BigInt count = 0;
  if (is_integer(r - lambda)) ++count;
  if (r != 0 && is_integer(-r - lambda)) ++count;
  return count;
}

}  // namespace

BigInt shell_count(const ShellQuery& query) {
  if (query.level < 0) throw InvalidParameters("shell level must be nonnegative");
  if (query.coset.size() != query.lattice.rank()) throw InvalidParameters("coset length does not match lattice rank");
  if (query.lattice.rank() == 1) return rank_one_shell(query.lattice.gram(0, 0), query.coset[0], query.level);
  BigInt count = 0;
  const Rational target = 2 * query.level;
  query.lattice.enumerate(query.coset, target, [&](const Rational& q2) {
    if (q2 == target) ++count;
  });
  return count;
}

Rational conformal_weight(const EvenLattice& lattice, const Coset& coset) {
  if (coset.size() != lattice.rank()) throw InvalidParameters("coset length does not match lattice rank");
  // The representative with coordinates in [0, 1) bounds the minimum.
  Coset reduced(coset.size());
  for (std::size_t i = 0; i < coset.size(); ++i) reduced[i] = coset[i] - Rational(floor(coset[i]));
  const Rational bound = 2 * lattice.norm(reduced);
  Rational best = bound;
  lattice.enumerate(coset, bound, [&](const Rational& q2) {
    if (q2 < best) best = q2;
  });
  return best / 2;
}

namespace {

void require_dual(const EvenLattice& lattice, const Coset& coset) {
  if (coset.size() != lattice.rank()) throw InvalidParameters("coset length does not match lattice rank");
  if (!lattice.in_dual(coset)) throw InvalidParameters("coset is not in the dual lattice");
}

}  // namespace

BigInt lowest_weight_dim(const EvenLattice& lattice, const Coset& coset) {
  require_dual(lattice, coset);
  const Rational a = conformal_weight(lattice, coset);
  const long top = floor(a).get_si();
  const auto partitions = partition_series(top, static_cast<long>(lattice.rank()));
  BigInt dim = 0;
  for (long n = 0; n <= top; ++n)
    dim += shell_count({lattice, coset, a - n}) * partitions[n];
  return dim;
}

std::vector<BigInt> theta_coefficients(const EvenLattice& lattice, const Coset& coset, long n_max) {
  if (n_max < 0) throw InvalidParameters("n_max must be nonnegative");
  const Rational a = conformal_weight(lattice, coset);
  std::vector<BigInt> theta(static_cast<std::size_t>(n_max) + 1, BigInt(0));
  lattice.enumerate(coset, 2 * (a + n_max), [&](const Rational& q2) {
    const Rational k = q2 / 2 - a;
    if (is_integer(k)) ++theta[k.get_num().get_ui()];
  });
  return theta;
}

GradedSeries graded_dims(const EvenLattice& lattice, const Coset& coset, long n_max) {
  require_dual(lattice, coset);
  GradedSeries out;
  out.base_weight = conformal_weight(lattice, coset);
  const auto theta = theta_coefficients(lattice, coset, n_max);
  const auto partitions = partition_series(n_max, static_cast<long>(lattice.rank()));
  out.coeffs.assign(theta.size(), BigInt(0));
  for (std::size_t n = 0; n < theta.size(); ++n)
    for (std::size_t k = 0; k <= n; ++k) out.coeffs[n] += theta[k] * partitions[n - k];
  return out;
}

}  // namespace coinv
