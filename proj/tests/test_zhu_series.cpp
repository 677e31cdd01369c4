#include <doctest.h>

#include "coinv/error.hpp"
#include "coinv/zhu_series.hpp"
#include "oracles.hpp"

using namespace coinv;

namespace {

const std::vector<std::vector<long>> kA2{{2, -1}, {-1, 2}};
const std::vector<std::vector<long>> kD4{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};

}  // namespace

TEST_CASE("partition counts") {
  CHECK(partition_count(0) == 1);
  CHECK(partition_count(5) == 7);
  CHECK(partition_count(2, 2) == 5);
  CHECK(partition_count(-1) == 0);
  CHECK(partition_count(100) == BigInt("190569292"));
  CHECK_THROWS_AS(partition_series(3, 0), InvalidParameters);
}

TEST_CASE("partition series against brute force") {
  for (long n = 0; n <= 40; ++n) CHECK(partition_count(n) == oracle::brute_partitions(n));
  for (long colors = 2; colors <= 4; ++colors)
    for (long n = 0; n <= 12; ++n) CHECK(partition_count(n, colors) == oracle::brute_partitions(n, colors));
  const auto euler = oracle::pentagonal_partitions(200);
  CHECK(partition_series(200) == euler);
}

TEST_CASE("rank-one shells") {
  const auto l8 = EvenLattice::rank_one(8);
  CHECK(shell_count({l8, lattice_coset(8, 2), make_rational(1, 4)}) == 1);
  CHECK(shell_count({l8, lattice_coset(8, 0), Rational(0)}) == 1);
  CHECK(shell_count({l8, lattice_coset(8, 0), Rational(4)}) == 2);
  CHECK(shell_count({l8, lattice_coset(8, 0), Rational(3)}) == 0);
  CHECK(shell_count({l8, lattice_coset(8, 4), Rational(1)}) == 2);
  CHECK_THROWS_AS(shell_count({l8, lattice_coset(8, 0), Rational(-1)}), InvalidParameters);
}

TEST_CASE("shell counts agree with a box search") {
  for (long m = 2; m <= 12; m += 2) {
    const auto lat = EvenLattice::rank_one(m);
    for (long j = 0; j < m; ++j)
      for (long num = 0; num <= 8 * m; ++num) {
        const Rational level = make_rational(num, 2 * m);
        const auto coset = lattice_coset(m, j);
        CHECK(shell_count({lat, coset, level}) == oracle::box_shell(lat.gram(), coset, level, 12));
      }
  }
  const EvenLattice a2(kA2);
  const std::vector<Coset> cosets{{0, 0}, {make_rational(1, 3), make_rational(2, 3)}, {make_rational(1, 2), 0}};
  for (const auto& c : cosets)
    for (long num = 0; num <= 36; ++num) {
      const Rational level = make_rational(num, 6);
      CHECK(shell_count({a2, c, level}) == oracle::box_shell(kA2, c, level, 8));
    }
}

TEST_CASE("shell counts are symmetric under negation") {
  const EvenLattice d4(kD4);
  const Coset c{make_rational(1, 2), 0, make_rational(1, 2), 0};
  Coset neg(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
  for (long n = 0; n <= 6; ++n) {
    const Rational level = make_rational(n, 2);
    CHECK(shell_count({d4, c, level}) == shell_count({d4, neg, level}));
  }
  // D4 has 24 roots
  CHECK(shell_count({d4, Coset(4, Rational(0)), Rational(1)}) == 24);
}

TEST_CASE("rank-one path agrees with the general enumerator") {
  for (long m = 2; m <= 20; m += 2) {
    const auto lat = EvenLattice::rank_one(m);
    for (long j = 0; j < m; ++j) {
      const auto coset = lattice_coset(m, j);
      const Rational a = conformal_weight(lat, coset);
      for (long n = 0; n <= 5; ++n) {
        BigInt general = 0;
        lat.enumerate(coset, 2 * (a + n), [&](const Rational& q2) {
          if (q2 == 2 * (a + n)) ++general;
        });
        CHECK(shell_count({lat, coset, a + n}) == general);
      }
    }
  }
}

TEST_CASE("lowest_weight_dim") {
  const auto l8 = EvenLattice::rank_one(8);
  CHECK(lowest_weight_dim(l8, lattice_coset(8, 2)) == 1);
  CHECK(lowest_weight_dim(l8, lattice_coset(8, 0)) == 1);
  // weight 1/2 at m = 4, label 2: alpha + 1/2 = +-1/2 gives two states
  CHECK(lowest_weight_dim(EvenLattice::rank_one(4), lattice_coset(4, 2)) == 2);
  // m = 2, label 1 has weight 1/4 and the two vectors +-1/2
  CHECK(lowest_weight_dim(EvenLattice::rank_one(2), lattice_coset(2, 1)) == 2);
  const EvenLattice a2(kA2);
  CHECK(lowest_weight_dim(a2, {make_rational(1, 3), make_rational(2, 3)}) == 3);
  CHECK(conformal_weight(a2, {make_rational(1, 3), make_rational(2, 3)}) == make_rational(1, 3));
  CHECK_THROWS_AS(lowest_weight_dim(l8, {make_rational(1, 3)}), InvalidParameters);
  CHECK_THROWS_AS(lowest_weight_dim(a2, {Rational(0)}), InvalidParameters);
}

TEST_CASE("graded_dims") {
  const auto l8 = EvenLattice::rank_one(8);
  auto vac = graded_dims(l8, lattice_coset(8, 0), 2);
  CHECK(vac.base_weight == 0);
  CHECK(vac.coeffs == std::vector<BigInt>{1, 1, 2});

  auto a1 = graded_dims(EvenLattice::rank_one(2), lattice_coset(2, 0), 5);
  CHECK(a1.coeffs == std::vector<BigInt>{1, 3, 4, 7, 13, 19});

  // leading coefficient is the lowest-weight dimension
  for (long m = 2; m <= 16; m += 2)
    for (long j = 0; j < m; ++j) {
      const auto lat = EvenLattice::rank_one(m);
      const auto c = lattice_coset(m, j);
      CHECK(graded_dims(lat, c, 0).coeffs[0] == lowest_weight_dim(lat, c));
    }
}

TEST_CASE("graded_dims equals the shell-by-partition double sum") {
  const EvenLattice a2(kA2);
  const std::vector<Coset> cosets{{0, 0}, {make_rational(1, 3), make_rational(2, 3)}};
  for (const auto& c : cosets) {
    const auto series = graded_dims(a2, c, 6);
    const auto parts = oracle::pentagonal_partitions(6);
    for (long n = 0; n <= 6; ++n) {
      BigInt expect = 0;
      for (long k = 0; k <= n; ++k) {
        BigInt p2 = 0;  // two colors: convolve the one-color series with itself
        for (long i = 0; i <= n - k; ++i) p2 += parts[i] * parts[n - k - i];
        expect += oracle::box_shell(kA2, c, series.base_weight + k, 8) * p2;
      }
      CHECK(series.coeffs[n] == expect);
    }
  }
}

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(EvenLattice(std::vector<std::vector<long>>{{3}}), InvalidLattice);
  CHECK_THROWS_AS(EvenLattice(std::vector<std::vector<long>>{{2, 1}, {0, 2}}), InvalidLattice);
  CHECK_THROWS_AS(EvenLattice(std::vector<std::vector<long>>{{2, 2}, {2, 2}}), InvalidLattice);
  CHECK_THROWS_AS(EvenLattice(std::vector<std::vector<long>>{{2, 1}}), InvalidLattice);
  CHECK_THROWS_AS(EvenLattice(std::vector<std::vector<long>>{}), InvalidLattice);
  CHECK_THROWS_AS(EvenLattice::rank_one(3), InvalidLattice);
  CHECK_NOTHROW(EvenLattice{kD4});
}
