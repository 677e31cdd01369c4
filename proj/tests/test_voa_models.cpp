#include <doctest.h>

#include <numeric>
#include <set>

#include "coinv/error.hpp"
#include "coinv/voa_models.hpp"

using namespace coinv;

TEST_CASE("ising_model data") {
  auto m = ising_model();
  CHECK(m.size() == 3);
  CHECK(m.central_charge() == make_rational(1, 2));
  CHECK(m.conf_dim(m.find("1")) == 0);
  CHECK(m.conf_dim(m.find("e")) == make_rational(1, 2));
  CHECK(m.conf_dim(m.find("s")) == make_rational(1, 16));
  CHECK(m.find("v") == m.vacuum());
  for (auto x : m.labels()) CHECK(m.dual(x) == x);
  CHECK(validate_model(m).empty());
}

TEST_CASE("lattice_model conformal dimensions") {
  CHECK(lattice_model(8).conf_dim(Label{2}) == make_rational(1, 4));
  for (long k = 1; k <= 6; ++k) {
    auto m = lattice_model(4 * k);
    CHECK(m.conf_dim(Label{1}) == make_rational(1, 8 * k));
    CHECK(m.conf_dim(Label{static_cast<std::uint32_t>(k)}) == make_rational(k, 8));
    if (k >= 2) CHECK(m.conf_dim(Label{static_cast<std::uint32_t>(4 * k - 3)}) == make_rational(9, 8 * k));
  }
  // 4k - 3 = 1 when k = 1: the minimal representative is 1, not 3
  CHECK(lattice_model(4).conf_dim(Label{1}) == make_rational(1, 8));
  CHECK(lattice_model(8).central_charge() == 1);
}

TEST_CASE("lattice conf_dim matches the brute-force minimum over the coset") {
  for (long m = 2; m <= 24; m += 2) {
    auto model = lattice_model(m);
    for (long j = 0; j < m; ++j) {
      Rational best = -1;
      for (long alpha = -m; alpha <= m; ++alpha) {
        Rational v = make_rational((m * alpha + j) * (m * alpha + j), 2 * m);
        if (best < 0 || v < best) best = v;
      }
      const Label x{static_cast<std::uint32_t>(j)};
      CHECK(model.conf_dim(x) == best);
      CHECK(model.conf_dim(x) == model.conf_dim(Label{static_cast<std::uint32_t>((m - j) % m)}));
      CHECK(model.conf_dim(model.dual(x)) == model.conf_dim(x));
    }
    CHECK(validate_model(model).empty());
  }
}

TEST_CASE("lattice_model rejects odd or nonpositive pairings") {
  CHECK_THROWS_AS(lattice_model(7), InvalidLattice);
  CHECK_THROWS_AS(lattice_model(0), InvalidLattice);
  CHECK_THROWS_AS(lattice_model(-4), InvalidLattice);
}

TEST_CASE("holomorphic_model") {
  auto e8 = holomorphic_model(8);
  CHECK(e8.size() == 1);
  CHECK(e8.central_charge() == 8);
  CHECK(e8.advisories().empty());
  CHECK(validate_model(e8).empty());

  auto moonshine = holomorphic_model(24);
  for (int g = 0; g <= 3; ++g)
    CHECK(rank_genus(moonshine, g, Insertion::parse(moonshine, {"1", "1", "1"})) == 1);

  CHECK(holomorphic_model(-2).advisories().size() == 1);
  CHECK(holomorphic_model(make_rational(1, 2)).advisories().size() == 1);
  CHECK(holomorphic_model(0).advisories().size() == 1);
}

TEST_CASE("minimal_series_spectrum") {
  auto s34 = minimal_series_spectrum({3, 4});
  CHECK(s34.central_charge == make_rational(1, 2));
  std::set<std::string> weights;
  for (const auto& w : s34.weights) weights.insert(to_string(w.h));
  CHECK(weights == std::set<std::string>{"0", "1/2", "1/16"});
  for (const auto& w : s34.weights)
    if (w.m == 1 && w.n == 2) CHECK(w.h == make_rational(1, 16));

  auto s23 = minimal_series_spectrum({2, 3});
  REQUIRE(s23.weights.size() == 1);
  CHECK(s23.weights[0].h == 0);
  CHECK(s23.central_charge == 0);

  CHECK_THROWS_AS(minimal_series_spectrum({4, 6}), InvalidParameters);
  CHECK_THROWS_AS(minimal_series_spectrum({1, 3}), InvalidParameters);
}

TEST_CASE("minimal series: class count and distinct unitary weights") {
  for (long p = 2; p <= 9; ++p)
    for (long q = 2; q <= 9; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto s = minimal_series_spectrum({p, q});
      CHECK(static_cast<long>(s.weights.size()) == (p - 1) * (q - 1) / 2);
      // identification (m,n) ~ (p-m,q-n) preserves h
      for (const auto& w : s.weights) {
        const long t = (q - w.n) * p - (p - w.m) * q;
        CHECK(make_rational(t * t - (p - q) * (p - q), 4 * p * q) == w.h);
      }
      if (std::abs(p - q) == 1 && p <= 6 && q <= 6) {
        std::set<std::string> distinct;
        for (const auto& w : s.weights) distinct.insert(to_string(w.h));
        CHECK(distinct.size() == s.weights.size());
      }
    }
}

TEST_CASE("integrality_check") {
  auto ising = ising_model();
  std::vector<std::string> e_s8{"e"};
  for (int i = 0; i < 8; ++i) e_s8.push_back("s");
  auto r = integrality_check(ising, Insertion::parse(ising, e_s8));
  CHECK(r.sum == 1);
  CHECK(r.integral);

  std::vector<std::string> s16(16, "s");
  CHECK(integrality_check(ising, Insertion::parse(ising, s16)).integral);

  auto s4 = integrality_check(ising, Insertion::parse(ising, {"s", "s", "s", "s"}));
  CHECK(s4.sum == make_rational(1, 4));
  CHECK(!s4.integral);

  auto lat = lattice_model(8);
  auto l = integrality_check(lat, Insertion::parse(lat, {"2", "2", "2", "2"}));
  CHECK(l.sum == 1);
  CHECK(l.integral);

  auto vac = integrality_check(ising, Insertion::parse(ising, {"1", "1"}));
  CHECK(vac.sum == 0);
  CHECK(vac.integral);
}
