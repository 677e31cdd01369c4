#include "coinv/voa_models.hpp"

#include <numeric>

#include "coinv/error.hpp"

namespace coinv {

namespace {

std::size_t mult_index(std::size_t n, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return (a * n + b) * n + c;
}

}  // namespace

FusionModel ising_model() {
  constexpr std::uint32_t one = 0, eps = 1, sig = 2;
  FusionData d;
  d.names = {"1", "e", "s"};
  d.vacuum = Label{one};
  d.dual = {Label{one}, Label{eps}, Label{sig}};
  d.conf_dim = {Rational(0), make_rational(1, 2), make_rational(1, 16)};
  d.central_charge = make_rational(1, 2);
  d.mult.assign(27, BigInt(0));
  auto set = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    d.mult[mult_index(3, a, b, c)] = 1;
    d.mult[mult_index(3, b, a, c)] = 1;
  };
  for (std::uint32_t x : {one, eps, sig}) set(one, x, x);
  set(eps, eps, one);
  set(eps, sig, sig);
  set(sig, sig, one);
  set(sig, sig, eps);
  d.aliases = {{"v", Label{one}}};
  return FusionModel(std::move(d));
}

Rational lattice_conf_dim(long m, long j) {
  if (m < 2 || m % 2 != 0) throw InvalidLattice("lattice pairing must be even and >= 2, got " + std::to_string(m));
  j = ((j % m) + m) % m;
  const long r = std::min(j, m - j);
  return make_rational(r * r, 2 * m);
}

FusionModel lattice_model(long m) {
  if (m < 2 || m % 2 != 0) throw InvalidLattice("lattice pairing must be even and >= 2, got " + std::to_string(m));
  const auto n = static_cast<std::uint32_t>(m);
  FusionData d;
  d.names.reserve(n);
  d.dual.resize(n);
  d.conf_dim.resize(n);
  d.mult.assign(std::size_t{n} * n * n, BigInt(0));
  for (std::uint32_t j = 0; j < n; ++j) {
    d.names.push_back(std::to_string(j));
    d.dual[j] = Label{(n - j) % n};
    d.conf_dim[j] = lattice_conf_dim(m, j);
    for (std::uint32_t k = 0; k < n; ++k) d.mult[mult_index(n, j, k, (j + k) % n)] = 1;
  }
  d.vacuum = Label{0};
  d.central_charge = 1;
  return FusionModel(std::move(d));
}

FusionModel holomorphic_model(const Rational& c) {
  FusionData d;
  d.names = {"1"};
  d.vacuum = Label{0};
  d.dual = {Label{0}};
  d.conf_dim = {Rational(0)};
  d.mult = {BigInt(1)};
  d.central_charge = c;
  d.aliases = {{"v", Label{0}}};
  const Rational eighth = c / 8;
  if (c <= 0 || !is_integer(eighth))
    d.advisories.push_back("holomorphic central charge " + to_string(c) +
                           " is not a positive multiple of 8");
  return FusionModel(std::move(d));
}

MinimalSeriesSpectrum minimal_series_spectrum(MinimalSeriesParams params) {
  const long p = params.p, q = params.q;
  if (p < 2 || q < 2) throw InvalidParameters("minimal series needs p, q >= 2");
  if (std::gcd(p, q) != 1) throw InvalidParameters("minimal series needs gcd(p, q) = 1");

  MinimalSeriesSpectrum out;
  out.central_charge = 1 - make_rational(6 * (p - q) * (p - q), p * q);
  for (long m = 1; m < p; ++m)
    for (long n = 1; n < q; ++n) {
      // keep the lexicographically smaller member of {(m,n), (p-m,q-n)}
      if (std::pair(p - m, q - n) < std::pair(m, n)) continue;
      const long s = n * p - m * q;
      out.weights.push_back({m, n, make_rational(s * s - (p - q) * (p - q), 4 * p * q)});
    }
  return out;
}

IntegralityResult integrality_check(const FusionModel& model, const Insertion& ins) {
  ins.check(model);
  IntegralityResult out;
  out.sum = 0;
  for (auto x : ins.labels()) out.sum += model.conf_dim(x);
  out.integral = is_integer(out.sum);
  return out;
}

}  // namespace coinv
