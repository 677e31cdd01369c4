#include "coinv/divisor_calc.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "coinv/error.hpp"

namespace coinv {

std::string point_set_string(PointSet s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i = 1; i <= 64 && s >> (i - 1); ++i)
    if (contains_point(s, i)) {
      if (!first) os << ',';
      os << i;
      first = false;
    }
  os << '}';
  return os.str();
}

DivisorClass::DivisorClass(int g, int n) : g_(g), n_(n), lambda_(0), psi_(n, Rational(0)), delta_irr_(0) {
  if (g < 0) throw InvalidParameters("negative genus");
  if (n < 0 || n > kMaxPoints) throw InvalidParameters("number of marked points out of range");
  if (2 * g - 2 + n <= 0)
    throw UnsupportedBase("M_{" + std::to_string(g) + "," + std::to_string(n) + "} is not a stable moduli space");
}

void DivisorClass::set_lambda(const Rational& v) {
  if (g_ == 0 && v != 0) throw DimensionError("lambda vanishes in genus 0");
  lambda_ = v;
}

void DivisorClass::set_delta_irr(const Rational& v) {
  if (g_ == 0 && v != 0) throw DimensionError("delta_irr vanishes in genus 0");
  delta_irr_ = v;
}

void DivisorClass::set_psi(int i, const Rational& v) {
  if (i < 1 || i > n_) throw DimensionError("psi index out of range");
  psi_[i - 1] = v;
}

bool DivisorClass::is_boundary(int genus_part, PointSet pts) const {
  if (genus_part < 0 || genus_part > g_) return false;
  if ((pts & ~all_points(n_)) != 0) return false;
  const int k = point_count(pts);
  return 2 * genus_part + k >= 2 && 2 * (g_ - genus_part) + (n_ - k) >= 2;
}

BoundaryKey DivisorClass::canonical(int genus_part, PointSet pts) const {
  const BoundaryKey key{genus_part, pts};
  const BoundaryKey other{g_ - genus_part, all_points(n_) & ~pts};
  if (n_ >= 1) return contains_point(pts, 1) ? key : other;
  return genus_part <= g_ - genus_part ? key : other;
}

void DivisorClass::set_boundary(int genus_part, PointSet pts, const Rational& v) {
  if (!is_boundary(genus_part, pts))
    throw DimensionError("delta_{" + std::to_string(genus_part) + ":" + point_set_string(pts) +
                         "} is not a boundary divisor");
  const auto key = canonical(genus_part, pts);
  if (v == 0)
    boundary_.erase(key);
  else
    boundary_[key] = v;
}

Rational DivisorClass::boundary_coeff(int genus_part, PointSet pts) const {
  if (!is_boundary(genus_part, pts)) return 0;
  auto it = boundary_.find(canonical(genus_part, pts));
  return it == boundary_.end() ? Rational(0) : it->second;
}

std::vector<BoundaryKey> DivisorClass::boundary_keys() const {
  std::vector<BoundaryKey> out;
  if (n_ == 0) {
    for (int i = 1; 2 * i <= g_; ++i) out.push_back({i, 0});
    return out;
  }
  const PointSet rest = all_points(n_) >> 1;  // points 2..n, shifted
  for (int i = 0; i <= g_; ++i)
    for (PointSet sub = 0;; ++sub) {
      const PointSet pts = (sub << 1) | 1u;
      if (is_boundary(i, pts)) out.push_back({i, pts});
      if (sub == rest) break;
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::string, Rational>> DivisorClass::terms() const {
  std::vector<std::pair<std::string, Rational>> out;
  if (lambda_ != 0) out.emplace_back("lambda", lambda_);
  for (int i = 1; i <= n_; ++i)
    if (psi_[i - 1] != 0) out.emplace_back("psi:" + std::to_string(i), psi_[i - 1]);
  if (delta_irr_ != 0) out.emplace_back("dirr", delta_irr_);
  for (const auto& [key, v] : boundary_)
    out.emplace_back("d:" + std::to_string(key.genus) + ":" + point_set_string(key.points), v);
  return out;
}

namespace {

std::vector<Label> restrict_to(const Insertion& ins, PointSet pts) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < ins.size(); ++i)
    if (contains_point(pts, static_cast<int>(i) + 1)) out.push_back(ins[i]);
  return out;
}

Rational split_coefficient(RankCalculator& ranks, const Insertion& ins, int g, int genus_part, PointSet pts,
                           PointSet complement) {
  const auto& model = ranks.model();
  auto side = restrict_to(ins, pts);
  auto other = restrict_to(ins, complement);
  Rational b = 0;
  for (auto w : model.labels()) {
    if (model.conf_dim(w) == 0) continue;
    side.push_back(w);
    other.push_back(model.dual(w));
    const BigInt r = ranks.genus(genus_part, side) * ranks.genus(g - genus_part, other);
    side.pop_back();
    other.pop_back();
    if (r != 0) b += model.conf_dim(w) * Rational(r);
  }
  return b;
}

}  // namespace

DivisorClass chern_class(const FusionModel& model, int g, const Insertion& ins, unsigned workers) {
  RankCalculator ranks(model);
  return chern_class(ranks, g, ins, workers);
}

DivisorClass chern_class(RankCalculator& ranks, int g, const Insertion& ins, unsigned workers) {
  const auto& model = ranks.model();
  ins.check(model);
  const int n = static_cast<int>(ins.size());
  if (g == 0 && n < 3) throw UnsupportedBase("genus-0 Chern classes need at least 3 marked points");
  DivisorClass d(g, n);

  const BigInt rank = ranks.genus(g, ins.labels());
  const Rational r(rank);
  d.set_lambda(g == 0 ? Rational(0) : Rational(r * model.central_charge() / 2));
  for (int i = 1; i <= n; ++i) d.set_psi(i, r * model.conf_dim(ins[i - 1]));

  if (g > 0) {
    std::vector<Label> handle(ins.labels().begin(), ins.labels().end());
    Rational b_irr = 0;
    for (auto w : model.labels()) {
      if (model.conf_dim(w) == 0) continue;
      handle.push_back(w);
      handle.push_back(model.dual(w));
      b_irr += model.conf_dim(w) * Rational(ranks.genus(g - 1, handle));
      handle.resize(handle.size() - 2);
    }
    d.set_delta_irr(-b_irr);
  }

  const auto keys = d.boundary_keys();
  std::vector<Rational> coeffs(keys.size());
  const PointSet full = all_points(n);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto& key = keys[k];
      const PointSet comp = full & ~key.points;
      const Rational b = split_coefficient(ranks, ins, g, key.genus, key.points, comp);
      const Rational b_swapped = split_coefficient(ranks, ins, g, g - key.genus, comp, key.points);
      if (b != b_swapped)
        throw InvalidModel("boundary coefficient of delta_{" + std::to_string(key.genus) + ":" +
                           point_set_string(key.points) + "} depends on the chosen side");
      coeffs[k] = -b;
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(keys.size() / 64 + 1)));
  if (workers == 1) {
    work(0, keys.size());
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (keys.size() + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        try {
          work(std::min(keys.size(), t * chunk), std::min(keys.size(), (t + 1) * chunk));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t k = 0; k < keys.size(); ++k) d.set_boundary(keys[k].genus, keys[k].points, coeffs[k]);
  return d;
}

Rational degree_m04(const DivisorClass& d) {
  if (d.genus() != 0 || d.points() != 4) throw DimensionError("degree_m04 needs a class on M_{0,4}");
  Rational deg = 0;
  for (int i = 1; i <= 4; ++i) deg += d.psi(i);
  for (const auto& [key, v] : d.boundary()) deg += v;
  return deg;
}

Rational SymmetricDivisor::coeff_for_size(int s) const {
  if (s < 2 || s > n - 2) return 0;
  auto it = boundary_by_size.find(std::min(s, n - s));
  return it == boundary_by_size.end() ? Rational(0) : it->second;
}

SymmetrizeResult symmetrize(const DivisorClass& d) {
  if (d.genus() != 0) throw DimensionError("symmetrize is defined on genus-0 classes");
  const int n = d.points();
  SymmetricDivisor s;
  s.n = n;
  s.psi_coeff = n > 0 ? d.psi(1) : Rational(0);
  for (int i = 2; i <= n; ++i)
    if (d.psi(i) != s.psi_coeff)
      return AsymmetryWitness{"psi:1", "psi:" + std::to_string(i)};

  std::map<int, PointSet> first_of_size;
  for (const auto& key : d.boundary_keys()) {
    const int k = std::min(point_count(key.points), n - point_count(key.points));
    const Rational v = d.boundary_coeff(key.points);
    auto [it, inserted] = first_of_size.emplace(k, key.points);
    if (inserted) {
      s.boundary_by_size[k] = v;
    } else if (s.boundary_by_size[k] != v) {
      return AsymmetryWitness{"d:0:" + point_set_string(it->second), "d:0:" + point_set_string(key.points)};
    }
  }
  std::erase_if(s.boundary_by_size, [](const auto& kv) { return kv.second == 0; });
  return s;
}

DivisorClass expand(const SymmetricDivisor& s) {
  DivisorClass d(0, s.n);
  for (int i = 1; i <= s.n; ++i) d.set_psi(i, s.psi_coeff);
  for (const auto& key : d.boundary_keys()) d.set_boundary(0, key.points, s.coeff_for_size(point_count(key.points)));
  return d;
}

}  // namespace coinv
