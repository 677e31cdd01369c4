#include "coinv/fnef.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <sstream>
#include <thread>

#include "coinv/error.hpp"

namespace coinv {

namespace {

PointSet lowest(PointSet s) { return s & (~s + 1); }

// Lexicographic comparison of the sorted element lists of two sets.
bool set_less(PointSet x, PointSet y) {
  if (x == y) return false;
  const PointSet diff = lowest(x ^ y);
  // Both lists agree below `diff`; the one containing `diff` continues with
  // it, the other continues with something larger or stops.
  if (x & diff) {
    const PointSet y_rest = y & ~(diff - 1);
    return y_rest != 0;
  }
  const PointSet x_rest = x & ~(diff - 1);
  return x_rest == 0;
}

bool curve_less(const std::array<PointSet, 4>& x, const std::array<PointSet, 4>& y) {
  for (int i = 0; i < 4; ++i) {
    if (x[i] != y[i]) return set_less(x[i], y[i]);
  }
  return false;
}

}  // namespace

FCurve::FCurve(int n, std::array<PointSet, 4> blocks) : n_(n), blocks_(blocks) {
  if (n < 4 || n > kMaxPoints) throw InvalidParameters("F-curves need 4 <= n <= 62");
  PointSet seen = 0;
  for (auto b : blocks_) {
    if (b == 0) throw InvalidParameters("F-curve blocks must be nonempty");
    if (seen & b) throw InvalidParameters("F-curve blocks must be disjoint");
    seen |= b;
  }
  if (seen != all_points(n)) throw InvalidParameters("F-curve blocks must cover {1..n}");
  std::sort(blocks_.begin(), blocks_.end(), [](PointSet a, PointSet b) { return lowest(a) < lowest(b); });
}

FCurve FCurve::from_sizes(std::array<int, 4> sizes) {
  std::array<PointSet, 4> blocks{};
  int start = 0;
  for (int i = 0; i < 4; ++i) {
    if (sizes[i] < 1) throw InvalidParameters("F-curve block sizes must be positive");
    blocks[i] = all_points(sizes[i]) << start;
    start += sizes[i];
  }
  return FCurve(start, blocks);
}

std::array<int, 4> FCurve::sizes() const {
  std::array<int, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = point_count(blocks_[i]);
  return out;
}

std::vector<std::vector<int>> FCurve::block_lists() const {
  std::vector<std::vector<int>> out;
  for (auto b : blocks_) {
    std::vector<int> pts;
    for (int i = 1; i <= n_; ++i)
      if (contains_point(b, i)) pts.push_back(i);
    out.push_back(std::move(pts));
  }
  return out;
}

std::string to_string(const FCurve& f) {
  std::string out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) out += ',';
    out += point_set_string(f.blocks()[i]);
  }
  return out;
}

BigInt fcurve_count(int n) {
  if (n < 4) return 0;
  // S(n,4) = (4^n - 4*3^n + 6*2^n - 4) / 24
  BigInt four, three, two;
  mpz_ui_pow_ui(four.get_mpz_t(), 4, n);
  mpz_ui_pow_ui(three.get_mpz_t(), 3, n);
  mpz_ui_pow_ui(two.get_mpz_t(), 2, n);
  return (four - 4 * three + 6 * two - 4) / 24;
}

namespace {

// Calls visit(b, c, d) for every partition of `rest` into three nonempty
// blocks ordered by smallest point.
template <class Visit>
void split_three(PointSet rest, Visit&& visit) {
  const PointSet b_min = lowest(rest);
  const PointSet after_b = rest & ~b_min;
  for (PointSet extra = after_b;; extra = (extra - 1) & after_b) {
    const PointSet b = b_min | extra;
    const PointSet r2 = rest & ~b;
    if (point_count(r2) >= 2) {
      const PointSet c_min = lowest(r2);
      const PointSet after_c = r2 & ~c_min;
      // d must stay nonempty, so c never takes all of after_c.
      for (PointSet e2 = (after_c - 1) & after_c;; e2 = (e2 - 1) & after_c) {
        const PointSet c = c_min | e2;
        visit(b, c, r2 & ~c);
        if (e2 == 0) break;
      }
    }
    if (extra == 0) break;
  }
}

// All blocks containing point 1 that leave at least three other points.
std::vector<PointSet> first_blocks(int n) {
  std::vector<PointSet> out;
  const PointSet others = all_points(n) & ~PointSet{1};
  for (PointSet extra = others;; extra = (extra - 1) & others) {
    if (point_count(others & ~extra) >= 3) out.push_back(PointSet{1} | extra);
    if (extra == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void for_each_fcurve(int n, const std::function<void(const FCurve&)>& visit) {
  if (n < 4) return;
  if (n > kMaxPoints) throw InvalidParameters("too many marked points");
  const PointSet full = all_points(n);
  for (PointSet a : first_blocks(n))
    split_three(full & ~a, [&](PointSet b, PointSet c, PointSet d) { visit(FCurve(n, {a, b, c, d})); });
}

Rational intersect_fcurve(const DivisorClass& d, const FCurve& f) {
  if (d.genus() != 0) throw DimensionError("F-curve intersections are implemented in genus 0 only");
  if (d.points() != f.points()) throw DimensionError("divisor and F-curve live on different M_{0,n}");
  const auto& bl = f.blocks();
  Rational v = 0;
  for (auto b : bl) {
    if (point_count(b) == 1)
      v += d.psi(__builtin_ctzll(b) + 1);
    else
      v -= d.boundary_coeff(b);
  }
  v += d.boundary_coeff(bl[0] | bl[1]);
  v += d.boundary_coeff(bl[0] | bl[2]);
  v += d.boundary_coeff(bl[0] | bl[3]);
  return v;
}

Rational intersect_sizes(const SymmetricDivisor& s, std::array<int, 4> sizes) {
  Rational v = 0;
  for (int k : sizes) {
    if (k == 1)
      v += s.psi_coeff;
    else
      v -= s.coeff_for_size(k);
  }
  v += s.coeff_for_size(sizes[0] + sizes[1]);
  v += s.coeff_for_size(sizes[0] + sizes[2]);
  v += s.coeff_for_size(sizes[0] + sizes[3]);
  return v;
}

namespace {

// Exhaustive scan over scaled integer coefficients. `Int` is std::int64_t
// when every scaled value is small enough, BigInt otherwise.
template <class Int>
struct Scan {
  int n;
  std::vector<Int> psi;       // index = point - 1
  std::vector<Int> boundary;  // index = point mask

  Int value(PointSet a, PointSet b, PointSet c, PointSet d) const {
    Int v = boundary[a | b] + boundary[a | c] + boundary[a | d];
    for (PointSet x : {a, b, c, d}) {
      if ((x & (x - 1)) == 0)
        v += psi[__builtin_ctzll(x)];
      else
        v -= boundary[x];
    }
    return v;
  }

  struct Best {
    bool set = false;
    Int value{};
    std::array<PointSet, 4> curve{};
    std::uint64_t count = 0;

    void offer(const Int& v, const std::array<PointSet, 4>& f) {
      if (!set || v < value || (v == value && curve_less(f, curve))) {
        set = true;
        value = v;
        curve = f;
      }
    }
  };

  Best run(unsigned workers) const {
    const auto firsts = first_blocks(n);
    const PointSet full = all_points(n);
    std::atomic<std::size_t> next{0};
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(firsts.size())));
    std::vector<Best> partial(workers);
    auto work = [&](unsigned t) {
      Best& best = partial[t];
      for (std::size_t i = next++; i < firsts.size(); i = next++) {
        const PointSet a = firsts[i];
        split_three(full & ~a, [&](PointSet b, PointSet c, PointSet d) {
          ++best.count;
          best.offer(value(a, b, c, d), {a, b, c, d});
        });
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    Best total;
    for (const auto& p : partial) {
      total.count += p.count;
      if (p.set) total.offer(p.value, p.curve);
    }
    return total;
  }
};

Rational to_rational(std::int64_t v, const BigInt& scale) {
  Rational r{BigInt(static_cast<long>(v)), scale};
  r.canonicalize();
  return r;
}

Rational to_rational(const BigInt& v, const BigInt& scale) {
  Rational r{v, scale};
  r.canonicalize();
  return r;
}

NefCertificate certify(Rational min_value, FCurve curve, BigInt count) {
  NefCertificate cert;
  cert.curves_checked = std::move(count);
  cert.minimum = FCurveValue{curve, min_value};
  if (min_value < 0) {
    cert.status = NefStatus::NotFNef;
    cert.witness = cert.minimum;
  }
  return cert;
}

}  // namespace

NefCertificate fnef_check(const DivisorClass& d, unsigned workers) {
  if (d.genus() != 0) throw DimensionError("F-nef certification is implemented in genus 0 only");
  const int n = d.points();
  if (n < 4) throw DimensionError("F-curves need at least 4 marked points");
  if (n > kMaxExhaustivePoints)
    throw EnumerationTooLarge("exhaustive F-curve scan on M_{0," + std::to_string(n) + "} would need " +
                              to_string(fcurve_count(n)) + " curves; limit is n <= " +
                              std::to_string(kMaxExhaustivePoints) + " (symmetric classes: use the symmetric check)");

  const std::size_t masks = std::size_t{1} << n;
  std::vector<Rational> psi(n), boundary(masks, Rational(0));
  for (int i = 1; i <= n; ++i) psi[i - 1] = d.psi(i);
  for (const auto& [key, v] : d.boundary()) {
    boundary[key.points] = v;
    boundary[all_points(n) & ~key.points] = v;
  }

  BigInt scale = 1;
  for (const auto& r : psi) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), r.get_den_mpz_t());
  for (const auto& r : boundary) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), r.get_den_mpz_t());

  auto scaled = [&](const Rational& r) -> BigInt { return r.get_num() * (scale / r.get_den()); };
  BigInt largest = 0;
  for (const auto& r : psi) largest = std::max<BigInt>(largest, abs(scaled(r)));
  for (const auto& r : boundary) largest = std::max<BigInt>(largest, abs(scaled(r)));

  const BigInt limit = BigInt(1) << 56;
  if (largest < limit) {
    Scan<std::int64_t> scan{n, {}, {}};
    for (const auto& r : psi) scan.psi.push_back(scaled(r).get_si());
    scan.boundary.reserve(masks);
    for (const auto& r : boundary) scan.boundary.push_back(scaled(r).get_si());
    auto best = scan.run(workers);
    return certify(to_rational(best.value, scale), FCurve(n, best.curve), BigInt(static_cast<unsigned long>(best.count)));
  }
  Scan<BigInt> scan{n, {}, {}};
  for (const auto& r : psi) scan.psi.push_back(scaled(r));
  for (const auto& r : boundary) scan.boundary.push_back(scaled(r));
  auto best = scan.run(workers);
  return certify(to_rational(best.value, scale), FCurve(n, best.curve), BigInt(static_cast<unsigned long>(best.count)));
}

NefCertificate fnef_check_symmetric(const SymmetricDivisor& s) {
  const int n = s.n;
  if (n < 4) throw DimensionError("F-curves need at least 4 marked points");
  std::optional<std::pair<Rational, std::array<int, 4>>> best;
  unsigned long count = 0;
  for (int a = 1; 4 * a <= n; ++a)
    for (int b = a; a + 3 * b <= n; ++b)
      for (int c = b; a + b + 2 * c <= n; ++c) {
        const std::array<int, 4> sizes{a, b, c, n - a - b - c};
        ++count;
        Rational v = intersect_sizes(s, sizes);
        if (!best || v < best->first) best.emplace(std::move(v), sizes);
      }
  auto cert = certify(best->first, FCurve::from_sizes(best->second), BigInt(count));
  cert.nef_concluded = cert.status == NefStatus::FNef && n <= kMaxSymmetricNefPoints;
  return cert;
}

GgReport gg_report(const FusionModel& model, int g, const Insertion& ins, unsigned workers) {
  ins.check(model);
  GgReport r;
  r.genus = g;
  const int n = static_cast<int>(ins.size());
  RankCalculator ranks(model);
  std::vector<std::string> notes;
  r.rank = ranks.genus(g, ins.labels(), &notes);
  for (auto& note : notes) r.verdicts.push_back(note);
  r.integrality = integrality_check(model, ins);
  r.central_charge = model.central_charge();
  r.negative_central_charge = model.central_charge() < 0;

  if (r.rank == 0) {
    r.verdicts.push_back("zero sheaf: rank 0, its class is trivial and trivially nef");
    return r;
  }
  const bool stable = g > 0 ? 2 * g - 2 + n > 0 : n >= 3;
  if (stable) r.c1 = chern_class(ranks, g, ins, workers);

  if (g > 0) {
    if (r.negative_central_charge) {
      r.obstruction = true;
      r.verdicts.push_back("central charge " + to_string(model.central_charge()) +
                           " < 0 => first Chern class not nef => not globally generated");
    }
    if (r.c1) {
      bool only_lambda = r.c1->delta_irr() == 0 && r.c1->boundary().empty();
      for (int i = 1; i <= n; ++i) only_lambda = only_lambda && r.c1->psi(i) == 0;
      if (r.rank == 1 && only_lambda && r.c1->lambda() >= 0)
        r.verdicts.push_back("line bundle with class " + to_string(r.c1->lambda()) +
                             " lambda; lambda is base point free => globally generated (line-bundle case)");
    }
    r.verdicts.push_back("positive genus: F-curve checks through M_{1,1} are not evaluated");
    return r;
  }

  if (!r.c1 || n < 4) {
    r.verdicts.push_back("no curves to test on M_{0," + std::to_string(n) + "}");
    return r;
  }
  if (n == 4) r.degree = degree_m04(*r.c1);

  auto sym = symmetrize(*r.c1);
  if (auto* s = std::get_if<SymmetricDivisor>(&sym))
    r.fnef = fnef_check_symmetric(*s);
  else if (n <= kMaxExhaustivePoints)
    r.fnef = fnef_check(*r.c1, workers);
  else
    r.verdicts.push_back("non-symmetric class on more than " + std::to_string(kMaxExhaustivePoints) +
                         " points: F-nef scan skipped");

  if (r.fnef && r.fnef->status == NefStatus::NotFNef) {
    r.obstruction = true;
    const auto& w = *r.fnef->witness;
    if (n == 4)
      r.verdicts.push_back("degree " + to_string(w.value) + " < 0 => not globally generated");
    else
      r.verdicts.push_back("F-curve " + to_string(w.curve) + " meets c1 in " + to_string(w.value) +
                           " < 0 => not nef => not globally generated");
  } else if (r.fnef) {
    r.verdicts.push_back(r.fnef->nef_concluded ? "c1 is F-nef and S_n-invariant with n <= 24 => nef (necessary condition holds)"
                                               : "c1 is F-nef (necessary condition holds)");
  }
  return r;
}

}  // namespace coinv
