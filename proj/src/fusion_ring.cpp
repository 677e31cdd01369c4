#include "coinv/fusion_ring.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "coinv/error.hpp"

namespace coinv {

FusionModel::FusionModel(FusionData data) : data_(std::move(data)) {
  const std::size_t n = data_.names.size();
  if (n == 0) throw InvalidModel("model has no labels");
  if (data_.dual.size() != n) throw InvalidModel("dual table has wrong size");
  if (data_.conf_dim.size() != n) throw InvalidModel("conf_dim table has wrong size");
  if (data_.mult.size() != n * n * n) throw InvalidModel("multiplicity table has wrong size");
  if (data_.vacuum.id >= n) throw InvalidModel("vacuum is not a label");

  std::set<std::string> seen;
  for (const auto& s : data_.names) {
    if (s.empty()) throw InvalidModel("empty label name");
    if (!seen.insert(s).second) throw InvalidModel("duplicate label '" + s + "'");
  }
  for (auto d : data_.dual)
    if (d.id >= n) throw InvalidModel("dual maps outside the label set");
  for (const auto& [alias, target] : data_.aliases) {
    if (target.id >= n) throw InvalidModel("alias '" + alias + "' targets no label");
    if (seen.count(alias) && data_.names[target.id] != alias)
      throw InvalidModel("alias '" + alias + "' shadows a label");
  }
  for (const auto& m : data_.mult)
    if (m < 0) throw InvalidModel("negative fusion multiplicity");

  products_.resize(n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c) {
        const auto& m = data_.mult[(a * n + b) * n + c];
        if (m != 0) products_[a * n + b].emplace_back(Label{c}, m);
      }
}

std::vector<Label> FusionModel::labels() const {
  std::vector<Label> out(size());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = Label{i};
  return out;
}

Label FusionModel::find(const std::string& name) const {
  for (std::uint32_t i = 0; i < data_.names.size(); ++i)
    if (data_.names[i] == name) return Label{i};
  if (auto it = data_.aliases.find(name); it != data_.aliases.end()) return it->second;
  throw LabelNotFound(name);
}

bool operator==(const FusionModel& x, const FusionModel& y) {
  const auto& a = x.data_;
  const auto& b = y.data_;
  return a.names == b.names && a.vacuum == b.vacuum && a.dual == b.dual && a.mult == b.mult &&
         a.conf_dim == b.conf_dim && a.central_charge == b.central_charge;
}

Insertion Insertion::parse(const FusionModel& model, const std::vector<std::string>& names) {
  std::vector<Label> out;
  out.reserve(names.size());
  for (const auto& s : names) out.push_back(model.find(s));
  return Insertion(std::move(out));
}

void Insertion::check(const FusionModel& model) const {
  for (auto x : labels_)
    if (!model.contains(x)) throw LabelNotFound("#" + std::to_string(x.id));
}

std::map<Label, BigInt> fuse(const FusionModel& model, Label a, Label b) {
  if (!model.contains(a)) throw LabelNotFound("#" + std::to_string(a.id));
  if (!model.contains(b)) throw LabelNotFound("#" + std::to_string(b.id));
  std::map<Label, BigInt> out;
  for (const auto& [c, m] : model.product(a, b)) out.emplace(c, m);
  return out;
}

std::map<std::string, BigInt> fuse(const FusionModel& model, const std::string& a,
                                   const std::string& b) {
  std::map<std::string, BigInt> out;
  for (const auto& [c, m] : fuse(model, model.find(a), model.find(b))) out.emplace(model.name(c), m);
  return out;
}

namespace {

std::string tuple_string(const FusionModel& m, std::initializer_list<Label> xs) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (auto x : xs) {
    if (!first) os << ',';
    os << m.name(x);
    first = false;
  }
  os << ')';
  return os.str();
}

}  // namespace

std::vector<Diagnostic> validate_model(const FusionModel& model) {
  std::vector<Diagnostic> out;
  const auto labels = model.labels();
  const Label vac = model.vacuum();
  auto t = [&](std::initializer_list<Label> xs) { return tuple_string(model, xs); };

  for (auto x : labels) {
    if (model.dual(model.dual(x)) != x) {
      out.push_back({"dual is not an involution", t({x})});
      break;
    }
  }
  if (model.dual(vac) != vac) out.push_back({"vacuum is not self-dual", t({vac})});

  [&] {
    for (auto b : labels)
      for (auto c : labels) {
        const BigInt expected = b == c ? 1 : 0;
        if (model.mult(vac, b, c) != expected || model.mult(b, vac, c) != expected) {
          out.push_back({"vacuum is not the unit", t({vac, b, c})});
          return;
        }
      }
  }();

  [&] {
    for (auto a : labels)
      for (auto b : labels)
        for (auto c : labels)
          if (model.mult(a, b, c) != model.mult(b, a, c)) {
            out.push_back({"commutativity", t({a, b, c})});
            return;
          }
  }();

  // rank0(x, y, z) := N_{xy}^{z'}; must be invariant under permutations and
  // under dualizing all three entries.
  [&] {
    auto r0 = [&](Label x, Label y, Label z) -> const BigInt& { return model.mult(x, y, model.dual(z)); };
    for (auto a : labels)
      for (auto b : labels)
        for (auto c : labels) {
          std::array<Label, 3> v{a, b, model.dual(c)};
          const BigInt& base = r0(v[0], v[1], v[2]);
          std::sort(v.begin(), v.end());
          bool ok = true;
          do {
            if (r0(v[0], v[1], v[2]) != base) ok = false;
          } while (ok && std::next_permutation(v.begin(), v.end()));
          if (ok && r0(model.dual(a), model.dual(b), c) != base) ok = false;
          if (!ok) {
            out.push_back({"S3 symmetry of the 3-point function", t({a, b, c})});
            return;
          }
        }
  }();

  [&] {
    for (auto a : labels)
      for (auto b : labels)
        for (auto c : labels)
          for (auto d : labels) {
            BigInt lhs = 0, rhs = 0;
            for (auto e : labels) {
              lhs += model.mult(a, b, e) * model.mult(e, c, d);
              rhs += model.mult(b, c, e) * model.mult(a, e, d);
            }
            if (lhs != rhs) {
              out.push_back({"associativity", t({a, b, c, d})});
              return;
            }
          }
  }();

  if (model.conf_dim(vac) != 0) out.push_back({"vacuum conformal dimension is not 0", t({vac})});
  for (auto x : labels)
    if (model.conf_dim(x) < 0) {
      out.push_back({"negative conformal dimension", t({x})});
      break;
    }
  for (auto x : labels)
    if (model.conf_dim(model.dual(x)) != model.conf_dim(x)) {
      out.push_back({"dual changes conformal dimension", t({x, model.dual(x)})});
      break;
    }
  return out;
}

FusionModel tensor_product(const FusionModel& m1, const FusionModel& m2) {
  const std::size_t n1 = m1.size(), n2 = m2.size(), n = n1 * n2;
  auto idx = [n2](Label a, Label b) { return Label{static_cast<std::uint32_t>(a.id * n2 + b.id)}; };

  FusionData d;
  d.names.reserve(n);
  d.dual.resize(n);
  d.conf_dim.resize(n);
  d.mult.assign(n * n * n, BigInt(0));
  for (auto a : m1.labels())
    for (auto b : m2.labels()) {
      auto p = idx(a, b);
      d.names.push_back("(" + m1.name(a) + "," + m2.name(b) + ")");
      d.dual[p.id] = idx(m1.dual(a), m2.dual(b));
      d.conf_dim[p.id] = m1.conf_dim(a) + m2.conf_dim(b);
    }
  for (auto a1 : m1.labels())
    for (auto b1 : m1.labels())
      for (const auto& [c1, x] : m1.product(a1, b1))
        for (auto a2 : m2.labels())
          for (auto b2 : m2.labels())
            for (const auto& [c2, y] : m2.product(a2, b2))
              d.mult[(idx(a1, a2).id * n + idx(b1, b2).id) * n + idx(c1, c2).id] = x * y;
  d.vacuum = idx(m1.vacuum(), m2.vacuum());
  d.central_charge = m1.central_charge() + m2.central_charge();

  // Pair aliases from every spelling of each component.
  auto spellings = [](const FusionModel& m) {
    std::vector<std::pair<std::string, Label>> out;
    for (auto x : m.labels()) out.emplace_back(m.name(x), x);
    for (const auto& [alias, x] : m.data().aliases) out.emplace_back(alias, x);
    return out;
  };
  if (!m1.data().aliases.empty() || !m2.data().aliases.empty())
    for (const auto& [s1, a] : spellings(m1))
      for (const auto& [s2, b] : spellings(m2)) {
        std::string alias = "(" + s1 + "," + s2 + ")";
        if (alias != d.names[idx(a, b).id]) d.aliases.emplace(alias, idx(a, b));
      }
  for (const auto& note : m1.advisories()) d.advisories.push_back(note);
  for (const auto& note : m2.advisories()) d.advisories.push_back(note);
  return FusionModel(std::move(d));
}

BigInt RankCalculator::vacuum_coefficient(std::span<const Label> labels) const {
  const std::size_t n = model_.size();
  std::vector<BigInt> v(n, BigInt(0)), w(n);
  v[model_.vacuum().id] = 1;
  for (auto x : labels) {
    std::fill(w.begin(), w.end(), BigInt(0));
    for (std::uint32_t a = 0; a < n; ++a) {
      if (v[a] == 0) continue;
      for (const auto& [c, m] : model_.product(Label{a}, x)) w[c.id] += v[a] * m;
    }
    std::swap(v, w);
  }
  return v[model_.vacuum().id];
}

BigInt RankCalculator::compute(int g, std::vector<Label> sorted) {
  Key key{g, sorted};
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  BigInt value;
  if (g == 0) {
    value = vacuum_coefficient(sorted);
  } else {
    value = 0;
    for (auto w : model_.labels()) {
      std::vector<Label> next = sorted;
      auto wd = model_.dual(w);
      if (w != model_.vacuum()) next.insert(std::upper_bound(next.begin(), next.end(), w), w);
      if (wd != model_.vacuum()) next.insert(std::upper_bound(next.begin(), next.end(), wd), wd);
      value += compute(g - 1, std::move(next));
    }
  }
  std::unique_lock lock(mutex_);
  memo_.emplace(std::move(key), value);
  return value;
}

BigInt RankCalculator::genus0(std::span<const Label> labels, std::vector<std::string>* notes) {
  return genus(0, labels, notes);
}

BigInt RankCalculator::genus(int g, std::span<const Label> labels, std::vector<std::string>* notes) {
  if (g < 0) throw InvalidParameters("negative genus");
  std::vector<Label> sorted;
  sorted.reserve(labels.size());
  for (auto x : labels) {
    if (!model_.contains(x)) throw LabelNotFound("#" + std::to_string(x.id));
    if (x != model_.vacuum()) sorted.push_back(x);
  }
  if (g == 0 && labels.empty() && notes) notes->push_back("empty-insertion: genus-0 rank with n = 0 taken as 1");
  std::sort(sorted.begin(), sorted.end());
  return compute(g, std::move(sorted));
}

std::size_t RankCalculator::cache_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

BigInt rank_genus0(const FusionModel& model, const Insertion& ins, std::vector<std::string>* notes) {
  RankCalculator calc(model);
  return calc.genus0(ins.labels(), notes);
}

BigInt rank_genus(const FusionModel& model, int g, const Insertion& ins,
                  std::vector<std::string>* notes) {
  RankCalculator calc(model);
  return calc.genus(g, ins.labels(), notes);
}

}  // namespace coinv
