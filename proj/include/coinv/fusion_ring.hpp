#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coinv/rational.hpp"

namespace coinv {

/// Index of a simple module inside a FusionModel.
struct Label {
  std::uint32_t id = 0;
  friend auto operator<=>(const Label&, const Label&) = default;
};

/// Raw tables a FusionModel is built from. `mult` is dense, indexed
/// (a * size + b) * size + c for N_{ab}^c.
struct FusionData {
  std::vector<std::string> names;
  Label vacuum;
  std::vector<Label> dual;
  std::vector<BigInt> mult;
  std::vector<Rational> conf_dim;
  Rational central_charge;
  /// Extra names accepted by find(); alias -> canonical label.
  std::map<std::string, Label> aliases;
  /// Free-form notes attached by a constructor (e.g. unusual central charge).
  std::vector<std::string> advisories;
};

/// Finite fusion ring of a VOA's simple modules together with the conformal
/// data entering the Chern class formula.
///
/// Construction only checks that the tables are structurally well formed
/// (sizes, index ranges, unique names, nonnegative multiplicities). The
/// algebraic laws are reported by validate_model(), so broken models can be
/// represented and diagnosed.
class FusionModel {
 public:
  explicit FusionModel(FusionData data);

  std::size_t size() const { return data_.names.size(); }
  std::vector<Label> labels() const;

  const std::string& name(Label x) const { return data_.names.at(x.id); }
  /// Resolves a canonical name or alias. Throws LabelNotFound.
  Label find(const std::string& name) const;
  bool contains(Label x) const { return x.id < size(); }

  Label vacuum() const { return data_.vacuum; }
  Label dual(Label x) const { return data_.dual.at(x.id); }
  const BigInt& mult(Label a, Label b, Label c) const {
    return data_.mult[(a.id * size() + b.id) * size() + c.id];
  }
  const Rational& conf_dim(Label x) const { return data_.conf_dim.at(x.id); }
  const Rational& central_charge() const { return data_.central_charge; }

  /// Nonzero entries c -> N_{ab}^c, sorted by c.
  const std::vector<std::pair<Label, BigInt>>& product(Label a, Label b) const {
    return products_[a.id * size() + b.id];
  }

  const FusionData& data() const { return data_; }
  const std::vector<std::string>& advisories() const { return data_.advisories; }

  friend bool operator==(const FusionModel& x, const FusionModel& y);

 private:
  FusionData data_;
  std::vector<std::vector<std::pair<Label, BigInt>>> products_;
};

/// Ordered list of module labels attached to marked points 1..n.
class Insertion {
 public:
  Insertion() = default;
  explicit Insertion(std::vector<Label> labels) : labels_(std::move(labels)) {}

  /// Resolves each name against the model. Throws LabelNotFound.
  static Insertion parse(const FusionModel& model, const std::vector<std::string>& names);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  Label operator[](std::size_t i) const { return labels_[i]; }
  std::span<const Label> labels() const { return labels_; }

  /// Throws LabelNotFound when an entry is out of range for the model.
  void check(const FusionModel& model) const;

 private:
  std::vector<Label> labels_;
};

/// c -> N_{ab}^c over all labels (zeros included as absent keys).
std::map<Label, BigInt> fuse(const FusionModel& model, Label a, Label b);
std::map<std::string, BigInt> fuse(const FusionModel& model, const std::string& a,
                                   const std::string& b);

/// One violated law with a concrete witness.
struct Diagnostic {
  std::string law;
  std::string witness;
};

/// Checks every algebraic law of a fusion model; empty iff all hold.
/// Reports at most one witness per law.
std::vector<Diagnostic> validate_model(const FusionModel& model);

/// Componentwise product; labels are pairs named "(a,b)".
FusionModel tensor_product(const FusionModel& m1, const FusionModel& m2);

/// Memoizing rank evaluator for one model.
///
/// Genus 0 ranks are the vacuum coefficient of the full fusion product;
/// positive genus uses the handle recursion
///   rank_g(ins) = sum_W rank_{g-1}(ins + {W, W'}).
/// The cache is keyed on (g, sorted label multiset with vacua removed) and is
/// safe for concurrent use. Dropping vacua relies on the unit law, so the
/// model is expected to pass validate_model().
class RankCalculator {
 public:
  explicit RankCalculator(const FusionModel& model) : model_(model) {}

  const FusionModel& model() const { return model_; }

  /// Empty input returns 1; when `notes` is supplied an "empty-insertion"
  /// note is appended.
  BigInt genus0(std::span<const Label> labels, std::vector<std::string>* notes = nullptr);
  BigInt genus(int g, std::span<const Label> labels, std::vector<std::string>* notes = nullptr);

  std::size_t cache_size() const;

 private:
  using Key = std::pair<int, std::vector<Label>>;

  BigInt compute(int g, std::vector<Label> sorted);
  BigInt vacuum_coefficient(std::span<const Label> labels) const;

  const FusionModel& model_;
  mutable std::shared_mutex mutex_;
  std::map<Key, BigInt> memo_;
};

BigInt rank_genus0(const FusionModel& model, const Insertion& ins,
                   std::vector<std::string>* notes = nullptr);
BigInt rank_genus(const FusionModel& model, int g, const Insertion& ins,
                  std::vector<std::string>* notes = nullptr);

}  // namespace coinv
