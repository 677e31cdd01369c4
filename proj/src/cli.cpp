#include "coinv/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "coinv/error.hpp"
#include "coinv/voa_models.hpp"
#include "coinv/zhu_series.hpp"

namespace coinv::cli {

namespace {

constexpr std::string_view kTensor = "\xE2\x8A\x97";  // U+2297

class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : text_(text) {}

  FusionModel parse() {
    FusionModel m = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected input '" + text_.substr(pos_) + "'", pos_);
    return m;
  }

 private:
  FusionModel expr() {
    FusionModel m = term();
    while (operator_ahead()) m = tensor_product(m, term());
    return m;
  }

  FusionModel term() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("expected a model", pos_);
    if (text_[pos_] == '(') {
      ++pos_;
      FusionModel m = expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return m;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_.compare(pos_, kTensor.size(), kTensor) != 0)
      ++pos_;
    const std::string leaf = text_.substr(start, pos_ - start);
    if (leaf.empty()) throw ParseError("expected a model", start);
    if (leaf == "x") throw ParseError("operator 'x' without a left operand", start);
    return resolve(leaf, start);
  }

  bool operator_ahead() {
    skip_space();
    if (text_.compare(pos_, kTensor.size(), kTensor) == 0) {
      pos_ += kTensor.size();
      return true;
    }
    if (pos_ < text_.size() && text_[pos_] == 'x' &&
        (pos_ + 1 == text_.size() || std::isspace(static_cast<unsigned char>(text_[pos_ + 1])) ||
         text_[pos_ + 1] == '(') &&
        pos_ > 0 && std::isspace(static_cast<unsigned char>(text_[pos_ - 1]))) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static FusionModel resolve(const std::string& leaf, std::size_t at) {
    auto arg = [&](std::string_view prefix) { return leaf.substr(prefix.size()); };
    if (leaf == "ising") return ising_model();
    if (leaf.rfind("lattice:", 0) == 0) {
      const std::string m = arg("lattice:");
      std::size_t used = 0;
      long value = 0;
      try {
        value = std::stol(m, &used);
      } catch (const std::exception&) {
        throw ParseError("lattice needs an integer pairing, got '" + m + "'", at);
      }
      if (used != m.size()) throw ParseError("lattice needs an integer pairing, got '" + m + "'", at);
      return lattice_model(value);
    }
    if (leaf.rfind("holomorphic:", 0) == 0) {
      try {
        return holomorphic_model(parse_rational(arg("holomorphic:")));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), at);
      }
    }
    if (leaf.rfind("file:", 0) == 0) return load_model_file(arg("file:"));
    throw ParseError("unknown model '" + leaf + "'", at);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

Rational rational_field(const Json& v, const std::string& what) {
  if (!v.is_string()) throw InvalidModel(what + " must be a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InvalidModel(what + ": " + e.what());
  }
}

}  // namespace

FusionModel build_model(const std::string& expr) { return ExpressionParser(expr).parse(); }

FusionModel parse_model(const std::string& expr) {
  FusionModel m = build_model(expr);
  auto diags = validate_model(m);
  if (!diags.empty()) {
    std::string msg = "model '" + expr + "' fails validation:";
    for (const auto& d : diags) msg += " [" + d.law + " " + d.witness + "]";
    throw InvalidModel(msg);
  }
  return m;
}

FusionModel model_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidModel("model document must be a JSON object");
  static const std::set<std::string> known{"labels", "vacuum", "dual", "mult", "conf_dim", "central_charge"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw InvalidModel("unknown field '" + key + "'");
  for (const auto& key : known)
    if (key != "dual" && key != "mult" && !doc.contains(key)) throw InvalidModel("missing field '" + key + "'");

  FusionData d;
  if (!doc["labels"].is_array()) throw InvalidModel("labels must be an array of strings");
  for (const auto& l : doc["labels"]) {
    if (!l.is_string()) throw InvalidModel("labels must be an array of strings");
    d.names.push_back(l.get<std::string>());
  }
  const std::size_t n = d.names.size();
  auto index = [&](const Json& v, const std::string& what) -> Label {
    if (!v.is_string()) throw InvalidModel(what + " must be a label string");
    const auto s = v.get<std::string>();
    for (std::uint32_t i = 0; i < n; ++i)
      if (d.names[i] == s) return Label{i};
    throw InvalidModel(what + " refers to unknown label '" + s + "'");
  };

  d.vacuum = index(doc["vacuum"], "vacuum");
  d.dual.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) d.dual[i] = Label{i};
  if (doc.contains("dual")) {
    if (!doc["dual"].is_object()) throw InvalidModel("dual must be an object label -> label");
    for (const auto& [key, value] : doc["dual"].items()) d.dual[index(Json(key), "dual key").id] = index(value, "dual value");
  }

  d.mult.assign(n * n * n, BigInt(0));
  if (doc.contains("mult")) {
    if (!doc["mult"].is_array()) throw InvalidModel("mult must be an array of [a, b, c, multiplicity]");
    for (const auto& q : doc["mult"]) {
      if (!q.is_array() || q.size() != 4) throw InvalidModel("mult entries must be [a, b, c, multiplicity]");
      const auto a = index(q[0], "mult"), b = index(q[1], "mult"), c = index(q[2], "mult");
      BigInt m;
      if (q[3].is_number_unsigned())
        m = BigInt(std::to_string(q[3].get<std::uint64_t>()));
      else if (q[3].is_string() && !q[3].get<std::string>().empty() &&
               q[3].get<std::string>().find_first_not_of("0123456789") == std::string::npos)
        m = BigInt(q[3].get<std::string>());
      else
        throw InvalidModel("multiplicity must be a nonnegative integer");
      d.mult[(a.id * n + b.id) * n + c.id] = m;
    }
  }

  if (!doc["conf_dim"].is_object()) throw InvalidModel("conf_dim must be an object label -> \"p/q\"");
  d.conf_dim.assign(n, Rational(0));
  std::vector<bool> seen(n, false);
  for (const auto& [key, value] : doc["conf_dim"].items()) {
    const auto x = index(Json(key), "conf_dim key");
    d.conf_dim[x.id] = rational_field(value, "conf_dim of '" + key + "'");
    seen[x.id] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) throw InvalidModel("conf_dim missing for label '" + d.names[i] + "'");
  d.central_charge = rational_field(doc["central_charge"], "central_charge");
  return FusionModel(std::move(d));
}

Json model_to_json(const FusionModel& model) {
  Json doc;
  doc["labels"] = Json::array();
  for (auto x : model.labels()) doc["labels"].push_back(model.name(x));
  doc["vacuum"] = model.name(model.vacuum());
  doc["dual"] = Json::object();
  for (auto x : model.labels()) doc["dual"][model.name(x)] = model.name(model.dual(x));
  doc["mult"] = Json::array();
  for (auto a : model.labels())
    for (auto b : model.labels())
      for (const auto& [c, m] : model.product(a, b)) {
        Json entry = Json::array({model.name(a), model.name(b), model.name(c)});
        if (m.fits_ulong_p())
          entry.push_back(m.get_ui());
        else
          entry.push_back(m.get_str());
        doc["mult"].push_back(std::move(entry));
      }
  doc["conf_dim"] = Json::object();
  for (auto x : model.labels()) doc["conf_dim"][model.name(x)] = to_string(model.conf_dim(x));
  doc["central_charge"] = to_string(model.central_charge());
  return doc;
}

FusionModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidModel("cannot open model file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidModel("model file '" + path + "': " + e.what());
  }
  return model_from_json(doc);
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> raw;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      raw.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in label list", text.size());
  if (!cur.empty() || !raw.empty()) raw.push_back(cur);

  std::vector<std::string> out;
  for (const auto& item : raw) {
    if (item.empty()) throw ParseError("empty label in list", 0);
    auto caret = item.rfind('^');
    if (caret == std::string::npos || item.find(')', caret) != std::string::npos) {
      out.push_back(item);
      continue;
    }
    const std::string count = item.substr(caret + 1);
    if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad repeat count in '" + item + "'", 0);
    for (long k = std::stol(count); k > 0; --k) out.push_back(item.substr(0, caret));
  }
  return out;
}

Json to_json(const DivisorClass& d) {
  Json out = Json::object();
  for (const auto& [key, v] : d.terms()) out[key] = to_string(v);
  return out;
}

Json to_json(const FCurve& f) {
  Json out = Json::array();
  for (const auto& block : f.block_lists()) out.push_back(block);
  return out;
}

Json to_json(const NefCertificate& cert) {
  Json out;
  out["status"] = cert.status == NefStatus::FNef ? "F-nef" : "not-F-nef";
  out["nef_concluded"] = cert.nef_concluded;
  out["curves_checked"] = to_string(cert.curves_checked);
  auto value = [](const FCurveValue& v) { return Json{{"curve", to_json(v.curve)}, {"value", to_string(v.value)}}; };
  out["minimum"] = cert.minimum ? value(*cert.minimum) : Json(nullptr);
  out["witness"] = cert.witness ? value(*cert.witness) : Json(nullptr);
  return out;
}

Json to_json(const GgReport& r) {
  Json out;
  out["genus"] = r.genus;
  out["rank"] = to_string(r.rank);
  out["central_charge"] = to_string(r.central_charge);
  out["negative_central_charge"] = r.negative_central_charge;
  out["conf_dim_sum"] = to_string(r.integrality.sum);
  out["integral"] = r.integrality.integral;
  out["c1"] = r.c1 ? to_json(*r.c1) : Json(nullptr);
  out["degree"] = r.degree ? Json(to_string(*r.degree)) : Json(nullptr);
  out["fnef"] = r.fnef ? to_json(*r.fnef) : Json(nullptr);
  out["obstruction"] = r.obstruction;
  out["verdicts"] = r.verdicts;
  return out;
}

namespace {

struct LatticeTarget {
  EvenLattice lattice;
  Coset coset;
};

LatticeTarget lattice_target(const JobSpec& job) {
  if (!job.gram.empty()) {
    std::vector<std::vector<long>> rows;
    std::stringstream rs(job.gram);
    std::string row;
    while (std::getline(rs, row, ';')) {
      std::vector<long> r;
      std::stringstream es(row);
      std::string e;
      while (std::getline(es, e, ',')) {
        try {
          r.push_back(std::stol(e));
        } catch (const std::exception&) {
          throw InvalidParameters("bad Gram entry '" + e + "'");
        }
      }
      rows.push_back(std::move(r));
    }
    EvenLattice lattice(std::move(rows));
    Coset coset;
    if (job.coset.empty()) {
      coset.assign(lattice.rank(), Rational(0));
    } else {
      std::stringstream cs(job.coset);
      std::string e;
      while (std::getline(cs, e, ',')) coset.push_back(parse_rational(e));
    }
    return {std::move(lattice), std::move(coset)};
  }
  const std::string prefix = "lattice:";
  if (job.model.rfind(prefix, 0) != 0)
    throw InvalidParameters("zhu commands need --model lattice:<m> or --gram");
  const long m = std::stol(job.model.substr(prefix.size()));
  FusionModel model = lattice_model(m);
  const Label j = model.find(job.label.empty() ? "0" : job.label);
  return {EvenLattice::rank_one(m), lattice_coset(m, j.id)};
}

void print_class_table(std::ostream& out, const DivisorClass& d) {
  const auto terms = d.terms();
  if (terms.empty()) out << "  0\n";
  std::size_t width = 22;
  for (const auto& t : terms) width = std::max(width, t.first.size());
  for (const auto& [key, v] : terms)
    out << "  " << std::left << std::setw(static_cast<int>(width) + 2) << key << to_string(v) << '\n';
}

void print_cert_table(std::ostream& out, const NefCertificate& c) {
  out << "status: " << (c.status == NefStatus::FNef ? "F-nef" : "not-F-nef") << '\n';
  out << "nef concluded: " << (c.nef_concluded ? "yes" : "no") << '\n';
  out << "curves checked: " << to_string(c.curves_checked) << '\n';
  if (c.minimum) out << "minimum: " << to_string(c.minimum->value) << " on " << to_string(c.minimum->curve) << '\n';
  if (c.witness) out << "witness: " << to_string(c.witness->curve) << " -> " << to_string(c.witness->value) << '\n';
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json header(const JobSpec& job) {
  Json j;
  j["command"] = job.command;
  j["model"] = job.model;
  return j;
}

int dispatch(const JobSpec& job, std::ostream& out) {
  const bool machine = job.format == Format::Machine;
  const auto& cmd = job.command;

  if (cmd == "spectrum") {
    auto s = minimal_series_spectrum({job.p, job.q});
    if (machine) {
      Json j = header(job);
      j.erase("model");
      j["p"] = job.p;
      j["q"] = job.q;
      j["central_charge"] = to_string(s.central_charge);
      j["weights"] = Json::array();
      for (const auto& w : s.weights) j["weights"].push_back({{"m", w.m}, {"n", w.n}, {"h", to_string(w.h)}});
      emit(out, j);
    } else {
      out << "c = " << to_string(s.central_charge) << '\n';
      for (const auto& w : s.weights) out << "(" << w.m << "," << w.n << ")  h = " << to_string(w.h) << '\n';
    }
    return kExitOk;
  }

  if (cmd == "zhu-dim" || cmd == "zhu-series") {
    auto target = lattice_target(job);
    if (cmd == "zhu-dim") {
      const BigInt dim = lowest_weight_dim(target.lattice, target.coset);
      const Rational a = conformal_weight(target.lattice, target.coset);
      if (machine) {
        Json j = header(job);
        j["label"] = job.label;
        j["conformal_weight"] = to_string(a);
        j["dimension"] = to_string(dim);
        emit(out, j);
      } else {
        out << to_string(dim) << '\n';
      }
      return kExitOk;
    }
    auto series = graded_dims(target.lattice, target.coset, job.n_max);
    out << "n,dimension\n";
    for (std::size_t n = 0; n < series.coeffs.size(); ++n) out << n << ',' << to_string(series.coeffs[n]) << '\n';
    return kExitOk;
  }

  if (cmd == "validate") {
    FusionModel model = build_model(job.model);
    auto diags = validate_model(model);
    if (machine) {
      Json j = header(job);
      j["diagnostics"] = Json::array();
      for (const auto& d : diags) j["diagnostics"].push_back({{"law", d.law}, {"witness", d.witness}});
      j["advisories"] = model.advisories();
      j["data"] = model_to_json(model);
      emit(out, j);
    } else {
      out << model.size() << " labels, central charge " << to_string(model.central_charge()) << '\n';
      for (const auto& a : model.advisories()) out << "advisory: " << a << '\n';
      if (diags.empty()) out << "valid\n";
      for (const auto& d : diags) out << "violated: " << d.law << " " << d.witness << '\n';
    }
    return diags.empty() ? kExitOk : kExitInputError;
  }

  FusionModel model = parse_model(job.model);
  const Insertion ins = Insertion::parse(model, job.labels);
  Json j = header(job);
  j["genus"] = job.genus;
  j["labels"] = job.labels;

  if (cmd == "rank") {
    std::vector<std::string> notes;
    const BigInt r = rank_genus(model, job.genus, ins, &notes);
    if (machine) {
      j["rank"] = to_string(r);
      j["notes"] = notes;
      emit(out, j);
    } else {
      out << to_string(r) << '\n';
      for (const auto& n : notes) out << "note: " << n << '\n';
    }
    return kExitOk;
  }

  if (cmd == "integrality") {
    auto r = integrality_check(model, ins);
    if (machine) {
      j["sum"] = to_string(r.sum);
      j["integral"] = r.integral;
      emit(out, j);
    } else {
      out << "sum = " << to_string(r.sum) << (r.integral ? "  (integral)" : "  (not integral)") << '\n';
    }
    return kExitOk;
  }

  if (cmd == "c1") {
    RankCalculator ranks(model);
    auto d = chern_class(ranks, job.genus, ins, job.workers);
    if (machine) {
      j["rank"] = to_string(ranks.genus(job.genus, ins.labels()));
      j["class"] = to_json(d);
      emit(out, j);
    } else {
      out << "rank " << to_string(ranks.genus(job.genus, ins.labels())) << ", c1 =\n";
      print_class_table(out, d);
    }
    return kExitOk;
  }

  if (cmd == "degree4") {
    const Rational deg = degree_m04(chern_class(model, job.genus, ins));
    if (machine) {
      j["degree"] = to_string(deg);
      emit(out, j);
    } else {
      out << to_string(deg) << '\n';
    }
    return deg < 0 ? kExitObstruction : kExitOk;
  }

  if (cmd == "fnef") {
    auto d = chern_class(model, job.genus, ins, job.workers);
    NefCertificate cert;
    if (job.symmetric) {
      auto s = symmetrize(d);
      if (auto* w = std::get_if<AsymmetryWitness>(&s))
        throw InvalidParameters("class is not S_n-invariant: " + w->first + " != " + w->second);
      cert = fnef_check_symmetric(std::get<SymmetricDivisor>(s));
    } else {
      cert = fnef_check(d, job.workers);
    }
    if (machine) {
      j["certificate"] = to_json(cert);
      emit(out, j);
    } else {
      print_cert_table(out, cert);
    }
    return cert.status == NefStatus::NotFNef ? kExitObstruction : kExitOk;
  }

  if (cmd == "report") {
    auto r = gg_report(model, job.genus, ins, job.workers);
    if (machine) {
      j["report"] = to_json(r);
      emit(out, j);
    } else {
      out << "rank: " << to_string(r.rank) << '\n';
      out << "conformal dimension sum: " << to_string(r.integrality.sum)
          << (r.integrality.integral ? " (integral)" : " (not integral)") << '\n';
      out << "central charge: " << to_string(r.central_charge) << '\n';
      if (r.c1) {
        out << "c1:\n";
        print_class_table(out, *r.c1);
      }
      if (r.degree) out << "degree: " << to_string(*r.degree) << '\n';
      if (r.fnef) print_cert_table(out, *r.fnef);
      for (const auto& v : r.verdicts) out << "verdict: " << v << '\n';
    }
    return r.obstruction ? kExitObstruction : kExitOk;
  }

  throw InvalidParameters("unknown command '" + cmd + "'");
}

}  // namespace

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(job, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace coinv::cli
