#include "svmreg/model.hpp"

#include <cassert>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "svmreg/errors.hpp"

namespace svmreg {

namespace {

double raw_decision(double beta0, std::span<const double> beta, std::span<const double> x) {
  double f = beta0;
  for (std::size_t j = 0; j < beta.size(); ++j) f += beta[j] * x[j];
  return f;
}

std::vector<double> maybe_standardized(const Standardizer& t, std::span<const double> x) {
  return t.apply(x);
}

void write_vector(std::ostream& os, const char* key, std::span<const double> v) {
  os << key;
  for (double x : v) os << ' ' << format_double(x);
  os << '\n';
}

void write_penalty(std::ostream& os, const PenaltySpec& s) {
  os << "penalty " << s.name() << '\n';
  switch (s.kind) {
    case PenaltyKind::ElasticNet:
      os << "lambda1 " << format_double(s.lambda1) << '\n';
      os << "lambda2 " << format_double(s.lambda2) << '\n';
      break;
    case PenaltyKind::KSupport:
      os << "lambda " << format_double(s.lambda) << '\n';
      os << "k " << s.k << '\n';
      break;
    default:
      os << "lambda " << format_double(s.lambda) << '\n';
  }
}

void write_standardizer(std::ostream& os, const Standardizer& t) {
  os << "standardize " << to_string(t.mode) << '\n';
  if (t.mode != StandardizeMode::None) {
    write_vector(os, "means", t.means);
    write_vector(os, "scales", t.scales);
  }
}

// Line-oriented "key value..." reader.
class KvReader {
 public:
  explicit KvReader(std::istream& is) : is_(is) {}

  bool next() {
    std::string line;
    for (;;) {
      if (!std::getline(is_, line)) return false;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) break;
    }
    std::istringstream ls(line);
    ls >> key_;
    values_.clear();
    std::string tok;
    while (ls >> tok) values_.push_back(tok);
    return true;
  }

  void expect(const std::string& key) {
    if (!next() || key_ != key)
      throw DataError("model file: expected key '" + key + "', got '" + key_ + "'");
  }

  const std::string& key() const { return key_; }
  const std::vector<std::string>& values() const { return values_; }

  std::string one() const {
    if (values_.size() != 1) throw DataError("model file: key '" + key_ + "' needs one value");
    return values_[0];
  }

  std::vector<double> doubles() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (const auto& t : values_) out.push_back(parse_double(t));
    return out;
  }

 private:
  std::istream& is_;
  std::string key_;
  std::vector<std::string> values_;
};

PenaltySpec read_penalty(KvReader& r) {
  r.expect("penalty");
  const std::string kind = r.one();
  if (kind == "elasticnet") {
    r.expect("lambda1");
    const double l1 = parse_double(r.one());
    r.expect("lambda2");
    const double l2 = parse_double(r.one());
    return PenaltySpec::elastic_net(l1, l2);
  }
  if (kind == "ksupport") {
    r.expect("lambda");
    const double l = parse_double(r.one());
    r.expect("k");
    const int k = std::stoi(r.one());
    return PenaltySpec::ksupport(l, k);
  }
  r.expect("lambda");
  const double l = parse_double(r.one());
  return kind == "l1" ? PenaltySpec::l1(l) : PenaltySpec::l2(l);
}

Standardizer read_standardizer(KvReader& r, std::size_t p) {
  r.expect("standardize");
  Standardizer t;
  t.mode = standardize_mode_from_string(r.one());
  if (t.mode != StandardizeMode::None) {
    r.expect("means");
    t.means = r.doubles();
    r.expect("scales");
    t.scales = r.doubles();
    if (t.means.size() != p || t.scales.size() != p)
      throw DataError("model file: standardizer size mismatch");
  } else {
    t.means.assign(p, 0.0);
    t.scales.assign(p, 1.0);
  }
  return t;
}

}  // namespace

double decision_value(const LinearModel& model, std::span<const double> x) {
  if (x.size() != model.p()) throw InvalidInput("decision_value: dimension mismatch");
  if (model.standardizer.mode == StandardizeMode::None)
    return raw_decision(model.beta0, model.beta, x);
  const std::vector<double> z = maybe_standardized(model.standardizer, x);
  return raw_decision(model.beta0, model.beta, z);
}

int predict_binary(const LinearModel& model, std::span<const double> x) {
  return decision_value(model, x) >= 0.0 ? 1 : -1;
}

std::vector<double> decision_values(const MultiClassModel& model, std::span<const double> x) {
  if (x.size() != model.p()) throw InvalidInput("decision_values: dimension mismatch");
  std::vector<double> z;
  std::span<const double> in = x;
  if (model.standardizer.mode != StandardizeMode::None) {
    z = maybe_standardized(model.standardizer, x);
    in = z;
  }
  std::vector<double> f(static_cast<std::size_t>(model.num_classes));
  for (int c = 0; c < model.num_classes; ++c)
    f[static_cast<std::size_t>(c)] =
        raw_decision(model.intercepts[static_cast<std::size_t>(c)],
                     model.coefficients.row(static_cast<std::size_t>(c)), in);
  return f;
}

int predict_multiclass(const MultiClassModel& model, std::span<const double> x) {
  const std::vector<double> f = decision_values(model, x);
  int best = 1;
  for (int c = 2; c <= model.num_classes; ++c)
    if (f[static_cast<std::size_t>(c - 1)] > f[static_cast<std::size_t>(best - 1)]) best = c;
  return best;
}

void save_model(const LinearModel& model, std::ostream& os) {
  os << "svmreg-model 1\n";
  os << "type binary\n";
  write_penalty(os, model.penalty);
  os << "p " << model.p() << '\n';
  write_standardizer(os, model.standardizer);
  os << "beta0 " << format_double(model.beta0) << '\n';
  write_vector(os, "beta", model.beta);
}

void save_model(const MultiClassModel& model, std::ostream& os) {
  os << "svmreg-model 1\n";
  os << "type multiclass\n";
  os << "origin " << (model.origin == MultiClassOrigin::OneVsAll ? "ova" : "l1msvm") << '\n';
  os << "classes " << model.num_classes << '\n';
  write_penalty(os, model.penalty);
  os << "p " << model.p() << '\n';
  write_standardizer(os, model.standardizer);
  write_vector(os, "intercepts", model.intercepts);
  for (int c = 0; c < model.num_classes; ++c) {
    const std::string key = "beta" + std::to_string(c + 1);
    write_vector(os, key.c_str(), model.coefficients.row(static_cast<std::size_t>(c)));
  }
}

void save_model_file(const LinearModel& model, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open model file for writing: " + path);
  save_model(model, os);
}

void save_model_file(const MultiClassModel& model, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open model file for writing: " + path);
  save_model(model, os);
}

AnyModelVariant load_model(std::istream& is) {
  KvReader r(is);
  r.expect("svmreg-model");
  if (r.one() != "1") throw DataError("model file: unsupported version");
  r.expect("type");
  const std::string type = r.one();

  if (type == "binary") {
    LinearModel m;
    m.penalty = read_penalty(r);
    r.expect("p");
    const std::size_t p = static_cast<std::size_t>(std::stoul(r.one()));
    m.standardizer = read_standardizer(r, p);
    r.expect("beta0");
    m.beta0 = parse_double(r.one());
    r.expect("beta");
    m.beta = r.doubles();
    if (m.beta.size() != p) throw DataError("model file: beta size mismatch");
    return m;
  }
  if (type == "multiclass") {
    MultiClassModel m;
    r.expect("origin");
    m.origin = r.one() == "l1msvm" ? MultiClassOrigin::L1Msvm : MultiClassOrigin::OneVsAll;
    r.expect("classes");
    m.num_classes = std::stoi(r.one());
    m.penalty = read_penalty(r);
    r.expect("p");
    const std::size_t p = static_cast<std::size_t>(std::stoul(r.one()));
    m.standardizer = read_standardizer(r, p);
    r.expect("intercepts");
    m.intercepts = r.doubles();
    if (m.intercepts.size() != static_cast<std::size_t>(m.num_classes))
      throw DataError("model file: intercept count mismatch");
    m.coefficients = DenseMatrix(static_cast<std::size_t>(m.num_classes), p);
    for (int c = 0; c < m.num_classes; ++c) {
      r.expect("beta" + std::to_string(c + 1));
      const std::vector<double> row = r.doubles();
      if (row.size() != p) throw DataError("model file: beta row size mismatch");
      auto dst = m.coefficients.row(static_cast<std::size_t>(c));
      std::copy(row.begin(), row.end(), dst.begin());
    }
    return m;
  }
  throw DataError("model file: unknown type '" + type + "'");
}

AnyModelVariant load_model_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open model file: " + path);
  return load_model(is);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw DataError("bad numeric value: '" + token + "'");
  return v;
}

}  // namespace svmreg
