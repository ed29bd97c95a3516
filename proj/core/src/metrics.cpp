#include "svmreg/metrics.hpp"

#include <cmath>
#include <ostream>

#include "svmreg/errors.hpp"
#include "svmreg/matcore.hpp"
#include "svmreg/model.hpp"

namespace svmreg {

namespace {

EvalReport evaluate_impl(const AnyModel& model, const Dataset& test, int num_classes) {
  if (test.n() == 0) throw InvalidInput("evaluate: empty test set");
  const bool binary = num_classes == 2 && test.is_binary();

  EvalReport report;
  report.confusion = DenseMatrix(static_cast<std::size_t>(num_classes),
                                 static_cast<std::size_t>(num_classes));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.n(); ++i) {
    const int predicted = model.predict(test.x.row(i));
    const int actual = test.labels[i];
    if (predicted == actual) ++correct;
    const std::size_t row = binary ? (actual == 1 ? 0 : 1) : static_cast<std::size_t>(actual - 1);
    const std::size_t col =
        binary ? (predicted == 1 ? 0 : 1) : static_cast<std::size_t>(predicted - 1);
    report.confusion(row, col) += 1.0;
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(test.n());

  const NonzeroCounts counts = model.nonzeros(test.relevant_features);
  report.nonzero_total = static_cast<double>(counts.total);
  report.nonzero_relevant = static_cast<double>(counts.relevant);
  report.nonzero_nonrelevant = static_cast<double>(counts.nonrelevant);
  report.has_split = counts.has_split;
  report.binary_feature_mean = model.mean_binary_nonzeros();
  return report;
}

double sample_std(std::span<const double> values, double mean) {
  if (values.size() < 2) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace

EvalReport evaluate(const LinearModel& model, const Dataset& test) {
  return evaluate_impl(AnyModel{model}, test, 2);
}

EvalReport evaluate(const MultiClassModel& model, const Dataset& test) {
  return evaluate_impl(AnyModel{model}, test, model.num_classes);
}

EvalReport evaluate(const AnyModel& model, const Dataset& test) {
  if (const auto* linear = std::get_if<LinearModel>(&model.model))
    return evaluate(*linear, test);
  return evaluate(std::get<MultiClassModel>(model.model), test);
}

EvalReport aggregate_repetitions(std::span<const EvalReport> reports) {
  if (reports.empty()) throw InvalidInput("aggregate_repetitions: no reports");
  const std::size_t k = reports.front().confusion.rows();
  for (const EvalReport& r : reports)
    if (r.confusion.rows() != k || r.has_split != reports.front().has_split)
      throw InvalidInput("aggregate_repetitions: report shapes differ");

  EvalReport out;
  out.repetitions = reports.size();
  out.has_split = reports.front().has_split;
  out.confusion = DenseMatrix(k, k);

  std::vector<double> acc, total, rel, nonrel, bin;
  for (const EvalReport& r : reports) {
    acc.push_back(r.accuracy);
    total.push_back(r.nonzero_total);
    rel.push_back(r.nonzero_relevant);
    nonrel.push_back(r.nonzero_nonrelevant);
    bin.push_back(r.binary_feature_mean);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) out.confusion(i, j) += r.confusion(i, j);
  }
  const double inv = 1.0 / static_cast<double>(reports.size());
  for (double& v : out.confusion.data()) v *= inv;

  auto mean_of = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s * inv;
  };
  out.accuracy = mean_of(acc);
  out.nonzero_total = mean_of(total);
  out.nonzero_relevant = mean_of(rel);
  out.nonzero_nonrelevant = mean_of(nonrel);
  out.binary_feature_mean = mean_of(bin);
  out.accuracy_std = sample_std(acc, out.accuracy);
  out.nonzero_total_std = sample_std(total, out.nonzero_total);
  out.nonzero_relevant_std = sample_std(rel, out.nonzero_relevant);
  out.nonzero_nonrelevant_std = sample_std(nonrel, out.nonzero_nonrelevant);
  out.binary_feature_std = sample_std(bin, out.binary_feature_mean);
  return out;
}

GroupingAudit grouping_audit(const LinearModel& model, const Dataset& standardized,
                             double lambda2, double epsilon) {
  if (model.penalty.kind != PenaltyKind::ElasticNet)
    throw InvalidInput("grouping_audit: model must be elastic-net trained");
  if (!(lambda2 > 0.0)) throw InvalidInput("grouping_audit: lambda2 must be positive");
  if (model.p() != standardized.p())
    throw InvalidInput("grouping_audit: model/data dimension mismatch");

  const std::size_t n = standardized.n();
  const std::size_t p = standardized.p();
  GroupingAudit audit;
  audit.lambda2 = lambda2;
  audit.epsilon = epsilon;
  audit.n = n;
  audit.pairs.reserve(p * (p - 1) / 2);

  const double scale = std::sqrt(static_cast<double>(n)) / lambda2;
  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = standardized.x.row(i);
    for (std::size_t j = 0; j < p; ++j) cols[j][i] = row[j];
  }

  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t l = j + 1; l < p; ++l) {
      GroupingPair pair;
      pair.j = j;
      pair.l = l;
      pair.rho = pearson_correlation(cols[j], cols[l]);
      pair.gap = std::abs(model.beta[j] - model.beta[l]);
      pair.bound = scale * std::sqrt(std::max(0.0, 2.0 * (1.0 - pair.rho)));
      pair.slack = pair.bound + epsilon - pair.gap;
      pair.pass = pair.slack >= 0.0;
      if (!pair.pass) audit.all_pass = false;
      audit.pairs.push_back(pair);
    }
  return audit;
}

void write_audit_csv(const GroupingAudit& audit, std::ostream& os) {
  os << "j,l,rho,gap,bound,slack,pass\n";
  for (const GroupingPair& p : audit.pairs)
    os << (p.j + 1) << ',' << (p.l + 1) << ',' << format_double(p.rho) << ','
       << format_double(p.gap) << ',' << format_double(p.bound) << ','
       << format_double(p.slack) << ',' << (p.pass ? 1 : 0) << '\n';
}

void write_report_summary(const EvalReport& report, std::ostream& os) {
  os << "accuracy " << format_double(report.accuracy);
  if (report.repetitions > 1) os << " (std " << format_double(report.accuracy_std) << ")";
  os << "\nnonzero " << format_double(report.nonzero_total);
  if (report.repetitions > 1) os << " (std " << format_double(report.nonzero_total_std) << ")";
  if (report.has_split) {
    os << "\nrelevant " << format_double(report.nonzero_relevant);
    os << "\nnonrelevant " << format_double(report.nonzero_nonrelevant);
  }
  os << "\nconfusion";
  for (std::size_t i = 0; i < report.confusion.rows(); ++i) {
    os << '\n';
    for (std::size_t j = 0; j < report.confusion.cols(); ++j) {
      if (j) os << ' ';
      os << format_double(report.confusion(i, j));
    }
  }
  os << '\n';
}

}  // namespace svmreg
