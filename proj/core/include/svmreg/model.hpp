#ifndef SVMREG_MODEL_HPP
#define SVMREG_MODEL_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "svmreg/matcore.hpp"
#include "svmreg/matrix.hpp"
#include "svmreg/penalty.hpp"
#include "svmreg/solvers.hpp"

namespace svmreg {

// Trained binary classifier f(x) = beta0 + x^T beta, with the fitted
// standardization (if any) baked in so prediction works on raw inputs.
struct LinearModel {
  double beta0 = 0.0;
  std::vector<double> beta;
  PenaltySpec penalty;
  Standardizer standardizer;  // mode None when training was on raw features
  SolveReport report;

  std::size_t p() const { return beta.size(); }
};

double decision_value(const LinearModel& model, std::span<const double> x);
// sign(f); f == 0 maps to +1.
int predict_binary(const LinearModel& model, std::span<const double> x);

enum class MultiClassOrigin { OneVsAll, L1Msvm };

struct MultiClassModel {
  int num_classes = 0;
  std::vector<double> intercepts;  // k
  DenseMatrix coefficients;        // k x p
  MultiClassOrigin origin = MultiClassOrigin::OneVsAll;
  PenaltySpec penalty;
  Standardizer standardizer;
  std::vector<SolveReport> reports;  // per class (OVA) or single entry (L1MSVM)

  std::size_t p() const { return coefficients.cols(); }
};

std::vector<double> decision_values(const MultiClassModel& model, std::span<const double> x);
// argmax_c f_c(x); ties resolve to the lowest class index. Returns 1..k.
int predict_multiclass(const MultiClassModel& model, std::span<const double> x);

// Self-describing text serialization, full-precision decimal values;
// round-trips are bit-faithful for all finite values.
void save_model(const LinearModel& model, std::ostream& os);
void save_model(const MultiClassModel& model, std::ostream& os);
void save_model_file(const LinearModel& model, const std::string& path);
void save_model_file(const MultiClassModel& model, const std::string& path);

using AnyModelVariant = std::variant<LinearModel, MultiClassModel>;
AnyModelVariant load_model(std::istream& is);
AnyModelVariant load_model_file(const std::string& path);

// Full-precision decimal rendering (17 significant digits round-trips any
// finite double exactly).
std::string format_double(double v);
double parse_double(const std::string& token);

}  // namespace svmreg

#endif
