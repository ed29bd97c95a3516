#include "svmreg/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "svmreg/errors.hpp"
#include "svmreg/model.hpp"
#include "svmreg/parallel.hpp"
#include "svmreg/rng.hpp"

namespace svmreg {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == delimiter) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return s.substr(a, b - a);
}

bool parse_double_checked(const std::string& token, double& out) {
  try {
    out = parse_double(token);
    return true;
  } catch (const DataError&) {
    return false;
  }
}

}  // namespace

Dataset load_delimited(const std::string& path, const LoadOptions& opts) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open dataset file: " + path);
  return parse_delimited(is, opts, path);
}

Dataset parse_delimited(std::istream& is, const LoadOptions& opts, const std::string& origin) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> raw_labels;

  if (opts.header) {
    if (!std::getline(is, line)) throw DataError(origin + ": empty file");
    ++line_no;
    names = split_line(trim(line), opts.delimiter);
    columns = names.size();
  }

  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::vector<std::string> cells = split_line(t, opts.delimiter);
    if (columns == 0) columns = cells.size();
    if (cells.size() != columns)
      throw DataError(origin + ": ragged row at line " + std::to_string(line_no) + " (" +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(columns) + ")");
    if (opts.label_column >= columns)
      throw DataError(origin + ": label column out of range");
    std::vector<double> row;
    row.reserve(columns - 1);
    for (std::size_t c = 0; c < columns; ++c) {
      if (c == opts.label_column) {
        raw_labels.push_back(trim(cells[c]));
        continue;
      }
      double v;
      if (!parse_double_checked(trim(cells[c]), v))
        throw DataError(origin + ": non-numeric feature cell at line " +
                        std::to_string(line_no) + ", column " + std::to_string(c + 1));
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(origin + ": no data rows");

  Dataset ds;
  const std::size_t p = columns - 1;
  ds.x = DenseMatrix(rows.size(), p);
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::copy(rows[i].begin(), rows[i].end(), ds.x.row(i).begin());

  ds.labels.resize(raw_labels.size());
  if (!opts.positive_label.empty()) {
    for (std::size_t i = 0; i < raw_labels.size(); ++i)
      ds.labels[i] = raw_labels[i] == opts.positive_label ? 1 : -1;
  } else {
    for (std::size_t i = 0; i < raw_labels.size(); ++i) {
      double v;
      if (!parse_double_checked(raw_labels[i], v) || v != std::floor(v))
        throw DataError(origin + ": unknown label value '" + raw_labels[i] +
                        "' (pass the positive class name for textual labels)");
      ds.labels[i] = static_cast<int>(v);
    }
    const bool binary = std::all_of(ds.labels.begin(), ds.labels.end(),
                                    [](int y) { return y == 1 || y == -1; });
    if (!binary)
      for (int y : ds.labels)
        if (y < 1)
          throw DataError(origin + ": labels must be +-1 or class indices 1..k");
  }

  if (opts.header) {
    for (std::size_t c = 0; c < columns; ++c)
      if (c != opts.label_column) ds.feature_names.push_back(names[c]);
  }
  return ds;
}

void write_delimited(const Dataset& ds, std::ostream& os, char delimiter) {
  os << "label";
  for (std::size_t j = 0; j < ds.p(); ++j) {
    os << delimiter;
    if (j < ds.feature_names.size() && !ds.feature_names[j].empty())
      os << ds.feature_names[j];
    else
      os << "f" << (j + 1);
  }
  os << '\n';
  for (std::size_t i = 0; i < ds.n(); ++i) {
    os << ds.labels[i];
    const auto row = ds.x.row(i);
    for (std::size_t j = 0; j < ds.p(); ++j) os << delimiter << format_double(row[j]);
    os << '\n';
  }
}

void save_delimited(const Dataset& ds, const std::string& path, char delimiter) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open dataset file for writing: " + path);
  write_delimited(ds, os, delimiter);
}

Dataset load_sparse_text(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open dataset file: " + path);
  return parse_sparse_text(is, path);
}

Dataset parse_sparse_text(std::istream& is, const std::string& origin) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t max_index = 0;
  std::vector<int> labels;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;

  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream ls(t);
    std::string label_tok;
    ls >> label_tok;
    double label_val;
    if (!parse_double_checked(label_tok, label_val) || label_val != std::floor(label_val))
      throw DataError(origin + ": bad label at line " + std::to_string(line_no));
    labels.push_back(static_cast<int>(label_val));

    std::vector<std::pair<std::size_t, double>> entries;
    std::string pair_tok;
    std::size_t prev_index = 0;
    while (ls >> pair_tok) {
      const std::size_t colon = pair_tok.find(':');
      if (colon == std::string::npos)
        throw DataError(origin + ": malformed index:value pair at line " +
                        std::to_string(line_no));
      std::size_t idx = 0;
      try {
        idx = std::stoul(pair_tok.substr(0, colon));
      } catch (...) {
        throw DataError(origin + ": bad index at line " + std::to_string(line_no));
      }
      if (idx == 0)
        throw DataError(origin + ": indices are 1-based, got 0 at line " +
                        std::to_string(line_no));
      if (idx == prev_index)
        throw DataError(origin + ": duplicate index " + std::to_string(idx) + " at line " +
                        std::to_string(line_no));
      if (idx < prev_index)
        throw DataError(origin + ": indices must be strictly increasing at line " +
                        std::to_string(line_no));
      double v;
      if (!parse_double_checked(pair_tok.substr(colon + 1), v))
        throw DataError(origin + ": bad value at line " + std::to_string(line_no));
      entries.emplace_back(idx, v);
      prev_index = idx;
      max_index = std::max(max_index, idx);
    }
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw DataError(origin + ": no data rows");

  Dataset ds;
  ds.x = DenseMatrix(rows.size(), max_index);
  ds.labels = std::move(labels);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto dst = ds.x.row(i);
    for (const auto& [idx, v] : rows[i]) dst[idx - 1] = v;
  }
  return ds;
}

void write_sparse_text(const Dataset& ds, std::ostream& os) {
  for (std::size_t i = 0; i < ds.n(); ++i) {
    os << ds.labels[i];
    const auto row = ds.x.row(i);
    for (std::size_t j = 0; j < ds.p(); ++j)
      if (row[j] != 0.0) os << ' ' << (j + 1) << ':' << format_double(row[j]);
    os << '\n';
  }
}

SplitSpec SplitSpec::holdout(double fraction, std::uint64_t seed, bool stratified) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw InvalidInput("holdout fraction must lie in (0,1)");
  SplitSpec s;
  s.kind = SplitKind::Holdout;
  s.holdout_fraction = fraction;
  s.seed = seed;
  s.stratified = stratified;
  return s;
}

SplitSpec SplitSpec::kfold(std::size_t k, std::uint64_t seed, bool stratified) {
  if (k < 2) throw InvalidInput("kfold needs k >= 2");
  SplitSpec s;
  s.kind = SplitKind::KFold;
  s.folds = k;
  s.seed = seed;
  s.stratified = stratified;
  return s;
}

SplitSpec SplitSpec::loo() {
  SplitSpec s;
  s.kind = SplitKind::LeaveOneOut;
  s.stratified = false;
  return s;
}

namespace {

// Class-grouped, per-class-shuffled index pools; unstratified splits use a
// single pool.
std::vector<std::vector<std::size_t>> index_pools(const Dataset& ds, const SplitSpec& spec) {
  std::vector<std::vector<std::size_t>> pools;
  if (spec.stratified) {
    const bool binary = ds.is_binary();
    const int k = ds.num_classes();
    pools.resize(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < ds.n(); ++i) {
      const int cls = binary ? (ds.labels[i] == 1 ? 0 : 1) : ds.labels[i] - 1;
      pools[static_cast<std::size_t>(cls)].push_back(i);
    }
  } else {
    pools.resize(1);
    pools[0].resize(ds.n());
    std::iota(pools[0].begin(), pools[0].end(), 0);
  }
  std::mt19937_64 engine(derive_seed(spec.seed, 17));
  for (auto& pool : pools) shuffle_in_place(pool, engine);
  return pools;
}

}  // namespace

std::vector<FoldSplit> split(const Dataset& ds, const SplitSpec& spec) {
  const std::size_t n = ds.n();
  if (n == 0) throw InvalidInput("split: empty dataset");

  if (spec.kind == SplitKind::LeaveOneOut) {
    std::vector<FoldSplit> folds(n);
    for (std::size_t i = 0; i < n; ++i) {
      folds[i].test = {i};
      folds[i].train.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) folds[i].train.push_back(j);
    }
    return folds;
  }

  const auto pools = index_pools(ds, spec);

  if (spec.kind == SplitKind::Holdout) {
    FoldSplit fold;
    for (const auto& pool : pools) {
      const std::size_t test_count =
          static_cast<std::size_t>(std::llround(spec.holdout_fraction *
                                                static_cast<double>(pool.size())));
      for (std::size_t i = 0; i < pool.size(); ++i)
        (i < test_count ? fold.test : fold.train).push_back(pool[i]);
    }
    if (fold.train.empty() || fold.test.empty())
      throw InvalidInput("split: holdout produced an empty part");
    std::sort(fold.train.begin(), fold.train.end());
    std::sort(fold.test.begin(), fold.test.end());
    return {fold};
  }

  // KFold: deal each pool round-robin so class proportions stay within one
  // instance per fold.
  const std::size_t k = spec.folds;
  if (k > n) throw InvalidInput("split: kfold k exceeds the number of instances");
  for (const auto& pool : pools)
    if (spec.stratified && pool.empty())
      throw InvalidInput("split: stratified fold with an empty class");
  std::vector<std::vector<std::size_t>> fold_members(k);
  std::size_t next_fold = 0;
  for (const auto& pool : pools)
    for (std::size_t idx : pool) {
      fold_members[next_fold].push_back(idx);
      next_fold = (next_fold + 1) % k;
    }
  std::vector<FoldSplit> folds(k);
  for (std::size_t f = 0; f < k; ++f) {
    for (std::size_t g = 0; g < k; ++g)
      for (std::size_t idx : fold_members[g])
        (g == f ? folds[f].test : folds[f].train).push_back(idx);
    std::sort(folds[f].train.begin(), folds[f].train.end());
    std::sort(folds[f].test.begin(), folds[f].test.end());
    if (folds[f].test.empty()) throw InvalidInput("split: empty fold");
  }
  return folds;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) throw InvalidInput("log_grid: bad range");
  std::vector<double> out(points);
  const double step = (std::log10(hi) - std::log10(lo)) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    out[i] = std::pow(10.0, std::log10(lo) + step * static_cast<double>(i));
  return out;
}

GridSpec GridSpec::defaults_for(PenaltyKind kind, std::size_t p) {
  GridSpec g;
  switch (kind) {
    case PenaltyKind::ElasticNet:
      g.lambda1 = log_grid(1e-4, 1e4, 9);
      g.lambda2 = log_grid(1e-4, 1e4, 9);
      break;
    case PenaltyKind::KSupport: {
      g.lambda = log_grid(1e-4, 1e4, 9);
      std::vector<int> ks = {1, 2, 5, 10, static_cast<int>(p) / 2, static_cast<int>(p)};
      for (int kv : ks)
        if (kv >= 1 && kv <= static_cast<int>(p) &&
            (g.k.empty() || g.k.back() != kv))
          g.k.push_back(kv);
      break;
    }
    default:
      g.lambda = log_grid(1e-4, 1e4, 9);
  }
  return g;
}

std::vector<PenaltySpec> GridSpec::expand(PenaltyKind kind) const {
  std::vector<PenaltySpec> out;
  switch (kind) {
    case PenaltyKind::L2:
      for (double l : lambda) out.push_back(PenaltySpec::l2(l));
      break;
    case PenaltyKind::L1:
      for (double l : lambda) out.push_back(PenaltySpec::l1(l));
      break;
    case PenaltyKind::ElasticNet:
      for (double l1 : lambda1)
        for (double l2 : lambda2) out.push_back(PenaltySpec::elastic_net(l1, l2));
      break;
    case PenaltyKind::KSupport:
      for (int kv : k)
        for (double l : lambda) out.push_back(PenaltySpec::ksupport(l, kv));
      break;
  }
  if (out.empty()) throw InvalidInput("grid: no points for this penalty family");
  return out;
}

CvResult grid_search_cv(const Dataset& ds, ModelFamily family, const GridSpec& grid,
                        const SplitSpec& split_spec, const TrainOptions& opts) {
  const std::vector<PenaltySpec> points = grid.expand(family_penalty_kind(family));
  const std::vector<FoldSplit> folds = split(ds, split_spec);

  CvResult result;
  result.table.resize(points.size() * folds.size());

  struct Task {
    std::size_t grid_index;
    std::size_t fold;
  };
  std::vector<Task> tasks;
  tasks.reserve(result.table.size());
  for (std::size_t g = 0; g < points.size(); ++g)
    for (std::size_t f = 0; f < folds.size(); ++f) tasks.push_back({g, f});

  parallel_for(tasks.size(), opts.jobs, [&](std::size_t t) {
    const Task task = tasks[t];
    CvCell& cell = result.table[t];
    cell.grid_index = task.grid_index;
    cell.fold = task.fold;
    const FoldSplit& fold = folds[task.fold];
    try {
      const Dataset train = ds.subset(fold.train);
      const Dataset test = ds.subset(fold.test);
      TrainOptions fold_opts = opts;
      fold_opts.jobs = 1;  // parallelism lives at the task level
      const AnyModel model = train_any(train, family, points[task.grid_index], fold_opts);
      std::size_t correct = 0;
      for (std::size_t i = 0; i < test.n(); ++i)
        if (model.predict(test.x.row(i)) == test.labels[i]) ++correct;
      cell.accuracy = static_cast<double>(correct) / static_cast<double>(test.n());
    } catch (const std::exception& e) {
      cell.error = e.what();
      cell.accuracy = 0.0;
    }
  });

  result.points.resize(points.size());
  for (std::size_t g = 0; g < points.size(); ++g) {
    CvPointScore& score = result.points[g];
    score.spec = points[g];
    double sum = 0.0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      const CvCell& cell = result.table[g * folds.size() + f];
      if (!cell.error.empty()) ++score.failed_folds;
      sum += cell.accuracy;
    }
    score.mean_accuracy =
        score.failed_folds > 0 ? -1.0 : sum / static_cast<double>(folds.size());
  }

  // Best point: max mean accuracy; ties prefer the larger primary weight,
  // then earlier enumeration order.
  std::size_t best = 0;
  for (std::size_t g = 1; g < points.size(); ++g) {
    const double a = result.points[g].mean_accuracy;
    const double b = result.points[best].mean_accuracy;
    if (a > b + 1e-12) {
      best = g;
    } else if (a > b - 1e-12 &&
               result.points[g].spec.primary_weight() >
                   result.points[best].spec.primary_weight() + 1e-15) {
      best = g;
    }
  }
  if (result.points[best].failed_folds > 0)
    throw NumericalError("grid_search_cv: every grid point failed at least one fold");
  result.best = result.points[best].spec;
  result.best_accuracy = result.points[best].mean_accuracy;
  result.best_index = best;
  return result;
}

}  // namespace svmreg
