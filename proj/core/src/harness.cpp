#include "val/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "val/rng.hpp"

namespace val {

namespace {

using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse number '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long l = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return l;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse integer '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': cannot parse boolean '" + v + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  cfg.kernel = make_rbf(1.0);
  bool have_data = false;
  bool have_strategies = false;
  bool have_budgets = false;

  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value, got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "data.csv") {
      cfg.data.csv_path = value;
      cfg.data.generated = false;
      have_data = true;
    } else if (key == "data.label_col") {
      cfg.data.label_column = value;
    } else if (key == "data.shape") {
      cfg.data.shape = parse_shape(value);
      cfg.data.generated = true;
      have_data = true;
    } else if (key == "data.classes") {
      cfg.data.classes = static_cast<int>(to_long(key, value));
    } else if (key == "data.per_class") {
      cfg.data.per_class = static_cast<int>(to_long(key, value));
    } else if (key == "data.separation") {
      cfg.data.separation = to_double(key, value);
    } else if (key == "data.noise") {
      cfg.data.noise_std = to_double(key, value);
    } else if (key == "data.seed") {
      cfg.data.seed = static_cast<std::uint64_t>(to_long(key, value));
    } else if (key == "kernel.kind") {
      if (value == "rbf") {
        cfg.kernel = make_rbf(cfg.kernel.kind == KernelKind::rbf ? cfg.kernel.gamma : 1.0);
      } else if (value == "linear") {
        cfg.kernel = make_linear();
        cfg.kernel_gamma_auto = false;
      } else {
        throw ConfigError("kernel.kind must be rbf or linear, got '" + value + "'");
      }
    } else if (key == "kernel.gamma") {
      if (value == "auto") {
        cfg.kernel_gamma_auto = true;
      } else {
        cfg.kernel.gamma = to_double(key, value);
        cfg.kernel_gamma_auto = false;
      }
    } else if (key == "sparsify.mu") {
      cfg.sparsify.mu = to_double(key, value);
    } else if (key == "sparsify.target_fraction") {
      cfg.sparsify.target_fraction = to_double(key, value);
    } else if (key == "sparsify.variant") {
      cfg.sparsify.variant = parse_variant(value);
    } else if (key == "em.tol") {
      cfg.em.tol = to_double(key, value);
    } else if (key == "em.max_iter") {
      cfg.em.max_iter = static_cast<int>(to_long(key, value));
    } else if (key == "lambda") {
      cfg.lambda = to_double(key, value);
    } else if (key == "strategies") {
      cfg.strategies.clear();
      for (const std::string& name : split(value, ','))
        cfg.strategies.push_back(parse_strategy(name));
      have_strategies = true;
    } else if (key == "budgets") {
      cfg.budgets.clear();
      for (const std::string& b : split(value, ','))
        cfg.budgets.push_back(static_cast<int>(to_long(key, b)));
      have_budgets = true;
    } else if (key == "repeats") {
      cfg.repeats = static_cast<int>(to_long(key, value));
    } else if (key == "master_seed") {
      cfg.master_seed = static_cast<std::uint64_t>(to_long(key, value));
    } else if (key == "scale_features") {
      cfg.scale_features = to_bool(key, value);
    } else if (key == "holdout_only") {
      cfg.holdout_only = to_bool(key, value);
    } else if (key == "record_timing") {
      cfg.record_timing = to_bool(key, value);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (!have_data) throw ConfigError("config needs data.csv or data.shape");
  if (!have_strategies) throw ConfigError("config needs strategies");
  if (!have_budgets) throw ConfigError("config needs budgets");
  if (cfg.strategies.empty()) throw ConfigError("strategies list is empty");
  for (size_t i = 0; i < cfg.strategies.size(); ++i)
    for (size_t j = i + 1; j < cfg.strategies.size(); ++j)
      if (cfg.strategies[i] == cfg.strategies[j])
        throw ConfigError("strategy '" + strategy_name(cfg.strategies[i]) +
                          "' listed twice");
  if (cfg.budgets.empty()) throw ConfigError("budgets list is empty");
  for (size_t i = 1; i < cfg.budgets.size(); ++i)
    if (cfg.budgets[i] <= cfg.budgets[i - 1])
      throw ConfigError("budgets must be strictly ascending");
  if (cfg.budgets.front() < 1) throw ConfigError("budgets must be >= 1");
  if (cfg.repeats < 1) throw ConfigError("repeats must be >= 1");
  cfg.sparsify.validate();
  cfg.em.validate();
  if (!(cfg.lambda > 0)) throw ConfigError("lambda must be > 0");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

void scale_min_max(Matrix* X) {
  for (int j = 0; j < X->cols(); ++j) {
    const double lo = X->col(j).minCoeff();
    const double hi = X->col(j).maxCoeff();
    if (hi > lo)
      X->col(j) = (X->col(j).array() - lo) / (hi - lo);
    else
      X->col(j).setZero();
  }
}

struct CellLog {
  bool enabled = false;
  void stage(const std::string& name, long ms) const {
    if (enabled) std::cerr << "[valkit] stage=" << name << " wall_ms=" << ms << "\n";
  }
};

}  // namespace

ErrorCurve run_experiment(const ExperimentConfig& config) {
  CellLog log;
  log.enabled = config.record_timing;
  const auto t_start = Clock::now();

  Dataset ds = config.data.generated
                   ? gen_synthetic(config.data.shape, config.data.classes,
                                   config.data.per_class, config.data.separation,
                                   config.data.noise_std, config.data.seed)
                   : load_csv(config.data.csv_path, config.data.label_column);
  if (config.scale_features) scale_min_max(&ds.features);
  log.stage("dataset", elapsed_ms(t_start));

  KernelSpec kernel = config.kernel;
  if (config.kernel_gamma_auto && kernel.kind == KernelKind::rbf)
    kernel = make_rbf(median_heuristic_gamma(ds.features));

  const int n = ds.n();
  const int c = ds.num_classes();
  const int max_budget = config.budgets.back();
  const int val_pool_size =
      static_cast<int>(std::floor(n * config.sparsify.target_fraction));

  const SeedSet seeds = seed_set_lowest_index(ds);
  std::vector<char> is_seed(static_cast<size_t>(n), 0);
  for (int i : seeds.indices) is_seed[static_cast<size_t>(i)] = 1;
  std::vector<int> unlabeled_pool;  // candidate pool for uniform sampling
  for (int i = 0; i < n; ++i)
    if (!is_seed[static_cast<size_t>(i)]) unlabeled_pool.push_back(i);

  for (StrategyKind strat : config.strategies) {
    const std::string name = strategy_name(strat);
    const bool uses_pool = strat == StrategyKind::random || strat == StrategyKind::margin;
    const int limit = strat == StrategyKind::val
                          ? val_pool_size
                          : (uses_pool ? static_cast<int>(unlabeled_pool.size()) : n);
    if (max_budget > limit)
      throw ConfigError("budget " + std::to_string(max_budget) +
                        " infeasible for strategy " + name + " (limit " +
                        std::to_string(limit) + ")");
  }

  // Label-free selections that do not depend on budget or repeat are hoisted
  // out of the cell loop; results are identical to per-cell recomputation.
  const bool wants_val =
      std::count(config.strategies.begin(), config.strategies.end(), StrategyKind::val) > 0;
  const bool wants_ted =
      std::count(config.strategies.begin(), config.strategies.end(), StrategyKind::ted) > 0;

  SubsetIndices val_pool;
  if (wants_val) {
    const auto t0 = Clock::now();
    val_pool = sparsify_halve(ds.features, kernel, config.sparsify);
    log.stage("sparsify", elapsed_ms(t0));
  }
  SubsetIndices ted_order;
  if (wants_ted) {
    const auto t0 = Clock::now();
    ted_order = select_ted(ds.features, max_budget, kernel, config.sparsify.mu);
    log.stage("ted_order", elapsed_ms(t0));
  }

  const std::vector<int>& truth = ds.labels;
  ErrorCurve curve;
  for (size_t s = 0; s < config.strategies.size(); ++s) {
    const StrategyKind strat = config.strategies[s];
    const std::string name = strategy_name(strat);
    for (int repeat = 0; repeat < config.repeats; ++repeat) {
      for (int budget : config.budgets) {
        const auto t_cell = Clock::now();
        const std::uint64_t cell_seed = Rng::mix(
            Rng::mix(config.master_seed, static_cast<std::uint64_t>(s)),
            Rng::mix(static_cast<std::uint64_t>(repeat),
                     static_cast<std::uint64_t>(budget)));
        LabelOracle oracle(ds, budget);

        SubsetIndices selected;
        switch (strat) {
          case StrategyKind::random: {
            const SubsetIndices pick =
                select_random(static_cast<int>(unlabeled_pool.size()), budget, cell_seed);
            for (int p : pick.indices)
              selected.indices.push_back(unlabeled_pool[static_cast<size_t>(p)]);
            break;
          }
          case StrategyKind::ted: {
            selected.indices.assign(ted_order.indices.begin(),
                                    ted_order.indices.begin() + budget);
            break;
          }
          case StrategyKind::margin: {
            selected = select_margin(ds, oracle, seeds, budget, kernel, config.lambda);
            break;
          }
          case StrategyKind::val: {
            EmParams em = config.em;
            em.seed = cell_seed;
            selected = val_representation_stage(ds.features, val_pool, budget, em);
            if (oracle.queries_used() != 0)
              throw std::logic_error("val selection must not consume labels");
            break;
          }
        }

        // Charge every selected index; unique counting makes this a no-op
        // for the margin strategy, which already queried during selection.
        std::vector<int> train_idx = seeds.indices;
        std::vector<int> train_labels = seeds.labels;
        for (int i : selected.indices) {
          const int label = oracle.query(i);
          if (!is_seed[static_cast<size_t>(i)]) {
            train_idx.push_back(i);
            train_labels.push_back(label);
          }
        }

        Matrix Xl(train_idx.size(), ds.m());
        for (size_t i = 0; i < train_idx.size(); ++i)
          Xl.row(static_cast<long>(i)) = ds.features.row(train_idx[i]);
        const RlscModel model = train_rlsc(Xl, train_labels, kernel, config.lambda, c);

        double err = 0.0;
        if (config.holdout_only) {
          std::vector<char> in_train(static_cast<size_t>(n), 0);
          for (int i : train_idx) in_train[static_cast<size_t>(i)] = 1;
          std::vector<int> eval_idx;
          for (int i = 0; i < n; ++i)
            if (!in_train[static_cast<size_t>(i)]) eval_idx.push_back(i);
          if (eval_idx.empty()) throw ConfigError("holdout_only with nothing held out");
          Matrix Xe(eval_idx.size(), ds.m());
          std::vector<int> ye(eval_idx.size());
          for (size_t i = 0; i < eval_idx.size(); ++i) {
            Xe.row(static_cast<long>(i)) = ds.features.row(eval_idx[i]);
            ye[i] = truth[static_cast<size_t>(eval_idx[i])];
          }
          err = error_rate(predict(model, Xe).labels, ye);
        } else {
          err = error_rate(predict(model, ds.features).labels, truth);
        }

        CurveRow row;
        row.strategy = name;
        row.seed = repeat;
        row.budget = budget;
        row.error_rate = err;
        row.queries_used = oracle.queries_used();
        row.wall_ms = config.record_timing ? elapsed_ms(t_cell) : 0;
        curve.rows.push_back(std::move(row));
        log.stage("cell " + name + " repeat=" + std::to_string(repeat) +
                      " budget=" + std::to_string(budget),
                  elapsed_ms(t_cell));
      }
    }
  }

  std::sort(curve.rows.begin(), curve.rows.end(),
            [](const CurveRow& a, const CurveRow& b) {
              if (a.strategy != b.strategy) return a.strategy < b.strategy;
              if (a.seed != b.seed) return a.seed < b.seed;
              return a.budget < b.budget;
            });
  log.stage("total", elapsed_ms(t_start));
  return curve;
}

void emit_csv(const ErrorCurve& curve, const std::string& path) {
  if (curve.rows.empty()) throw ConfigError("emit_csv: empty curve");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "strategy,seed,budget,error_rate,queries_used,wall_ms\n";
  char buf[64];
  for (const CurveRow& r : curve.rows) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.error_rate);
    out << r.strategy << ',' << r.seed << ',' << r.budget << ',' << buf << ','
        << r.queries_used << ',' << r.wall_ms << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

ErrorCurve load_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw MalformedInput("empty curve file " + path, 0);
  if (trim(line) != "strategy,seed,budget,error_rate,queries_used,wall_ms")
    throw MalformedInput("unexpected curve header in " + path, 1);
  ErrorCurve curve;
  long row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != 6) throw MalformedInput("expected 6 cells", row_no);
    CurveRow r;
    r.strategy = cells[0];
    r.seed = to_long("seed", cells[1]);
    r.budget = static_cast<int>(to_long("budget", cells[2]));
    r.error_rate = to_double("error_rate", cells[3]);
    r.queries_used = to_long("queries_used", cells[4]);
    r.wall_ms = to_long("wall_ms", cells[5]);
    curve.rows.push_back(std::move(r));
  }
  return curve;
}

std::vector<MeanPoint> mean_curve(const ErrorCurve& curve) {
  std::map<std::pair<std::string, int>, std::pair<double, long>> acc;
  for (const CurveRow& r : curve.rows) {
    auto& slot = acc[{r.strategy, r.budget}];
    slot.first += r.error_rate;
    slot.second += 1;
  }
  std::vector<MeanPoint> out;
  for (const auto& [key, slot] : acc)
    out.push_back({key.first, key.second, slot.first / static_cast<double>(slot.second)});
  return out;
}

void emit_svg(const ErrorCurve& curve, const std::string& path) {
  if (curve.rows.empty()) throw ConfigError("emit_svg: empty curve");
  const std::vector<MeanPoint> means = mean_curve(curve);

  std::vector<std::string> strategies;
  int budget_lo = means.front().budget, budget_hi = means.front().budget;
  double err_hi = 0.0;
  for (const MeanPoint& p : means) {
    if (std::find(strategies.begin(), strategies.end(), p.strategy) == strategies.end())
      strategies.push_back(p.strategy);
    budget_lo = std::min(budget_lo, p.budget);
    budget_hi = std::max(budget_hi, p.budget);
    err_hi = std::max(err_hi, p.mean_error);
  }
  std::sort(strategies.begin(), strategies.end());
  if (err_hi <= 0) err_hi = 1.0;
  err_hi = std::min(1.0, err_hi * 1.05);
  const double span_b = (budget_hi > budget_lo) ? budget_hi - budget_lo : 1.0;

  const double width = 720, height = 480;
  const double left = 70, right = 40, top = 30, bottom = 60;
  const auto sx = [&](double budget) {
    return left + (budget - budget_lo) / span_b * (width - left - right);
  };
  const auto sy = [&](double err) {
    return height - bottom - err / err_hi * (height - top - bottom);
  };

  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b"};

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\""
      << width - right << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (left + (width - left - right) / 2) << "\" y=\""
      << height - 15 << "\" text-anchor=\"middle\" font-size=\"14\">"
      << "Number of queries</text>\n";
  out << "<text x=\"18\" y=\"" << (top + (height - top - bottom) / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
      << (top + (height - top - bottom) / 2) << ")\">Error rate</text>\n";

  // Axis ticks: budgets on x, five even divisions on y.
  std::vector<int> budgets;
  for (const MeanPoint& p : means)
    if (std::find(budgets.begin(), budgets.end(), p.budget) == budgets.end())
      budgets.push_back(p.budget);
  std::sort(budgets.begin(), budgets.end());
  for (int b : budgets) {
    out << "<line x1=\"" << sx(b) << "\" y1=\"" << height - bottom << "\" x2=\""
        << sx(b) << "\" y2=\"" << height - bottom + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(b) << "\" y=\"" << height - bottom + 20
        << "\" text-anchor=\"middle\" font-size=\"11\">" << b << "</text>\n";
  }
  char buf[32];
  for (int i = 0; i <= 5; ++i) {
    const double v = err_hi * i / 5.0;
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(v) << "\" x2=\"" << left
        << "\" y2=\"" << sy(v) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << sy(v) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << buf << "</text>\n";
  }

  for (size_t s = 0; s < strategies.size(); ++s) {
    const std::string& name = strategies[s];
    out << "<polyline fill=\"none\" stroke=\"" << palette[s % 6]
        << "\" stroke-width=\"2\" points=\"";
    for (const MeanPoint& p : means)
      if (p.strategy == name) out << sx(p.budget) << ',' << sy(p.mean_error) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << width - right - 140 << "\" y=\"" << top + 18 * (s + 1)
        << "\" font-size=\"12\" fill=\"" << palette[s % 6] << "\">" << name
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace val
