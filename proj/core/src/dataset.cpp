#include "val/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "val/rng.hpp"

namespace val {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

bool parse_double(const std::string& cell, double* out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) return false;
  if (!std::isfinite(v)) return false;
  *out = v;
  return true;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

int Dataset::num_classes() const {
  int c = 0;
  for (int l : labels) c = std::max(c, l + 1);
  return c;
}

void Dataset::validate() const {
  if (n() < 1 || m() < 1) throw ShapeError("dataset must have n >= 1, m >= 1");
  if (static_cast<int>(labels.size()) != n())
    throw ShapeError("label count does not match feature rows");
  if (!features.allFinite()) throw ShapeError("non-finite feature value");
  const int c = num_classes();
  std::vector<long> counts(static_cast<size_t>(c), 0);
  for (int l : labels) {
    if (l < 0 || l >= c) throw ShapeError("label outside [0, num_classes)");
    ++counts[static_cast<size_t>(l)];
  }
  for (int l = 0; l < c; ++l)
    if (counts[static_cast<size_t>(l)] == 0)
      throw ShapeError("class " + std::to_string(l) + " has no points");
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw MalformedInput("empty file " + path, 0);

  const std::vector<std::string> first = split_csv_line(lines[0]);
  const int cols = static_cast<int>(first.size());
  if (cols < 2) throw MalformedInput("need at least one feature column and a label column", 1);

  // Resolve the label column: 1-based index, header name or "" = last.
  int label_idx = -1;  // 0-based
  bool has_header = false;
  if (label_column.empty()) {
    label_idx = cols - 1;
  } else if (all_digits(label_column)) {
    const long v = std::strtol(label_column.c_str(), nullptr, 10);
    if (v < 1 || v > cols)
      throw ConfigError("label column index " + label_column + " out of range (file has " +
                        std::to_string(cols) + " columns)");
    label_idx = static_cast<int>(v - 1);
  } else {
    for (int j = 0; j < cols; ++j)
      if (first[static_cast<size_t>(j)] == label_column) label_idx = j;
    if (label_idx < 0)
      throw ConfigError("label column '" + label_column + "' not found in header");
    has_header = true;
  }

  if (!has_header) {
    // Header iff any non-label cell of the first row is not a number.
    double tmp;
    for (int j = 0; j < cols; ++j) {
      if (j == label_idx) continue;
      if (!parse_double(first[static_cast<size_t>(j)], &tmp)) {
        has_header = true;
        break;
      }
    }
  }

  const size_t row0 = has_header ? 1 : 0;
  const long n = static_cast<long>(lines.size() - row0);
  if (n < 1) throw MalformedInput("no data rows in " + path, 1);
  const int m = cols - 1;

  Dataset ds;
  ds.features.resize(n, m);
  ds.labels.resize(static_cast<size_t>(n));
  ds.name = path;

  std::map<std::string, int> label_codes;  // first-appearance encoding
  for (long i = 0; i < n; ++i) {
    const long file_row = static_cast<long>(row0 + static_cast<size_t>(i)) + 1;
    const std::vector<std::string> cells = split_csv_line(lines[row0 + static_cast<size_t>(i)]);
    if (static_cast<int>(cells.size()) != cols)
      throw MalformedInput("expected " + std::to_string(cols) + " cells, got " +
                               std::to_string(cells.size()),
                           file_row);
    int col = 0;
    for (int j = 0; j < cols; ++j) {
      const std::string& cell = cells[static_cast<size_t>(j)];
      if (j == label_idx) {
        auto it = label_codes.find(cell);
        if (it == label_codes.end())
          it = label_codes.emplace(cell, static_cast<int>(label_codes.size())).first;
        ds.labels[static_cast<size_t>(i)] = it->second;
      } else {
        double v;
        if (!parse_double(cell, &v))
          throw MalformedInput("non-numeric feature cell '" + cell + "'", file_row);
        ds.features(i, col++) = v;
      }
    }
  }
  ds.validate();
  return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (int j = 0; j < ds.m(); ++j) out << 'f' << (j + 1) << ',';
  out << "label\n";
  char buf[64];
  for (int i = 0; i < ds.n(); ++i) {
    for (int j = 0; j < ds.m(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", ds.features(i, j));
      out << buf << ',';
    }
    out << ds.labels[static_cast<size_t>(i)] << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

SyntheticShape parse_shape(const std::string& name) {
  if (name == "blobs") return SyntheticShape::blobs;
  if (name == "rings") return SyntheticShape::rings;
  if (name == "spirals") return SyntheticShape::spirals;
  throw ConfigError("unknown shape '" + name + "' (expected blobs|rings|spirals)");
}

std::string shape_name(SyntheticShape shape) {
  switch (shape) {
    case SyntheticShape::blobs: return "blobs";
    case SyntheticShape::rings: return "rings";
    case SyntheticShape::spirals: return "spirals";
  }
  return "?";
}

Dataset gen_synthetic(SyntheticShape shape, int classes, int per_class,
                      double separation, double noise_std, std::uint64_t seed) {
  if (classes < 2) throw ConfigError("gen_synthetic: classes must be >= 2");
  if (per_class < 1) throw ConfigError("gen_synthetic: per_class must be >= 1");
  if (noise_std < 0) throw ConfigError("gen_synthetic: noise_std must be >= 0");

  const double pi = 3.14159265358979323846;
  const int n = classes * per_class;
  Dataset ds;
  ds.features.resize(n, 2);
  ds.labels.resize(static_cast<size_t>(n));
  ds.name = shape_name(shape) + "-c" + std::to_string(classes) + "-p" +
            std::to_string(per_class);

  Rng rng(seed);
  int row = 0;
  for (int k = 0; k < classes; ++k) {
    for (int i = 0; i < per_class; ++i, ++row) {
      double x = 0, y = 0;
      switch (shape) {
        case SyntheticShape::blobs: {
          // Class centers equally spaced on a circle sized so adjacent
          // centers sit `separation` apart.
          const double radius = separation / (2.0 * std::sin(pi / classes));
          const double ang = 2.0 * pi * k / classes;
          x = radius * std::cos(ang);
          y = radius * std::sin(ang);
          break;
        }
        case SyntheticShape::rings: {
          const double radius = separation * (k + 1);
          const double ang = rng.uniform(0.0, 2.0 * pi);
          x = radius * std::cos(ang);
          y = radius * std::sin(ang);
          break;
        }
        case SyntheticShape::spirals: {
          const double t = rng.uniform();
          const double ang = 3.0 * pi * t + 2.0 * pi * k / classes;
          const double radius = separation * (0.25 + t);
          x = radius * std::cos(ang);
          y = radius * std::sin(ang);
          break;
        }
      }
      ds.features(row, 0) = x + noise_std * rng.normal();
      ds.features(row, 1) = y + noise_std * rng.normal();
      ds.labels[static_cast<size_t>(row)] = k;
    }
  }
  ds.validate();
  return ds;
}

LabelOracle::LabelOracle(const Dataset& ds, std::optional<long> budget)
    : ds_(&ds), budget_(budget) {
  if (budget_ && *budget_ < 0) throw ConfigError("oracle budget must be >= 0");
}

int LabelOracle::query(int index) {
  if (index < 0 || index >= ds_->n()) throw ShapeError("oracle index out of range");
  if (!seen_.contains(index)) {
    if (budget_ && queries_used() >= *budget_)
      throw BudgetExceeded("label budget of " + std::to_string(*budget_) + " exhausted");
    seen_.insert(index);
  }
  return ds_->labels[static_cast<size_t>(index)];
}

}  // namespace val
