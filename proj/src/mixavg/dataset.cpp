#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "errors.hpp"

namespace mixavg {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  for (auto& f : fields) {
    auto b = f.find_first_not_of(" \t");
    auto e = f.find_last_not_of(" \t");
    f = (b == std::string::npos) ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

}  // namespace

Dataset load_csv(const std::string& path,
                 const std::optional<std::string>& label_column) {
  std::ifstream in(path);
  if (!in)
    throw InvalidInput("cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw InvalidInput("empty file: " + path);
  const std::vector<std::string> header = split_line(line);

  std::ptrdiff_t label_idx = -1;
  if (label_column) {
    auto it = std::find(header.begin(), header.end(), *label_column);
    if (it == header.end())
      throw InvalidInput("label column '" + *label_column + "' not found in " + path);
    label_idx = it - header.begin();
  }

  Dataset d;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (static_cast<std::ptrdiff_t>(j) != label_idx)
      d.feature_names.push_back(header[j]);
  if (d.feature_names.empty())
    throw InvalidInput("no feature columns in " + path);
  if (label_idx >= 0)
    d.labels.emplace();

  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r")
      continue;
    const auto fields = split_line(line);
    if (fields.size() != header.size())
      throw InvalidInput("row " + std::to_string(lineno) + " in " + path + " has " +
                         std::to_string(fields.size()) + " fields, expected " +
                         std::to_string(header.size()));
    std::vector<double> row;
    row.reserve(d.feature_names.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (static_cast<std::ptrdiff_t>(j) == label_idx) {
        d.labels->push_back(fields[j]);
        continue;
      }
      std::size_t pos = 0;
      double v = 0;
      try {
        v = std::stod(fields[j], &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != fields[j].size() || fields[j].empty() || !std::isfinite(v))
        throw InvalidInput("non-numeric value '" + fields[j] + "' at row " +
                           std::to_string(lineno) + ", column '" + header[j] + "' in " + path);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw InvalidInput("no data rows in " + path);

  d.values.resize(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(d.feature_names.size()));
  for (Eigen::Index i = 0; i < d.values.rows(); ++i)
    for (Eigen::Index j = 0; j < d.values.cols(); ++j)
      d.values(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return d;
}

void save_csv(const Dataset& d, const std::string& path,
              const std::string& label_column_name) {
  std::ofstream out(path);
  if (!out)
    throw InvalidInput("cannot write file: " + path);
  out.precision(17);
  for (std::size_t j = 0; j < d.feature_names.size(); ++j) {
    if (j) out << ',';
    out << d.feature_names[j];
  }
  if (d.labels)
    out << ',' << label_column_name;
  out << '\n';
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    for (Eigen::Index j = 0; j < d.p(); ++j) {
      if (j) out << ',';
      out << d.values(i, j);
    }
    if (d.labels)
      out << ',' << (*d.labels)[static_cast<std::size_t>(i)];
    out << '\n';
  }
}

Dataset standardize(const Dataset& d) {
  if (d.n() < 2)
    throw InvalidInput("standardize needs at least 2 rows");
  Dataset out = d;
  const double n = static_cast<double>(d.n());
  for (Eigen::Index j = 0; j < d.p(); ++j) {
    const double mean = d.values.col(j).mean();
    const double ss = (d.values.col(j).array() - mean).square().sum();
    const double sd = std::sqrt(ss / (n - 1.0));
    if (!(sd > 0.0))
      throw InvalidInput("constant column '" + d.feature_names[static_cast<std::size_t>(j)] +
                         "' cannot be standardized");
    out.values.col(j) = (d.values.col(j).array() - mean) / sd;
  }
  return out;
}

Partition partition_from_labels(const Dataset& d) {
  if (!d.labels)
    throw InvalidInput("dataset has no labels");
  Partition p;
  p.assignments.reserve(d.labels->size());
  std::unordered_map<std::string, int> seen;
  for (const auto& lab : *d.labels) {
    auto [it, inserted] = seen.emplace(lab, static_cast<int>(seen.size()) + 1);
    p.assignments.push_back(it->second);
  }
  p.k = static_cast<int>(seen.size());
  return p;
}

}  // namespace mixavg
