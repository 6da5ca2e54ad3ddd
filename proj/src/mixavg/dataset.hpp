#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace mixavg {

// Tabular numeric data. All values finite after load; labels optional.
struct Dataset {
  Eigen::MatrixXd values;  // n x p
  std::vector<std::string> feature_names;
  std::optional<std::vector<std::string>> labels;

  Eigen::Index n() const { return values.rows(); }
  Eigen::Index p() const { return values.cols(); }
};

// Cluster assignments, indices in 1..k.
struct Partition {
  std::vector<int> assignments;
  int k = 0;

  std::size_t size() const { return assignments.size(); }
};

Dataset load_csv(const std::string& path,
                 const std::optional<std::string>& label_column = std::nullopt);

// Writes the same dialect load_csv reads; numbers at 17 significant digits.
void save_csv(const Dataset& d, const std::string& path,
              const std::string& label_column_name = "label");

// Rescales every column to sample mean 0, sample sd 1.
Dataset standardize(const Dataset& d);

// Distinct labels mapped to 1..k in first-appearance order.
Partition partition_from_labels(const Dataset& d);

}  // namespace mixavg
