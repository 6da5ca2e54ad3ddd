#include "mixavg.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "errors.hpp"
#include "report.hpp"
#include "simgen.hpp"

struct mixavg_dataset {
  mixavg::Dataset data;
};

struct mixavg_sweep {
  mixavg::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
mixavg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const mixavg::InvalidInput& e) {
    g_last_error = e.what();
    return MIXAVG_ERR_INVALID_ARGUMENT;
  } catch (const mixavg::DegenerateFit& e) {
    g_last_error = e.what();
    return MIXAVG_ERR_FIT_FAILED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MIXAVG_ERR_INTERNAL;
  }
}

std::vector<mixavg::CovStructure> parse_structures(const char* csv) {
  std::vector<mixavg::CovStructure> out;
  if (!csv)
    return out;
  std::string s(csv);
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = s.find(',', start);
    const std::string tok = s.substr(start, end == std::string::npos ? end : end - start);
    if (!tok.empty()) {
      const auto cs = mixavg::structure_from_name(tok);
      if (!mixavg::is_fittable(cs))
        throw mixavg::InvalidInput("structure " + tok +
                                   " is recognized but cannot be fitted");
      out.push_back(cs);
    }
    if (end == std::string::npos)
      break;
    start = end + 1;
  }
  return out;
}

nlohmann::json cluster_meta(const mixavg::GaussianClusterSpec& g) {
  nlohmann::json cov = nlohmann::json::array();
  for (Eigen::Index i = 0; i < g.cov.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < g.cov.cols(); ++j)
      row.push_back(g.cov(i, j));
    cov.push_back(std::move(row));
  }
  nlohmann::json mean = nlohmann::json::array();
  for (Eigen::Index i = 0; i < g.mean.size(); ++i)
    mean.push_back(g.mean[i]);
  return {{"size", g.size}, {"mean", mean}, {"cov", cov}};
}

// Reads one column of a CSV as class labels (no numeric parsing), so a
// bare label file works as well as a full dataset file.
mixavg::Partition read_label_partition(const std::string& path,
                                       const std::optional<std::string>& column) {
  std::ifstream in(path);
  if (!in)
    throw mixavg::InvalidInput("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw mixavg::InvalidInput("empty file: " + path);
  const auto split = [](const std::string& l) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : l) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else if (ch != '\r') {
        cur.push_back(ch);
      }
    }
    fields.push_back(cur);
    return fields;
  };
  const auto header = split(line);
  std::size_t idx = header.size() - 1;
  if (column) {
    const auto it = std::find(header.begin(), header.end(), *column);
    if (it == header.end())
      throw mixavg::InvalidInput("label column '" + *column + "' not found in " + path);
    idx = static_cast<std::size_t>(it - header.begin());
  }
  mixavg::Dataset d;
  d.feature_names = {"_dummy"};
  d.labels.emplace();
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r")
      continue;
    const auto fields = split(line);
    if (fields.size() != header.size())
      throw mixavg::InvalidInput("ragged row in " + path);
    d.labels->push_back(fields[idx]);
  }
  if (d.labels->empty())
    throw mixavg::InvalidInput("no data rows in " + path);
  return mixavg::partition_from_labels(d);
}

void write_file(const std::string& path, const std::string& content) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f)
    throw mixavg::InvalidInput("cannot write file: " + path);
  std::fwrite(content.data(), 1, content.size(), f);
  std::fclose(f);
}

}  // namespace

extern "C" {

const char* mixavg_version(void) { return mixavg::kVersion; }

const char* mixavg_last_error(void) { return g_last_error.c_str(); }

void mixavg_string_free(char* s) { std::free(s); }

mixavg_status mixavg_dataset_load_csv(const char* path, const char* label_column,
                                      mixavg_dataset** out) {
  return guarded([&] {
    if (!path || !out)
      throw mixavg::InvalidInput("null argument");
    std::optional<std::string> label;
    if (label_column)
      label = label_column;
    *out = new mixavg_dataset{mixavg::load_csv(path, label)};
    return MIXAVG_OK;
  });
}

mixavg_status mixavg_dataset_standardize(mixavg_dataset* d) {
  return guarded([&] {
    if (!d)
      throw mixavg::InvalidInput("null dataset");
    d->data = mixavg::standardize(d->data);
    return MIXAVG_OK;
  });
}

void mixavg_dataset_free(mixavg_dataset* d) { delete d; }

int64_t mixavg_dataset_rows(const mixavg_dataset* d) { return d ? d->data.n() : 0; }

int64_t mixavg_dataset_cols(const mixavg_dataset* d) { return d ? d->data.p() : 0; }

int mixavg_dataset_has_labels(const mixavg_dataset* d) {
  return d && d->data.labels ? 1 : 0;
}

mixavg_status mixavg_sweep_run(const mixavg_dataset* d, const char* structures,
                               int g_min, int g_max, int restarts, uint64_t seed,
                               double tol, int max_iter, int threads,
                               mixavg_sweep** out) {
  return guarded([&] {
    if (!d || !out)
      throw mixavg::InvalidInput("null argument");
    mixavg::SweepOptions opts;
    opts.structures = parse_structures(structures);
    opts.g_min = g_min;
    opts.g_max = g_max;
    opts.restarts = restarts;
    opts.base_seed = seed;
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.threads = threads;
    if (opts.threads <= 0)
      if (const char* env = std::getenv("MIXAVG_THREADS"))
        opts.threads = std::atoi(env);
    auto result = mixavg::run_sweep(d->data, opts);
    if (result.entries.empty())
      throw mixavg::DegenerateFit("every sweep cell failed to converge");
    *out = new mixavg_sweep{std::move(result)};
    return MIXAVG_OK;
  });
}

void mixavg_sweep_free(mixavg_sweep* s) { delete s; }

mixavg_status mixavg_sweep_report_json(const mixavg_sweep* s, char** out_json) {
  return guarded([&] {
    if (!s || !out_json)
      throw mixavg::InvalidInput("null argument");
    *out_json = dup_string(mixavg::sweep_report(s->result).dump(2));
    return MIXAVG_OK;
  });
}

mixavg_status mixavg_average_report_json(const mixavg_dataset* d, const mixavg_sweep* s,
                                         double c, char** out_json) {
  return guarded([&] {
    if (!d || !s || !out_json)
      throw mixavg::InvalidInput("null argument");
    *out_json = dup_string(mixavg::run_report(d->data, s->result, c).dump(2));
    return MIXAVG_OK;
  });
}

mixavg_status mixavg_simulate_scenario3(uint64_t seed, const char* out_csv,
                                        const char* out_meta_json) {
  return guarded([&] {
    if (!out_csv)
      throw mixavg::InvalidInput("null output path");
    const mixavg::Scenario3Spec spec = mixavg::default_scenario3_spec();
    const mixavg::Dataset d = mixavg::gen_scenario3(spec, seed);
    mixavg::save_csv(d, out_csv);
    if (out_meta_json) {
      nlohmann::json tris = nlohmann::json::array();
      for (const auto& t : spec.triangles) {
        nlohmann::json verts = nlohmann::json::array();
        for (const auto& v : t.vertices)
          verts.push_back({v.x(), v.y()});
        tris.push_back({{"size", t.size}, {"vertices", verts}});
      }
      nlohmann::json gaussians = nlohmann::json::array();
      for (const auto& g : spec.gaussians)
        gaussians.push_back(cluster_meta(g));
      const nlohmann::json meta = {{"generator", "scenario3"},
                                   {"seed", seed},
                                   {"triangles", tris},
                                   {"gaussians", gaussians},
                                   {"version", mixavg::kVersion}};
      write_file(out_meta_json, meta.dump(2));
    }
    return MIXAVG_OK;
  });
}

mixavg_status mixavg_simulate_gaussian(const char* spec_json, const char* out_csv,
                                       const char* out_meta_json) {
  return guarded([&] {
    if (!spec_json || !out_csv)
      throw mixavg::InvalidInput("null argument");
    nlohmann::json spec;
    try {
      spec = nlohmann::json::parse(spec_json);
    } catch (const nlohmann::json::exception& e) {
      throw mixavg::InvalidInput(std::string("bad spec JSON: ") + e.what());
    }
    const std::uint64_t seed = spec.value("seed", std::uint64_t{0});
    std::vector<mixavg::GaussianClusterSpec> clusters;
    for (const auto& c : spec.at("clusters")) {
      mixavg::GaussianClusterSpec g;
      g.size = c.at("size").get<int>();
      const auto mean = c.at("mean").get<std::vector<double>>();
      g.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(),
                                                 static_cast<Eigen::Index>(mean.size()));
      const auto cov = c.at("cov").get<std::vector<std::vector<double>>>();
      g.cov.resize(static_cast<Eigen::Index>(cov.size()),
                   static_cast<Eigen::Index>(cov.size()));
      for (std::size_t i = 0; i < cov.size(); ++i) {
        if (cov[i].size() != cov.size())
          throw mixavg::InvalidInput("covariance matrix is not square");
        for (std::size_t j = 0; j < cov.size(); ++j)
          g.cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cov[i][j];
      }
      clusters.push_back(std::move(g));
    }
    const mixavg::Dataset d = mixavg::gen_gaussian_clusters(clusters, seed);
    mixavg::save_csv(d, out_csv);
    if (out_meta_json) {
      nlohmann::json cl = nlohmann::json::array();
      for (const auto& g : clusters)
        cl.push_back(cluster_meta(g));
      const nlohmann::json meta = {{"generator", "gaussian"},
                                   {"seed", seed},
                                   {"clusters", cl},
                                   {"version", mixavg::kVersion}};
      write_file(out_meta_json, meta.dump(2));
    }
    return MIXAVG_OK;
  });
}

mixavg_status mixavg_ari_csv(const char* path_a, const char* label_column_a,
                             const char* path_b, const char* label_column_b,
                             double* out_ari) {
  return guarded([&] {
    if (!path_a || !path_b || !out_ari)
      throw mixavg::InvalidInput("null argument");
    const mixavg::Partition a =
        read_label_partition(path_a, label_column_a ? std::optional<std::string>(label_column_a)
                                                    : std::nullopt);
    const mixavg::Partition b =
        read_label_partition(path_b, label_column_b ? std::optional<std::string>(label_column_b)
                                                    : std::nullopt);
    if (a.size() != b.size())
      throw mixavg::InvalidInput("label files have different lengths");
    *out_ari = mixavg::adjusted_rand_index(a, b);
    return MIXAVG_OK;
  });
}

}  // extern "C"
