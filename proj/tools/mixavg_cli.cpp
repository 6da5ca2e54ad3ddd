// mixavg command line front end. Talks to the library exclusively
// through the C API in mixavg.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixavg.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitFitFailure = 3;

int status_to_exit(mixavg_status st) {
  switch (st) {
    case MIXAVG_OK:
      return 0;
    case MIXAVG_ERR_INVALID_ARGUMENT:
      return kExitValidation;
    case MIXAVG_ERR_FIT_FAILED:
      return kExitFitFailure;
    default:
      return 1;
  }
}

[[nodiscard]] int fail(mixavg_status st) {
  std::cerr << "error: " << mixavg_last_error() << "\n";
  return status_to_exit(st);
}

struct SweepArgs {
  std::string input;
  std::string labels;
  std::string structures;
  std::string g_range = "1:9";
  int restarts = 20;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int max_iter = 1000;
  int threads = 0;
  bool standardize = false;
  std::string output;
};

bool parse_g_range(const std::string& s, int& g_min, int& g_max) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      g_min = g_max = std::stoi(s);
    } else {
      g_min = std::stoi(s.substr(0, colon));
      g_max = std::stoi(s.substr(colon + 1));
    }
  } catch (const std::exception&) {
    return false;
  }
  return g_min >= 1 && g_max >= g_min;
}

void add_sweep_flags(CLI::App* cmd, SweepArgs& args) {
  cmd->add_option("--input", args.input, "input CSV file")->required();
  cmd->add_option("--labels", args.labels, "label column name");
  cmd->add_option("--structures", args.structures,
                  "comma-separated covariance structures (default: all 10 fittable)");
  cmd->add_option("--g", args.g_range, "component range, e.g. 1:9");
  cmd->add_option("--restarts", args.restarts, "EM restarts per cell");
  cmd->add_option("--seed", args.seed, "base seed");
  cmd->add_option("--tol", args.tol, "EM convergence tolerance");
  cmd->add_option("--max-iter", args.max_iter, "EM iteration cap");
  cmd->add_option("--threads", args.threads,
                  "worker threads (0 = MIXAVG_THREADS env or hardware count)");
  cmd->add_flag("--standardize", args.standardize, "standardize columns before fitting");
  cmd->add_option("--out", args.output, "write the JSON report here (default: stdout)");
}

int emit(const std::string& output, const char* json) {
  if (output.empty()) {
    std::cout << json << "\n";
    return 0;
  }
  std::ofstream out(output);
  if (!out) {
    std::cerr << "error: cannot write " << output << "\n";
    return kExitValidation;
  }
  out << json << "\n";
  return 0;
}

struct DatasetHandle {
  mixavg_dataset* ptr = nullptr;
  ~DatasetHandle() { mixavg_dataset_free(ptr); }
};

struct SweepHandle {
  mixavg_sweep* ptr = nullptr;
  ~SweepHandle() { mixavg_sweep_free(ptr); }
};

int run_sweep_common(const SweepArgs& args, bool with_average, double c) {
  int g_min = 0, g_max = 0;
  if (!parse_g_range(args.g_range, g_min, g_max)) {
    std::cerr << "error: bad --g range '" << args.g_range << "'\n";
    return kExitValidation;
  }
  DatasetHandle data;
  mixavg_status st = mixavg_dataset_load_csv(
      args.input.c_str(), args.labels.empty() ? nullptr : args.labels.c_str(), &data.ptr);
  if (st != MIXAVG_OK)
    return fail(st);
  if (args.standardize) {
    st = mixavg_dataset_standardize(data.ptr);
    if (st != MIXAVG_OK)
      return fail(st);
  }

  SweepHandle sweep;
  st = mixavg_sweep_run(data.ptr, args.structures.empty() ? nullptr : args.structures.c_str(),
                        g_min, g_max, args.restarts, args.seed, args.tol, args.max_iter,
                        args.threads, &sweep.ptr);
  if (st != MIXAVG_OK)
    return fail(st);

  char* json = nullptr;
  st = with_average ? mixavg_average_report_json(data.ptr, sweep.ptr, c, &json)
                    : mixavg_sweep_report_json(sweep.ptr, &json);
  if (st != MIXAVG_OK)
    return fail(st);
  const int rc = emit(args.output, json);
  mixavg_string_free(json);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian parsimonious clustering with Occam's-window model averaging"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mixavg_version()));

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "fit the model grid and report BICs");
  add_sweep_flags(sweep_cmd, sweep_args);

  SweepArgs avg_args;
  double c = 20.0;
  CLI::App* avg_cmd =
      app.add_subcommand("average", "sweep, then average models inside Occam's window");
  add_sweep_flags(avg_cmd, avg_args);
  avg_cmd->add_option("--c", c, "Occam's window constant (default 20)");

  CLI::App* sim_cmd = app.add_subcommand("simulate", "generate labeled synthetic data");
  std::string sim_kind;
  std::string sim_out = "simulated.csv";
  std::string sim_meta;
  std::string sim_spec;
  std::uint64_t sim_seed = 0;
  sim_cmd->add_option("kind", sim_kind, "scenario3 | gaussian")->required();
  sim_cmd->add_option("--seed", sim_seed, "generator seed");
  sim_cmd->add_option("--out", sim_out, "output CSV path");
  sim_cmd->add_option("--meta", sim_meta, "metadata sidecar path (default: <out>.meta.json)");
  sim_cmd->add_option("--spec", sim_spec, "JSON cluster spec file (gaussian only)");

  CLI::App* ari_cmd = app.add_subcommand("ari", "adjusted Rand index of two label files");
  std::string ari_a, ari_b, ari_col_a, ari_col_b;
  ari_cmd->add_option("file_a", ari_a)->required();
  ari_cmd->add_option("file_b", ari_b)->required();
  ari_cmd->add_option("--col-a", ari_col_a, "label column in file_a (default: last)");
  ari_cmd->add_option("--col-b", ari_col_b, "label column in file_b (default: last)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  if (sweep_cmd->parsed())
    return run_sweep_common(sweep_args, false, c);
  if (avg_cmd->parsed())
    return run_sweep_common(avg_args, true, c);

  if (sim_cmd->parsed()) {
    const std::string meta = sim_meta.empty() ? sim_out + ".meta.json" : sim_meta;
    mixavg_status st;
    if (sim_kind == "scenario3") {
      st = mixavg_simulate_scenario3(sim_seed, sim_out.c_str(), meta.c_str());
    } else if (sim_kind == "gaussian") {
      if (sim_spec.empty()) {
        std::cerr << "error: simulate gaussian needs --spec\n";
        return kExitValidation;
      }
      std::ifstream in(sim_spec);
      if (!in) {
        std::cerr << "error: cannot read " << sim_spec << "\n";
        return kExitValidation;
      }
      std::string spec((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      // The seed flag wins over any seed inside the spec file.
      if (sim_cmd->count("--seed")) {
        try {
          nlohmann::json j = nlohmann::json::parse(spec);
          j["seed"] = sim_seed;
          spec = j.dump();
        } catch (const nlohmann::json::exception& e) {
          std::cerr << "error: bad spec JSON: " << e.what() << "\n";
          return kExitValidation;
        }
      }
      st = mixavg_simulate_gaussian(spec.c_str(), sim_out.c_str(), meta.c_str());
    } else {
      std::cerr << "error: unknown simulate kind '" << sim_kind << "'\n";
      return kExitValidation;
    }
    if (st != MIXAVG_OK)
      return fail(st);
    std::cout << "wrote " << sim_out << " and " << meta << "\n";
    return 0;
  }

  if (ari_cmd->parsed()) {
    double value = 0.0;
    const mixavg_status st = mixavg_ari_csv(
        ari_a.c_str(), ari_col_a.empty() ? nullptr : ari_col_a.c_str(), ari_b.c_str(),
        ari_col_b.empty() ? nullptr : ari_col_b.c_str(), &value);
    if (st != MIXAVG_OK)
      return fail(st);
    printf("%.6f\n", value);
    return 0;
  }
  return kExitValidation;
}
