#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>
#include <mixavg.h>

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

struct DatasetHandle {
  mixavg_dataset* d = nullptr;
  ~DatasetHandle() { mixavg_dataset_free(d); }
};

struct SweepHandle {
  mixavg_sweep* s = nullptr;
  ~SweepHandle() { mixavg_sweep_free(s); }
};

struct JsonString {
  char* s = nullptr;
  ~JsonString() { mixavg_string_free(s); }
};

}  // namespace

TEST_CASE("version and error plumbing") {
  REQUIRE(mixavg_version() != nullptr);
  CHECK(std::strlen(mixavg_version()) > 0);

  mixavg_dataset* d = nullptr;
  CHECK(mixavg_dataset_load_csv("/no/such/file.csv", nullptr, &d) ==
        MIXAVG_ERR_INVALID_ARGUMENT);
  CHECK(d == nullptr);
  REQUIRE(mixavg_last_error() != nullptr);
  CHECK(std::strlen(mixavg_last_error()) > 0);

  CHECK(mixavg_dataset_load_csv(nullptr, nullptr, &d) == MIXAVG_ERR_INVALID_ARGUMENT);
  mixavg_string_free(nullptr);  // must be a no-op
  mixavg_dataset_free(nullptr);
  mixavg_sweep_free(nullptr);
}

TEST_CASE("dataset loading and standardization") {
  DatasetHandle h;
  REQUIRE(mixavg_dataset_load_csv((std::string(TEST_DATA_DIR) + "/iris.csv").c_str(),
                                  "Species", &h.d) == MIXAVG_OK);
  CHECK(mixavg_dataset_rows(h.d) == 150);
  CHECK(mixavg_dataset_cols(h.d) == 4);
  CHECK(mixavg_dataset_has_labels(h.d) == 1);
  CHECK(mixavg_dataset_standardize(h.d) == MIXAVG_OK);
  CHECK(mixavg_dataset_rows(h.d) == 150);
}

TEST_CASE("sweep, reports, and averaging through the C API") {
  const std::string csv = tmp_path("capi_sim.csv");
  REQUIRE(mixavg_simulate_scenario3(11, csv.c_str(), nullptr) == MIXAVG_OK);

  DatasetHandle data;
  REQUIRE(mixavg_dataset_load_csv(csv.c_str(), "label", &data.d) == MIXAVG_OK);
  CHECK(mixavg_dataset_rows(data.d) == 500);
  CHECK(mixavg_dataset_cols(data.d) == 2);

  SweepHandle sweep;
  REQUIRE(mixavg_sweep_run(data.d, "EII,VVV", 1, 4, 3, 5, 1e-8, 200, 2, &sweep.s) ==
          MIXAVG_OK);

  JsonString table;
  REQUIRE(mixavg_sweep_report_json(sweep.s, &table.s) == MIXAVG_OK);
  const auto parsed = nlohmann::json::parse(table.s);
  REQUIRE(parsed.contains("entries"));
  CHECK(parsed["entries"].size() >= 1);
  for (const auto& m : parsed["entries"]) {
    CHECK(m.contains("structure"));
    CHECK(m.contains("G"));
    CHECK(m.contains("bic"));
  }

  JsonString report;
  REQUIRE(mixavg_average_report_json(data.d, sweep.s, 20.0, &report.s) == MIXAVG_OK);
  const auto rep = nlohmann::json::parse(report.s);
  REQUIRE(rep.contains("window"));
  REQUIRE(rep.contains("best"));
  REQUIRE(rep.contains("aap_case_I"));
  REQUIRE(rep.contains("aap_case_II"));
  REQUIRE(rep.contains("ma"));
  REQUIRE(rep.contains("ari"));  // dataset carries labels
  double total = 0.0;
  for (const auto& m : rep["window"]["members"])
    total += m["weight"].get<double>();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

  // Invalid arguments surface as status codes, not crashes.
  mixavg_sweep* bad = nullptr;
  CHECK(mixavg_sweep_run(data.d, "XYZ", 1, 3, 2, 5, 1e-8, 100, 1, &bad) ==
        MIXAVG_ERR_INVALID_ARGUMENT);
  CHECK(mixavg_sweep_run(data.d, "EVE", 1, 3, 2, 5, 1e-8, 100, 1, &bad) ==
        MIXAVG_ERR_INVALID_ARGUMENT);
  CHECK(mixavg_sweep_run(data.d, "VVV", 3, 1, 2, 5, 1e-8, 100, 1, &bad) ==
        MIXAVG_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
}

TEST_CASE("simulation writers and sidecars") {
  const std::string csv = tmp_path("capi_gauss.csv");
  const std::string meta = tmp_path("capi_gauss_meta.json");
  const char* spec =
      "{\"seed\": 3, \"clusters\": ["
      "{\"size\": 30, \"mean\": [0, 0], \"cov\": [[1, 0], [0, 1]]},"
      "{\"size\": 20, \"mean\": [5, 5], \"cov\": [[1, 0.2], [0.2, 1]]}]}";
  REQUIRE(mixavg_simulate_gaussian(spec, csv.c_str(), meta.c_str()) == MIXAVG_OK);

  DatasetHandle data;
  REQUIRE(mixavg_dataset_load_csv(csv.c_str(), "label", &data.d) == MIXAVG_OK);
  CHECK(mixavg_dataset_rows(data.d) == 50);
  CHECK(mixavg_dataset_has_labels(data.d) == 1);

  std::ifstream meta_in(meta);
  REQUIRE(meta_in.good());
  const auto sidecar = nlohmann::json::parse(meta_in);
  CHECK(sidecar["seed"].get<std::uint64_t>() == 3);
  CHECK(sidecar["clusters"].size() == 2);

  CHECK(mixavg_simulate_gaussian("{not json", csv.c_str(), nullptr) ==
        MIXAVG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("adjusted Rand index between CSV files") {
  const std::string a = tmp_path("capi_ari_a.csv");
  const std::string b = tmp_path("capi_ari_b.csv");
  {
    std::ofstream fa(a), fb(b);
    fa << "x,label\n1,1\n2,1\n3,2\n4,2\n";
    fb << "x,grp\n1,b\n2,b\n3,a\n4,a\n";
  }
  double ari = -9.0;
  REQUIRE(mixavg_ari_csv(a.c_str(), "label", b.c_str(), "grp", &ari) == MIXAVG_OK);
  CHECK(ari == 1.0);

  ari = -9.0;
  REQUIRE(mixavg_ari_csv(a.c_str(), nullptr, b.c_str(), nullptr, &ari) == MIXAVG_OK);
  CHECK(ari == 1.0);

  CHECK(mixavg_ari_csv(a.c_str(), "missing", b.c_str(), nullptr, &ari) ==
        MIXAVG_ERR_INVALID_ARGUMENT);
}
