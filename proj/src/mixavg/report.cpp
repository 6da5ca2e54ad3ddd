#include "report.hpp"

#include "ari.hpp"
#include "errors.hpp"

namespace mixavg {

namespace {

using nlohmann::json;

json fit_entry(const FitResult& f) {
  return json{{"structure", structure_name(f.params.structure)},
              {"G", f.params.G},
              {"bic", f.bic},
              {"loglik", f.loglik},
              {"rho", f.rho},
              {"n_iter", f.n_iter},
              {"converged", f.converged},
              {"seed", f.seed}};
}

json partition_json(const Partition& p) {
  return json{{"k", p.k}, {"assignments", p.assignments}};
}

json z_json(const SoftAssignment& z) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < z.z.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index g = 0; g < z.z.cols(); ++g)
      row.push_back(z.z(i, g));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json sweep_report(const SweepResult& sweep) {
  json grid;
  json structures = json::array();
  for (CovStructure s : sweep.grid.structures)
    structures.push_back(structure_name(s));
  grid["structures"] = structures;
  grid["g_min"] = sweep.grid.g_min;
  grid["g_max"] = sweep.grid.g_max;
  grid["restarts"] = sweep.grid.restarts;
  grid["base_seed"] = sweep.grid.base_seed;
  grid["tol"] = sweep.grid.tol;
  grid["max_iter"] = sweep.grid.max_iter;

  json entries = json::array();
  for (const auto& e : sweep.entries)
    entries.push_back(fit_entry(e));

  return json{{"grid", grid},
              {"entries", entries},
              {"failures", sweep.failures},
              {"version", kVersion}};
}

json run_report(const Dataset& data, const SweepResult& sweep, double c) {
  json report = sweep_report(sweep);

  const WindowSet window = occam_window(sweep, c);
  const ReferenceSelection sel_I = select_reference(window, ReferencePolicy::CaseI);
  const ReferenceSelection sel_II = select_reference(window, ReferencePolicy::CaseII);

  json members = json::array();
  for (std::size_t i = 0; i < window.members.size(); ++i) {
    json m = fit_entry(window.members[i].fit);
    m["weight"] = window.members[i].weight;
    m["weight_case_I"] = nullptr;
    for (std::size_t k = 0; k < sel_I.subset.size(); ++k)
      if (sel_I.subset[k] == i)
        m["weight_case_I"] = sel_I.weights[k];
    members.push_back(std::move(m));
  }
  report["window"] = json{
      {"c", window.c},
      {"cutoff", 2.0 * std::log(window.c)},
      {"members", members},
      {"reference_case_I", window.reference_case_I},
      {"reference_case_II", window.reference_case_II},
  };

  const FitResult& best = window.members[0].fit;
  const SoftAssignment best_z = e_step(best.params, data);
  const Partition best_part = harden(best_z);

  const AapResult aap_I = average_posteriors(window, ReferencePolicy::CaseI, data);
  const AapResult aap_II = average_posteriors(window, ReferencePolicy::CaseII, data);
  const MaResult ma = average_models(window, data);

  const Partition aap_I_part = harden(aap_I.z);
  const Partition aap_II_part = harden(aap_II.z);
  const Partition ma_part = harden(ma.z);

  report["best"] = json{{"model", fit_entry(best)},
                        {"partition", partition_json(best_part)},
                        {"z", z_json(best_z)}};
  report["aap_case_I"] =
      json{{"partition", partition_json(aap_I_part)}, {"z", z_json(aap_I.z)}};
  report["aap_case_II"] =
      json{{"partition", partition_json(aap_II_part)}, {"z", z_json(aap_II.z)}};
  report["ma"] = json{{"partition", partition_json(ma_part)},
                      {"z", z_json(ma.z)},
                      {"G", ma.params.G},
                      {"weights", ma.weights}};

  if (data.labels) {
    const Partition truth = partition_from_labels(data);
    report["ari"] = json{
        {"best", adjusted_rand_index(truth, best_part)},
        {"aap_case_I", adjusted_rand_index(truth, aap_I_part)},
        {"aap_case_II", adjusted_rand_index(truth, aap_II_part)},
        {"ma", adjusted_rand_index(truth, ma_part)},
    };
  }
  return report;
}

}  // namespace mixavg
