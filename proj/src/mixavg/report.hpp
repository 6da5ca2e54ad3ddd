#pragma once

#include <nlohmann/json.hpp>

#include "averaging.hpp"

namespace mixavg {

inline constexpr const char* kVersion = "0.1.0";

nlohmann::json sweep_report(const SweepResult& sweep);

// Full pipeline report: sweep table, Occam window with both weight
// columns, reference choices, best/AAP-I/AAP-II/MA assignments, and ARI
// against the dataset labels when present.
nlohmann::json run_report(const Dataset& data, const SweepResult& sweep, double c);

}  // namespace mixavg
