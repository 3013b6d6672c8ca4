#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "auction/graph.hpp"

namespace auction {

/// Instance families of the acceptance matrix. Each is deterministic.
std::vector<BipartiteInstance> mcm_family();     // 200 unweighted, n in {8,16,32}
std::vector<BipartiteInstance> mwm_family();     // 200 weighted, uniform and two-point
std::vector<BipartiteInstance> mcbm_family();    // 100 with capacities in [1,4]
std::vector<BipartiteInstance> gp_family();      // 50 with weights spanning [1, 1e6]
std::vector<BipartiteInstance> tiny_family();    // 150 with at most 8 + 8 vertices

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string summary;
  double seconds = 0.0;
  nlohmann::json stats = nlohmann::json::object();
};

using CriterionFn = std::function<CriterionResult()>;

/// All ten criteria in order.
std::vector<CriterionFn> acceptance_criteria();

/// Runs the selected criteria (all when `only` is empty), calling `on_result`
/// after each.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

nlohmann::json to_json(const CriterionResult& r);

}  // namespace auction
