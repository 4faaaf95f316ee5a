// One function per subcommand: run the module pipeline for a validated
// scenario and collect verdicts and numbers for the report.
#pragma once

#include "cache.hpp"
#include "scenario.hpp"

#include "json.hpp"

#include <string>

namespace hktool {

struct CommandResult {
    std::string verdict;
    nlohmann::json checks = nlohmann::json::array();  // {name, passed, detail}
    nlohmann::json results = nlohmann::json::object();
    std::string svg;  // rank-two apartment picture, when requested
};

CommandResult run_command(const Scenario& s, ArtifactCache& cache);

// Convention constants echoed in every report.
nlohmann::json conventions();

}  // namespace hktool
