#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dww/config.hpp"
#include "dww/record.hpp"

namespace dww {

// Executes a configured simulation in memory (no filesystem access).
RunRecord execute(const RunConfig& cfg);

// Diagnostics table with an embedded config echo; byte-identical for
// identical configs.
std::string render_csv(const RunConfig& cfg, const RunRecord& rec);

// Fitted tail decay rate and theorem targets, plus final norms.
std::string render_summary_json(const RunConfig& cfg, const RunRecord& rec);

// Resolves the run output directory: relative directories land under
// $DWW_OUTPUT_ROOT when the variable is set.
std::filesystem::path resolve_output_dir(const RunConfig& cfg);

void write_outputs(const RunConfig& cfg, const RunRecord& rec,
                   const std::filesystem::path& dir);

// Exit codes shared by the CLI: 0 success, 2 validation, 3 abnormal
// termination (blow-up or tripped resolution guard), 4 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitVerifyFailed = 4;

int run_command(const std::filesystem::path& config_path, std::ostream& out,
                std::ostream& err);
int sweep_command(const std::string& config_glob, int jobs, std::ostream& out,
                  std::ostream& err);

}  // namespace dww
