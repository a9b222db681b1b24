#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dww/integrator.hpp"
#include "dww/models.hpp"
#include "dww/params.hpp"

namespace dww {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& file, int line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class InitialPreset { SingleMode, TwoMode, RandomSmooth };

struct InitialConfig {
  InitialPreset preset = InitialPreset::SingleMode;
  int k = 1;
  double amplitude = 1e-3;
  int k2 = 2;          // two_mode only
  double amplitude2 = 1e-3;
  double decay = 1.0;  // random_smooth only
  std::uint64_t seed = 1;
  FtMode ft = FtMode::Zero;  // bidirectional models only
};

struct OutputConfig {
  std::string directory = ".";
  int cadence = 1;         // diagnostics every m steps
  int snapshot_every = 0;  // 0: initial and final only
  bool csv = true;
  bool binary = true;
  bool spectrum_txt = false;
};

// A complete run description, parsed from a flat "key = value" file.
struct RunConfig {
  ModelKind model = ModelKind::BiQuadratic;
  ModelParams params;
  int n_modes = 64;
  InitialConfig initial;
  StepConfig stepping;
  OutputConfig output;

  bool dt_explicit = false;  // false: dt from StepConfig::default_dt

  void validate() const;  // throws std::invalid_argument on bad combinations

  static RunConfig parse_file(const std::filesystem::path& path);
  static RunConfig parse_text(const std::string& text, const std::string& origin = "<string>");

  // Canonical key=value rendering; embedded in every output file.
  std::string echo() const;
};

SpectralField build_initial_field(const RunConfig& cfg);

}  // namespace dww
