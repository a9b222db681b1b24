#include "dww/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace dww {

namespace {

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class KeyValues {
 public:
  KeyValues(const std::string& text, std::string origin) : origin_(std::move(origin)) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string line = raw;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(origin_, lineno, "expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError(origin_, lineno, "empty key");
      if (entries_.count(key))
        throw ConfigError(origin_, lineno, "duplicate key '" + key + "'");
      entries_[key] = Entry{value, lineno, false};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    return it->second.value;
  }

  double get_double(const std::string& key, double fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second.value, &pos);
      if (pos != it->second.value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(origin_, it->second.line, "'" + key + "' is not a number");
    }
  }

  long get_long(const std::string& key, long fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    long v = 0;
    const auto& s = it->second.value;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
      throw ConfigError(origin_, it->second.line, "'" + key + "' is not an integer");
    return v;
  }

  bool get_bool(const std::string& key, bool fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    const std::string& v = it->second.value;
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(origin_, it->second.line, "'" + key + "' must be on/off");
  }

  int line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void reject_unused() const {
    for (const auto& [key, e] : entries_)
      if (!e.used) throw ConfigError(origin_, e.line, "unknown key '" + key + "'");
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

ModelKind parse_model(KeyValues& kv) {
  const std::string v = kv.get_string("model", "");
  if (v == "bi_quadratic") return ModelKind::BiQuadratic;
  if (v == "bi_cubic") return ModelKind::BiCubic;
  if (v == "unidirectional") return ModelKind::Unidirectional;
  throw ConfigError(kv.origin(), kv.line_of("model"),
                    v.empty() ? "missing required key 'model'"
                              : "unknown model '" + v +
                                    "' (bi_quadratic|bi_cubic|unidirectional)");
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  if (n_modes < 4 || n_modes % 2 != 0)
    throw std::invalid_argument("n_modes must be even and >= 4");
  stepping.validate();
  if (output.cadence < 1) throw std::invalid_argument("cadence must be >= 1");
  if (output.snapshot_every < 0) throw std::invalid_argument("snapshot_every must be >= 0");
}

RunConfig RunConfig::parse_text(const std::string& text, const std::string& origin) {
  KeyValues kv(text, origin);
  RunConfig cfg;

  cfg.model = parse_model(kv);
  cfg.params.delta = kv.get_double("delta", cfg.params.delta);
  cfg.params.beta = kv.get_double("beta", cfg.params.beta);
  cfg.params.epsilon = kv.get_double("epsilon", cfg.params.epsilon);
  cfg.n_modes = static_cast<int>(kv.get_long("n_modes", cfg.n_modes));

  const std::string preset = kv.get_string("initial", "single_mode");
  if (preset == "single_mode") cfg.initial.preset = InitialPreset::SingleMode;
  else if (preset == "two_mode") cfg.initial.preset = InitialPreset::TwoMode;
  else if (preset == "random_smooth") cfg.initial.preset = InitialPreset::RandomSmooth;
  else
    throw ConfigError(origin, kv.line_of("initial"),
                      "unknown initial preset '" + preset +
                          "' (single_mode|two_mode|random_smooth)");
  cfg.initial.k = static_cast<int>(kv.get_long("initial.k", cfg.initial.k));
  cfg.initial.amplitude = kv.get_double("initial.amplitude", cfg.initial.amplitude);
  cfg.initial.k2 = static_cast<int>(kv.get_long("initial.k2", cfg.initial.k2));
  cfg.initial.amplitude2 = kv.get_double("initial.amplitude2", cfg.initial.amplitude2);
  cfg.initial.decay = kv.get_double("initial.decay", cfg.initial.decay);
  cfg.initial.seed = static_cast<std::uint64_t>(kv.get_long("initial.seed", 1));
  const std::string ft = kv.get_string("initial.ft", "zero");
  if (ft == "zero") cfg.initial.ft = FtMode::Zero;
  else if (ft == "same") cfg.initial.ft = FtMode::Same;
  else if (ft == "eigen") cfg.initial.ft = FtMode::EigenMinus;
  else
    throw ConfigError(origin, kv.line_of("initial.ft"),
                      "unknown initial.ft '" + ft + "' (zero|same|eigen)");

  cfg.dt_explicit = kv.has("dt");
  cfg.stepping.dt = kv.get_double("dt", 0.0);
  if (!cfg.dt_explicit)
    cfg.stepping.dt = StepConfig::default_dt(cfg.params.delta, cfg.n_modes / 2);
  const std::string scheme = kv.get_string("scheme", "etd_rk2");
  if (scheme == "etd1") cfg.stepping.scheme = Scheme::Etd1;
  else if (scheme == "etd_rk2") cfg.stepping.scheme = Scheme::EtdRk2;
  else
    throw ConfigError(origin, kv.line_of("scheme"),
                      "unknown scheme '" + scheme + "' (etd1|etd_rk2)");
  cfg.stepping.t_final = kv.get_double("t_final", 0.0);
  cfg.stepping.resolution_guard = kv.get_bool("resolution_guard", true);

  cfg.output.directory = kv.get_string("output", ".");
  cfg.output.cadence = static_cast<int>(kv.get_long("cadence", 1));
  cfg.output.snapshot_every = static_cast<int>(kv.get_long("snapshot_every", 0));
  const std::string formats = kv.get_string("formats", "csv,binary");
  cfg.output.csv = formats.find("csv") != std::string::npos;
  cfg.output.binary = formats.find("binary") != std::string::npos;
  cfg.output.spectrum_txt = formats.find("spectrum_txt") != std::string::npos;

  kv.reject_unused();

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin, 0, e.what());
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path.string());
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "model = " << to_string(model) << '\n';
  out << "delta = " << num(params.delta) << '\n';
  out << "beta = " << num(params.beta) << '\n';
  out << "epsilon = " << num(params.epsilon) << '\n';
  out << "n_modes = " << n_modes << '\n';
  switch (initial.preset) {
    case InitialPreset::SingleMode:
      out << "initial = single_mode\n";
      out << "initial.k = " << initial.k << '\n';
      out << "initial.amplitude = " << num(initial.amplitude) << '\n';
      break;
    case InitialPreset::TwoMode:
      out << "initial = two_mode\n";
      out << "initial.k = " << initial.k << '\n';
      out << "initial.amplitude = " << num(initial.amplitude) << '\n';
      out << "initial.k2 = " << initial.k2 << '\n';
      out << "initial.amplitude2 = " << num(initial.amplitude2) << '\n';
      break;
    case InitialPreset::RandomSmooth:
      out << "initial = random_smooth\n";
      out << "initial.decay = " << num(initial.decay) << '\n';
      out << "initial.amplitude = " << num(initial.amplitude) << '\n';
      out << "initial.seed = " << initial.seed << '\n';
      break;
  }
  if (model != ModelKind::Unidirectional) {
    out << "initial.ft = "
        << (initial.ft == FtMode::Zero ? "zero"
                                       : initial.ft == FtMode::Same ? "same" : "eigen")
        << '\n';
  }
  out << "dt = " << num(stepping.dt) << '\n';
  out << "scheme = " << to_string(stepping.scheme) << '\n';
  out << "t_final = " << num(stepping.t_final) << '\n';
  out << "resolution_guard = " << (stepping.resolution_guard ? "on" : "off") << '\n';
  out << "output = " << output.directory << '\n';
  out << "cadence = " << output.cadence << '\n';
  out << "snapshot_every = " << output.snapshot_every << '\n';
  out << "formats = ";
  bool first = true;
  for (const auto& [flag, name] :
       {std::pair{output.csv, "csv"}, {output.binary, "binary"},
        {output.spectrum_txt, "spectrum_txt"}}) {
    if (!flag) continue;
    if (!first) out << ',';
    out << name;
    first = false;
  }
  out << '\n';
  return out.str();
}

SpectralField build_initial_field(const RunConfig& cfg) {
  const Grid grid(cfg.n_modes);
  switch (cfg.initial.preset) {
    case InitialPreset::SingleMode:
      return initial_single_mode(grid, cfg.initial.k, cfg.initial.amplitude);
    case InitialPreset::TwoMode:
      return initial_two_mode(grid, cfg.initial.k, cfg.initial.amplitude, cfg.initial.k2,
                              cfg.initial.amplitude2);
    case InitialPreset::RandomSmooth:
      return initial_random_smooth(grid, cfg.initial.decay, cfg.initial.amplitude,
                                   cfg.initial.seed);
  }
  throw std::logic_error("build_initial_field: unknown preset");
}

}  // namespace dww
