#include "dww/runner.hpp"

#include <glob.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "dww/diagnostics.hpp"
#include "dww/integrator.hpp"

#include <nlohmann/json.hpp>

namespace dww {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DecayFit tail_fit(const RunRecord& rec) {
  std::vector<double> t, v;
  for (const DiagRow& row : rec.rows) {
    t.push_back(row.t);
    v.push_back(rec.kind == ModelKind::Unidirectional ? row.a0_f : row.a0_f + row.a0_ft);
  }
  // Tail window [T/2, T] skips the transient.
  return fit_decay_rate(t, v, rec.t_end / 2.0, rec.t_end);
}

}  // namespace

RunRecord execute(const RunConfig& cfg) {
  cfg.validate();
  SpectralField f0 = build_initial_field(cfg);
  EvolveOptions opts;
  opts.diag_every = cfg.output.cadence;
  opts.snapshot_every = cfg.output.snapshot_every;
  if (cfg.model == ModelKind::Unidirectional)
    return evolve(f0, cfg.params, cfg.stepping, opts);
  const BiState init = make_bi_state(std::move(f0), cfg.initial.ft, cfg.params);
  return evolve(init, cfg.params, cfg.model, cfg.stepping, opts);
}

std::string render_csv(const RunConfig& cfg, const RunRecord& rec) {
  std::ostringstream out;
  const bool uni = rec.kind == ModelKind::Unidirectional;
  out << "# dww diagnostics format=1\n";
  out << "# status=" << to_string(rec.status) << " t_end=" << fmt_double(rec.t_end) << '\n';
  if (!rec.message.empty()) out << "# message=" << rec.message << '\n';
  out << "# config begin\n";
  std::istringstream echo(cfg.echo());
  for (std::string line; std::getline(echo, line);) out << "#   " << line << '\n';
  out << "# config end\n";
  if (uni) {
    out << "t,A0_u,H2,H4,H6\n";
    for (const DiagRow& r : rec.rows)
      out << fmt_double(r.t) << ',' << fmt_double(r.a0_f) << ',' << fmt_double(r.h2) << ','
          << fmt_double(r.h4) << ',' << fmt_double(r.h6) << '\n';
  } else {
    out << "t,A0_f,A0_ft,H2,H4,H6,E,D,I1,I2,I3,I4,I5,I6,residual\n";
    for (const DiagRow& r : rec.rows) {
      out << fmt_double(r.t) << ',' << fmt_double(r.a0_f) << ',' << fmt_double(r.a0_ft) << ','
          << fmt_double(r.h2) << ',' << fmt_double(r.h4) << ',' << fmt_double(r.h6) << ','
          << fmt_double(r.energy) << ',' << fmt_double(r.dissipation);
      for (double i : r.terms_I) out << ',' << fmt_double(i);
      out << ',' << fmt_double(r.residual) << '\n';
    }
  }
  return out.str();
}

std::string render_summary_json(const RunConfig& cfg, const RunRecord& rec) {
  nlohmann::json j;
  j["format"] = "dww-summary-1";
  j["status"] = to_string(rec.status);
  if (!rec.message.empty()) j["message"] = rec.message;
  j["t_end"] = rec.t_end;
  j["model"] = to_string(rec.kind);
  j["rows"] = rec.rows.size();

  if (!rec.rows.empty()) {
    const DiagRow& last = rec.rows.back();
    nlohmann::json fin;
    if (rec.kind == ModelKind::Unidirectional) {
      fin["A0_u"] = last.a0_f;
    } else {
      fin["A0_f"] = last.a0_f;
      fin["A0_ft"] = last.a0_ft;
      fin["E"] = last.energy;
    }
    fin["H2"] = last.h2;
    fin["H4"] = last.h4;
    fin["H6"] = last.h6;
    j["final"] = fin;
  }

  // Decay targets: rate delta for the bidirectional pair, delta/2 for the
  // unidirectional A0 norm.
  const double target = rec.kind == ModelKind::Unidirectional ? cfg.params.delta / 2.0
                                                              : cfg.params.delta;
  j["decay"]["target_rate"] = target;
  try {
    const DecayFit fit = tail_fit(rec);
    j["decay"]["fitted_rate"] = fit.rate;
    j["decay"]["r_squared"] = fit.r_squared;
    j["decay"]["window"] = {fit.t_begin, fit.t_end};
    j["decay"]["samples"] = fit.samples;
    j["decay"]["meets_target"] = fit.rate >= 0.9 * target;
  } catch (const std::exception& e) {
    j["decay"]["error"] = e.what();
  }

  std::istringstream echo(cfg.echo());
  nlohmann::json jc;
  for (std::string line; std::getline(echo, line);) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      while (!s.empty() && s.front() == ' ') s.erase(s.begin());
      while (!s.empty() && s.back() == ' ') s.pop_back();
      return s;
    };
    jc[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  j["config"] = jc;
  return j.dump(2) + "\n";
}

std::filesystem::path resolve_output_dir(const RunConfig& cfg) {
  std::filesystem::path dir = cfg.output.directory;
  if (dir.is_relative()) {
    if (const char* root = std::getenv("DWW_OUTPUT_ROOT"); root && *root)
      dir = std::filesystem::path(root) / dir;
  }
  return dir;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
}

void append_le(std::string& buf, const void* p, size_t n) {
  // Little-endian hosts only; the sidecar records the byte order.
  buf.append(static_cast<const char*>(p), n);
}

std::string render_component_bin(const Grid& grid, const std::vector<cd>& coeffs) {
  std::string buf;
  buf.reserve(static_cast<size_t>(grid.size()) * 20);
  for (int k = grid.min_wavenumber(); k <= grid.max_wavenumber(); ++k) {
    const cd c = coeffs[static_cast<size_t>(grid.index_of(k))];
    const std::int32_t ki = k;
    const double re = c.real(), im = c.imag();
    append_le(buf, &ki, sizeof ki);
    append_le(buf, &re, sizeof re);
    append_le(buf, &im, sizeof im);
  }
  return buf;
}

std::string render_component_txt(const Grid& grid, const std::vector<cd>& coeffs) {
  std::ostringstream out;
  out << "# k re im\n";
  for (int k = grid.min_wavenumber(); k <= grid.max_wavenumber(); ++k) {
    const cd c = coeffs[static_cast<size_t>(grid.index_of(k))];
    out << k << ' ' << fmt_double(c.real()) << ' ' << fmt_double(c.imag()) << '\n';
  }
  return out.str();
}

std::string snap_stem(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06ld", step);
  return buf;
}

}  // namespace

void write_outputs(const RunConfig& cfg, const RunRecord& rec,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (cfg.output.csv) write_file(dir / "diagnostics.csv", render_csv(cfg, rec));
  write_file(dir / "summary.json", render_summary_json(cfg, rec));
  write_file(dir / "config.echo", cfg.echo());

  if (!cfg.output.binary && !cfg.output.spectrum_txt) return;
  const Grid grid(rec.n_modes);
  const bool uni = rec.kind == ModelKind::Unidirectional;
  for (const Snapshot& snap : rec.snapshots) {
    const std::string stem = snap_stem(snap.step);
    nlohmann::json side;
    side["format"] = "dww-snapshot-1";
    side["t"] = snap.t;
    side["step"] = snap.step;
    side["n_modes"] = rec.n_modes;
    side["record"] = "int32 k, float64 re, float64 im";
    side["byte_order"] = "little";
    side["components"] = uni ? nlohmann::json::array({"u"})
                             : nlohmann::json::array({"f", "ft"});
    const std::vector<std::pair<std::string, const std::vector<cd>*>> comps =
        uni ? std::vector<std::pair<std::string, const std::vector<cd>*>>{{"u", &snap.f}}
            : std::vector<std::pair<std::string, const std::vector<cd>*>>{{"f", &snap.f},
                                                                          {"ft", &snap.ft}};
    for (const auto& [name, data] : comps) {
      if (cfg.output.binary)
        write_file(dir / (stem + "_" + name + ".bin"), render_component_bin(grid, *data));
      if (cfg.output.spectrum_txt)
        write_file(dir / (stem + "_" + name + ".txt"), render_component_txt(grid, *data));
    }
    write_file(dir / (stem + ".json"), side.dump(2) + "\n");
  }
}

int run_command(const std::filesystem::path& config_path, std::ostream& out,
                std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = RunConfig::parse_file(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitValidation;
  }
  RunRecord rec;
  try {
    rec = execute(cfg);
  } catch (const std::exception& e) {
    err << "config error: " << config_path.string() << ": " << e.what() << '\n';
    return kExitValidation;
  }
  const auto dir = resolve_output_dir(cfg);
  write_outputs(cfg, rec, dir);
  out << "status: " << to_string(rec.status) << "  t_end: " << rec.t_end
      << "  rows: " << rec.rows.size() << "  output: " << dir.string() << '\n';
  if (!rec.message.empty()) out << "  " << rec.message << '\n';
  return rec.status == RunStatus::Completed ? kExitOk : kExitBlowUp;
}

int sweep_command(const std::string& config_glob, int jobs, std::ostream& out,
                  std::ostream& err) {
  glob_t g;
  std::memset(&g, 0, sizeof g);
  const int rc = ::glob(config_glob.c_str(), 0, nullptr, &g);
  if (rc == GLOB_NOMATCH) {
    err << "sweep: no configs match '" << config_glob << "'\n";
    return kExitValidation;
  }
  if (rc != 0) {
    globfree(&g);
    err << "sweep: glob failed on '" << config_glob << "'\n";
    return kExitValidation;
  }
  std::vector<std::string> paths(g.gl_pathv, g.gl_pathv + g.gl_pathc);
  globfree(&g);

  if (jobs < 1) jobs = 1;
  std::atomic<size_t> next{0};
  std::atomic<int> worst{kExitOk};
  std::mutex io;

  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= paths.size()) return;
      std::ostringstream local_out, local_err;
      int code;
      try {
        code = run_command(paths[i], local_out, local_err);
      } catch (const std::exception& e) {
        local_err << paths[i] << ": " << e.what() << '\n';
        code = kExitValidation;
      }
      std::lock_guard lock(io);
      out << "[" << paths[i] << "] exit " << code << '\n'
          << local_out.str();
      err << local_err.str();
      int cur = worst.load();
      while (code > cur && !worst.compare_exchange_weak(cur, code)) {}
    }
  };

  std::vector<std::thread> pool;
  const int nw = std::min<int>(jobs, static_cast<int>(paths.size()));
  pool.reserve(static_cast<size_t>(nw));
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return worst.load();
}

}  // namespace dww
