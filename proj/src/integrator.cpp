#include "dww/integrator.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "dww/diagnostics.hpp"

namespace dww {

const char* to_string(Scheme s) { return s == Scheme::Etd1 ? "etd1" : "etd_rk2"; }

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::BlowUp: return "blow_up";
    case RunStatus::GuardTripped: return "guard_tripped";
  }
  return "?";
}

void StepConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("StepConfig: dt must be > 0");
  if (!(t_final >= 0.0)) throw std::invalid_argument("StepConfig: t_final must be >= 0");
}

BiStepper::BiStepper(Grid grid, ModelParams p, ModelKind kind, StepConfig cfg)
    : grid_(grid), params_(p), kind_(kind), cfg_(cfg) {
  cfg_.validate();
  if (kind == ModelKind::Unidirectional)
    throw std::invalid_argument("BiStepper: bidirectional kinds only");
  prop_.resize(static_cast<size_t>(grid.size()));
  etd1_.resize(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    const int k = grid.wavenumber_at(i);
    if (k == 0) continue;
    const BiModeSymbol sym = bi_symbol(k, p);
    prop_[static_cast<size_t>(i)] = bi_propagator(cfg_.dt, sym);
    etd1_[static_cast<size_t>(i)] = bi_etd1_weight(cfg_.dt, sym);
  }
}

BiState BiStepper::step(const BiState& state) const { return apply(state, true); }
BiState BiStepper::step_linear_only(const BiState& state) const { return apply(state, false); }

BiState BiStepper::apply(const BiState& state, bool with_forcing) const {
  if (!(state.grid() == grid_)) throw std::invalid_argument("BiStepper: grid mismatch");
  const double dt = cfg_.dt;
  const auto guard = cfg_.resolution_guard ? ResolutionGuard::Enforce : ResolutionGuard::Off;

  SpectralField f1(grid_), ft1(grid_);
  const int n = grid_.size();

  if (!with_forcing) {
    for (int i = 0; i < n; ++i) {
      if (grid_.wavenumber_at(i) == 0) continue;
      const auto& m = prop_[static_cast<size_t>(i)];
      f1.data()[i] = m[0] * state.f.data()[i] + m[1] * state.ft.data()[i];
      ft1.data()[i] = m[2] * state.f.data()[i] + m[3] * state.ft.data()[i];
    }
    return BiState(std::move(f1), std::move(ft1));
  }

  const SpectralField F1 = bi_forcing(state, params_, kind_, guard);

  if (cfg_.scheme == Scheme::Etd1) {
    for (int i = 0; i < n; ++i) {
      if (grid_.wavenumber_at(i) == 0) continue;
      const auto& m = prop_[static_cast<size_t>(i)];
      const auto& w = etd1_[static_cast<size_t>(i)];
      f1.data()[i] = m[0] * state.f.data()[i] + m[1] * state.ft.data()[i] + w.on_f * F1.data()[i];
      ft1.data()[i] =
          m[2] * state.f.data()[i] + m[3] * state.ft.data()[i] + w.on_ft * F1.data()[i];
    }
    return BiState(std::move(f1), std::move(ft1));
  }

  // Lawson-Heun: trapezoidal quadrature of the Duhamel integral with the
  // endpoint kernels e^{-dt L} B and B.
  SpectralField fp(grid_), ftp(grid_);
  for (int i = 0; i < n; ++i) {
    if (grid_.wavenumber_at(i) == 0) continue;
    const auto& m = prop_[static_cast<size_t>(i)];
    const cd bf = m[0] * state.f.data()[i] + m[1] * state.ft.data()[i];
    const cd bft = m[2] * state.f.data()[i] + m[3] * state.ft.data()[i];
    fp.data()[i] = bf + dt * m[1] * F1.data()[i];
    ftp.data()[i] = bft + dt * m[3] * F1.data()[i];
    f1.data()[i] = bf + 0.5 * dt * m[1] * F1.data()[i];
    ft1.data()[i] = bft + 0.5 * dt * m[3] * F1.data()[i];
  }
  const BiState predictor(std::move(fp), std::move(ftp));
  const SpectralField F2 = bi_forcing(predictor, params_, kind_, guard);
  for (int i = 0; i < n; ++i) {
    if (grid_.wavenumber_at(i) == 0) continue;
    ft1.data()[i] += 0.5 * dt * F2.data()[i];
  }
  return BiState(std::move(f1), std::move(ft1));
}

UniStepper::UniStepper(Grid grid, ModelParams p, StepConfig cfg)
    : grid_(grid), params_(p), cfg_(cfg) {
  cfg_.validate();
  decay_.resize(static_cast<size_t>(grid.size()));
  etd1_.resize(static_cast<size_t>(grid.size()));
  const double half = cfg_.dt / (2.0 * p.epsilon);
  for (int i = 0; i < grid.size(); ++i) {
    const int k = grid.wavenumber_at(i);
    if (k == 0) continue;
    const cd lambda = uni_symbol(k, p).lambda;
    decay_[static_cast<size_t>(i)] = std::exp(-lambda * half);
    etd1_[static_cast<size_t>(i)] = cfg_.dt * phi1(-lambda * half);
  }
}

SpectralField UniStepper::step(const SpectralField& u) const { return apply(u, true); }
SpectralField UniStepper::step_linear_only(const SpectralField& u) const {
  return apply(u, false);
}

SpectralField UniStepper::apply(const SpectralField& u, bool with_forcing) const {
  if (!(u.grid() == grid_)) throw std::invalid_argument("UniStepper: grid mismatch");
  const double dt = cfg_.dt;
  const auto guard = cfg_.resolution_guard ? ResolutionGuard::Enforce : ResolutionGuard::Off;
  const int n = grid_.size();

  SpectralField out(grid_);
  if (!with_forcing) {
    for (int i = 0; i < n; ++i) {
      if (grid_.wavenumber_at(i) == 0) continue;
      out.data()[i] = decay_[static_cast<size_t>(i)] * u.data()[i];
    }
    return out;
  }

  // The 2 eps u_t normalization: forcing for u_t is rhs/(2 eps).
  const double fscale = 1.0 / (2.0 * params_.epsilon);
  const SpectralField g1 = fscale * uni_rhs_nonlinear(u, params_, guard);

  if (cfg_.scheme == Scheme::Etd1) {
    for (int i = 0; i < n; ++i) {
      if (grid_.wavenumber_at(i) == 0) continue;
      out.data()[i] = decay_[static_cast<size_t>(i)] * u.data()[i] +
                      etd1_[static_cast<size_t>(i)] * g1.data()[i];
    }
    return out;
  }

  SpectralField up(grid_);
  for (int i = 0; i < n; ++i) {
    if (grid_.wavenumber_at(i) == 0) continue;
    up.data()[i] = decay_[static_cast<size_t>(i)] * (u.data()[i] + dt * g1.data()[i]);
  }
  const SpectralField g2 = fscale * uni_rhs_nonlinear(up, params_, guard);
  for (int i = 0; i < n; ++i) {
    if (grid_.wavenumber_at(i) == 0) continue;
    out.data()[i] = decay_[static_cast<size_t>(i)] * u.data()[i] +
                    0.5 * dt * (decay_[static_cast<size_t>(i)] * g1.data()[i] + g2.data()[i]);
  }
  return out;
}

BiState step_bi(const BiState& state, const ModelParams& p, ModelKind kind,
                const StepConfig& cfg) {
  return BiStepper(state.grid(), p, kind, cfg).step(state);
}

SpectralField step_uni(const SpectralField& u, const ModelParams& p, const StepConfig& cfg) {
  return UniStepper(u.grid(), p, cfg).step(u);
}

namespace {

struct StepPlan {
  long full_steps = 0;
  double tail_dt = 0.0;  // 0 when t_final is a multiple of dt
  long total() const { return full_steps + (tail_dt > 0.0 ? 1 : 0); }
};

StepPlan plan_steps(double t_final, double dt) {
  StepPlan plan;
  plan.full_steps = static_cast<long>(std::floor(t_final / dt + 1e-9));
  const double rem = t_final - static_cast<double>(plan.full_steps) * dt;
  if (rem > 1e-10 * std::max(1.0, dt)) plan.tail_dt = rem;
  return plan;
}

// Shared time loop over either model; Adapter supplies stepping, diagnostics
// and snapshot extraction.
template <typename State, typename Adapter>
RunRecord evolve_loop(const State& initial, Adapter&& ad, const StepConfig& cfg,
                      const EvolveOptions& opts) {
  cfg.validate();
  if (opts.diag_every < 1) throw std::invalid_argument("evolve: diag cadence must be >= 1");

  RunRecord rec = ad.header();
  rec.dt = cfg.dt;

  const StepPlan plan = plan_steps(cfg.t_final, cfg.dt);
  const double a0_init = ad.a0(initial);
  const double blow_threshold = a0_init > 0.0 ? opts.blowup_factor * a0_init : 1.0;

  State state = initial;
  double t = 0.0;

  auto push_row = [&](const State& s, double time) {
    DiagRow row = ad.diagnose(s, time);
    rec.rows.push_back(row);
    if (opts.on_row) opts.on_row(row);
  };
  auto push_snapshot = [&](const State& s, double time, long step) {
    rec.snapshots.push_back(ad.snapshot(s, time, step));
  };

  try {
    push_row(state, 0.0);
    push_snapshot(state, 0.0, 0);
    rec.t_end = 0.0;

    for (long s = 1; s <= plan.total(); ++s) {
      const bool tail = (s == plan.full_steps + 1);
      const double step_dt = tail ? plan.tail_dt : cfg.dt;
      state = ad.advance(state, step_dt, tail);
      t = tail ? cfg.t_final : static_cast<double>(s) * cfg.dt;

      if (!ad.finite(state)) {
        rec.status = RunStatus::BlowUp;
        rec.message = "non-finite coefficient after t = " + std::to_string(rec.t_end);
        break;
      }
      const double a0 = ad.a0(state);
      if (a0 > blow_threshold) {
        rec.status = RunStatus::BlowUp;
        rec.message = "A0 norm exceeded " + std::to_string(opts.blowup_factor) +
                      "x the initial value at t = " + std::to_string(t);
        break;
      }

      rec.t_end = t;
      const bool last = (s == plan.total());
      if (last || s % opts.diag_every == 0) push_row(state, t);
      if (last || (opts.snapshot_every > 0 && s % opts.snapshot_every == 0))
        push_snapshot(state, t, s);
    }
  } catch (const UnderResolvedError& e) {
    rec.status = RunStatus::GuardTripped;
    rec.message = e.what();
  }

  ad.fill_residuals(rec);
  return rec;
}

struct BiAdapter {
  ModelParams p;
  ModelKind kind;
  StepConfig cfg;
  EvolveOptions opts;
  Grid grid;
  BiStepper main_stepper;
  mutable std::unique_ptr<BiStepper> tail_stepper;

  BiAdapter(const BiState& init, ModelParams p_, ModelKind kind_, StepConfig cfg_,
            EvolveOptions opts_)
      : p(p_), kind(kind_), cfg(cfg_), opts(opts_), grid(init.grid()),
        main_stepper(init.grid(), p_, kind_, cfg_) {}

  RunRecord header() const {
    RunRecord r;
    r.kind = kind;
    r.params = p;
    r.n_modes = grid.size();
    return r;
  }

  BiState advance(const BiState& s, double step_dt, bool tail) const {
    if (!tail) return opts.linear_only ? main_stepper.step_linear_only(s) : main_stepper.step(s);
    if (!tail_stepper || tail_stepper->dt() != step_dt) {
      StepConfig c = cfg;
      c.dt = step_dt;
      tail_stepper = std::make_unique<BiStepper>(grid, p, kind, c);
    }
    return opts.linear_only ? tail_stepper->step_linear_only(s) : tail_stepper->step(s);
  }

  double a0(const BiState& s) const { return wiener_norm(s.f, 0.0) + wiener_norm(s.ft, 0.0); }
  bool finite(const BiState& s) const { return s.f.all_finite() && s.ft.all_finite(); }

  DiagRow diagnose(const BiState& s, double t) const {
    DiagRow row;
    row.t = t;
    row.a0_f = wiener_norm(s.f, 0.0);
    row.a0_ft = wiener_norm(s.ft, 0.0);
    row.h2 = sobolev_norm(s.f, 2.0);
    row.h4 = sobolev_norm(s.f, 4.0);
    row.h6 = sobolev_norm(s.f, 6.0);
    const EnergyReport er = energy_bi(s, p);
    row.energy = er.E;
    row.dissipation = er.D;
    if (!opts.linear_only) {
      // Diagnostics are read-only; the resolution guard stays on the stepping
      // path so a marginal state still yields its final row before the trip.
      const auto terms = bi_forcing_terms(s, p, kind, ResolutionGuard::Off);
      const SpectralField weight = lambda_pow(s.ft, 8.0);
      double power = 0.0;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const double pr = pairing_l2(terms[i], weight);
        if (i < 6) row.terms_I[i] = pr;
        power += pr;
      }
      row.forcing_power = power;
    }
    return row;
  }

  Snapshot snapshot(const BiState& s, double t, long step) const {
    Snapshot snap;
    snap.t = t;
    snap.step = step;
    snap.f.assign(s.f.data().begin(), s.f.data().end());
    snap.ft.assign(s.ft.data().begin(), s.ft.data().end());
    return snap;
  }

  void fill_residuals(RunRecord& rec) const {
    if (rec.rows.size() < 3) return;
    for (std::size_t i = 1; i + 1 < rec.rows.size(); ++i)
      rec.rows[i].residual = balance_residual_at(rec.rows, i);
  }
};

struct UniAdapter {
  ModelParams p;
  StepConfig cfg;
  EvolveOptions opts;
  Grid grid;
  UniStepper main_stepper;
  mutable std::unique_ptr<UniStepper> tail_stepper;

  UniAdapter(const SpectralField& init, ModelParams p_, StepConfig cfg_, EvolveOptions opts_)
      : p(p_), cfg(cfg_), opts(opts_), grid(init.grid()), main_stepper(init.grid(), p_, cfg_) {}

  RunRecord header() const {
    RunRecord r;
    r.kind = ModelKind::Unidirectional;
    r.params = p;
    r.n_modes = grid.size();
    return r;
  }

  SpectralField advance(const SpectralField& u, double step_dt, bool tail) const {
    if (!tail) return opts.linear_only ? main_stepper.step_linear_only(u) : main_stepper.step(u);
    if (!tail_stepper || tail_stepper->dt() != step_dt) {
      StepConfig c = cfg;
      c.dt = step_dt;
      tail_stepper = std::make_unique<UniStepper>(grid, p, c);
    }
    return opts.linear_only ? tail_stepper->step_linear_only(u) : tail_stepper->step(u);
  }

  double a0(const SpectralField& u) const { return wiener_norm(u, 0.0); }
  bool finite(const SpectralField& u) const { return u.all_finite(); }

  DiagRow diagnose(const SpectralField& u, double t) const {
    DiagRow row;
    row.t = t;
    row.a0_f = wiener_norm(u, 0.0);
    row.h2 = sobolev_norm(u, 2.0);
    row.h4 = sobolev_norm(u, 4.0);
    row.h6 = sobolev_norm(u, 6.0);
    return row;
  }

  Snapshot snapshot(const SpectralField& u, double t, long step) const {
    Snapshot snap;
    snap.t = t;
    snap.step = step;
    snap.f.assign(u.data().begin(), u.data().end());
    return snap;
  }

  void fill_residuals(RunRecord&) const {}
};

}  // namespace

RunRecord evolve(const BiState& initial, const ModelParams& p, ModelKind kind,
                 const StepConfig& cfg, const EvolveOptions& opts) {
  BiAdapter ad(initial, p, kind, cfg, opts);
  return evolve_loop(initial, ad, cfg, opts);
}

RunRecord evolve(const SpectralField& initial, const ModelParams& p, const StepConfig& cfg,
                 const EvolveOptions& opts) {
  UniAdapter ad(initial, p, cfg, opts);
  return evolve_loop(initial, ad, cfg, opts);
}

}  // namespace dww
