#include "dww/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dww/diagnostics.hpp"
#include "dww/integrator.hpp"
#include "dww/linear.hpp"
#include "dww/models.hpp"
#include "dww/oracles.hpp"

namespace dww::verify {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---- naive-convolution assemblies (reference route for C1) -----------------

SpectralField conv_comm_H(const SpectralField& a, const SpectralField& b) {
  return hilbert(naive_convolution(a, b)) - naive_convolution(a, hilbert(b));
}

SpectralField conv_comm_dxx(const SpectralField& a, const SpectralField& b) {
  return naive_convolution(derivative(a, 2), b) +
         2.0 * naive_convolution(derivative(a, 1), derivative(b, 1));
}

std::vector<SpectralField> conv_bi_terms(const BiState& s, const ModelParams& p,
                                         ModelKind kind) {
  const auto& f = s.f;
  const auto& ft = s.ft;
  const double d = p.delta, b = p.beta, e = p.epsilon;
  const SpectralField Hft = hilbert(ft);
  const SpectralField Hfxx = hilbert(derivative(f, 2));
  std::vector<SpectralField> terms;
  terms.push_back(-e * lambda_pow(naive_convolution(Hft, Hft), 1.0));
  terms.push_back(e * derivative(conv_comm_H(f, lambda_pow(f, 1.0))));
  terms.push_back(b == 0.0 ? SpectralField(f.grid())
                           : (e * b) * derivative(conv_comm_H(f, lambda_pow(f, 3.0))));
  terms.push_back((e * d) * derivative(conv_comm_H(Hft, Hfxx)));
  terms.push_back((e * d) * lambda_pow(naive_convolution(Hft, Hfxx), 1.0));
  terms.push_back((-e * d) * derivative(conv_comm_dxx(f, Hft)));
  if (kind == ModelKind::BiCubic) {
    terms.push_back((e * d * d) *
                    derivative(conv_comm_dxx(f, lambda_pow(derivative(f), 1.0))));
    terms.push_back((-e * d * d) *
                    derivative(conv_comm_H(derivative(f, 2), derivative(f, 2))));
  }
  return terms;
}

SpectralField conv_uni_rhs(const SpectralField& u, const ModelParams& p) {
  const double d = p.delta, b = p.beta;
  const SpectralField ux = derivative(u);
  const SpectralField linv = lambda_pow(u, -1.0);
  SpectralField brace = 2.0 * naive_convolution(u, ux);
  brace += lambda_pow(conv_comm_H(linv, u), 1.0);
  if (b != 0.0) brace += b * lambda_pow(conv_comm_H(linv, lambda_pow(u, 2.0)), 1.0);
  if (d != 0.0) {
    brace -= d * lambda_pow(conv_comm_H(u, ux), 1.0);
    brace += d * derivative(naive_convolution(u, ux));
    brace += d * lambda_pow(conv_comm_dxx(linv, u), 1.0);
  }
  return (-p.epsilon) * op_N(brace, p);
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

SpectralField random_band_field(const Grid& grid, int k_band, double amplitude,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  SpectralField f(grid);
  for (int k = 1; k <= std::min(k_band, grid.max_wavenumber() - 1); ++k) {
    const cd c = amplitude * cd(unit() - 0.5, unit() - 0.5);
    f.set_coeff(k, c);
    f.set_coeff(-k, std::conj(c));
  }
  return f;
}

SuiteReport verify_operators() {
  SuiteReport report{"operators", {}};
  const Grid grid(16);
  const int band = 5;  // 16/3, the safe band for quadratic products

  double worst_terms = 0.0, worst_uni = 0.0, worst_prod = 0.0, worst_kernel = 0.0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (const ModelParams p : {ModelParams{0.8, 0.6, 1.0}, ModelParams{0.3, 0.0, 1.0}}) {
      const SpectralField f = random_band_field(grid, band, 1e-2, seed);
      const SpectralField ft = random_band_field(grid, band, 1e-2, seed + 100);
      const SpectralField u = random_band_field(grid, band, 1e-2, seed + 200);
      const BiState state(f, ft);

      const auto got = bi_forcing_terms(state, p, ModelKind::BiCubic);
      const auto want = conv_bi_terms(state, p, ModelKind::BiCubic);
      for (std::size_t i = 0; i < got.size(); ++i)
        worst_terms = std::max(worst_terms, max_diff(got[i], want[i]));

      worst_uni = std::max(worst_uni, max_diff(uni_rhs_nonlinear(u, p), conv_uni_rhs(u, p)));

      worst_prod =
          std::max(worst_prod, max_diff(dealiased_product(f, ft), naive_convolution(f, ft)));

      // Fourier kernel of [H, f]ft: -i (sgn k - sgn(k-n)) fhat(n) fthat(k-n).
      SpectralField kernel(grid);
      for (int k = grid.min_wavenumber(); k <= grid.max_wavenumber(); ++k) {
        cd acc{};
        for (int n = grid.min_wavenumber(); n <= grid.max_wavenumber(); ++n) {
          const int r = k - n;
          if (r < grid.min_wavenumber() || r > grid.max_wavenumber()) continue;
          acc += cd(0.0, -static_cast<double>(sgn(k) - sgn(r))) * f.coeff(n) * ft.coeff(r);
        }
        kernel.set_coeff(k, acc);
      }
      worst_kernel = std::max(worst_kernel, max_diff(commutator_H(f, ft), kernel));
    }
  }

  report.results.push_back(
      {"C1", "operator oracle equivalence on n=16 random band-limited fields",
       worst_terms < 1e-11 && worst_uni < 1e-11 && worst_prod < 1e-12 && worst_kernel < 1e-12,
       "max term deviation " + fmt(worst_terms) + " (tol 1e-11), rhs " + fmt(worst_uni) +
           ", product vs convolution " + fmt(worst_prod) + ", commutator kernel " +
           fmt(worst_kernel)});
  return report;
}

SuiteReport verify_semigroup() {
  SuiteReport report{"semigroup", {}};
  double worst = 0.0;
  for (const double delta : {0.1, 0.5, 1.0})
    for (const double beta : {0.0, 1.0})
      for (const double t : {0.1, 1.0})
        for (int n = -64; n <= 64; ++n) {
          if (n == 0) continue;
          const ModelParams p{delta, beta, 1.0};
          const auto got = bi_propagator(t, bi_symbol(n, p));
          const auto want = oracles::propagator_expm(n, p, t);
          for (int e = 0; e < 4; ++e) worst = std::max(worst, std::abs(got[e] - want[e]));
        }

  double worst_comp = 0.0;
  std::mt19937_64 rng(7);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (const double delta : {0.1, 1.0})
    for (const double beta : {0.0, 1.0})
      for (const int n : {1, 2, 3, 5, 13, 32, 64}) {
        const auto sym = bi_symbol(n, ModelParams{delta, beta, 1.0});
        for (int trial = 0; trial < 4; ++trial) {
          const ModePair x{cd(unit() - 0.5, unit() - 0.5), cd(unit() - 0.5, unit() - 0.5)};
          const double t = 0.05 + unit(), s = 0.05 + unit();
          const ModePair two = bi_propagate(bi_propagate(x, s, sym), t, sym);
          const ModePair one = bi_propagate(x, t + s, sym);
          worst_comp = std::max({worst_comp, std::abs(two.f - one.f), std::abs(two.ft - one.ft)});
        }
      }

  report.results.push_back(
      {"C2", "semigroup matches scaling-and-squaring exponential; composition law",
       worst < 1e-11 && worst_comp < 1e-12,
       "max |propagator - expm| " + fmt(worst) + " (tol 1e-11), composition defect " +
           fmt(worst_comp) + " (tol 1e-12)"});
  return report;
}

SuiteReport verify_inequality() {
  SuiteReport report{"inequality", {}};

  double global_min_slack = 0.0;
  std::string worst_case;
  bool holds = true;
  bool first = true;
  for (const double delta : {0.1, 0.5, 1.0, 2.0})
    for (const double beta : {0.0, 0.5, 1.0}) {
      const auto rep = ratio_bound_check(1024, ModelParams{delta, beta, 1.0});
      if (first || rep.min_slack < global_min_slack) {
        global_min_slack = rep.min_slack;
        std::ostringstream os;
        os << "delta=" << delta << " beta=" << beta << " n=" << rep.min_slack_n;
        if (rep.first_violation_n > 0) os << " (first violation at n=" << rep.first_violation_n << ")";
        worst_case = os.str();
        first = false;
      }
      holds = holds && rep.holds();
    }
  report.results.push_back(
      {"C3", "eigenvalue ratio bound (1 + delta sqrt(n/(1+beta)))/2 for n <= 1024", holds,
       "min slack " + fmt(global_min_slack) + " at " + worst_case});

  double min_margin = 1e300;
  for (const double delta : {0.1, 0.5, 1.0, 2.0})
    for (const double beta : {0.0, 0.5, 1.0})
      for (int k = 1; k <= 1024; ++k)
        for (const int sk : {k, -k}) {
          const cd lambda = uni_symbol(sk, ModelParams{delta, beta, 1.0}).lambda;
          min_margin = std::min(min_margin, lambda.real() - delta);
        }
  report.results.push_back({"C4", "unidirectional symbol satisfies Re lambda(k) >= delta",
                            min_margin >= 0.0,
                            "min (Re lambda - delta) = " + fmt(min_margin) + " over |k| <= 1024"});
  return report;
}

namespace {

struct A0Series {
  std::vector<double> t, value;
};

A0Series a0_series(const RunRecord& rec) {
  A0Series s;
  for (const DiagRow& r : rec.rows) {
    s.t.push_back(r.t);
    s.value.push_back(rec.kind == ModelKind::Unidirectional ? r.a0_f : r.a0_f + r.a0_ft);
  }
  return s;
}

}  // namespace

SuiteReport verify_decay_bi() {
  SuiteReport report{"decay_bi", {}};
  const ModelParams p{0.5, 0.0, 1.0};
  const Grid grid(64);

  StepConfig cfg;
  cfg.dt = 5e-3;
  cfg.scheme = Scheme::EtdRk2;
  cfg.t_final = 20.0;
  EvolveOptions opts;
  opts.diag_every = 10;

  const BiState init = make_bi_state(initial_single_mode(grid, 1, 1e-3), FtMode::Same, p);
  const RunRecord rec = evolve(init, p, ModelKind::BiQuadratic, cfg, opts);

  const A0Series series = a0_series(rec);
  bool ok = rec.status == RunStatus::Completed;
  DecayFit fit{};
  if (ok) fit = fit_decay_rate(series.t, series.value, 10.0, 20.0);
  const bool rate_ok = ok && fit.rate >= 0.9 * p.delta;

  double env_max = 0.0;
  for (std::size_t i = 0; i < series.t.size(); ++i)
    env_max = std::max(env_max, std::exp(p.delta * series.t[i]) * series.value[i]);
  const bool env_ok = ok && env_max <= 2.0 * series.value.front();

  report.results.push_back(
      {"C5", "bidirectional A0 decay at rate >= 0.9 delta with e^{delta t}-envelope bound",
       rate_ok && env_ok,
       "fitted rate " + fmt(fit.rate) + " (target >= " + fmt(0.9 * p.delta) + ", R^2 " +
           fmt(fit.r_squared) + "), envelope max " + fmt(env_max) + " <= " +
           fmt(2.0 * series.value.front())});

  double e_max = 0.0;
  for (const DiagRow& r : rec.rows) e_max = std::max(e_max, r.energy);
  const bool energy_ok = ok && e_max <= 2.0 * rec.rows.front().energy;

  StepConfig big_cfg = cfg;
  EvolveOptions big_opts = opts;
  big_cfg.resolution_guard = false;
  const BiState big = make_bi_state(initial_single_mode(grid, 1, 10.0), FtMode::Same, p);
  const RunRecord big_rec = evolve(big, p, ModelKind::BiQuadratic, big_cfg, big_opts);
  bool big_finite = true;
  for (const DiagRow& r : big_rec.rows)
    big_finite = big_finite && std::isfinite(r.a0_f) && std::isfinite(r.a0_ft) &&
                 std::isfinite(r.energy);
  const bool big_ok = big_finite && (big_rec.status == RunStatus::Completed ||
                                     big_rec.status == RunStatus::BlowUp);

  report.results.push_back(
      {"C7", "small-data energy boundedness; large data ends finite or flagged as blow-up",
       energy_ok && big_ok,
       "sup E = " + fmt(e_max) + " <= " + fmt(2.0 * rec.rows.front().energy) +
           "; amplitude-10 run status '" + to_string(big_rec.status) + "' at t_end " +
           fmt(big_rec.t_end) + (big_finite ? ", all rows finite" : ", NON-FINITE ROWS")});
  return report;
}

SuiteReport verify_decay_uni() {
  SuiteReport report{"decay_uni", {}};
  const ModelParams p{0.5, 0.0, 1.0};
  const Grid grid(64);

  StepConfig cfg;
  cfg.dt = 5e-3;
  cfg.scheme = Scheme::EtdRk2;
  cfg.t_final = 20.0;
  EvolveOptions opts;
  opts.diag_every = 10;
  opts.snapshot_every = 10;

  const RunRecord rec = evolve(initial_single_mode(grid, 1, 1e-3), p, cfg, opts);
  bool ok = rec.status == RunStatus::Completed;

  const A0Series series = a0_series(rec);
  DecayFit fit{};
  if (ok) fit = fit_decay_rate(series.t, series.value, 10.0, 20.0);
  const double target = 0.9 * (p.delta / 2.0);
  const bool rate_ok = ok && fit.rate >= target;

  // H^r spot check from the stored spectra: fitted rate must be positive.
  std::vector<double> st, h0, h1;
  for (const Snapshot& snap : rec.snapshots) {
    SpectralField u(grid);
    std::copy(snap.f.begin(), snap.f.end(), u.data().begin());
    st.push_back(snap.t);
    h0.push_back(sobolev_norm(u, 0.0));
    h1.push_back(sobolev_norm(u, 1.0));
  }
  const DecayFit fit_h0 = fit_decay_rate(st, h0, 10.0, 20.0);
  const DecayFit fit_h1 = fit_decay_rate(st, h1, 10.0, 20.0);
  const bool sobolev_ok = fit_h0.rate > 0.0 && fit_h1.rate > 0.0;

  report.results.push_back(
      {"C6", "unidirectional A0 decay at rate >= 0.9 delta/2; H0/H1 decay positive",
       rate_ok && sobolev_ok,
       "fitted A0 rate " + fmt(fit.rate) + " (target >= " + fmt(target) + "), H0 rate " +
           fmt(fit_h0.rate) + ", H1 rate " + fmt(fit_h1.rate)});
  return report;
}

SuiteReport verify_energy_balance() {
  SuiteReport report{"energy_balance", {}};

  // Static pairing identity sum(I) = <F, Lambda^8 ft>.
  double worst_pairing = 0.0;
  const Grid small(16);
  for (std::uint64_t seed = 11; seed <= 14; ++seed) {
    const ModelParams p{0.8, 0.6, 1.0};
    const BiState state(random_band_field(small, 5, 1e-2, seed),
                        random_band_field(small, 5, 1e-2, seed + 50));
    const auto I = energy_terms_I(state, p);
    double sum = 0.0;
    for (double v : I) sum += v;
    worst_pairing =
        std::max(worst_pairing, std::abs(sum - forcing_power(state, p, ModelKind::BiQuadratic)));
  }

  // Residual order under dt halving.
  const ModelParams p{0.5, 0.0, 1.0};
  const Grid grid(32);
  auto residual_for = [&](double dt) {
    StepConfig cfg;
    cfg.dt = dt;
    cfg.scheme = Scheme::EtdRk2;
    cfg.t_final = 1.0;
    EvolveOptions opts;
    opts.diag_every = 5;
    const BiState init = make_bi_state(initial_single_mode(grid, 1, 1e-2), FtMode::Same, p);
    const RunRecord rec = evolve(init, p, ModelKind::BiQuadratic, cfg, opts);
    return balance_residual(rec.rows);
  };
  const double r1 = residual_for(2e-3);
  const double r2 = residual_for(1e-3);
  const double slope = std::log2(r1 / r2);

  report.results.push_back(
      {"C8", "discrete energy balance: pairing identity and residual convergence",
       worst_pairing < 1e-10 && slope >= 1.9,
       "pairing defect " + fmt(worst_pairing) + " (tol 1e-10); residual " + fmt(r1) + " -> " +
           fmt(r2) + " under halving, order " + fmt(slope) + " (>= 1.9)"});
  return report;
}

SuiteReport verify_convergence() {
  SuiteReport report{"convergence", {}};
  const ModelParams p{0.5, 0.0, 1.0};
  const Grid grid(32);

  auto final_of = [](const RunRecord& rec, const Grid& g) {
    if (rec.status != RunStatus::Completed || rec.snapshots.empty())
      throw std::runtime_error(std::string("run ended '") + to_string(rec.status) +
                               "': " + rec.message);
    SpectralField f(g);
    std::copy(rec.snapshots.back().f.begin(), rec.snapshots.back().f.end(), f.data().begin());
    return f;
  };

  auto bi_final = [&](double dt) {
    StepConfig cfg;
    cfg.dt = dt;
    cfg.scheme = Scheme::EtdRk2;
    cfg.t_final = 1.0;
    EvolveOptions opts;
    opts.diag_every = 1 << 30;
    const BiState init = make_bi_state(initial_single_mode(grid, 1, 5e-2), FtMode::Same, p);
    return final_of(evolve(init, p, ModelKind::BiQuadratic, cfg, opts), grid);
  };
  auto uni_final = [&](double dt) {
    StepConfig cfg;
    cfg.dt = dt;
    cfg.scheme = Scheme::EtdRk2;
    cfg.t_final = 1.0;
    EvolveOptions opts;
    opts.diag_every = 1 << 30;
    return final_of(evolve(initial_single_mode(grid, 1, 5e-2), p, cfg, opts), grid);
  };

  const SpectralField b1 = bi_final(1e-2), b2 = bi_final(5e-3), b3 = bi_final(2.5e-3);
  const double be1 = wiener_norm(b1 - b2, 0.0), be2 = wiener_norm(b2 - b3, 0.0);
  const double bi_order = std::log2(be1 / be2);

  const SpectralField u1 = uni_final(1e-2), u2 = uni_final(5e-3), u3 = uni_final(2.5e-3);
  const double ue1 = wiener_norm(u1 - u2, 0.0), ue2 = wiener_norm(u2 - u3, 0.0);
  const double uni_order = std::log2(ue1 / ue2);

  // Spatial refinement: identical smooth data on 32 and 64 points. The decay
  // rate keeps the coarse grid's top modes below the resolution guard.
  const Grid fine(64);
  const SpectralField u32_0 = initial_random_smooth(grid, 1.5, 1e-3, 7);
  const SpectralField u64_0 = resample(u32_0, fine);
  StepConfig cfg;
  cfg.dt = 2e-3;
  cfg.scheme = Scheme::EtdRk2;
  cfg.t_final = 1.0;
  EvolveOptions opts;
  opts.diag_every = 1 << 30;
  const RunRecord run32 = evolve(u32_0, p, cfg, opts);
  const RunRecord run64 = evolve(u64_0, p, cfg, opts);
  const double uni_spatial =
      wiener_norm(resample(final_of(run32, grid), fine) - final_of(run64, fine), 0.0);

  const BiState b32(u32_0, u32_0);
  const BiState b64(u64_0, u64_0);
  const RunRecord brun32 = evolve(b32, p, ModelKind::BiQuadratic, cfg, opts);
  const RunRecord brun64 = evolve(b64, p, ModelKind::BiQuadratic, cfg, opts);
  const double bi_spatial =
      wiener_norm(resample(final_of(brun32, grid), fine) - final_of(brun64, fine), 0.0);

  report.results.push_back(
      {"C9", "temporal order >= 1.9 for both models; 32->64 spatial difference < 1e-8",
       bi_order >= 1.9 && uni_order >= 1.9 && uni_spatial < 1e-8 && bi_spatial < 1e-8,
       "temporal order bi " + fmt(bi_order) + ", uni " + fmt(uni_order) + "; spatial A0 diff bi " +
           fmt(bi_spatial) + ", uni " + fmt(uni_spatial) + " (tol 1e-8)"});

  // Conservation over 1e4 steps.
  StepConfig cons;
  cons.dt = 1e-3;
  cons.scheme = Scheme::EtdRk2;
  cons.t_final = 10.0;
  EvolveOptions copts;
  copts.diag_every = 1000;
  copts.snapshot_every = 1000;

  double worst_mean = 0.0, worst_herm = 0.0;
  {
    const BiState init = make_bi_state(initial_single_mode(grid, 1, 1e-3), FtMode::Same, p);
    const RunRecord rec = evolve(init, p, ModelKind::BiQuadratic, cons, copts);
    for (const Snapshot& snap : rec.snapshots)
      for (const auto* comp : {&snap.f, &snap.ft}) {
        SpectralField f(grid);
        std::copy(comp->begin(), comp->end(), f.data().begin());
        worst_mean = std::max(worst_mean, f.mean_abs());
        worst_herm = std::max(worst_herm, f.hermitian_defect());
      }
  }
  {
    const RunRecord rec = evolve(initial_single_mode(grid, 1, 1e-3), p, cons, copts);
    for (const Snapshot& snap : rec.snapshots) {
      SpectralField f(grid);
      std::copy(snap.f.begin(), snap.f.end(), f.data().begin());
      worst_mean = std::max(worst_mean, f.mean_abs());
      worst_herm = std::max(worst_herm, f.hermitian_defect());
    }
  }

  report.results.push_back(
      {"C10", "zero mean to 1e-14 and Hermitian symmetry to 1e-12 over 1e4 steps",
       worst_mean <= 1e-14 && worst_herm <= 1e-12,
       "max |mean| " + fmt(worst_mean) + ", max Hermitian defect " + fmt(worst_herm)});
  return report;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"operators",  "semigroup",      "inequality",
                                              "decay_bi",   "decay_uni",      "energy_balance",
                                              "convergence"};
  return names;
}

SuiteReport run_suite(const std::string& name) {
  if (name == "operators") return verify_operators();
  if (name == "semigroup") return verify_semigroup();
  if (name == "inequality") return verify_inequality();
  if (name == "decay_bi") return verify_decay_bi();
  if (name == "decay_uni") return verify_decay_uni();
  if (name == "energy_balance") return verify_energy_balance();
  if (name == "convergence") return verify_convergence();
  throw std::invalid_argument("unknown verification suite '" + name + "'");
}

void print_report(const SuiteReport& report, std::ostream& out) {
  for (const CriterionResult& r : report.results)
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.description << ": " << r.detail
        << '\n';
}

}  // namespace dww::verify
