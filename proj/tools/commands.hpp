#ifndef SQUEEZEGATE_TOOLS_COMMANDS_HPP
#define SQUEEZEGATE_TOOLS_COMMANDS_HPP

// Subcommand implementations. Each takes a parsed configuration and writes
// its outputs (CSV files, report.json) into the output directory.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "squeezegate/acceptance.hpp"
#include "squeezegate/csv.hpp"

namespace sqg::cli {

using ojson = nlohmann::ordered_json;

struct RunOptions {
  std::string out_dir = ".";
  int threads = 1;
  long long seed = 0;
};

inline int exit_code_for(const Error& e) { return is_numerical(e.code()) ? 3 : 2; }

inline void write_report(const RunOptions& opt, const std::string& name, const ojson& report) {
  std::filesystem::create_directories(opt.out_dir);
  write_text_file((std::filesystem::path(opt.out_dir) / name).string(), report.dump(2) + "\n");
}

inline void write_csv(const RunOptions& opt, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(opt.out_dir);
  write_text_file((std::filesystem::path(opt.out_dir) / name).string(), text);
}

inline ojson report_header(const std::string& command, const json& cfg, const RunOptions& opt) {
  ojson r;
  r["command"] = command;
  r["config_hash"] = config_hash(cfg);
  r["threads"] = opt.threads;
  r["seed"] = opt.seed;
  r["dim"] = nullptr;
  r["leakage"] = nullptr;
  r["engines"] = ojson::array();
  return r;
}

inline ojson matrix_json(const CMatrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline CVector parse_spin_input(Obj& root, const SpinRegister& reg) {
  CVector psi = CVector::Zero(reg.hilbert_dim());
  if (!root.has("spin_input")) {
    psi(0) = 1.0;
    return psi;
  }
  Obj o = root.obj("spin_input");
  if (o.has("basis_index")) {
    const int b = o.integer("basis_index");
    if (b < 0 || b >= reg.hilbert_dim()) config_error(o.sub("basis_index"), "outside the register basis");
    psi(b) = 1.0;
  } else {
    const auto re = o.numbers("re");
    const auto im = o.has("im") ? o.numbers("im") : std::vector<double>(re.size(), 0.0);
    if (re.size() != static_cast<std::size_t>(reg.hilbert_dim()) || im.size() != re.size())
      config_error(o.path(), "amplitude lists need 2^N entries");
    for (std::size_t i = 0; i < re.size(); ++i) psi(static_cast<Eigen::Index>(i)) = cplx(re[i], im[i]);
    if (psi.norm() == 0.0) config_error(o.path(), "spin input has zero norm");
    psi.normalize();
  }
  o.finish();
  return psi;
}

inline int cmd_simulate(const json& cfg, const RunOptions& opt) {
  Obj root(cfg, "");
  GateDescription g = parse_gate(root);
  const MotionalState motion = root.has("motion") ? parse_motion(root.obj("motion")) : MotionalState::vacuum();
  const CVector psi = parse_spin_input(root, g.reg);
  const SimulationSettings sim = root.has("simulation") ? parse_simulation(root.obj("simulation")) : SimulationSettings{};
  root.finish();

  const PulseSchedule& sched = g.schedule;
  const int dim = sim.dim > 0 ? sim.dim : truncation_for_schedule(sched, motion, sim.leak_tol);
  ojson rep = report_header("simulate", cfg, opt);
  rep["dim"] = dim;
  rep["gate"] = g.kind;
  rep["n_qubits"] = g.reg.size();
  rep["segments"] = sched.segments.size();
  rep["total_time_s"] = sched.total_time();

  std::optional<PhaseTable> phases = g.analytic;
  try {
    const Factorization f = simultaneous_factorization(sched);
    const ClosureResidual c = closure_residual(sched);
    rep["closure"] = {{"A", c.a}, {"B", c.b}, {"xi", c.xi}, {"closed", c.closed()}};
    if (!phases && c.closed()) phases = f.phases;
    if (g.analytic) {
      double dev = 0.0;
      for (std::size_t i = 0; i < f.phases.phase.size(); ++i)
        dev = std::max(dev, std::abs(f.phases.phase[i] - g.analytic->phase[i]));
      rep["factorized_phase_deviation"] = dev;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonCommutingDrives) throw;
    rep["closure"] = nullptr;
  }

  CMatrix u_exact;
  CVector out_exact;
  if (phases) {
    u_exact = seq_unitary_exact(*phases, g.reg);
    out_exact = u_exact * psi;
    ojson table = ojson::array();
    for (int c = 0; c < g.reg.hilbert_dim(); ++c)
      table.push_back({{"configuration", SpinConfiguration::from_index(c, g.reg.size()).label()},
                       {"phase", phases->phase[static_cast<std::size_t>(c)]}});
    rep["phase_table"] = table;
  }

  SimulationOptions so;
  so.leak_tol = sim.leak_tol;
  so.threads = opt.threads;
  ojson leak = ojson::object();
  ojson engines = ojson::array();
  std::vector<CMatrix> rhos;
  std::vector<SimulationResult> results;
  for (Engine e : sim.engines) {
    so.engine = e;
    SimulationResult r = simulate_schedule(sched, psi, motion, dim, so);
    const CMatrix rho = reduced_spin_density(r);
    ojson er;
    er["engine"] = to_string(e);
    er["leakage"] = r.leakage;
    er["spin_purity"] = std::real((rho * rho).trace());
    if (phases) er["state_fidelity_vs_analytic"] = std::real(out_exact.dot(rho * out_exact));
    if (g.kind == "three_body" && g.reg.size() == 3) er["ghz_fidelity"] = std::real(ghz_target(3).dot(rho * ghz_target(3)));
    engines.push_back(er);
    leak[to_string(e)] = r.leakage;
    rhos.push_back(rho);
    results.push_back(std::move(r));
  }
  rep["engines"] = ojson::array();
  for (Engine e : sim.engines) rep["engines"].push_back(to_string(e));
  rep["leakage"] = leak;
  rep["results"] = engines;
  if (results.size() >= 2) {
    double joint = 0.0;
    for (std::size_t k = 0; k < results[0].joint.size(); ++k) {
      const cplx o = (results[0].joint[k].conjugate().cwiseProduct(results[1].joint[k])).sum();
      joint += results[0].weights[k] * std::norm(o);
    }
    rep["engine_agreement"] = {{"joint_state_fidelity", joint}, {"spin_state_fidelity", uhlmann_fidelity(rhos[0], rhos[1])}};
  }

  {
    so.engine = Engine::block;
    const auto su = fock_spin_unitary(sched, motion, dim, so);
    rep["motional_return"] = su.motion_return;
    if (phases) rep["unitary_fidelity_vs_analytic"] = trace_overlap(u_exact, su.unitary);
    if (g.kind == "toffoli") {
      const int n = g.reg.size();
      rep["toffoli_overlap"] = {{"simulated", trace_overlap(register_toffoli(n, g.target), toffoli_wrap(su.unitary, n, g.target))},
                                {"analytic", toffoli_overlap(n, g.db, g.target).overlap},
                                {"squeezing_db", g.db}};
    }
    if (g.reg.size() <= 4) rep["spin_unitary"] = matrix_json(su.unitary);
  }
  write_report(opt, "report.json", rep);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

inline std::vector<double> parse_grid(Obj o) {
  std::vector<double> grid;
  if (o.has("points")) {
    const json& p = o.raw("points");
    if (!p.is_array() || p.empty()) config_error(o.sub("points"), "expected a non-empty list of dB quantities");
    for (std::size_t i = 0; i < p.size(); ++i)
      grid.push_back(Obj::quantity_at(p[i], o.sub("points") + "[" + std::to_string(i) + "]", Dim::squeezing));
  } else {
    const double lo = o.quantity("start", Dim::squeezing);
    const double hi = o.quantity("stop", Dim::squeezing);
    const double step = o.quantity("step", Dim::squeezing);
    if (!(step > 0.0) || hi < lo) config_error(o.path(), "need start <= stop and step > 0");
    grid = acceptance::db_grid(lo, hi, step);
  }
  o.finish();
  for (double d : grid)
    if (d < 0.0) config_error(o.path(), "squeezing must be >= 0 dB");
  return grid;
}

inline int cmd_sweep_overlap(const json& cfg, const RunOptions& opt) {
  Obj root(cfg, "");
  Obj sw = root.obj("sweep");
  std::vector<int> ns;
  for (double v : sw.numbers("n_qubits")) {
    if (v != std::floor(v) || v < 2 || v > default_max_qubits) config_error(sw.sub("n_qubits"), "entries must be integers in [2, 8]");
    ns.push_back(static_cast<int>(v));
  }
  if (ns.empty()) config_error(sw.sub("n_qubits"), "needs at least one entry");
  const std::vector<double> grid = parse_grid(sw.obj("grid"));
  const bool fock = sw.boolean_or("fock", false);
  const double leak_tol = sw.number_or("leak_tol", 1e-8);
  sw.finish();
  root.finish();

  ojson rep = report_header("sweep-overlap", cfg, opt);
  rep["engines"].push_back("analytic");
  if (fock) rep["engines"].push_back("block");
  ojson curves = ojson::array();
  ojson dims = ojson::array();
  double max_leak = 0.0;
  for (int n : ns) {
    const auto curve = toffoli_overlap_curve(n, grid, opt.threads);
    write_csv(opt, "overlap_N" + std::to_string(n) + ".csv", overlap_csv(curve));
    ojson c;
    c["gate"] = "toffoli";
    c["n_qubits"] = n;
    c["target"] = n - 1;
    c["grid_db"] = grid;
    ojson vals = ojson::array();
    ojson cp = ojson::array();
    for (const auto& p : curve) {
      vals.push_back(p.overlap);
      cp.push_back(p.phase_overlap);
    }
    c["overlap"] = vals;
    c["controlled_phase_overlap"] = cp;
    if (fock) {
      std::vector<SimulatedOverlap> pts(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) pts[i] = simulated_toffoli_overlap(n, grid[i], leak_tol, opt.threads);
      CsvWriter w({"squeezing_db", "overlap"});
      ojson sim = ojson::array();
      for (const auto& p : pts) {
        w.row({p.db, p.overlap});
        sim.push_back(p.overlap);
        dims.push_back(p.dim);
        max_leak = std::max(max_leak, p.leakage);
      }
      write_csv(opt, "overlap_N" + std::to_string(n) + "_fock.csv", w.str());
      c["fock_overlap"] = sim;
    }
    curves.push_back(c);
  }
  if (fock) {
    rep["dim"] = dims;
    rep["leakage"] = max_leak;
  }
  rep["curves"] = curves;
  write_report(opt, "report.json", rep);
  for (const auto& c : curves) {
    std::cout << "N=" << c["n_qubits"].get<int>() << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      std::cout << "  " << format_double(grid[i]) << " dB: " << format_double(c["overlap"][i].get<double>()) << "\n";
  }
  return 0;
}

inline ChainSpec parse_chain(Obj o) {
  ChainSpec c;
  c.n_ions = o.integer("n_ions");
  c.axial_freq = o.quantity("axial_freq", Dim::frequency);
  c.radial_freq = o.quantity("radial_freq", Dim::frequency);
  c.ion_mass = o.quantity_or("ion_mass", Dim::mass, yb171_mass);
  c.wavenumber = o.quantity_or("wavenumber", Dim::wavenumber, 0.0);
  o.finish();
  if (c.n_ions < 1) config_error(o.sub("n_ions"), "must be >= 1");
  if (!(c.axial_freq > 0.0)) config_error(o.sub("axial_freq"), "must be positive");
  if (!(c.radial_freq > c.axial_freq)) config_error(o.sub("radial_freq"), "must exceed axial_freq");
  if (!(c.ion_mass > 0.0)) config_error(o.sub("ion_mass"), "must be positive");
  return c;
}

inline int cmd_modes(const json& cfg, const RunOptions& opt) {
  Obj root(cfg, "");
  const ChainSpec chain = parse_chain(root.obj("chain"));
  std::string target_s = "zigzag";
  int target = -1;
  if (root.has("target_mode")) {
    const json& t = root.raw("target_mode");
    if (t.is_string()) target_s = t.get<std::string>();
    else if (t.is_number_integer()) target = t.get<int>();
    else config_error("target_mode", "expected \"zigzag\", \"com\" or a mode index");
    if (t.is_string() && target_s != "zigzag" && target_s != "com") config_error("target_mode", "unknown mode name");
  }
  double eta = 0.11;
  double rabi = two_pi * 1e6;
  int nq = chain.n_ions;
  double band_lo = two_pi * 120e3;
  double band_hi = two_pi * 200e3;
  double eps_sq_max = 0.01;
  if (root.has("estimator")) {
    Obj e = root.obj("estimator");
    eta = e.number_or("lamb_dicke", eta);
    rabi = e.quantity_or("rabi", Dim::frequency, rabi);
    nq = e.integer_or("n_qubits", nq);
    band_lo = e.quantity_or("gap_band_low", Dim::frequency, band_lo);
    band_hi = e.quantity_or("gap_band_high", Dim::frequency, band_hi);
    eps_sq_max = e.number_or("epsilon_sq_max", eps_sq_max);
    e.finish();
    if (!(eta > 0.0)) config_error("estimator.lamb_dicke", "must be positive");
    if (!(rabi >= 0.0)) config_error("estimator.rabi", "must be >= 0");
    if (nq < 1) config_error("estimator.n_qubits", "must be >= 1");
    if (!(band_hi >= band_lo)) config_error("estimator.gap_band_high", "must be >= gap_band_low");
  }
  root.finish();

  const ModeData md = transverse_modes(chain);
  const int n = chain.n_ions;
  if (target < 0) target = target_s == "com" ? 0 : md.zigzag();
  if (target >= n) config_error("target_mode", "outside the mode spectrum");
  const auto pos = equilibrium_positions(n);

  ojson rep = report_header("modes", cfg, opt);
  rep["chain"] = {{"n_ions", n},
                  {"axial_freq_hz", chain.axial_freq / two_pi},
                  {"radial_freq_hz", chain.radial_freq / two_pi},
                  {"ion_mass_kg", chain.ion_mass}};
  rep["equilibrium_positions"] = pos;
  ojson modes = ojson::array();
  for (int m = 0; m < n; ++m) {
    ojson b = ojson::array();
    for (int i = 0; i < n; ++i) b.push_back(md.participation(i, m));
    modes.push_back({{"index", m},
                     {"freq_hz", md.frequencies[static_cast<std::size_t>(m)] / two_pi},
                     {"freq_rad_s", md.frequencies[static_cast<std::size_t>(m)]},
                     {"participation", b}});
  }
  rep["modes"] = modes;
  rep["bandwidth_hz"] = md.bandwidth / two_pi;
  if (n == 2) {
    const double wx = chain.radial_freq, wz = chain.axial_freq;
    rep["two_ion_analytic_hz"] = {wx / two_pi, std::sqrt(wx * wx - wz * wz) / two_pi};
  }
  if (chain.wavenumber > 0.0) rep["lamb_dicke"] = lamb_dicke(chain, md);

  ojson gaps;
  if (n > 1) {
    const GapReport g = second_sideband_gaps(md, target);
    ojson pairs = ojson::array();
    for (const auto& p : g.pairs)
      pairs.push_back({{"mu", p.mu}, {"nu", p.nu}, {"delta_hz", p.delta / two_pi}, {"degenerate", p.degenerate}});
    gaps["target_mode"] = target;
    gaps["pairs"] = pairs;
    gaps["min_pair_gap_hz"] = g.min_pair_gap / two_pi;
    gaps["nearest_mode_gap_hz"] = g.nearest_mode_gap / two_pi;
    gaps["nearest_mode"] = g.nearest_mode;
    rep["second_sideband"] = gaps;
    if (g.min_pair_gap > 0.0) {
      const auto eps = off_resonant_ratio(eta, rabi, nq, g.min_pair_gap);
      ojson scal = ojson::array();
      for (const auto& s : off_resonant_scaling(eta, rabi, md.bandwidth, {2, 4, 8, 16}))
        scal.push_back({{"n", s.n}, {"delta_hz", s.delta / two_pi}, {"epsilon", s.epsilon}});
      rep["off_resonant"] = {{"lamb_dicke", eta},      {"rabi_hz", rabi / two_pi}, {"n_qubits", nq},
                             {"epsilon", eps.epsilon}, {"epsilon_sq", eps.epsilon_sq}, {"scaling", scal}};
      const bool in_band = g.min_pair_gap >= band_lo && g.min_pair_gap <= band_hi;
      const bool eps_ok = eps.epsilon_sq <= eps_sq_max;
      rep["checks"] = {{"gap_band_hz", {band_lo / two_pi, band_hi / two_pi}},
                       {"min_pair_gap_in_band", in_band},
                       {"epsilon_sq_max", eps_sq_max},
                       {"epsilon_sq_ok", eps_ok},
                       {"status", in_band && eps_ok ? "PASS" : "FAIL"}};
    }
  }
  write_report(opt, "report.json", rep);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

inline int cmd_trajectory(const json& cfg, const RunOptions& opt) {
  Obj root(cfg, "");
  GateDescription g = parse_gate(root);
  const MotionalState motion = root.has("motion") ? parse_motion(root.obj("motion")) : MotionalState::vacuum();
  const SimulationSettings sim = root.has("simulation") ? parse_simulation(root.obj("simulation")) : SimulationSettings{};
  int samples = 101;
  std::vector<int> configs;
  if (root.has("trajectory")) {
    Obj t = root.obj("trajectory");
    samples = t.integer_or("samples", samples);
    if (samples < 2) config_error(t.sub("samples"), "must be >= 2");
    if (t.has("configurations")) {
      for (double v : t.numbers("configurations")) {
        if (v != std::floor(v) || v < 0 || v >= g.reg.hilbert_dim())
          config_error(t.sub("configurations"), "configuration index " + format_double(v) + " out of range");
        configs.push_back(static_cast<int>(v));
      }
    }
    t.finish();
  }
  root.finish();
  if (configs.empty())
    for (int c = 0; c < g.reg.hilbert_dim(); ++c) configs.push_back(c);

  const int dim = sim.dim > 0 ? sim.dim : truncation_for_schedule(g.schedule, motion, sim.leak_tol);
  SimulationOptions so;
  so.leak_tol = sim.leak_tol;
  std::vector<std::string> csv(configs.size());
  parallel_for(static_cast<int>(configs.size()), opt.threads, [&](int i) {
    const auto s = SpinConfiguration::from_index(configs[static_cast<std::size_t>(i)], g.reg.size());
    csv[static_cast<std::size_t>(i)] = trajectory_csv(trajectory(g.schedule, s, motion, dim, samples, so));
  });
  ojson rep = report_header("trajectory", cfg, opt);
  rep["dim"] = dim;
  rep["leakage_budget"] = sim.leak_tol;
  rep["engines"].push_back("block");
  rep["units"] = {{"t_s", "s"}, {"x_mean", "x~ = (a + a^dag)/2"}, {"p_mean", "p~ = i(a^dag - a)/2"}, {"x_var", "variance of x~"}, {"p_var", "variance of p~"}};
  ojson files = ojson::array();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const std::string name = "trajectory_" + SpinConfiguration::from_index(configs[i], g.reg.size()).label() + ".csv";
    write_csv(opt, name, csv[i]);
    files.push_back(name);
  }
  rep["files"] = files;
  write_report(opt, "report.json", rep);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

struct EstimateInputs {
  double xi_bar = std::atanh(0.25);
  double rabi = two_pi * 1e6;
  double participation = 0.5;
  double eta = 0.11;
  double a = std::sqrt(pi / (2.0 * std::cosh(std::atanh(0.25))));
  double b = std::sqrt(pi / (2.0 * std::cosh(std::atanh(0.25))));
  ChainSpec chain{4, yb171_mass, two_pi * 0.9e6, two_pi * 3e6, 0.0};
};

inline EstimateInputs estimate_profile(const std::string& name) {
  EstimateInputs in;
  if (name == "paper-4yb") return in;
  if (name == "be-like") {
    in.eta = 0.25;
    return in;
  }
  config_error("profile", "unknown profile \"" + name + "\" (paper-4yb, be-like)");
}

inline ojson estimate_json(const EstimateInputs& in) {
  const TimingEstimate t = timing_estimate(in.xi_bar, in.rabi, in.participation, in.eta, in.a, in.b);
  const ModeData md = transverse_modes(in.chain);
  const GapReport g = second_sideband_gaps(md, md.zigzag());
  ojson r;
  r["inputs"] = {{"xi_bar", in.xi_bar},       {"rabi_hz", in.rabi / two_pi}, {"participation", in.participation},
                 {"lamb_dicke", in.eta},      {"A", in.a},                   {"B", in.b},
                 {"n_ions", in.chain.n_ions}, {"axial_freq_hz", in.chain.axial_freq / two_pi},
                 {"radial_freq_hz", in.chain.radial_freq / two_pi}};
  r["timing"] = {{"squeeze_rate_per_s", t.squeeze_rate}, {"db_per_ms", t.db_per_ms}, {"t_S_s", t.t_s},
                 {"t_x_s", t.t_x},                        {"t_p_s", t.t_p},           {"total_s", t.total}};
  if (g.min_pair_gap > 0.0) {
    const auto eps = off_resonant_ratio(in.eta, in.rabi, in.chain.n_ions, g.min_pair_gap);
    r["off_resonant"] = {{"gap_hz", g.min_pair_gap / two_pi}, {"epsilon", eps.epsilon}, {"epsilon_sq", eps.epsilon_sq}};
  }
  return r;
}

inline int cmd_estimate(const json& cfg, const RunOptions& opt) {
  Obj root(cfg, "");
  const std::string profile = root.string_or("profile", "paper-4yb");
  EstimateInputs in = estimate_profile(profile);
  if (root.has("estimate")) {
    Obj e = root.obj("estimate");
    in.xi_bar = e.number_or("xi_bar", in.xi_bar);
    in.rabi = e.quantity_or("rabi", Dim::frequency, in.rabi);
    in.participation = e.number_or("participation", in.participation);
    in.eta = e.number_or("lamb_dicke", in.eta);
    in.a = e.number_or("A", in.a);
    in.b = e.number_or("B", in.b);
    if (e.has("chain")) in.chain = parse_chain(e.obj("chain"));
    e.finish();
    for (const auto& [k, v] : std::vector<std::pair<const char*, double>>{
             {"xi_bar", in.xi_bar}, {"rabi", in.rabi}, {"participation", in.participation}, {"lamb_dicke", in.eta}, {"A", in.a}, {"B", in.b}})
      if (!(v > 0.0)) config_error(std::string("estimate.") + k, "must be positive");
  }
  root.finish();
  ojson rep = report_header("estimate", cfg, opt);
  rep["profile"] = profile;
  rep["estimate"] = estimate_json(in);
  const TimingEstimate base = timing_estimate(EstimateInputs{}.xi_bar, EstimateInputs{}.rabi, EstimateInputs{}.participation,
                                              EstimateInputs{}.eta, EstimateInputs{}.a, EstimateInputs{}.b);
  const TimingEstimate mine = timing_estimate(in.xi_bar, in.rabi, in.participation, in.eta, in.a, in.b);
  rep["speedup_vs_paper_4yb"] = {{"total", base.total / mine.total}, {"t_S", base.t_s / mine.t_s}};
  write_report(opt, "report.json", rep);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

/// Runs the acceptance criteria; exit 0 when all pass, 1 otherwise.
inline int cmd_verify(const RunOptions& opt) {
  std::string log;
  const auto results = run_acceptance(opt.threads, [&](const CriterionResult& r) {
    const std::string line = format_result(r);
    std::cout << line << std::endl;
    log += line + "\n";
  });
  for (const auto& [name, text] : acceptance::verify_csvs(opt.threads)) write_csv(opt, name, text);
  write_csv(opt, "acceptance.txt", log);
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace sqg::cli

#endif  // SQUEEZEGATE_TOOLS_COMMANDS_HPP
