#ifndef SQUEEZEGATE_TOOLS_CONFIG_HPP
#define SQUEEZEGATE_TOOLS_CONFIG_HPP

// Experiment configuration files (JSON). Physical quantities are objects
// {"value": number, "unit": "..."}; dimensionless amplitudes are plain
// numbers. Unknown keys are rejected with their full path.
//
// Units: frequency MHz kHz Hz (ordinary, times 2 pi) or rad/s; time s ms us
// ns; angle rad deg; rate 1/s 1/ms 1/us; squeezing dB; mass kg u;
// wavenumber 1/m.

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "squeezegate/core.hpp"
#include "squeezegate/csv.hpp"
#include "squeezegate/fockspace.hpp"
#include "squeezegate/gates.hpp"
#include "squeezegate/modes.hpp"
#include "squeezegate/protocol.hpp"
#include "squeezegate/simulate.hpp"

namespace sqg::cli {

using json = nlohmann::json;

[[noreturn]] inline void config_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Config, path + ": " + msg);
}

enum class Dim { frequency, time, angle, rate, squeezing, mass, wavenumber };

inline double unit_factor(Dim d, const std::string& unit, const std::string& path) {
  struct U {
    const char* name;
    double f;
  };
  static const std::vector<U> freq = {{"MHz", two_pi * 1e6}, {"kHz", two_pi * 1e3}, {"Hz", two_pi}, {"rad/s", 1.0}};
  static const std::vector<U> time = {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}};
  static const std::vector<U> angle = {{"rad", 1.0}, {"deg", pi / 180.0}};
  static const std::vector<U> rate = {{"1/s", 1.0}, {"1/ms", 1e3}, {"1/us", 1e6}};
  static const std::vector<U> sq = {{"dB", 1.0}};
  static const std::vector<U> mass = {{"kg", 1.0}, {"u", atomic_mass}};
  static const std::vector<U> wave = {{"1/m", 1.0}};
  const std::vector<U>* table = nullptr;
  switch (d) {
    case Dim::frequency: table = &freq; break;
    case Dim::time: table = &time; break;
    case Dim::angle: table = &angle; break;
    case Dim::rate: table = &rate; break;
    case Dim::squeezing: table = &sq; break;
    case Dim::mass: table = &mass; break;
    case Dim::wavenumber: table = &wave; break;
  }
  std::string allowed;
  for (const auto& u : *table) {
    if (unit == u.name) return u.f;
    allowed += std::string(allowed.empty() ? "" : ", ") + u.name;
  }
  config_error(path, "unit \"" + unit + "\" not accepted here (allowed: " + allowed + ")");
}

/// Strict view of one JSON object: every key must be consumed.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) config_error(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  bool has(const std::string& k) const { return j_.contains(k); }

  const json& raw(const std::string& k) {
    if (!j_.contains(k)) config_error(sub(k), "missing required key");
    used_.insert(k);
    return j_.at(k);
  }
  Obj obj(const std::string& k) { return Obj(raw(k), sub(k)); }

  double number(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_number()) config_error(sub(k), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) config_error(sub(k), "must be finite");
    return x;
  }
  double number_or(const std::string& k, double def) { return has(k) ? number(k) : def; }

  int integer(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_number_integer()) config_error(sub(k), "expected an integer");
    return v.get<int>();
  }
  int integer_or(const std::string& k, int def) { return has(k) ? integer(k) : def; }

  std::string string(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_string()) config_error(sub(k), "expected a string");
    return v.get<std::string>();
  }
  std::string string_or(const std::string& k, const std::string& def) { return has(k) ? string(k) : def; }

  bool boolean_or(const std::string& k, bool def) {
    if (!has(k)) return def;
    const json& v = raw(k);
    if (!v.is_boolean()) config_error(sub(k), "expected true or false");
    return v.get<bool>();
  }

  /// {"value": x, "unit": "..."} converted to SI / rad.
  double quantity(const std::string& k, Dim d) { return quantity_at(raw(k), sub(k), d); }
  double quantity_or(const std::string& k, Dim d, double def) { return has(k) ? quantity(k, d) : def; }

  std::vector<double> numbers(const std::string& k) {
    const json& v = raw(k);
    if (!v.is_array()) config_error(sub(k), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) config_error(sub(k) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
      if (!std::isfinite(out.back())) config_error(sub(k) + "[" + std::to_string(i) + "]", "must be finite");
    }
    return out;
  }

  /// Throws on keys that were never read.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) config_error(sub(it.key()), "unknown key");
  }

  static double quantity_at(const json& v, const std::string& path, Dim d) {
    Obj q(v, path);
    const double value = q.number("value");
    const std::string unit = q.string("unit");
    q.finish();
    return value * unit_factor(d, unit, path + ".unit");
  }

  std::string sub(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

inline json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Config, "cannot open config file " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, "invalid JSON in " + path + ": " + e.what());
  }
}

/// Canonical serialisation (sorted keys, no whitespace) hashed with FNV-1a.
inline std::string config_hash(const json& j) { return hex64(fnv1a(j.dump())); }

// ---------------------------------------------------------------------------
// shared sections

inline SpinRegister parse_register(Obj o) {
  const int n = o.integer("n_qubits");
  const int max_q = o.integer_or("max_qubits", default_max_qubits);
  if (n < 1) config_error(o.sub("n_qubits"), "must be >= 1");
  std::vector<SpinAxis> axes(static_cast<std::size_t>(n), SpinAxis(0.0));
  if (o.has("axes")) {
    const json& a = o.raw("axes");
    if (!a.is_array() || a.size() != static_cast<std::size_t>(n))
      config_error(o.sub("axes"), "expected one angle quantity per qubit");
    for (std::size_t i = 0; i < a.size(); ++i)
      axes[i] = SpinAxis(Obj::quantity_at(a[i], o.sub("axes") + "[" + std::to_string(i) + "]", Dim::angle));
  }
  o.finish();
  if (n > max_q) config_error(o.sub("n_qubits"), "exceeds max_qubits");
  return SpinRegister(axes, max_q);
}

inline DisplacementSet parse_displacement(Obj o, int n) {
  DisplacementSet d;
  d.common = o.number_or("common", 0.0);
  if (o.has("per_qubit")) {
    d.per_qubit = o.numbers("per_qubit");
    if (d.per_qubit.size() != static_cast<std::size_t>(n)) config_error(o.sub("per_qubit"), "needs one entry per qubit");
  }
  o.finish();
  return d;
}

inline MotionalState parse_motion(Obj o) {
  const std::string kind = o.string("kind");
  MotionalState m = MotionalState::vacuum();
  if (kind == "vacuum") {
  } else if (kind == "fock") {
    const int n = o.integer("n");
    if (n < 0) config_error(o.sub("n"), "must be >= 0");
    m = MotionalState::fock(n);
  } else if (kind == "coherent") {
    m = MotionalState::coherent(cplx(o.number_or("alpha_re", 0.0), o.number_or("alpha_im", 0.0)));
  } else if (kind == "thermal") {
    const double nbar = o.number("nbar");
    if (nbar < 0) config_error(o.sub("nbar"), "must be >= 0");
    m = MotionalState::thermal(nbar);
  } else {
    config_error(o.sub("kind"), "expected vacuum, fock, coherent or thermal");
  }
  o.finish();
  return m;
}

struct SimulationSettings {
  std::vector<Engine> engines{Engine::block};
  double leak_tol = 1e-8;
  int dim = 0;  // 0: choose from the schedule
};

inline SimulationSettings parse_simulation(Obj o) {
  SimulationSettings s;
  if (o.has("engines")) {
    const json& e = o.raw("engines");
    if (!e.is_array() || e.empty()) config_error(o.sub("engines"), "expected a non-empty list");
    s.engines.clear();
    for (const auto& v : e) {
      const std::string name = v.is_string() ? v.get<std::string>() : "";
      if (name == "block") s.engines.push_back(Engine::block);
      else if (name == "stepped") s.engines.push_back(Engine::stepped);
      else config_error(o.sub("engines"), "engine must be \"block\" or \"stepped\"");
    }
  }
  s.leak_tol = o.number_or("leak_tol", 1e-8);
  if (!(s.leak_tol > 0.0 && s.leak_tol < 1.0)) config_error(o.sub("leak_tol"), "must lie in (0,1)");
  s.dim = o.integer_or("dim", 0);
  if (s.dim != 0 && s.dim < 2) config_error(o.sub("dim"), "must be 0 (automatic) or >= 2");
  o.finish();
  return s;
}

/// What the schedule implements, for analytic comparison.
struct GateDescription {
  std::string kind = "none";  // none, toffoli, three_body, rectangle, segments
  SpinRegister reg = SpinRegister::uniform(1);
  PulseSchedule schedule{SpinRegister::uniform(1), {}, {}};
  std::optional<PhaseTable> analytic;  // rectangle-type gates
  int target = -1;
  double db = 0.0;
  double phi = 0.0;
  std::vector<int> qubits;
};

inline DriveLimits parse_drive(Obj o, int n) {
  DriveLimits d;
  d.rabi = o.quantity_or("rabi", Dim::frequency, d.rabi);
  if (!(d.rabi > 0.0)) config_error(o.sub("rabi"), "must be positive");
  if (o.has("lamb_dicke")) {
    d.lamb_dicke = o.numbers("lamb_dicke");
    if (d.lamb_dicke.size() != static_cast<std::size_t>(n)) config_error(o.sub("lamb_dicke"), "needs one entry per qubit");
    for (double e : d.lamb_dicke)
      if (!(e > 0.0)) config_error(o.sub("lamb_dicke"), "entries must be positive");
  } else {
    d.lamb_dicke.assign(static_cast<std::size_t>(n), 0.055);
  }
  d.electrode_time = o.quantity_or("electrode_time", Dim::time, d.electrode_time);
  if (!(d.electrode_time > 0.0)) config_error(o.sub("electrode_time"), "must be positive");
  o.finish();
  return d;
}

inline PulseSegment parse_segment(Obj o, int n) {
  PulseSegment s;
  const std::string kind = o.string("kind");
  if (kind == "displace_x") s.kind = SegmentKind::displace_x;
  else if (kind == "displace_p") s.kind = SegmentKind::displace_p;
  else if (kind == "squeeze") s.kind = SegmentKind::squeeze;
  else if (kind == "antisqueeze") s.kind = SegmentKind::antisqueeze;
  else if (kind == "simultaneous") s.kind = SegmentKind::simultaneous;
  else config_error(o.sub("kind"), "unknown segment kind");
  s.duration = o.quantity("duration", Dim::time);
  if (!(s.duration > 0.0)) config_error(o.sub("duration"), "must be positive");
  auto rate_set = [&](const std::string& key) {
    DisplacementSet d;
    if (!o.has(key)) return d;
    Obj r = o.obj(key);
    if (r.has("common")) d.common = r.quantity("common", Dim::rate);
    if (r.has("per_qubit")) {
      const json& a = r.raw("per_qubit");
      if (!a.is_array() || a.size() != static_cast<std::size_t>(n))
        config_error(r.sub("per_qubit"), "needs one rate quantity per qubit");
      for (std::size_t i = 0; i < a.size(); ++i)
        d.per_qubit.push_back(Obj::quantity_at(a[i], r.sub("per_qubit") + "[" + std::to_string(i) + "]", Dim::rate));
    }
    r.finish();
    return d;
  };
  s.alpha = rate_set("alpha");
  s.beta = rate_set("beta");
  if (o.has("squeeze_rate")) {
    const json& a = o.raw("squeeze_rate");
    if (!a.is_array() || a.size() != static_cast<std::size_t>(n))
      config_error(o.sub("squeeze_rate"), "needs one rate quantity per qubit");
    for (std::size_t i = 0; i < a.size(); ++i)
      s.squeeze_rate.per_qubit.push_back(
          Obj::quantity_at(a[i], o.sub("squeeze_rate") + "[" + std::to_string(i) + "]", Dim::rate));
  }
  s.squeeze_phase = o.quantity_or("squeeze_phase", Dim::angle, 0.0);
  o.finish();
  return s;
}

/// Reads "register", "gate" and "drive" sections of `root`.
inline GateDescription parse_gate(Obj& root) {
  GateDescription g;
  std::optional<SpinRegister> reg;
  if (root.has("register")) reg = parse_register(root.obj("register"));
  if (!root.has("gate")) config_error(root.sub("gate"), "missing required key");
  Obj o = root.obj("gate");
  g.kind = o.string("kind");
  std::optional<DriveLimits> drive;
  auto need_reg = [&](int n_default) {
    if (!reg) reg = SpinRegister::uniform(n_default, 0.0);
    return reg->size();
  };
  auto get_drive = [&](int n) {
    if (root.has("drive")) return parse_drive(root.obj("drive"), n);
    DriveLimits d;
    d.lamb_dicke.assign(static_cast<std::size_t>(n), 0.055);
    return d;
  };
  if (g.kind == "none") {
    const int n = need_reg(1);
    g.reg = *reg;
    g.schedule = PulseSchedule{*reg, {}, std::vector<double>(static_cast<std::size_t>(n), 0.055)};
    g.analytic = PhaseTable{n, std::vector<double>(static_cast<std::size_t>(reg->hilbert_dim()), 0.0)};
    o.finish();
    if (root.has("drive")) (void)get_drive(n);
    return g;
  }
  if (g.kind == "toffoli") {
    const int n = o.integer("n_qubits");
    if (n < 2) config_error(o.sub("n_qubits"), "must be >= 2");
    g.db = o.quantity("squeezing", Dim::squeezing);
    if (!(g.db >= 0.0)) config_error(o.sub("squeezing"), "must be >= 0 dB");
    g.target = o.integer_or("target", n - 1);
    if (g.target < 0 || g.target >= n) config_error(o.sub("target"), "outside register");
    o.finish();
    if (reg) config_error(root.sub("register"), "toffoli gates define their own register");
    const auto s = toffoli_setup(n, g.db, g.target);
    drive = get_drive(n);
    g.reg = s.reg;
    g.schedule = rectangle_schedule(s.reg, s.a, s.b, s.xi, minimal_rectangle_timing(s.a, s.b, s.xi, *drive), *drive);
    g.analytic = seq_phase_table(s.a, s.b, s.xi, s.reg);
    return g;
  }
  if (g.kind == "three_body") {
    const int n = o.integer_or("n_qubits", 3);
    std::vector<double> q = o.has("qubits") ? o.numbers("qubits") : std::vector<double>{0, 1, 2};
    if (q.size() != 3) config_error(o.sub("qubits"), "expected three qubit indices");
    g.phi = o.quantity("phase", Dim::angle);
    o.finish();
    if (reg) config_error(root.sub("register"), "three_body gates define their own register");
    for (double v : q) g.qubits.push_back(static_cast<int>(v));
    for (int v : g.qubits)
      if (v < 0 || v >= n) config_error(o.sub("qubits"), "qubit index outside register");
    const auto s = three_body_setup(n, g.qubits[0], g.qubits[1], g.qubits[2], g.phi);
    drive = get_drive(n);
    g.reg = s.reg;
    g.schedule = rectangle_schedule(s.reg, s.a, s.b, s.xi, minimal_rectangle_timing(s.a, s.b, s.xi, *drive), *drive);
    g.analytic = seq_phase_table(s.a, s.b, s.xi, s.reg);
    return g;
  }
  if (g.kind == "rectangle") {
    const int n = need_reg(1);
    const DisplacementSet a = o.has("A") ? parse_displacement(o.obj("A"), n) : DisplacementSet{};
    const DisplacementSet b = o.has("B") ? parse_displacement(o.obj("B"), n) : DisplacementSet{};
    SqueezeAmplitudeSet xi;
    if (o.has("xi")) {
      xi.per_qubit = o.numbers("xi");
      if (xi.per_qubit.size() != static_cast<std::size_t>(n)) config_error(o.sub("xi"), "needs one entry per qubit");
    }
    std::optional<RectangleTiming> timing;
    if (o.has("timing")) {
      Obj t = o.obj("timing");
      RectangleTiming rt;
      rt.t_x = t.quantity_or("t_x", Dim::time, 0.0);
      rt.t_p = t.quantity_or("t_p", Dim::time, 0.0);
      rt.t_S = t.quantity_or("t_S", Dim::time, 0.0);
      for (const char* k : {"t_x", "t_p", "t_S"})
        if (t.has(k) && !((k == std::string("t_x") ? rt.t_x : k == std::string("t_p") ? rt.t_p : rt.t_S) > 0.0))
          config_error(t.sub(k), "must be positive");
      t.finish();
      timing = rt;
    }
    o.finish();
    drive = get_drive(n);
    g.reg = *reg;
    g.schedule = rectangle_schedule(*reg, a, b, xi, timing ? *timing : minimal_rectangle_timing(a, b, xi, *drive), *drive);
    g.analytic = seq_phase_table(a, b, xi, *reg);
    return g;
  }
  if (g.kind == "segments") {
    const int n = need_reg(1);
    const json& segs = o.raw("segments");
    if (!segs.is_array()) config_error(o.sub("segments"), "expected a list of segments");
    g.reg = *reg;
    g.schedule = PulseSchedule{*reg, {}, std::vector<double>(static_cast<std::size_t>(n), 0.055)};
    for (std::size_t i = 0; i < segs.size(); ++i)
      g.schedule.segments.push_back(parse_segment(Obj(segs[i], o.sub("segments") + "[" + std::to_string(i) + "]"), n));
    o.finish();
    if (root.has("drive")) g.schedule.lamb_dicke = get_drive(n).lamb_dicke;
    return g;
  }
  config_error(o.sub("kind"), "expected none, toffoli, three_body, rectangle or segments");
}

}  // namespace sqg::cli

#endif  // SQUEEZEGATE_TOOLS_CONFIG_HPP
