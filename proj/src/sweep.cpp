#include "parrondo/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <ostream>

#include <nlohmann/json.hpp>

#include "parrondo/version.hpp"

namespace parrondo::sweep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ParamName {
  Parameter param;
  const char* name;
};
constexpr ParamName kParamNames[] = {
    {Parameter::pA, "pA"},         {Parameter::qW, "qW"},
    {Parameter::phiA, "phiA"},     {Parameter::thetaA, "thetaA"},
    {Parameter::phiB, "phiB"},     {Parameter::thetaB, "thetaB"},
    {Parameter::phiW, "phiW"},     {Parameter::thetaW, "thetaW"},
    {Parameter::eps1, "eps1"},     {Parameter::eps2, "eps2"},
};

void set_param(ClassicalBase& base, Parameter p, double v) {
  switch (p) {
    case Parameter::pA: base.p_a = v; return;
    case Parameter::eps1: base.eps1 = v; return;
    case Parameter::eps2: base.eps2 = v; return;
    default:
      throw std::invalid_argument(std::string("axis parameter ") + parameter_name(p) +
                                  " does not exist in a classical configuration");
  }
}

void set_param(QuantumBase& base, Parameter p, double v) {
  const bool has_a = base.game == QuantumGame::a || base.game == QuantumGame::combined;
  const bool has_b = base.game == QuantumGame::b || base.game == QuantumGame::combined;
  const bool has_w = base.game == QuantumGame::combined;
  switch (p) {
    case Parameter::phiA: if (has_a) { base.phi_a = v; return; } break;
    case Parameter::thetaA: if (has_a) { base.theta_a = v; return; } break;
    case Parameter::phiB: if (has_b) { base.phi_b = v; return; } break;
    case Parameter::thetaB: if (has_b) { base.theta_b = v; return; } break;
    case Parameter::eps1: if (has_b) { base.eps1 = v; return; } break;
    case Parameter::eps2: if (has_b) { base.eps2 = v; return; } break;
    case Parameter::qW: if (has_w) { base.q_w = v; return; } break;
    case Parameter::phiW: if (has_w) { base.phi_w = v; return; } break;
    case Parameter::thetaW: if (has_w) { base.theta_w = v; return; } break;
    default: break;
  }
  throw std::invalid_argument(std::string("axis parameter ") + parameter_name(p) +
                              " does not exist in this quantum game configuration");
}

void validate_axes(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2)
    throw std::invalid_argument("sweep needs 1 or 2 axes");
  for (const Axis& ax : spec.axes) {
    if (!(ax.start < ax.stop)) throw std::invalid_argument("axis start must be < stop");
    if (ax.steps < 2) throw std::invalid_argument("axis needs at least 2 steps");
    // applicability check: try the assignment on a scratch copy
    auto scratch = spec.base;
    std::visit([&](auto& b) { set_param(b, ax.param, ax.start); }, scratch);
  }
}

double evaluate_point(const SweepSpec& spec, const std::vector<double>& coords) {
  auto base = spec.base;
  for (size_t a = 0; a < spec.axes.size(); ++a)
    std::visit([&](auto& b) { set_param(b, spec.axes[a].param, coords[a]); }, base);
  if (std::holds_alternative<ClassicalBase>(base))
    return evaluate_classical(std::get<ClassicalBase>(base));
  const double j = evaluate_quantum(std::get<QuantumBase>(base), spec.method, spec.phase_tol);
  if (!(std::abs(j) <= 1.0 + 1e-12))
    throw NumericalError("sweep: |j| > 1 at a quantum grid point");
  return j;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json base_to_json(const SweepSpec& spec) {
  nlohmann::json j;
  if (std::holds_alternative<ClassicalBase>(spec.base)) {
    const auto& b = std::get<ClassicalBase>(spec.base);
    j["type"] = "classical";
    j["M"] = b.cycle_length;
    j["eps1"] = b.eps1;
    j["eps2"] = b.eps2;
    j["pA"] = b.p_a;
  } else {
    const auto& b = std::get<QuantumBase>(spec.base);
    j["type"] = "quantum";
    j["game"] = b.game == QuantumGame::a ? "A" : (b.game == QuantumGame::b ? "B" : "C");
    j["M"] = b.cycle_length;
    j["eps1"] = b.eps1;
    j["eps2"] = b.eps2;
    j["phiA"] = b.phi_a;
    j["thetaA"] = b.theta_a;
    j["phiB"] = b.phi_b;
    j["thetaB"] = b.theta_b;
    j["qW"] = b.q_w;
    j["phiW"] = b.phi_w;
    j["thetaW"] = b.theta_w;
    j["walkerSite"] = b.init.walker_site;
    j["coinSign"] = b.init.coin_sign;
    j["gameCoinSign"] = b.init.game_coin_sign;
    j["mixedCoin"] = b.init.mixed_coin;
  }
  return j;
}

}  // namespace

const char* parameter_name(Parameter p) {
  for (const auto& pn : kParamNames)
    if (pn.param == p) return pn.name;
  throw std::invalid_argument("unknown sweep parameter");
}

Parameter parameter_from_name(const std::string& name) {
  for (const auto& pn : kParamNames)
    if (name == pn.name) return pn.param;
  throw std::invalid_argument("unknown sweep parameter: " + name);
}

quantum::UnitaryMatrix build_unitary(const QuantumBase& base) {
  using namespace quantum;
  switch (base.game) {
    case QuantumGame::a:
      return game_a_unitary(GameAConfig{base.cycle_length, base.phi_a, base.theta_a});
    case QuantumGame::b:
      return game_b_unitary(
          GameBConfig{base.cycle_length, base.eps1, base.eps2, base.phi_b, base.theta_b});
    case QuantumGame::combined: {
      ParrondoConfig cfg;
      cfg.game_a = GameAConfig{base.cycle_length, base.phi_a, base.theta_a};
      cfg.game_b = GameBConfig{base.cycle_length, base.eps1, base.eps2, base.phi_b, base.theta_b};
      cfg.coin_w = CoinParams{base.q_w, base.phi_w, base.theta_w};
      return combined_unitary(cfg);
    }
  }
  throw std::invalid_argument("unknown quantum game kind");
}

double evaluate_quantum(const QuantumBase& base, const Method& method, double phase_tol) {
  using namespace quantum;
  const bool combined = base.game == QuantumGame::combined;
  const UnitaryMatrix u = build_unitary(base);
  const DensityMatrix rho0 = initial_state(base.init, base.cycle_length, combined);
  const ComplexMatrix obs = current_observable(base.cycle_length, combined);
  if (method.kind == CurrentMethod::spectral)
    return spectral_current(u, rho0, obs, phase_tol).value;
  return cesaro_current(u, rho0, obs, method.cesaro_steps).value;
}

double evaluate_classical(const ClassicalBase& base) {
  using namespace classical;
  const StochasticMatrix la = transition_matrix_a(base.cycle_length);
  const StochasticMatrix lb =
      transition_matrix_b(GameParams{base.cycle_length, base.eps1, base.eps2});
  const StochasticMatrix lc = mix(la, lb, base.p_a);
  return stationary_current(lc, stationary_distribution(lc)).scalar_current;
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  validate_axes(spec);
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  const int n0 = spec.axes[0].steps;
  const int n1 = spec.axes.size() == 2 ? spec.axes[1].steps : 1;
  const long total = static_cast<long>(n0) * n1;

  SweepResult result;
  result.spec = spec;
  result.values.assign(total, 0.0);

  auto eval_range = [&](long begin, long end) {
    for (long idx = begin; idx < end; ++idx) {
      const int i0 = static_cast<int>(idx / n1);
      const int i1 = static_cast<int>(idx % n1);
      std::vector<double> coords{spec.axes[0].value_at(i0)};
      if (spec.axes.size() == 2) coords.push_back(spec.axes[1].value_at(i1));
      try {
        result.values[idx] = evaluate_point(spec, coords);
      } catch (const std::exception& e) {
        std::string where = parameter_name(spec.axes[0].param) + ("=" + fmt17(coords[0]));
        if (coords.size() == 2)
          where += std::string(", ") + parameter_name(spec.axes[1].param) + "=" + fmt17(coords[1]);
        throw NumericalError("sweep failed at grid point (" + where + "): " + e.what());
      }
    }
  };

  if (threads == 1 || total < 4) {
    eval_range(0, total);
  } else {
    const long chunk = (total + threads - 1) / threads;
    std::vector<std::future<void>> futures;
    for (long begin = 0; begin < total; begin += chunk)
      futures.push_back(std::async(std::launch::async, eval_range, begin,
                                   std::min(begin + chunk, total)));
    for (auto& f : futures) f.get();
  }
  return result;
}

SweepSpec figure_preset(const std::string& name) {
  SweepSpec spec;
  spec.preset = name;
  if (name == "fig1") {
    spec.base = ClassicalBase{3, 0.4, 0.25, 0.5};
    spec.axes = {Axis{Parameter::pA, 0.0, 1.0, 101}};
  } else if (name == "fig2") {
    QuantumBase b;
    b.game = QuantumGame::a;
    spec.base = b;
    spec.axes = {Axis{Parameter::thetaA, 0.0, kTwoPi, 65}, Axis{Parameter::phiA, 0.0, kTwoPi, 65}};
  } else if (name == "fig3") {
    spec.base = QuantumBase{};  // standard configuration, thetaW = pi/2, phiW = 0
    spec.axes = {Axis{Parameter::qW, 0.0, 1.0, 101}};
  } else if (name == "fig4" || name == "fig5") {
    QuantumBase b;
    b.q_w = (name == "fig4") ? 0.2 : 0.8;
    spec.base = b;
    spec.axes = {Axis{Parameter::thetaW, 0.0, kTwoPi, 65}, Axis{Parameter::phiW, 0.0, kTwoPi, 65}};
  } else {
    throw std::invalid_argument("unknown figure preset: " + name +
                                " (expected fig1, fig2, fig3, fig4 or fig5)");
  }
  return spec;
}

void write_csv(const SweepResult& result, std::ostream& os) {
  const SweepSpec& spec = result.spec;
  os << "# parrondo-cycle-lab v" << kVersion << " preset=" << spec.preset;
  char tolbuf[32];
  std::snprintf(tolbuf, sizeof(tolbuf), "%g", spec.phase_tol);
  os << " tol=" << tolbuf << "\n";
  if (spec.axes.size() == 1) {
    os << parameter_name(spec.axes[0].param) << ",j\n";
    for (int k = 0; k < spec.axes[0].steps; ++k)
      os << fmt17(spec.axes[0].value_at(k)) << "," << fmt17(result.values[k]) << "\n";
  } else {
    const int n0 = spec.axes[0].steps, n1 = spec.axes[1].steps;
    for (int k = 0; k < n1; ++k) os << "," << fmt17(spec.axes[1].value_at(k));
    os << "\n";
    for (int r = 0; r < n0; ++r) {
      os << fmt17(spec.axes[0].value_at(r));
      for (int c = 0; c < n1; ++c) os << "," << fmt17(result.values[static_cast<long>(r) * n1 + c]);
      os << "\n";
    }
  }
}

void write_json(const SweepResult& result, std::ostream& os) {
  const SweepSpec& spec = result.spec;
  nlohmann::json j;
  j["tool"] = "parrondo-cycle-lab";
  j["version"] = kVersion;
  j["preset"] = spec.preset;
  j["base"] = base_to_json(spec);
  j["axes"] = nlohmann::json::array();
  for (const Axis& ax : spec.axes)
    j["axes"].push_back({{"param", parameter_name(ax.param)},
                         {"start", ax.start},
                         {"stop", ax.stop},
                         {"steps", ax.steps}});
  j["method"] = spec.method.kind == quantum::CurrentMethod::spectral
                    ? nlohmann::json{{"kind", "spectral"}}
                    : nlohmann::json{{"kind", "cesaro"}, {"steps", spec.method.cesaro_steps}};
  j["phaseTol"] = spec.phase_tol;
  nlohmann::json shape = nlohmann::json::array();
  for (const Axis& ax : spec.axes) shape.push_back(ax.steps);
  j["shape"] = shape;
  j["values"] = result.values;
  os << j.dump(2) << "\n";
}

}  // namespace parrondo::sweep
