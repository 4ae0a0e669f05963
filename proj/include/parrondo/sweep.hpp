#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "parrondo/classical.hpp"
#include "parrondo/quantum.hpp"

// Deterministic 1-D and 2-D parameter sweeps over game configurations:
// the machinery behind the figure grids. Grid points are independent;
// evaluation order never affects the output.

namespace parrondo::sweep {

enum class Parameter { pA, qW, phiA, thetaA, phiB, thetaB, phiW, thetaW, eps1, eps2 };

const char* parameter_name(Parameter p);
Parameter parameter_from_name(const std::string& name);

/// Inclusive uniform grid: start + k*(stop-start)/(steps-1).
struct Axis {
  Parameter param = Parameter::pA;
  double start = 0.0;
  double stop = 1.0;
  int steps = 101;

  double value_at(int k) const { return start + k * (stop - start) / (steps - 1); }
};

struct ClassicalBase {
  int cycle_length = 3;
  double eps1 = 0.4;
  double eps2 = 0.25;
  double p_a = 0.5;
};

enum class QuantumGame { a, b, combined };

struct QuantumBase {
  QuantumGame game = QuantumGame::combined;
  int cycle_length = 3;
  double eps1 = 0.4;
  double eps2 = 0.25;
  double phi_a = 0.0;
  double theta_a = 1.5707963267948966;  // pi/2
  double phi_b = 1.5707963267948966;
  double theta_b = 0.0;
  double q_w = 0.2;
  double phi_w = 0.0;
  double theta_w = 1.5707963267948966;
  quantum::InitialStateSpec init;
};

struct Method {
  quantum::CurrentMethod kind = quantum::CurrentMethod::spectral;
  long cesaro_steps = 100000;  // used when kind == cesaro
};

struct SweepSpec {
  std::variant<ClassicalBase, QuantumBase> base;
  std::vector<Axis> axes;  // 1 or 2
  Method method;
  double phase_tol = linalg::kDefaultPhaseTol;
  std::string preset = "custom";
};

struct SweepResult {
  SweepSpec spec;
  std::vector<double> values;  // row-major, axis 0 as rows
};

/// The game unitary described by a flat quantum configuration.
quantum::UnitaryMatrix build_unitary(const QuantumBase& base);

/// Current of one fully specified configuration.
double evaluate_quantum(const QuantumBase& base, const Method& method, double phase_tol);
double evaluate_classical(const ClassicalBase& base);

/// Evaluates the current at every grid point. threads > 1 evaluates points
/// concurrently into pre-indexed slots; the result is identical to the
/// serial one. A numerical failure aborts and reports the grid coordinates.
SweepResult run_sweep(const SweepSpec& spec, int threads = 1);

/// The exact specs behind the five figures (fig1..fig5).
SweepSpec figure_preset(const std::string& name);

/// CSV: comment header, then <param>,j rows (1-D) or a matrix block whose
/// first row holds axis-1 values and first column axis-0 values (2-D).
/// Floats carry 17 significant digits; LF line endings.
void write_csv(const SweepResult& result, std::ostream& os);
void write_json(const SweepResult& result, std::ostream& os);

}  // namespace parrondo::sweep
