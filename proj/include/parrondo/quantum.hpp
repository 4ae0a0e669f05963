#pragma once

#include <string>

#include "parrondo/linalg.hpp"

// Quantum Parrondo games: coins, shifts, the game unitaries U_A, U_B and the
// combined U, initial density matrices, the current observable and the
// long-time-averaged current.
//
// Conventions (fixed once, used everywhere):
//   * composite index order walker ⊗ walk-coin ⊗ game-coin, walker slowest;
//   * coin basis state 0 means "move right": the shift applies J to the
//     walker when the walk coin is |0>, J† when it is |1>;
//   * "right" is index-increasing, J|x> = |x+1 mod M>;
//   * the observable is evaluated after full steps (coin toss, then shift).

namespace parrondo::quantum {

using linalg::ComplexMatrix;
using linalg::DensityMatrix;
using linalg::SpectralDecomposition;
using linalg::UnitaryMatrix;

/// SU(2) coin parameters (q, phi, theta). Angles are wrapped into [0, 2pi).
struct CoinParams {
  double q = 0.5;
  double phi = 0.0;
  double theta = 0.0;
};

struct GameAConfig {
  int cycle_length = 3;
  double phi = 0.0;
  double theta = 0.0;  // q is fixed to 1/2
};

struct GameBConfig {
  int cycle_length = 3;
  double eps1 = 0.0;  // q1 = 1/2 - eps1 at site 0
  double eps2 = 0.0;  // q2 = 1/2 + eps2 elsewhere
  double phi = 0.0;   // phases shared by V1 and V2
  double theta = 0.0;
};

struct ParrondoConfig {
  GameAConfig game_a;
  GameBConfig game_b;  // same cycle length as game_a
  CoinParams coin_w;   // game coin: |0> plays A, |1> plays B
};

struct InitialStateSpec {
  int walker_site = 0;
  int coin_sign = +1;       // projector onto (1, ±1)/sqrt(2)
  int game_coin_sign = +1;  // combined game only
  bool mixed_coin = false;  // replaces every coin factor with I/2
};

enum class CurrentMethod { spectral, cesaro };

struct CurrentResult {
  double value = 0.0;
  CurrentMethod method = CurrentMethod::spectral;
  long cesaro_steps = 0;          // 0 for spectral
  std::string config_fingerprint;  // FNV-1a over U and rho entries
};

/// The coin matrix of Eq.-(5) form:
/// [[sqrt(q) e^{i phi},  sqrt(1-q) e^{i theta}],
///  [-sqrt(1-q) e^{-i theta}, sqrt(q) e^{-i phi}]]; det = 1.
UnitaryMatrix coin_unitary(const CoinParams& c);

/// Cyclic right shift J|x> = |x+1 mod M>, J^M = I.
UnitaryMatrix shift_unitary(int cycle_length);

/// One walk step (J ⊗ P+ + J† ⊗ P-)(I ⊗ V) for an arbitrary coin; the
/// shared primitive behind both single games.
UnitaryMatrix walk_unitary(int cycle_length, const CoinParams& coin);

/// Game A: walk_unitary with q pinned to 1/2. Dim 2M.
UnitaryMatrix game_a_unitary(const GameAConfig& cfg);

/// Game B: site-dependent coin, V1 (q = 1/2 - eps1) at site 0 and V2
/// (q = 1/2 + eps2) elsewhere, shared phases. Dim 2M.
UnitaryMatrix game_b_unitary(const GameBConfig& cfg);

/// Combined game (U_A ⊗ Q+ + U_B ⊗ Q-)(I ⊗ W). Dim 4M.
UnitaryMatrix combined_unitary(const ParrondoConfig& cfg);

/// |site><site| ⊗ coin factor [⊗ game-coin factor]. Coin factors are the
/// projector onto (1, ±1)/sqrt(2), or I/2 when mixed_coin is set.
DensityMatrix initial_state(const InitialStateSpec& spec, int cycle_length, bool combined);

/// I_M ⊗ (P+ - P-) [⊗ I_2]: net right-move probability of the last step.
ComplexMatrix current_observable(int cycle_length, bool combined);

/// Long-time average via the eigenprojector sum
/// j = sum_clusters Tr(O P rho0 P). The imaginary residue of the trace must
/// stay below 1e-10 or a NumericalError is thrown.
CurrentResult spectral_current(const UnitaryMatrix& u, const DensityMatrix& rho0,
                               const ComplexMatrix& observable,
                               double phase_tol = linalg::kDefaultPhaseTol);

/// Finite-horizon average (1/T) sum_{t=1..T} Tr(O rho_t) with
/// rho_t = U rho_{t-1} U†; the independent oracle for spectral_current.
/// Pure rho0 (purity within 1e-12 of 1) is evolved as a state vector.
CurrentResult cesaro_current(const UnitaryMatrix& u, const DensityMatrix& rho0,
                             const ComplexMatrix& observable, long steps);

}  // namespace parrondo::quantum
