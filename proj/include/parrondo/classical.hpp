#pragma once

#include <utility>
#include <vector>

#include "parrondo/linalg.hpp"

// Classical Parrondo games as discrete-time Markov chains on Z/MZ.
// Convention: matrices are column-stochastic, L[to][from].

namespace parrondo::classical {

using linalg::ComplexMatrix;

struct GameParams {
  int cycle_length = 3;  // M
  double eps1 = 0.0;
  double eps2 = 0.0;
};

/// Column-stochastic matrix with entries in [0,1]; every column sums to 1
/// within 1e-12 (checked at construction).
class StochasticMatrix {
 public:
  explicit StochasticMatrix(ComplexMatrix m);
  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }
  double operator()(int to, int from) const { return m_(to, from).real(); }

 private:
  ComplexMatrix m_;
};

struct StationaryResult {
  std::vector<double> rho;       // stationary distribution
  ComplexMatrix current_matrix;  // j = L P - P L^T, real entries
  double scalar_current = 0.0;   // expected displacement per step
};

/// Transition matrix of game B: right-step probability 1/2 - eps1 at site 0
/// and 1/2 + eps2 elsewhere.
StochasticMatrix transition_matrix_b(const GameParams& p);

/// Game A: the unbiased walk (game B with eps1 = eps2 = 0).
StochasticMatrix transition_matrix_a(int cycle_length);

/// L_C = pA * L_A + (1 - pA) * L_B.
StochasticMatrix mix(const StochasticMatrix& a, const StochasticMatrix& b, double p_a);

/// Stationary distribution by damped power iteration on (I + L)/2 (same
/// fixed point, aperiodic for every M). Throws NumericalError if
/// ||L rho - rho||_max > tol after the iteration cap.
std::vector<double> stationary_distribution(const StochasticMatrix& l, double tol = 1e-13);

/// Current matrix j = L P - P L^T with P = diag(rho), plus the scalar
/// displacement rate sum_x j[(x+1) mod M][x]. rho must be stationary for l
/// within 1e-10.
StationaryResult stationary_current(const StochasticMatrix& l, const std::vector<double>& rho);

/// The M = 3 fairness relation: eps1 = 2 eps2 / (4 eps2^2 + 1).
double fair_eps1(double eps2);

/// Scalar current of the mixed game at each pA grid point, in grid order.
std::vector<std::pair<double, double>> current_curve(int cycle_length, double eps1, double eps2,
                                                     const std::vector<double>& pa_grid);

}  // namespace parrondo::classical
