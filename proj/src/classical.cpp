#include "parrondo/classical.hpp"

#include <cmath>

namespace parrondo::classical {

namespace {

void check_eps(double eps, const char* name) {
  if (!(std::abs(eps) <= 0.5))
    throw std::invalid_argument(std::string(name) + " must satisfy 0 <= 1/2±eps <= 1");
}

}  // namespace

StochasticMatrix::StochasticMatrix(ComplexMatrix m) : m_(std::move(m)) {
  const int n = m_.dim();
  for (int c = 0; c < n; ++c) {
    double sum = 0.0;
    for (int r = 0; r < n; ++r) {
      const cplx v = m_(r, c);
      if (v.imag() != 0.0 || !(v.real() >= 0.0) || !(v.real() <= 1.0))
        throw std::invalid_argument("StochasticMatrix: entries must be real in [0,1]");
      sum += v.real();
    }
    if (!(std::abs(sum - 1.0) <= 1e-12))
      throw std::invalid_argument("StochasticMatrix: column " + std::to_string(c) +
                                  " sums to " + std::to_string(sum));
  }
}

StochasticMatrix transition_matrix_b(const GameParams& p) {
  if (p.cycle_length < 3) throw std::invalid_argument("cycle length must be >= 3");
  check_eps(p.eps1, "eps1");
  check_eps(p.eps2, "eps2");
  const int m = p.cycle_length;
  ComplexMatrix l(m);
  for (int x = 0; x < m; ++x) {
    const double right = (x == 0) ? 0.5 - p.eps1 : 0.5 + p.eps2;
    l((x + 1) % m, x) = right;
    l((x + m - 1) % m, x) = 1.0 - right;
  }
  return StochasticMatrix(std::move(l));
}

StochasticMatrix transition_matrix_a(int cycle_length) {
  return transition_matrix_b(GameParams{cycle_length, 0.0, 0.0});
}

StochasticMatrix mix(const StochasticMatrix& a, const StochasticMatrix& b, double p_a) {
  if (!(p_a >= 0.0 && p_a <= 1.0)) throw std::invalid_argument("pA must be in [0,1]");
  if (a.dim() != b.dim()) throw std::invalid_argument("mix: dims differ");
  ComplexMatrix l = cplx{p_a, 0.0} * a.matrix() + cplx{1.0 - p_a, 0.0} * b.matrix();
  return StochasticMatrix(std::move(l));
}

std::vector<double> stationary_distribution(const StochasticMatrix& l, double tol) {
  const int n = l.dim();
  constexpr long kMaxIters = 1'000'000;
  std::vector<double> rho(n, 1.0 / n), next(n);
  for (long iter = 0; iter < kMaxIters; ++iter) {
    double residual = 0.0;
    for (int r = 0; r < n; ++r) {
      double lr = 0.0;
      for (int c = 0; c < n; ++c) lr += l(r, c) * rho[c];
      residual = std::max(residual, std::abs(lr - rho[r]));
      next[r] = 0.5 * (rho[r] + lr);  // lazy step keeps even cycles aperiodic
    }
    if (residual <= tol) {
      double sum = 0.0;
      for (double v : rho) sum += v;
      for (double& v : rho) v /= sum;
      return rho;
    }
    std::swap(rho, next);
  }
  throw NumericalError("stationary_distribution: power iteration did not converge");
}

StationaryResult stationary_current(const StochasticMatrix& l, const std::vector<double>& rho) {
  const int n = l.dim();
  if (static_cast<int>(rho.size()) != n)
    throw std::invalid_argument("stationary_current: rho size mismatch");
  for (int r = 0; r < n; ++r) {
    double lr = 0.0;
    for (int c = 0; c < n; ++c) lr += l(r, c) * rho[c];
    if (!(std::abs(lr - rho[r]) <= 1e-10))
      throw std::invalid_argument("stationary_current: rho is not stationary for L");
  }
  StationaryResult out;
  out.rho = rho;
  ComplexMatrix j(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      j(x, y) = l(x, y) * rho[y] - rho[x] * l(y, x);  // (LP - P L^T)[x][y]
  out.current_matrix = std::move(j);
  double scalar = 0.0;
  for (int x = 0; x < n; ++x) scalar += out.current_matrix((x + 1) % n, x).real();
  out.scalar_current = scalar;
  return out;
}

double fair_eps1(double eps2) {
  check_eps(eps2, "eps2");
  return 2.0 * eps2 / (4.0 * eps2 * eps2 + 1.0);
}

std::vector<std::pair<double, double>> current_curve(int cycle_length, double eps1, double eps2,
                                                     const std::vector<double>& pa_grid) {
  const StochasticMatrix la = transition_matrix_a(cycle_length);
  const StochasticMatrix lb = transition_matrix_b(GameParams{cycle_length, eps1, eps2});
  std::vector<std::pair<double, double>> out;
  out.reserve(pa_grid.size());
  for (double pa : pa_grid) {
    const StochasticMatrix lc = mix(la, lb, pa);
    const auto rho = stationary_distribution(lc);
    out.emplace_back(pa, stationary_current(lc, rho).scalar_current);
  }
  return out;
}

}  // namespace parrondo::classical
