#include "parrondo/quantum.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace parrondo::quantum {

using linalg::dagger;
using linalg::tensor;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("coin angle must be finite");
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

ComplexMatrix coin_basis_projector(int which) {
  ComplexMatrix p(2);
  p(which, which) = 1.0;
  return p;
}

// (J ⊗ P+ + J† ⊗ P-) for the walk coin.
ComplexMatrix conditional_shift(int cycle_length) {
  const ComplexMatrix j = shift_unitary(cycle_length).matrix();
  return tensor(j, coin_basis_projector(0)) + tensor(dagger(j), coin_basis_projector(1));
}

// Projector onto (1, ±1)/sqrt(2), or I/2 when mixed.
ComplexMatrix coin_state(int sign, bool mixed) {
  ComplexMatrix c(2);
  c(0, 0) = 0.5;
  c(1, 1) = 0.5;
  if (!mixed) {
    c(0, 1) = 0.5 * sign;
    c(1, 0) = 0.5 * sign;
  }
  return c;
}

std::uint64_t fnv1a(std::uint64_t h, const void* bytes, size_t len) {
  const auto* p = static_cast<const unsigned char*>(bytes);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fingerprint(const ComplexMatrix& u, const ComplexMatrix& rho) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, u.data().data(), u.data().size() * sizeof(cplx));
  h = fnv1a(h, rho.data().data(), rho.data().size() * sizeof(cplx));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void check_dims(const UnitaryMatrix& u, const DensityMatrix& rho, const ComplexMatrix& obs) {
  if (u.dim() != rho.dim() || u.dim() != obs.dim())
    throw std::invalid_argument("current: U, rho and observable dims differ");
}

// Dominant eigenvector of a pure-state density matrix.
std::vector<cplx> pure_state_vector(const ComplexMatrix& rho) {
  const int n = rho.dim();
  int seed = 0;
  for (int i = 1; i < n; ++i)
    if (rho(i, i).real() > rho(seed, seed).real()) seed = i;
  std::vector<cplx> psi(n), next(n);
  for (int i = 0; i < n; ++i) psi[i] = rho(i, seed);
  for (int iter = 0; iter < 64; ++iter) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx acc{};
      for (int j = 0; j < n; ++j) acc += rho(i, j) * psi[j];
      next[i] = acc;
      norm += std::norm(acc);
    }
    norm = std::sqrt(norm);
    if (norm < 1e-300) throw NumericalError("cesaro_current: pure-state extraction failed");
    double delta = 0.0;
    for (int i = 0; i < n; ++i) {
      next[i] /= norm;
      delta = std::max(delta, std::abs(next[i] - psi[i]));
    }
    psi.swap(next);
    if (delta <= 1e-14) return psi;
  }
  return psi;  // rank-1 input converges in one step; this is unreachable in practice
}

}  // namespace

UnitaryMatrix coin_unitary(const CoinParams& c) {
  if (!(c.q >= 0.0 && c.q <= 1.0)) throw std::invalid_argument("coin q must be in [0,1]");
  const double phi = wrap_angle(c.phi);
  const double theta = wrap_angle(c.theta);
  const double sq = std::sqrt(c.q);
  const double sr = std::sqrt(1.0 - c.q);
  ComplexMatrix v(2);
  v(0, 0) = sq * cplx{std::cos(phi), std::sin(phi)};
  v(0, 1) = sr * cplx{std::cos(theta), std::sin(theta)};
  v(1, 0) = -sr * cplx{std::cos(theta), -std::sin(theta)};
  v(1, 1) = sq * cplx{std::cos(phi), -std::sin(phi)};
  return UnitaryMatrix(std::move(v));
}

UnitaryMatrix shift_unitary(int cycle_length) {
  if (cycle_length < 3) throw std::invalid_argument("cycle length must be >= 3");
  ComplexMatrix j(cycle_length);
  for (int x = 0; x < cycle_length; ++x) j((x + 1) % cycle_length, x) = 1.0;
  return UnitaryMatrix(std::move(j));
}

UnitaryMatrix walk_unitary(int cycle_length, const CoinParams& coin) {
  const ComplexMatrix toss =
      tensor(ComplexMatrix::identity(cycle_length), coin_unitary(coin).matrix());
  return UnitaryMatrix(conditional_shift(cycle_length) * toss);
}

UnitaryMatrix game_a_unitary(const GameAConfig& cfg) {
  return walk_unitary(cfg.cycle_length, CoinParams{0.5, cfg.phi, cfg.theta});
}

UnitaryMatrix game_b_unitary(const GameBConfig& cfg) {
  const double q1 = 0.5 - cfg.eps1;
  const double q2 = 0.5 + cfg.eps2;
  if (!(q1 >= 0.0 && q1 <= 1.0 && q2 >= 0.0 && q2 <= 1.0))
    throw std::invalid_argument("game B: 1/2-eps1 and 1/2+eps2 must be in [0,1]");
  const int m = cfg.cycle_length;
  const ComplexMatrix v1 = coin_unitary(CoinParams{q1, cfg.phi, cfg.theta}).matrix();
  const ComplexMatrix v2 = coin_unitary(CoinParams{q2, cfg.phi, cfg.theta}).matrix();
  ComplexMatrix site0(m);
  site0(0, 0) = 1.0;
  const ComplexMatrix rest = ComplexMatrix::identity(m) - site0;
  const ComplexMatrix toss = tensor(site0, v1) + tensor(rest, v2);
  return UnitaryMatrix(conditional_shift(m) * toss);
}

UnitaryMatrix combined_unitary(const ParrondoConfig& cfg) {
  if (cfg.game_a.cycle_length != cfg.game_b.cycle_length)
    throw std::invalid_argument("combined game: cycle lengths differ");
  const int m = cfg.game_a.cycle_length;
  const ComplexMatrix ua = game_a_unitary(cfg.game_a).matrix();
  const ComplexMatrix ub = game_b_unitary(cfg.game_b).matrix();
  const ComplexMatrix w = coin_unitary(cfg.coin_w).matrix();
  const ComplexMatrix select =
      tensor(ua, coin_basis_projector(0)) + tensor(ub, coin_basis_projector(1));
  return UnitaryMatrix(select * tensor(ComplexMatrix::identity(2 * m), w));
}

DensityMatrix initial_state(const InitialStateSpec& spec, int cycle_length, bool combined) {
  if (cycle_length < 3) throw std::invalid_argument("cycle length must be >= 3");
  if (spec.walker_site < 0 || spec.walker_site >= cycle_length)
    throw std::invalid_argument("walker site out of range");
  if (spec.coin_sign != 1 && spec.coin_sign != -1)
    throw std::invalid_argument("coin sign must be ±1");
  if (spec.game_coin_sign != 1 && spec.game_coin_sign != -1)
    throw std::invalid_argument("game coin sign must be ±1");
  ComplexMatrix walker(cycle_length);
  walker(spec.walker_site, spec.walker_site) = 1.0;
  ComplexMatrix rho = tensor(walker, coin_state(spec.coin_sign, spec.mixed_coin));
  if (combined) rho = tensor(rho, coin_state(spec.game_coin_sign, spec.mixed_coin));
  return DensityMatrix(std::move(rho));
}

ComplexMatrix current_observable(int cycle_length, bool combined) {
  if (cycle_length < 3) throw std::invalid_argument("cycle length must be >= 3");
  const ComplexMatrix pm = coin_basis_projector(0) - coin_basis_projector(1);
  ComplexMatrix o = tensor(ComplexMatrix::identity(cycle_length), pm);
  if (combined) o = tensor(o, ComplexMatrix::identity(2));
  return o;
}

CurrentResult spectral_current(const UnitaryMatrix& u, const DensityMatrix& rho0,
                               const ComplexMatrix& observable, double phase_tol) {
  check_dims(u, rho0, observable);
  const SpectralDecomposition dec = linalg::eig_unitary(u, phase_tol);
  cplx j{};
  for (const auto& cl : dec.clusters)
    j += (observable * cl.projector * rho0.matrix() * cl.projector).trace();
  if (std::abs(j.imag()) > 1e-10)
    throw NumericalError("spectral_current: imaginary residue " + std::to_string(j.imag()));
  CurrentResult out;
  out.value = j.real();
  out.method = CurrentMethod::spectral;
  out.config_fingerprint = fingerprint(u.matrix(), rho0.matrix());
  return out;
}

CurrentResult cesaro_current(const UnitaryMatrix& u, const DensityMatrix& rho0,
                             const ComplexMatrix& observable, long steps) {
  check_dims(u, rho0, observable);
  if (steps < 1) throw std::invalid_argument("cesaro_current: steps must be >= 1");
  const int n = u.dim();
  const ComplexMatrix& um = u.matrix();
  long double acc = 0.0L;

  if (std::abs(rho0.purity() - 1.0) <= 1e-12) {
    // Pure state: evolve the vector, same average at a fraction of the cost.
    std::vector<cplx> psi = pure_state_vector(rho0.matrix());
    std::vector<cplx> tmp(n);
    for (long t = 0; t < steps; ++t) {
      for (int i = 0; i < n; ++i) {
        cplx s{};
        for (int k = 0; k < n; ++k) s += um(i, k) * psi[k];
        tmp[i] = s;
      }
      psi.swap(tmp);
      long double expect = 0.0L;
      for (int i = 0; i < n; ++i) {
        cplx s{};
        for (int k = 0; k < n; ++k) s += observable(i, k) * psi[k];
        expect += (std::conj(psi[i]) * s).real();
      }
      acc += expect;
    }
  } else {
    const ComplexMatrix ud = dagger(um);
    ComplexMatrix rho = rho0.matrix();
    for (long t = 0; t < steps; ++t) {
      rho = um * rho * ud;
      acc += static_cast<long double>((observable * rho).trace().real());
    }
  }

  CurrentResult out;
  out.value = static_cast<double>(acc / steps);
  out.method = CurrentMethod::cesaro;
  out.cesaro_steps = steps;
  out.config_fingerprint = fingerprint(um, rho0.matrix());
  return out;
}

}  // namespace parrondo::quantum
