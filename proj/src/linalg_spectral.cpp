#include "parrondo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace parrondo::linalg {

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  const int n = a.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One Jacobi rotation annihilating a(p,q). The 2x2 subproblem
// [[a_pp, r e^{i alpha}], [r e^{-i alpha}, a_qq]] is reduced to a real
// symmetric one by the phase diag(e^{i alpha}, 1) and then rotated by the
// standard stable Givens choice (smaller-root tangent).
void rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx w = apq / r;  // e^{i alpha}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // G has block [[w c, w s], [-s, c]] at rows/cols (p, q); apply A <- G† A G.
  const int n = a.dim();
  const cplx wc = w * c, ws = w * s;
  for (int j = 0; j < n; ++j) {  // rows: A <- G† A
    const cplx ap = a(p, j), aq = a(q, j);
    a(p, j) = std::conj(wc) * ap - s * aq;
    a(q, j) = std::conj(ws) * ap + c * aq;
  }
  for (int i = 0; i < n; ++i) {  // cols: A <- A G, and accumulate V <- V G
    const cplx ap = a(i, p), aq = a(i, q);
    a(i, p) = ap * wc - aq * s;
    a(i, q) = ap * ws + aq * c;
    const cplx vp = v(i, p), vq = v(i, q);
    v(i, p) = vp * wc - vq * s;
    v(i, q) = vp * ws + vq * c;
  }
  a(p, q) = cplx{};
  a(q, p) = cplx{};
  a(p, p) = cplx{a(p, p).real(), 0.0};
  a(q, q) = cplx{a(q, q).real(), 0.0};
}

// Diagonalize in place; eigenvectors accumulate into v (must start as I or
// an orthonormal basis to be refined).
void jacobi_inplace(ComplexMatrix& a, ComplexMatrix& v, int max_sweeps) {
  const int n = a.dim();
  if (n == 1) {
    a(0, 0) = cplx{a(0, 0).real(), 0.0};
    return;
  }
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (scale == 0.0) return;
  const double stop = 1e-14 * scale * n;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(a) <= stop) return;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > stop / (n * n)) rotate(a, v, p, q);
  }
  if (offdiag_norm(a) > stop)
    throw NumericalError("eig_hermitian: Jacobi did not converge within sweep cap");
}

void sort_by_value(std::vector<double>& vals, ComplexMatrix& vecs) {
  const int n = static_cast<int>(vals.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return vals[i] < vals[j]; });
  std::vector<double> sv(n);
  ComplexMatrix sm(n);
  for (int k = 0; k < n; ++k) {
    sv[k] = vals[order[k]];
    for (int i = 0; i < n; ++i) sm(i, k) = vecs(i, order[k]);
  }
  vals = std::move(sv);
  vecs = std::move(sm);
}

// Modified Gram-Schmidt on the given columns of src; orthonormal result
// replaces them in place.
void orthonormalize_columns(ComplexMatrix& m, const std::vector<int>& cols) {
  const int n = m.dim();
  for (size_t k = 0; k < cols.size(); ++k) {
    const int ck = cols[k];
    for (size_t l = 0; l < k; ++l) {
      const int cl = cols[l];
      cplx proj{};
      for (int i = 0; i < n; ++i) proj += std::conj(m(i, cl)) * m(i, ck);
      for (int i = 0; i < n; ++i) m(i, ck) -= proj * m(i, cl);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(m(i, ck));
    norm = std::sqrt(norm);
    if (norm < 1e-8)
      throw NumericalError("eig_unitary: degenerate cluster basis collapsed");
    for (int i = 0; i < n; ++i) m(i, ck) /= norm;
  }
}

double circular_distance(double a, double b) {
  double d = std::abs(a - b);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

}  // namespace

double canonical_phase(double phase) {
  const double pi = std::numbers::pi;
  double p = std::remainder(phase, 2.0 * pi);  // (-pi, pi] up to the -pi edge
  if (p <= -pi) p = pi;
  return p;
}

HermitianEigensystem eig_hermitian(const ComplexMatrix& a, int max_sweeps) {
  const int n = a.dim();
  if (n < 1) throw std::invalid_argument("eig_hermitian: empty matrix");
  if ((a - dagger(a)).max_abs() > 1e-10)
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  ComplexMatrix work = a;
  ComplexMatrix vecs = ComplexMatrix::identity(n);
  jacobi_inplace(work, vecs, max_sweeps);
  HermitianEigensystem out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = work(i, i).real();
  out.vectors = std::move(vecs);
  sort_by_value(out.values, out.vectors);
  return out;
}

SpectralDecomposition eig_unitary(const UnitaryMatrix& u, double phase_tol, int max_sweeps) {
  if (!(phase_tol > 0.0)) throw std::invalid_argument("eig_unitary: phase_tol must be > 0");
  const ComplexMatrix& um = u.matrix();
  const int n = um.dim();
  const ComplexMatrix ud = dagger(um);

  // U is normal: diagonalize the commuting Hermitian pair
  // H1 = (U+U†)/2, H2 = (U-U†)/(2i) and read phases from atan2.
  ComplexMatrix h1(n), h2(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      h1(i, j) = 0.5 * (um(i, j) + ud(i, j));
      h2(i, j) = (um(i, j) - ud(i, j)) / cplx{0.0, 2.0};
    }

  auto base = eig_hermitian(h1, max_sweeps);
  ComplexMatrix& vecs = base.vectors;

  // Refine within near-degenerate H1 groups: diagonalize the H2 block so
  // every basis vector is a joint eigenvector (phases +lambda and -lambda
  // share cos lambda and are separated only by H2).
  constexpr double group_tol = 1e-9;
  int g0 = 0;
  while (g0 < n) {
    int g1 = g0 + 1;
    while (g1 < n && base.values[g1] - base.values[g1 - 1] <= group_tol) ++g1;
    const int k = g1 - g0;
    if (k > 1) {
      ComplexMatrix block(k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
          cplx sum{};
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              sum += std::conj(vecs(i, g0 + r)) * h2(i, j) * vecs(j, g0 + c);
          block(r, c) = sum;
        }
      block = cplx{0.5, 0.0} * (block + dagger(block));
      auto sub = eig_hermitian(block, max_sweeps);
      ComplexMatrix rotated(n);
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < k; ++c) {
          cplx sum{};
          for (int r = 0; r < k; ++r) sum += vecs(i, g0 + r) * sub.vectors(r, c);
          rotated(i, c) = sum;
        }
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < k; ++c) vecs(i, g0 + c) = rotated(i, c);
    }
    g0 = g1;
  }

  // Phase of each joint eigenvector from the Rayleigh quotient v† U v.
  std::vector<double> phases(n);
  for (int c = 0; c < n; ++c) {
    cplx z{};
    for (int i = 0; i < n; ++i) {
      cplx acc{};
      for (int j = 0; j < n; ++j) acc += um(i, j) * vecs(j, c);
      z += std::conj(vecs(i, c)) * acc;
    }
    phases[c] = canonical_phase(std::arg(z));
  }
  sort_by_value(phases, vecs);

  // Cluster phases whose circular distance is within phase_tol; the last
  // and first clusters may merge across the -pi/pi seam.
  std::vector<std::vector<int>> clusters;
  for (int c = 0; c < n; ++c) {
    if (!clusters.empty() && phases[c] - phases[clusters.back().back()] <= phase_tol)
      clusters.back().push_back(c);
    else
      clusters.push_back({c});
  }
  if (clusters.size() > 1 &&
      circular_distance(phases[clusters.front().front()], phases[clusters.back().back()]) <= phase_tol) {
    auto& first = clusters.front();
    first.insert(first.begin(), clusters.back().begin(), clusters.back().end());
    clusters.pop_back();
  }

  SpectralDecomposition out;
  for (const auto& members : clusters) {
    orthonormalize_columns(vecs, members);
    ComplexMatrix proj(n);
    double sin_sum = 0.0, cos_sum = 0.0;
    for (int c : members) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) proj(i, j) += vecs(i, c) * std::conj(vecs(j, c));
      sin_sum += std::sin(phases[c]);
      cos_sum += std::cos(phases[c]);
    }
    proj = cplx{0.5, 0.0} * (proj + dagger(proj));
    SpectralCluster cl;
    cl.phase = canonical_phase(std::atan2(sin_sum, cos_sum));
    cl.multiplicity = static_cast<int>(members.size());
    cl.projector = std::move(proj);
    out.clusters.push_back(std::move(cl));
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const SpectralCluster& a, const SpectralCluster& b) { return a.phase < b.phase; });

  // Contract checks; a failure here is a solver defect, never ignored.
  ComplexMatrix completeness(n), reconstruction(n);
  for (const auto& cl : out.clusters) {
    const ComplexMatrix p2 = cl.projector * cl.projector;
    if ((p2 - cl.projector).max_abs() > kProjectorTol)
      throw NumericalError("eig_unitary: projector not idempotent");
    completeness += cl.projector;
    reconstruction += cplx{std::cos(cl.phase), std::sin(cl.phase)} * cl.projector;
  }
  for (size_t a = 0; a < out.clusters.size(); ++a)
    for (size_t b = a + 1; b < out.clusters.size(); ++b)
      if ((out.clusters[a].projector * out.clusters[b].projector).max_abs() > kProjectorTol)
        throw NumericalError("eig_unitary: projectors not mutually orthogonal");
  if ((completeness - ComplexMatrix::identity(n)).max_abs() > kProjectorTol)
    throw NumericalError("eig_unitary: projectors do not resolve the identity");
  if ((reconstruction - um).max_abs() > kReconstructTol)
    throw NumericalError("eig_unitary: spectral reconstruction failed");
  return out;
}

}  // namespace parrondo::linalg
