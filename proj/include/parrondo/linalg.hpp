#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Dense complex matrix kernel for small Hilbert spaces (dim <= a few dozen).
// Everything is a square matrix; vectors appear only as columns extracted
// from eigenbases. All values are immutable after construction and safe to
// share between threads.

namespace parrondo {

using cplx = std::complex<double>;

/// Thrown when an iterative routine fails to converge or a computed result
/// violates its contract. Never silent.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace linalg {

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim);
  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  int dim() const { return dim_; }
  cplx& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
  const cplx& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * dim_ + c]; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  cplx trace() const;
  /// Entrywise max modulus, the norm used by every tolerance in this project.
  double max_abs() const;
  bool all_finite() const;

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

 private:
  int dim_ = 0;
  std::vector<cplx> data_;
};

/// Kronecker product. Composite index i = i_a * dim(b) + i_b: the left
/// factor is the slow index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

/// a * b * dagger(a)
ComplexMatrix conjugate(const ComplexMatrix& a, const ComplexMatrix& b);

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kProjectorTol = 1e-9;
inline constexpr double kReconstructTol = 1e-8;
inline constexpr double kDefaultPhaseTol = 1e-8;

/// Square complex matrix with ||U†U - I||_max <= kUnitaryTol, checked at
/// construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix m, double tol = kUnitaryTol);
  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  ComplexMatrix m_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix (eigenvalues
/// >= -kPsdTol), checked at construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);
  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }
  /// Tr(rho^2); 1 for pure states.
  double purity() const;

 private:
  ComplexMatrix m_;
};

/// U rho U†, revalidated as a DensityMatrix.
DensityMatrix evolve(const DensityMatrix& rho, const UnitaryMatrix& u);

struct HermitianEigensystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // eigenvectors as columns, same order
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix. Throws
/// NumericalError when the off-diagonal mass has not converged within
/// max_sweeps sweeps.
HermitianEigensystem eig_hermitian(const ComplexMatrix& a, int max_sweeps = 64);

struct SpectralCluster {
  double phase;            // in (-pi, pi]
  int multiplicity;
  ComplexMatrix projector;  // Hermitian, idempotent, rank = multiplicity
};

/// Eigenphases of a unitary grouped into degeneracy clusters with
/// orthogonal projectors. clusters are ordered by ascending phase and
/// satisfy: idempotency and mutual orthogonality within kProjectorTol,
/// completeness within kProjectorTol, and reconstruction
/// ||sum e^{i phase} P - U||_max <= kReconstructTol. All four are verified
/// before returning; violation throws NumericalError.
struct SpectralDecomposition {
  std::vector<SpectralCluster> clusters;
};

/// Spectral decomposition of a unitary. Eigenphases whose circular distance
/// is <= phase_tol are merged into a single cluster. The solver diagonalizes
/// the commuting Hermitian pair (U+U†)/2, (U-U†)/(2i) rather than running a
/// general non-symmetric eigensolver.
SpectralDecomposition eig_unitary(const UnitaryMatrix& u,
                                  double phase_tol = kDefaultPhaseTol,
                                  int max_sweeps = 64);

/// Wraps a phase into the canonical range (-pi, pi].
double canonical_phase(double phase);

}  // namespace linalg
}  // namespace parrondo
