#include "parrondo/linalg.hpp"

#include <cmath>

namespace parrondo::linalg {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
  data_.assign(static_cast<size_t>(dim) * dim, cplx{0.0, 0.0});
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("matrix dims differ");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("matrix dims differ");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dims differ");
  const int n = a.dim_;
  ComplexMatrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

cplx ComplexMatrix::trace() const {
  cplx t{};
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  ComplexMatrix c(na * nb);
  for (int ia = 0; ia < na; ++ia)
    for (int ja = 0; ja < na; ++ja) {
      const cplx f = a(ia, ja);
      if (f == cplx{}) continue;
      for (int ib = 0; ib < nb; ++ib)
        for (int jb = 0; jb < nb; ++jb)
          c(ia * nb + ib, ja * nb + jb) = f * b(ib, jb);
    }
  return c;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

ComplexMatrix conjugate(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b * dagger(a);
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.dim() < 1) throw std::invalid_argument("UnitaryMatrix: empty matrix");
  const ComplexMatrix gram = dagger(m_) * m_;
  const double err = (gram - ComplexMatrix::identity(m_.dim())).max_abs();
  if (!(err <= tol))
    throw std::invalid_argument("UnitaryMatrix: ||U†U - I||_max = " + std::to_string(err));
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.dim() < 1) throw std::invalid_argument("DensityMatrix: empty matrix");
  if (!m_.all_finite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
  const double herm = (m_ - dagger(m_)).max_abs();
  if (!(herm <= kHermitianTol))
    throw std::invalid_argument("DensityMatrix: ||rho - rho†||_max = " + std::to_string(herm));
  const double tr_err = std::abs(m_.trace() - cplx{1.0, 0.0});
  if (!(tr_err <= kTraceTol))
    throw std::invalid_argument("DensityMatrix: |Tr rho - 1| = " + std::to_string(tr_err));
  const auto eig = eig_hermitian(m_);
  if (!(eig.values.front() >= -kPsdTol))
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(eig.values.front()));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

DensityMatrix evolve(const DensityMatrix& rho, const UnitaryMatrix& u) {
  if (rho.dim() != u.dim()) throw std::invalid_argument("evolve: dims differ");
  return DensityMatrix(conjugate(u.matrix(), rho.matrix()));
}

}  // namespace parrondo::linalg
