#include "entclone/densekit.hpp"

#include <algorithm>
#include <cmath>

namespace entclone {

Eigen::Index total_dim(const DimList& dims) {
  if (dims.empty()) throw DimensionError("empty dimension list");
  Eigen::Index n = 1;
  for (int d : dims) {
    if (d < 2) throw DimensionError("subsystem dimension must be at least 2");
    n *= d;
  }
  return n;
}

namespace detail {

Layout::Layout(const DimList& dims) : dims_(dims), strides_(dims.size()) {
  size_ = total_dim(dims_);
  Eigen::Index stride = 1;
  for (int s = subsystems() - 1; s >= 0; --s) {
    strides_[s] = stride;
    stride *= dims_[s];
  }
}

IndexSet Layout::checked(const IndexSet& which) const {
  IndexSet out = which;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int s : out) {
    if (s < 0 || s >= subsystems()) throw DimensionError("subsystem index out of range");
  }
  return out;
}

}  // namespace detail

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  return max_abs(m - m.adjoint()) <= rel_tol * scale;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  if (!is_hermitian(m)) throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

CVector maximally_entangled(int d) {
  if (d < 2) throw DimensionError("maximally_entangled: d must be at least 2");
  CVector phi = CVector::Zero(static_cast<Eigen::Index>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int m = 0; m < d; ++m) phi(m * d + m) = amp;
  return phi;
}

CMatrix haar_unitary(int d, Rng& rng) {
  if (d < 2) throw DimensionError("haar_unitary: d must be at least 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(d, d);
  // Fill column-major in a fixed order so a seed pins the matrix.
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = cplx(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const cplx rkk = r(k, k);
    const double mag = std::abs(rkk);
    if (mag > 0.0) q.col(k) *= rkk / mag;
  }
  return q;
}

DensityMatrix::DensityMatrix(DimList dims, CMatrix matrix, Trace trace)
    : dims_(std::move(dims)), matrix_(std::move(matrix)), trace_(trace) {
  detail::require_square(matrix_, total_dim(dims_));
  const double scale = std::max(1.0, max_abs(matrix_));
  if (max_abs(matrix_ - matrix_.adjoint()) > 1e-12 * scale) {
    throw std::invalid_argument("DensityMatrix: operator is not Hermitian");
  }
  const double tr = matrix_.trace().real();
  if (trace_ == Trace::unit && std::abs(tr - 1.0) > 1e-10) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  // PSD within 1e-10: the shifted operator must admit a Cholesky factor.
  const double shift = 1e-10 * std::max(1.0, std::abs(tr));
  CMatrix shifted = matrix_;
  shifted.diagonal().array() += shift;
  Eigen::LLT<CMatrix> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("DensityMatrix: operator has a negative eigenvalue");
  }
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(rho.matrix())) {
    if (lambda < -1e-9) throw std::invalid_argument("von_neumann_entropy: negative eigenvalue");
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return std::max(0.0, s);
}

namespace {

void require_unitary(const CMatrix& u, const char* what) {
  if (u.rows() != u.cols() || u.rows() < 2) throw DimensionError(what);
  const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  if (max_abs(u.adjoint() * u - id) > 1e-12) {
    throw std::invalid_argument(std::string(what) + " is not unitary");
  }
}

}  // namespace

LocalUnitary::LocalUnitary(CMatrix ua, CMatrix ub) : ua_(std::move(ua)), ub_(std::move(ub)) {
  require_unitary(ua_, "LocalUnitary: UA");
  require_unitary(ub_, "LocalUnitary: UB");
  if (ua_.rows() != ub_.rows()) throw DimensionError("LocalUnitary: UA and UB differ in dimension");
}

LocalUnitary LocalUnitary::identity(int d) {
  return {CMatrix::Identity(d, d), CMatrix::Identity(d, d)};
}

LocalUnitary LocalUnitary::haar(int d, Rng& rng) {
  CMatrix ua = haar_unitary(d, rng);
  CMatrix ub = haar_unitary(d, rng);
  return {std::move(ua), std::move(ub)};
}

}  // namespace entclone
