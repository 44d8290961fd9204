// Dense complex linear-algebra helpers for small multipartite systems.
//
// Subsystems are ordered most-significant first: for dims {d0, d1, ..., dn}
// a basis label (x0, x1, ..., xn) flattens to ((x0*d1 + x1)*d2 + ...) + xn.
// In particular a bipartite label (xA, xB) of a d x d system is xA*d + xB.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace entclone {

using cplx = std::complex<double>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Ordered subsystem dimensions; every entry is at least 2.
using DimList = std::vector<int>;
/// Subsystem positions into a DimList.
using IndexSet = std::vector<int>;

using Rng = std::mt19937_64;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Product of the dimensions; throws DimensionError on an entry below 2.
Eigen::Index total_dim(const DimList& dims);

namespace detail {

// Mixed-radix digit bookkeeping shared by partial_trace / partial_transpose.
class Layout {
 public:
  explicit Layout(const DimList& dims);

  int subsystems() const { return static_cast<int>(dims_.size()); }
  Eigen::Index size() const { return size_; }
  int dim(int s) const { return dims_[s]; }
  Eigen::Index stride(int s) const { return strides_[s]; }
  int digit(Eigen::Index flat, int s) const {
    return static_cast<int>((flat / strides_[s]) % dims_[s]);
  }

  // Sorted, duplicate-free copy of `which`; throws on out-of-range entries.
  IndexSet checked(const IndexSet& which) const;

 private:
  DimList dims_;
  std::vector<Eigen::Index> strides_;
  Eigen::Index size_ = 1;
};

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, Eigen::Index side) {
  if (m.rows() != side || m.cols() != side) {
    throw DimensionError("operator side does not match the product of the subsystem dimensions");
  }
}

}  // namespace detail

/// Kronecker product: (a (x) b)(i*rb + k, j*cb + l) = a(i,j) * b(k,l).
template <typename DA, typename DB>
DenseMatrix<typename DA::Scalar> kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  static_assert(std::is_same_v<typename DA::Scalar, typename DB::Scalar>,
                "kron operands must share a scalar type");
  const Eigen::Index rb = b.rows();
  const Eigen::Index cb = b.cols();
  DenseMatrix<typename DA::Scalar> out(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

/// Reduced operator on the subsystems listed in `keep` (kept in their original order).
template <typename Derived>
DenseMatrix<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& rho,
                                                    const DimList& dims, const IndexSet& keep) {
  const detail::Layout layout(dims);
  detail::require_square(rho, layout.size());
  const IndexSet kept = layout.checked(keep);

  IndexSet traced;
  for (int s = 0; s < layout.subsystems(); ++s) {
    if (std::find(kept.begin(), kept.end(), s) == kept.end()) traced.push_back(s);
  }

  // Flat offsets into the full space of every kept / traced digit configuration.
  auto offsets = [&](const IndexSet& subs) {
    std::vector<Eigen::Index> off{0};
    for (int s : subs) {
      std::vector<Eigen::Index> next;
      next.reserve(off.size() * layout.dim(s));
      for (Eigen::Index base : off) {
        for (int x = 0; x < layout.dim(s); ++x) next.push_back(base + x * layout.stride(s));
      }
      off = std::move(next);
    }
    return off;
  };
  const auto keep_off = offsets(kept);
  const auto trace_off = offsets(traced);

  const auto n = static_cast<Eigen::Index>(keep_off.size());
  DenseMatrix<typename Derived::Scalar> out = DenseMatrix<typename Derived::Scalar>::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      typename Derived::Scalar acc(0);
      for (Eigen::Index t : trace_off) acc += rho(keep_off[r] + t, keep_off[c] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

/// Transposes the row/column digits of the subsystems in `which`, leaving the rest alone.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> partial_transpose(const Eigen::MatrixBase<Derived>& rho,
                                                        const DimList& dims, const IndexSet& which) {
  const detail::Layout layout(dims);
  detail::require_square(rho, layout.size());
  const IndexSet subs = layout.checked(which);

  const Eigen::Index n = layout.size();
  DenseMatrix<typename Derived::Scalar> out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      Eigen::Index rr = r;
      Eigen::Index cc = c;
      for (int s : subs) {
        const Eigen::Index dr = layout.digit(r, s);
        const Eigen::Index dc = layout.digit(c, s);
        rr += (dc - dr) * layout.stride(s);
        cc += (dr - dc) * layout.stride(s);
      }
      out(rr, cc) = rho(r, c);
    }
  }
  return out;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// max |M - M^dagger| <= tol * max|M|.
bool is_hermitian(const CMatrix& m, double rel_tol = 1e-12);

/// Ascending eigenvalues of a Hermitian matrix; rejects matrices that are not Hermitian
/// within 1e-12 relative to the largest entry.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// Canonical maximally entangled vector sum_i |i>|i> / sqrt(d) on a d x d system.
CVector maximally_entangled(int d);

/// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
/// diagonal of R rotated to be real positive.
CMatrix haar_unitary(int d, Rng& rng);

/// Dense Hermitian PSD operator with its subsystem layout. Unit trace unless
/// flagged unnormalized (e.g. reference/clone operators that carry their own scale).
class DensityMatrix {
 public:
  enum class Trace { unit, unnormalized };

  DensityMatrix(DimList dims, CMatrix matrix, Trace trace = Trace::unit);

  const DimList& dims() const { return dims_; }
  const CMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  bool unnormalized() const { return trace_ == Trace::unnormalized; }

 private:
  DimList dims_;
  CMatrix matrix_;
  Trace trace_;
};

/// Entropy in bits, with 0 log 0 = 0. Eigenvalues below -1e-9 are rejected.
double von_neumann_entropy(const DensityMatrix& rho);

/// U = UA (x) UB acting on a d x d system.
class LocalUnitary {
 public:
  LocalUnitary(CMatrix ua, CMatrix ub);

  static LocalUnitary identity(int d);
  static LocalUnitary haar(int d, Rng& rng);

  int d() const { return static_cast<int>(ua_.rows()); }
  const CMatrix& ua() const { return ua_; }
  const CMatrix& ub() const { return ub_; }
  CMatrix full() const { return kron(ua_, ub_); }

 private:
  CMatrix ua_;
  CMatrix ub_;
};

}  // namespace entclone
