#include "entclone/cloner.hpp"

#include "entclone/formulas.hpp"

#include <cmath>

namespace entclone {

namespace {

void require_dim(int d) {
  if (d < 2) throw DimensionError("cloner dimension must be at least 2");
}

void require_symmetric(const ClonerCoeffs& c, const char* what) {
  if (!c.is_symmetric()) throw std::invalid_argument(std::string(what) + ": coefficients are not symmetric");
}

// Unit-trace flag only when the trace actually is 1; unnormalized coefficients
// still produce valid (scaled) PSD operators.
DensityMatrix state_or_operator(DimList dims, CMatrix m) {
  m = 0.5 * (m + m.adjoint()).eval();
  const bool unit = std::abs(m.trace().real() - 1.0) <= 1e-10;
  return {std::move(dims), std::move(m), unit ? DensityMatrix::Trace::unit : DensityMatrix::Trace::unnormalized};
}

double re_conj_a_b(const ClonerCoeffs& c) { return (std::conj(c.a) * c.b).real(); }

}  // namespace

ClonerCoeffs ClonerCoeffs::general(int dim, cplx a, cplx b, cplx c, cplx d) {
  require_dim(dim);
  return {dim, a, b, c, d};
}

ClonerCoeffs ClonerCoeffs::symmetric(int dim, cplx a, cplx b) { return general(dim, a, b, a, b); }

ClonerCoeffs ClonerCoeffs::optimal(int dim) {
  const CoefficientPair ab = optimal_coefficients(dim);
  return symmetric(dim, ab.a, ab.b);
}

ClonerCoeffs ClonerCoeffs::local(int dim) {
  require_dim(dim);
  const double a = 1.0 / (2.0 * (dim + 1.0));
  return general(dim, a, a, a, a);
}

bool ClonerCoeffs::is_normalized() const {
  return is_symmetric() && std::abs(normalization_lhs(*this) - 1.0) <= 1e-12;
}

BipartiteState::BipartiteState(int d, CVector amplitudes) : d_(d), amplitudes_(std::move(amplitudes)) {
  require_dim(d_);
  if (amplitudes_.size() != static_cast<Eigen::Index>(d_) * d_) {
    throw DimensionError("BipartiteState: amplitude count must be d^2");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) throw std::invalid_argument("BipartiteState: not normalized");
}

BipartiteState BipartiteState::canonical_me(int d) { return {d, maximally_entangled(d)}; }

BipartiteState BipartiteState::product(const CVector& u, const CVector& v) {
  if (u.size() != v.size()) throw DimensionError("BipartiteState::product: factor dimensions differ");
  return {static_cast<int>(u.size()), kron(u, v)};
}

BipartiteState BipartiteState::normalized(int d, const CVector& amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw std::invalid_argument("BipartiteState: zero vector");
  return {d, amplitudes / norm};
}

BipartiteState BipartiteState::haar_random(int d, Rng& rng) {
  CMatrix u = haar_unitary(d * d, rng);
  return normalized(d, u.col(0));
}

BipartiteState BipartiteState::transformed(const LocalUnitary& u) const {
  if (u.d() != d_) throw DimensionError("BipartiteState: local unitary dimension differs");
  return normalized(d_, u.full() * amplitudes_);
}

cplx tensor_element(const ClonerCoeffs& c, int i, int j, int k, int l) {
  const int n = c.dim * c.dim;
  for (int x : {i, j, k, l}) {
    if (x < 0 || x >= n) throw std::out_of_range("tensor_element: composite index out of range");
  }
  return detail::tensor_element_unchecked(c, i, j, k, l);
}

CloneOutput apply(const ClonerCoeffs& c, const BipartiteState& input) {
  return apply_tensor(
      c.dim, [&c](int i, int j, int k, int l) { return detail::tensor_element_unchecked(c, i, j, k, l); }, input);
}

DensityMatrix clone_a(const CloneOutput& out) {
  const Eigen::Index n = static_cast<Eigen::Index>(out.d) * out.d;
  if (out.chi.size() != n * n * n) throw DimensionError("clone_a: output length must be d^6");
  // Column j holds chi[j, k, l] over the flattened (k, l).
  const Eigen::Map<const CMatrix> y(out.chi.data(), n * n, n);
  return state_or_operator({out.d, out.d}, y.transpose() * y.conjugate());
}

DensityMatrix clone_b(const CloneOutput& out) {
  const Eigen::Index n = static_cast<Eigen::Index>(out.d) * out.d;
  if (out.chi.size() != n * n * n) throw DimensionError("clone_b: output length must be d^6");
  CMatrix rho = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // Column k of block j holds chi[j, k, l] over l.
    const Eigen::Map<const CMatrix> z(out.chi.data() + j * n * n, n, n);
    rho.noalias() += z.transpose() * z.conjugate();
  }
  return state_or_operator({out.d, out.d}, std::move(rho));
}

double fidelity(const DensityMatrix& rho, const BipartiteState& target) {
  if (rho.dims() != DimList{target.d(), target.d()}) throw DimensionError("fidelity: dimension mismatch");
  const CVector& t = target.amplitudes();
  return t.dot(rho.matrix() * t).real();
}

double normalization_lhs(const ClonerCoeffs& c) {
  require_symmetric(c, "normalization_lhs");
  const double d = c.dim;
  return 2.0 * (std::norm(c.a) + std::norm(c.b)) * (d * d + 1.0) + 8.0 * d * re_conj_a_b(c);
}

double fidelity_closed_form(const ClonerCoeffs& c) {
  require_symmetric(c, "fidelity_closed_form");
  const double d = c.dim;
  return std::norm(c.a) * (d * d + 3.0) + 4.0 * std::norm(c.b) + 4.0 * re_conj_a_b(c) * (d * d + 1.0) / d;
}

IsotropicWeights me_clone_weights(const ClonerCoeffs& c) {
  require_symmetric(c, "me_clone_weights");
  const double d = c.dim;
  const double a2 = std::norm(c.a);
  const double b2 = std::norm(c.b);
  const double re = re_conj_a_b(c);
  return {(d * d + 2.0) * a2 + 2.0 * b2 + 4.0 * d * re, a2 + 2.0 * b2 + 4.0 / d * re};
}

ProductCloneWeights product_clone_weights(const ClonerCoeffs& c) {
  require_symmetric(c, "product_clone_weights");
  const double d = c.dim;
  const double a2 = std::norm(c.a);
  const double b2 = std::norm(c.b);
  const double re = re_conj_a_b(c);
  return {a2, (d * d + 2.0) * a2 + 2.0 * b2 + 4.0 * d * re, d * b2 + 2.0 * re};
}

DensityMatrix reference_clone_operator(const ClonerCoeffs& c) {
  const ProductCloneWeights w = product_clone_weights(c);
  const int d = c.dim;
  const double dd = d;
  const double w_proj = dd * dd * w.product;
  const double w_marg = dd * w.marginal;

  const Eigen::Index n = static_cast<Eigen::Index>(d) * d * d * d;
  CMatrix s = CMatrix::Zero(n, n);
  auto digits = [d](Eigen::Index x, int& ra, int& rb, int& aa, int& ab) {
    ab = static_cast<int>(x % d);
    aa = static_cast<int>((x / d) % d);
    rb = static_cast<int>((x / (d * d)) % d);
    ra = static_cast<int>(x / (d * d * d));
  };
  for (Eigen::Index r = 0; r < n; ++r) {
    int ra, rb, aa, ab;
    digits(r, ra, rb, aa, ab);
    for (Eigen::Index col = 0; col < n; ++col) {
      int ra2, rb2, aa2, ab2;
      digits(col, ra2, rb2, aa2, ab2);
      // |phi><phi| on (R_X, a_X) and the identity on the same pair.
      const double phi_a = (ra == aa && ra2 == aa2) ? 1.0 / dd : 0.0;
      const double phi_b = (rb == ab && rb2 == ab2) ? 1.0 / dd : 0.0;
      const double id_a = (ra == ra2 && aa == aa2) ? 1.0 : 0.0;
      const double id_b = (rb == rb2 && ab == ab2) ? 1.0 : 0.0;
      const double v = w.identity * id_a * id_b + w_proj * phi_a * phi_b + w_marg * (phi_a * id_b + id_a * phi_b);
      if (v != 0.0) s(r, col) = v;
    }
  }
  return {{d, d, d, d}, std::move(s), DensityMatrix::Trace::unnormalized};
}

DensityMatrix clone_of_product(const ClonerCoeffs& c, const CMatrix& rho_a, const CMatrix& rho_b) {
  const int d = c.dim;
  // Validates Hermitian, PSD and unit trace for each factor.
  const DensityMatrix ra({d}, rho_a);
  const DensityMatrix rb({d}, rho_b);
  const ProductCloneWeights w = product_clone_weights(c);
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix rho = w.identity * kron(id, id) + w.product * kron(ra.matrix(), rb.matrix()) +
                w.marginal * (kron(ra.matrix(), id) + kron(id, rb.matrix()));
  return state_or_operator({d, d}, std::move(rho));
}

}  // namespace entclone
