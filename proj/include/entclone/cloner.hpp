// Covariant 1 -> 2 cloner of d x d bipartite states.
//
// The cloner is the joint state |S> = sum s_ijkl |i>_R |j>_a |k>_b |l>_anc over
// reference, clone a, clone b and ancilla, each a d x d system. The rank-4
// tensor is the invariant ansatz
//
//   s_ijkl = A [iA=jA][kA=lA][iB=jB][kB=lB] + B [iA=jA][kA=lA][iB=kB][jB=lB]
//          + C [iA=kA][jA=lA][iB=kB][jB=lB] + D [iA=kA][jA=lA][iB=jB][kB=lB]
//
// and cloning an input n is the projection chi_jkl = sum_i s_ijkl n_i.
#pragma once

#include "entclone/densekit.hpp"

#include <concepts>

namespace entclone {

struct ClonerCoeffs {
  int dim = 2;
  cplx a{};
  cplx b{};
  cplx c{};
  cplx d{};

  static ClonerCoeffs general(int dim, cplx a, cplx b, cplx c, cplx d);
  /// A = C, B = D.
  static ClonerCoeffs symmetric(int dim, cplx a, cplx b);
  /// Fidelity-optimal symmetric cloner.
  static ClonerCoeffs optimal(int dim);
  /// Independent universal cloners on each party: A = B = C = D = 1/(2(d+1)).
  static ClonerCoeffs local(int dim);

  bool is_symmetric() const { return a == c && b == d; }
  bool is_normalized() const;
};

/// Pure d x d input, composite index i = iA*d + iB.
class BipartiteState {
 public:
  BipartiteState(int d, CVector amplitudes);

  static BipartiteState canonical_me(int d);
  static BipartiteState product(const CVector& u, const CVector& v);
  /// Normalizes a nonzero vector.
  static BipartiteState normalized(int d, const CVector& amplitudes);
  static BipartiteState haar_random(int d, Rng& rng);

  int d() const { return d_; }
  const CVector& amplitudes() const { return amplitudes_; }
  BipartiteState transformed(const LocalUnitary& u) const;

 private:
  int d_;
  CVector amplitudes_;
};

/// Clones and ancilla after projecting the reference; chi index j*d^4 + k*d^2 + l
/// with j = clone a, k = clone b, l = ancilla.
struct CloneOutput {
  int d = 2;
  CVector chi;
};

/// Tensor element with range-checked composite indices.
cplx tensor_element(const ClonerCoeffs& c, int i, int j, int k, int l);

namespace detail {

inline cplx tensor_element_unchecked(const ClonerCoeffs& c, int i, int j, int k, int l) {
  const int d = c.dim;
  const int ia = i / d, ib = i % d;
  const int ja = j / d, jb = j % d;
  const int ka = k / d, kb = k % d;
  const int la = l / d, lb = l % d;
  cplx s{};
  if (ia == ja && ka == la) {
    if (ib == jb && kb == lb) s += c.a;
    if (ib == kb && jb == lb) s += c.b;
  }
  if (ia == ka && ja == la) {
    if (ib == kb && jb == lb) s += c.c;
    if (ib == jb && kb == lb) s += c.d;
  }
  return s;
}

}  // namespace detail

template <typename F>
concept RankFourTensor = std::invocable<F, int, int, int, int> &&
                         std::convertible_to<std::invoke_result_t<F, int, int, int, int>, cplx>;

/// chi_jkl = sum_i s(i,j,k,l) n_i for an arbitrary tensor callable over composite indices.
template <RankFourTensor Tensor>
CloneOutput apply_tensor(int d, Tensor&& s, const BipartiteState& input) {
  if (input.d() != d) throw DimensionError("apply: cloner and input dimensions differ");
  const int n = d * d;
  CloneOutput out{d, CVector::Zero(static_cast<Eigen::Index>(n) * n * n)};
  const CVector& amp = input.amplitudes();
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        cplx acc{};
        for (int i = 0; i < n; ++i) {
          if (amp(i) != cplx{}) acc += s(i, j, k, l) * amp(i);
        }
        out.chi((static_cast<Eigen::Index>(j) * n + k) * n + l) = acc;
      }
    }
  }
  return out;
}

CloneOutput apply(const ClonerCoeffs& c, const BipartiteState& input);

/// Reduced state of clone a (trace over clone b and ancilla).
DensityMatrix clone_a(const CloneOutput& out);
/// Reduced state of clone b (trace over clone a and ancilla).
DensityMatrix clone_b(const CloneOutput& out);

/// <target| rho |target>.
double fidelity(const DensityMatrix& rho, const BipartiteState& target);

/// 2(|A|^2+|B|^2)(d^2+1) + 8d Re(A B*); equals |chi|^2 for any normalized input.
double normalization_lhs(const ClonerCoeffs& c);

/// Clone fidelity of the canonical maximally entangled input.
double fidelity_closed_form(const ClonerCoeffs& c);

/// Isotropic weights of the clone of a maximally entangled input:
/// rho_a = projector * |Phi><Phi| + identity * 1.
struct IsotropicWeights {
  double projector = 0.0;
  double identity = 0.0;
};
IsotropicWeights me_clone_weights(const ClonerCoeffs& c);

/// Joint operator of reference and clone a, dims {R_A, R_B, a_A, a_B}, unnormalized.
DensityMatrix reference_clone_operator(const ClonerCoeffs& c);

/// Scalar weights of the clone of a product input rhoA (x) rhoB:
/// identity * 1(x)1 + product * rhoA(x)rhoB + marginal * (rhoA(x)1 + 1(x)rhoB).
struct ProductCloneWeights {
  double identity = 0.0;
  double product = 0.0;
  double marginal = 0.0;
};
ProductCloneWeights product_clone_weights(const ClonerCoeffs& c);

DensityMatrix clone_of_product(const ClonerCoeffs& c, const CMatrix& rho_a, const CMatrix& rho_b);

}  // namespace entclone
