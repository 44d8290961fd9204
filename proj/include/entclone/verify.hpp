// Independent oracles for the cloner: brute-force optimum, covariance sampling,
// PPT spectra, isotropy decomposition and separability of product clones.
#pragma once

#include "entclone/cloner.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace entclone {

/// Deterministic sub-stream `index` of stream `stream` under a master seed.
Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct OptimumResult {
  double a = 0.0;
  double b = 0.0;
  double fidelity = 0.0;
};

/// Maximizes the closed-form clone fidelity over the normalization ellipse in
/// real (A, B): the ellipse is axis-aligned in (A+B, A-B)/sqrt(2), scanned on a
/// uniform angle grid and refined by golden-section search to width 1e-12.
OptimumResult brute_force_optimum(int d, int grid_points = 10000);

/// Symmetric cloner plus eps times the transpose pairing
/// [iA=lA][jA=kA][iB=jB][kB=lB], which is invariant under real but not complex
/// local unitaries.
struct NonCovariantTensor {
  ClonerCoeffs base;
  double eps = 0.1;

  cplx operator()(int i, int j, int k, int l) const {
    const int d = base.dim;
    cplx s = detail::tensor_element_unchecked(base, i, j, k, l);
    if (i / d == l / d && j / d == k / d && i % d == j % d && k % d == l % d) s += eps;
    return s;
  }
};

/// max|clone(U Phi) - U clone(Phi) U^dagger| for one local unitary.
template <RankFourTensor Tensor>
double covariance_deviation(int d, const Tensor& s, const LocalUnitary& u) {
  const BipartiteState phi = BipartiteState::canonical_me(d);
  const CMatrix full = u.full();
  const CMatrix lhs = clone_a(apply_tensor(d, s, phi.transformed(u))).matrix();
  const CMatrix rhs = full * clone_a(apply_tensor(d, s, phi)).matrix() * full.adjoint();
  return max_abs(lhs - rhs);
}

template <RankFourTensor Tensor>
double check_covariance_tensor(int d, const Tensor& s, int trials, std::uint64_t seed) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = substream(seed, 0, static_cast<std::uint64_t>(t));
    worst = std::max(worst, covariance_deviation(d, s, LocalUnitary::haar(d, rng)));
  }
  return worst;
}

double check_covariance(const ClonerCoeffs& c, int trials, std::uint64_t seed);

/// Minimum eigenvalue of the partial transpose over the subsystems `which`.
double ppt_min_eigenvalue(const DensityMatrix& op, const IndexSet& which);

/// Minimum eigenvalue of the reference/clone operator transposed on both B-party components.
double check_ppt(const ClonerCoeffs& c);

/// Sum over clone b and ancilla of s_ijkl conj(s_i'j'kl), by enumerating the tensor.
/// O(d^12); intended for d <= 4.
DensityMatrix brute_force_reference_clone_operator(const ClonerCoeffs& c);

struct IsotropyCheck {
  double fidelity = 0.0;
  double residual = 0.0;
};

IsotropyCheck check_isotropy(const DensityMatrix& rho, int d);

/// Weights of a pure-product clone in the basis {P_u, 1-P_u} (x) {P_v, 1-P_v}:
/// identity (both complements), identity + marginal (one projector),
/// identity + product + 2 marginal (both projectors).
struct ProductProjectorWeights {
  double both_complement = 0.0;
  double one_projector = 0.0;
  double both_projector = 0.0;

  double min() const;
};
ProductProjectorWeights product_projector_weights(const ClonerCoeffs& c);

struct SeparabilityCheck {
  /// min of the three scalar weights of clone_of_product
  double min_weight = 0.0;
  /// min of product_projector_weights; >= 0 certifies separable clones
  double certificate_min_weight = 0.0;
  /// worst max-norm gap between clone_of_product and simulation on random pure products
  double simulation_max_dev = 0.0;
};

SeparabilityCheck check_separability(const ClonerCoeffs& c, int trials, std::uint64_t seed);

/// Clone a of a mixed input, by simulating each eigenvector and mixing.
DensityMatrix simulate_mixed_clone(const ClonerCoeffs& c, const CMatrix& sigma);

/// Random unit-trace PSD d x d matrix (normalized Ginibre G G^dagger).
CMatrix random_density(int d, Rng& rng);

/// |clone(sum p_i rhoA_i (x) rhoB_i) - sum p_i clone_of_product(rhoA_i, rhoB_i)| for a random mixture.
double mixture_linearity_deviation(const ClonerCoeffs& c, int terms, std::uint64_t seed);

/// ME-fidelity of the clone of the isotropic input with fidelity f_in >= 1/d^2,
/// via the clone of Phi mixed with the average clone of the basis states.
double isotropic_clone_fidelity(const ClonerCoeffs& c, double f_in);

struct VerifyTolerances {
  double covariance = 1e-10;
  double ppt = 1e-9;
  double isotropy = 1e-12;
  double trace = 1e-10;
  double oracle = 1e-9;
  double product_clone = 1e-12;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int trials = 100;
  VerifyTolerances tol{};
  // Feeds NonCovariantTensor into the covariance check.
  bool inject_broken = false;
};

struct VerifyReport {
  int d = 2;
  double covariance_max_dev = 0.0;
  double ppt_min_eig = 0.0;
  double ppt_min_eig_local = 0.0;
  double isotropy_residual = 0.0;
  double trace_dev = 0.0;
  double oracle_gap = 0.0;
  double separability_min_weight = 0.0;
  double separability_certificate_min = 0.0;
  double product_clone_dev = 0.0;
  VerifyTolerances tol{};

  struct Pass {
    bool covariance = false;
    bool ppt = false;
    bool isotropy = false;
    bool trace = false;
    bool oracle = false;
    bool separability = false;
  };
  Pass pass() const;
  bool all_pass() const;
  /// Names of the failing checks.
  std::vector<std::string> failures() const;
};

/// Runs every check for the optimal cloner in dimension d (2 <= d <= 6).
VerifyReport run_verification(int d, const VerifyOptions& opts);

}  // namespace entclone
