#include "entclone/verify.hpp"

#include "entclone/formulas.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace entclone {

Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

OptimumResult brute_force_optimum(int d, int grid_points) {
  if (d < 2) throw DimensionError("brute_force_optimum: d must be at least 2");
  if (grid_points < 3) throw std::invalid_argument("brute_force_optimum: grid too small");
  const double dd = d;
  // In u = (A+B)/sqrt2, v = (A-B)/sqrt2 the constraint reads
  // 2(d+1)^2 u^2 + 2(d-1)^2 v^2 = 1.
  const double ru = 1.0 / (std::sqrt(2.0) * (dd + 1.0));
  const double rv = 1.0 / (std::sqrt(2.0) * (dd - 1.0));
  auto point = [&](double theta) {
    const double u = ru * std::cos(theta);
    const double v = rv * std::sin(theta);
    return std::pair{(u + v) / std::sqrt(2.0), (u - v) / std::sqrt(2.0)};
  };
  auto objective = [&](double theta) {
    const auto [a, b] = point(theta);
    return fidelity_closed_form(ClonerCoeffs::symmetric(d, a, b));
  };

  const double step = 2.0 * std::numbers::pi / grid_points;
  int best = 0;
  double best_f = objective(0.0);
  for (int k = 1; k < grid_points; ++k) {
    const double f = objective(k * step);
    if (f > best_f) {
      best_f = f;
      best = k;
    }
  }

  // Golden-section on the bracketing cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (best - 1) * step;
  double hi = (best + 1) * step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  const double theta = 0.5 * (lo + hi);
  const auto [a, b] = point(theta);
  return {a, b, objective(theta)};
}

double check_covariance(const ClonerCoeffs& c, int trials, std::uint64_t seed) {
  auto s = [&c](int i, int j, int k, int l) { return detail::tensor_element_unchecked(c, i, j, k, l); };
  return check_covariance_tensor(c.dim, s, trials, seed);
}

double ppt_min_eigenvalue(const DensityMatrix& op, const IndexSet& which) {
  const CMatrix pt = partial_transpose(op.matrix(), op.dims(), which);
  return hermitian_eigenvalues(pt).front();
}

double check_ppt(const ClonerCoeffs& c) {
  // dims are (R_A, R_B, a_A, a_B)
  return ppt_min_eigenvalue(reference_clone_operator(c), {1, 3});
}

DensityMatrix brute_force_reference_clone_operator(const ClonerCoeffs& c) {
  const int d = c.dim;
  const int n = d * d;
  const Eigen::Index rows = static_cast<Eigen::Index>(n) * n;
  // Row (i, j) of the tensor as a sparse vector over (k, l).
  std::vector<Eigen::Triplet<cplx>> entries;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const cplx s = tensor_element(c, i, j, k, l);
          if (s != cplx{}) entries.emplace_back(i * n + j, k * n + l, s);
        }
      }
    }
  }
  Eigen::SparseMatrix<cplx> t(rows, rows);
  t.setFromTriplets(entries.begin(), entries.end());
  const Eigen::SparseMatrix<cplx> s = t * Eigen::SparseMatrix<cplx>(t.adjoint());
  return {{d, d, d, d}, CMatrix(s), DensityMatrix::Trace::unnormalized};
}

IsotropyCheck check_isotropy(const DensityMatrix& rho, int d) {
  const double f = fidelity(rho, BipartiteState::canonical_me(d));
  const DensityMatrix iso = isotropic_state({d, std::clamp(f, 0.0, 1.0)});
  return {f, max_abs(rho.matrix() - iso.matrix())};
}

double ProductProjectorWeights::min() const { return std::min({both_complement, one_projector, both_projector}); }

ProductProjectorWeights product_projector_weights(const ClonerCoeffs& c) {
  const ProductCloneWeights w = product_clone_weights(c);
  return {w.identity, w.identity + w.marginal, w.identity + w.product + 2.0 * w.marginal};
}

namespace {

CVector haar_vector(int d, Rng& rng) { return haar_unitary(d, rng).col(0); }

}  // namespace

SeparabilityCheck check_separability(const ClonerCoeffs& c, int trials, std::uint64_t seed) {
  const ProductCloneWeights w = product_clone_weights(c);
  SeparabilityCheck out;
  out.min_weight = std::min({w.identity, w.product, w.marginal});
  out.certificate_min_weight = product_projector_weights(c).min();
  for (int t = 0; t < trials; ++t) {
    Rng rng = substream(seed, 2, static_cast<std::uint64_t>(t));
    const CVector u = haar_vector(c.dim, rng);
    const CVector v = haar_vector(c.dim, rng);
    const CMatrix closed = clone_of_product(c, u * u.adjoint(), v * v.adjoint()).matrix();
    const CMatrix simulated = clone_a(apply(c, BipartiteState::product(u, v))).matrix();
    out.simulation_max_dev = std::max(out.simulation_max_dev, max_abs(closed - simulated));
  }
  return out;
}

DensityMatrix simulate_mixed_clone(const ClonerCoeffs& c, const CMatrix& sigma) {
  const int d = c.dim;
  const DensityMatrix input({d, d}, sigma);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(input.matrix());
  const Eigen::Index n = input.dim();
  CMatrix rho = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double p = eig.eigenvalues()(k);
    if (p <= 0.0) continue;
    rho += p * clone_a(apply(c, BipartiteState::normalized(d, eig.eigenvectors().col(k)))).matrix();
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const bool unit = std::abs(rho.trace().real() - 1.0) <= 1e-10;
  return {{d, d}, std::move(rho), unit ? DensityMatrix::Trace::unit : DensityMatrix::Trace::unnormalized};
}

CMatrix random_density(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = cplx(re, im);
    }
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

double mixture_linearity_deviation(const ClonerCoeffs& c, int terms, std::uint64_t seed) {
  const int d = c.dim;
  Rng rng = substream(seed, 3, 0);
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  std::vector<double> p(terms);
  for (double& x : p) x = uniform(rng);
  double total = 0.0;
  for (double x : p) total += x;

  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  CMatrix sigma = CMatrix::Zero(n, n);
  CMatrix expected = CMatrix::Zero(n, n);
  for (int t = 0; t < terms; ++t) {
    const double w = p[t] / total;
    const CMatrix ra = random_density(d, rng);
    const CMatrix rb = random_density(d, rng);
    sigma += w * kron(ra, rb);
    expected += w * clone_of_product(c, ra, rb).matrix();
  }
  sigma = 0.5 * (sigma + sigma.adjoint()).eval();
  return max_abs(simulate_mixed_clone(c, sigma).matrix() - expected);
}

double isotropic_clone_fidelity(const ClonerCoeffs& c, double f_in) {
  const int d = c.dim;
  const int n = d * d;
  if (!(f_in >= 1.0 / n && f_in <= 1.0)) {
    throw std::domain_error("isotropic_clone_fidelity: input fidelity outside [1/d^2, 1]");
  }
  // rho(F) = w |Phi><Phi| + (1 - w) 1/d^2 with w = (F d^2 - 1)/(d^2 - 1).
  const double w = (f_in * n - 1.0) / (n - 1.0);
  const BipartiteState phi = BipartiteState::canonical_me(d);
  CMatrix mixed = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const BipartiteState basis(d, CVector::Unit(n, i));
    mixed += clone_a(apply(c, basis)).matrix();
  }
  mixed /= static_cast<double>(n);
  const CMatrix rho = w * clone_a(apply(c, phi)).matrix() + (1.0 - w) * mixed;
  return phi.amplitudes().dot(rho * phi.amplitudes()).real();
}

VerifyReport::Pass VerifyReport::pass() const {
  Pass p;
  p.covariance = covariance_max_dev <= tol.covariance;
  p.ppt = ppt_min_eig >= -tol.ppt && ppt_min_eig_local >= -tol.ppt;
  p.isotropy = isotropy_residual <= tol.isotropy;
  p.trace = trace_dev <= tol.trace;
  p.oracle = oracle_gap <= tol.oracle;
  p.separability = separability_certificate_min >= 0.0 && product_clone_dev <= tol.product_clone;
  return p;
}

bool VerifyReport::all_pass() const { return failures().empty(); }

std::vector<std::string> VerifyReport::failures() const {
  const Pass p = pass();
  std::vector<std::string> out;
  if (!p.covariance) out.emplace_back("check_covariance");
  if (!p.ppt) out.emplace_back("check_ppt");
  if (!p.isotropy) out.emplace_back("check_isotropy");
  if (!p.trace) out.emplace_back("trace_preservation");
  if (!p.oracle) out.emplace_back("brute_force_optimum");
  if (!p.separability) out.emplace_back("check_separability");
  return out;
}

VerifyReport run_verification(int d, const VerifyOptions& opts) {
  if (d < 2 || d > 6) throw DimensionError("run_verification: d must lie in [2, 6]");
  const ClonerCoeffs opt = ClonerCoeffs::optimal(d);
  VerifyReport r;
  r.d = d;
  r.tol = opts.tol;

  r.covariance_max_dev = opts.inject_broken
                             ? check_covariance_tensor(d, NonCovariantTensor{opt, 0.1}, opts.trials, opts.seed)
                             : check_covariance(opt, opts.trials, opts.seed);
  r.ppt_min_eig = check_ppt(opt);
  r.ppt_min_eig_local = check_ppt(ClonerCoeffs::local(d));
  r.isotropy_residual = check_isotropy(clone_a(apply(opt, BipartiteState::canonical_me(d))), d).residual;

  for (int t = 0; t < opts.trials; ++t) {
    Rng rng = substream(opts.seed, 1, static_cast<std::uint64_t>(t));
    const DensityMatrix rho = clone_a(apply(opt, BipartiteState::haar_random(d, rng)));
    r.trace_dev = std::max(r.trace_dev, std::abs(rho.matrix().trace().real() - 1.0));
  }

  r.oracle_gap = std::abs(brute_force_optimum(d).fidelity - optimal_fidelity(d));

  const SeparabilityCheck sep = check_separability(opt, std::min(opts.trials, 20), opts.seed);
  r.separability_min_weight = sep.min_weight;
  r.separability_certificate_min = sep.certificate_min_weight;
  r.product_clone_dev = sep.simulation_max_dev;
  return r;
}

}  // namespace entclone
