#include "entclone/verify.hpp"

#include "entclone/formulas.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace entclone;

TEST(brute_force_optimum, two_and_three_dimensions) {
  const OptimumResult r2 = brute_force_optimum(2);
  EXPECT_NEAR(r2.fidelity, (5.0 + std::sqrt(13.0)) / 12.0, 1e-9);
  EXPECT_NEAR(r2.fidelity, 0.717136, 1e-5);
  const OptimumResult r3 = brute_force_optimum(3);
  EXPECT_NEAR(r3.fidelity, optimal_fidelity(3), 1e-9);
  EXPECT_NEAR(r3.fidelity, 0.601926, 1e-6);
}

TEST(brute_force_optimum, agrees_with_eigen_solution) {
  for (int d = 2; d <= 6; ++d) {
    const OptimumResult r = brute_force_optimum(d);
    EXPECT_NEAR(normalization_lhs(ClonerCoeffs::symmetric(d, r.a, r.b)), 1.0, 1e-10);
    EXPECT_NEAR(r.fidelity, optimal_fidelity(d), 1e-9);
    const CoefficientPair ab = optimal_coefficients(d);
    const double sign = r.a * ab.a >= 0 ? 1.0 : -1.0;
    EXPECT_NEAR(sign * r.a, ab.a, 1e-8) << d;
    EXPECT_NEAR(sign * r.b, ab.b, 1e-8) << d;
  }
}

TEST(check_covariance, optimal_cloner_is_covariant) {
  for (int d = 2; d <= 4; ++d) EXPECT_LE(check_covariance(ClonerCoeffs::optimal(d), 100, 5), 1e-10) << d;
}

TEST(check_covariance, identity_unitary_gives_zero) {
  const ClonerCoeffs c = ClonerCoeffs::optimal(3);
  auto s = [&c](int i, int j, int k, int l) { return tensor_element(c, i, j, k, l); };
  EXPECT_LE(covariance_deviation(3, s, LocalUnitary::identity(3)), 1e-14);
}

TEST(check_covariance, transpose_pairing_breaks_covariance) {
  for (int d = 2; d <= 4; ++d) {
    EXPECT_GT(check_covariance_tensor(d, NonCovariantTensor{ClonerCoeffs::optimal(d), 0.1}, 20, 5), 1e-3) << d;
  }
}

TEST(check_covariance, every_ansatz_term_is_invariant) {
  // Perturbing D alone stays inside the invariant family.
  for (int d = 2; d <= 3; ++d) {
    const ClonerCoeffs opt = ClonerCoeffs::optimal(d);
    const ClonerCoeffs shifted = ClonerCoeffs::general(d, opt.a, opt.b, opt.c, opt.d + 0.1);
    EXPECT_LE(check_covariance(shifted, 20, 5), 1e-10);
  }
}

TEST(check_ppt, optimal_and_local_cloners) {
  for (int d = 2; d <= 6; ++d) {
    EXPECT_GE(check_ppt(ClonerCoeffs::optimal(d)), -1e-9) << d;
    EXPECT_GE(check_ppt(ClonerCoeffs::local(d)), -1e-9) << d;
  }
}

TEST(check_ppt, entangled_projector_negative_control) {
  for (int d = 2; d <= 3; ++d) {
    // Entangled across the {0,2} | {1,3} cut.
    const CVector phi = kron(maximally_entangled(d), maximally_entangled(d));
    const DensityMatrix proj({d, d, d, d}, phi * phi.adjoint());
    EXPECT_LT(ppt_min_eigenvalue(proj, {1, 3}), -1e-3);
  }
}

TEST(brute_force_reference_clone_operator, matches_closed_form) {
  for (int d = 2; d <= 4; ++d) {
    for (const ClonerCoeffs& c : {ClonerCoeffs::optimal(d), ClonerCoeffs::local(d)}) {
      EXPECT_LT(max_abs(brute_force_reference_clone_operator(c).matrix() - reference_clone_operator(c).matrix()),
                1e-12)
          << d;
    }
  }
}

TEST(check_isotropy, round_trip_and_clones) {
  const IsotropyCheck iso = check_isotropy(isotropic_state({3, 0.73}), 3);
  EXPECT_NEAR(iso.fidelity, 0.73, 1e-14);
  EXPECT_LE(iso.residual, 1e-14);
  for (int d = 2; d <= 5; ++d) {
    const DensityMatrix rho = clone_a(apply(ClonerCoeffs::optimal(d), BipartiteState::canonical_me(d)));
    EXPECT_LE(check_isotropy(rho, d).residual, 1e-12) << d;
    const int n = d * d;
    const IsotropyCheck mixed = check_isotropy(DensityMatrix({d, d}, CMatrix::Identity(n, n) / n), d);
    EXPECT_NEAR(mixed.fidelity, 1.0 / n, 1e-15);
    EXPECT_LE(mixed.residual, 1e-15);
  }
}

TEST(check_isotropy, detects_non_isotropic_states) {
  CMatrix rho = CMatrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  EXPECT_GT(check_isotropy(DensityMatrix({2, 2}, rho), 2).residual, 0.1);
}

TEST(product_projector_weights, reconstruct_pure_product_clone) {
  Rng rng(40);
  for (int d = 2; d <= 4; ++d) {
    const ClonerCoeffs c = ClonerCoeffs::optimal(d);
    const ProductProjectorWeights w = product_projector_weights(c);
    const CVector u = haar_unitary(d, rng).col(0);
    const CVector v = haar_unitary(d, rng).col(0);
    const CMatrix pu = u * u.adjoint(), pv = v * v.adjoint();
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix qu = id - pu, qv = id - pv;
    const CMatrix expected = w.both_projector * kron(pu, pv) + w.one_projector * (kron(pu, qv) + kron(qu, pv)) +
                             w.both_complement * kron(qu, qv);
    EXPECT_LT(max_abs(clone_of_product(c, pu, pv).matrix() - expected), 1e-14);
  }
}

TEST(check_separability, optimal_cloner) {
  for (int d = 2; d <= 6; ++d) {
    const SeparabilityCheck s = check_separability(ClonerCoeffs::optimal(d), 20, 7);
    EXPECT_GE(s.certificate_min_weight, 0.0) << d;
    EXPECT_LE(s.simulation_max_dev, 1e-12) << d;
    // The marginal weight d|B|^2 + 2Re(A*B) is negative at the optimum.
    EXPECT_LT(s.min_weight, 0.0) << d;
    EXPECT_NEAR(s.min_weight, product_clone_weights(ClonerCoeffs::optimal(d)).marginal, 0.0);
  }
}

TEST(check_separability, local_cloner) {
  for (int d = 2; d <= 8; ++d) {
    const SeparabilityCheck s = check_separability(ClonerCoeffs::local(d), d <= 5 ? 5 : 0, 7);
    EXPECT_GE(s.min_weight, 0.0) << d;
    EXPECT_GE(s.certificate_min_weight, 0.0) << d;
    EXPECT_LE(s.simulation_max_dev, 1e-12) << d;
  }
}

TEST(mixture_linearity, separable_mixtures) {
  for (int d = 2; d <= 3; ++d) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      EXPECT_LE(mixture_linearity_deviation(ClonerCoeffs::optimal(d), 3, seed), 1e-12) << d;
    }
  }
}

TEST(simulate_mixed_clone, pure_input_matches_apply) {
  Rng rng(41);
  const BipartiteState in = BipartiteState::haar_random(3, rng);
  const ClonerCoeffs c = ClonerCoeffs::optimal(3);
  const CMatrix sigma = in.amplitudes() * in.amplitudes().adjoint();
  EXPECT_LT(max_abs(simulate_mixed_clone(c, sigma).matrix() - clone_a(apply(c, in)).matrix()), 1e-12);
}

TEST(isotropic_clone_fidelity, never_exceeds_input) {
  for (int d = 2; d <= 3; ++d) {
    const ClonerCoeffs c = ClonerCoeffs::optimal(d);
    const double lo = 1.0 / (d * d);
    EXPECT_NEAR(isotropic_clone_fidelity(c, lo), lo, 1e-12);
    EXPECT_NEAR(isotropic_clone_fidelity(c, 1.0), optimal_fidelity(d), 1e-12);
    for (int k = 1; k <= 9; ++k) {
      const double f = 0.1 * k;
      if (f < lo) continue;
      EXPECT_LE(isotropic_clone_fidelity(c, f), f + 1e-10) << d << " " << f;
    }
  }
  EXPECT_THROW(isotropic_clone_fidelity(ClonerCoeffs::optimal(2), 0.1), std::domain_error);
}

TEST(run_verification, passes_and_is_reproducible) {
  VerifyOptions opts;
  opts.trials = 20;
  opts.seed = 99;
  for (int d = 2; d <= 3; ++d) {
    const VerifyReport a = run_verification(d, opts);
    const VerifyReport b = run_verification(d, opts);
    EXPECT_TRUE(a.all_pass()) << d;
    EXPECT_EQ(a.covariance_max_dev, b.covariance_max_dev);
    EXPECT_EQ(a.trace_dev, b.trace_dev);
    EXPECT_EQ(a.product_clone_dev, b.product_clone_dev);
    EXPECT_EQ(a.ppt_min_eig, b.ppt_min_eig);
  }
  EXPECT_THROW(run_verification(7, opts), DimensionError);
}

TEST(run_verification, broken_tensor_fails_covariance_only) {
  VerifyOptions opts;
  opts.trials = 10;
  opts.inject_broken = true;
  const VerifyReport r = run_verification(2, opts);
  EXPECT_EQ(r.failures(), std::vector<std::string>{"check_covariance"});
}

TEST(run_verification, pass_flags_follow_tolerances) {
  VerifyOptions opts;
  opts.trials = 5;
  VerifyReport r = run_verification(2, opts);
  ASSERT_TRUE(r.pass().ppt);
  r.tol.ppt = 1e-9;
  r.ppt_min_eig = -2e-9;
  EXPECT_FALSE(r.pass().ppt);
  EXPECT_EQ(r.failures(), std::vector<std::string>{"check_ppt"});
}
