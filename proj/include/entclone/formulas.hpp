// Closed-form scalar results for d x d entanglement cloners and isotropic states.
//
// Here d is the dimension of each party, so cloners over the whole input act
// in d^2 dimensions.
#pragma once

#include "entclone/densekit.hpp"

#include <string_view>

namespace entclone {

/// Best clone fidelity over all covariant symmetric cloners of d x d maximally entangled inputs.
double optimal_fidelity(int d);

struct CoefficientPair {
  double a = 0.0;
  double b = 0.0;
};

/// Maximizer of the clone fidelity on the normalization ellipse, from the top
/// generalized eigenvector of the (fidelity, normalization) quadratic forms.
/// Sign convention: a > 0.
CoefficientPair optimal_coefficients(int d);

/// Fidelity and normalization quadratic forms in the real coordinates (A, B).
Eigen::Matrix2d fidelity_form(int d);
Eigen::Matrix2d normalization_form(int d);

struct PrintedCoefficients {
  double a = 0.0;
  double b = 0.0;
  double y = 0.0;
};

/// Literal transcription of the published (A, B, Y(d)) expressions. They do not
/// satisfy the normalization constraint; kept for comparison only.
PrintedCoefficients printed_optimal_coefficients(int d);

/// Universal cloner in d^2 dimensions.
double universal_fidelity(int d);
/// Optimal real-state cloner in d^2 dimensions.
double real_fidelity(int d);
/// Independent universal d-dimensional cloners on each party.
double local_fidelity(int d);

struct IsotropicParams {
  int d = 2;
  double fidelity = 0.0;
};

/// ((1-F)/(d^2-1)) (1 - |Phi><Phi|) + F |Phi><Phi|, Phi the canonical maximally entangled state.
DensityMatrix isotropic_state(const IsotropicParams& p);

double binary_entropy(double p);
double isotropic_gamma(double fidelity, int d);
double isotropic_r1(double fidelity, int d);

enum class EofBranch { zero, middle, linear };

std::string_view to_string(EofBranch b);

struct EofPoint {
  int d = 2;
  double fidelity = 0.0;
  double eof = 0.0;
  EofBranch branch = EofBranch::zero;
};

/// Entanglement of formation (bits) of the isotropic state with the given fidelity.
/// For d = 2 the middle branch covers all of [1/2, 1].
EofPoint eof_isotropic(const IsotropicParams& p);

/// Boundary 4(d-1)/d^2 between the middle and linear branches.
double crossover_fidelity(int d);

/// log2 d, the entanglement of a d x d maximally entangled input.
double input_entanglement(int d);

}  // namespace entclone
