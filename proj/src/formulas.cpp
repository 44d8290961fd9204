#include "entclone/formulas.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace entclone {

namespace {

void require_dim(int d, const char* what) {
  if (d < 2) throw DimensionError(std::string(what) + ": d must be at least 2");
}

void require_fidelity(double f, const char* what) {
  if (!(f >= 0.0 && f <= 1.0)) throw std::domain_error(std::string(what) + ": fidelity outside [0, 1]");
}

}  // namespace

double optimal_fidelity(int d) {
  require_dim(d, "optimal_fidelity");
  const double d2 = static_cast<double>(d) * d;
  const double ratio = (d2 - 2.0) / (d2 - 1.0);
  return 0.25 * ((d2 + 1.0) / (d2 - 1.0) + std::sqrt(1.0 + 4.0 / d2 * ratio * ratio));
}

Eigen::Matrix2d fidelity_form(int d) {
  require_dim(d, "fidelity_form");
  const double dd = d;
  const double d2 = dd * dd;
  Eigen::Matrix2d m;
  m << d2 + 3.0, 2.0 * (d2 + 1.0) / dd,
       2.0 * (d2 + 1.0) / dd, 4.0;
  return m;
}

Eigen::Matrix2d normalization_form(int d) {
  require_dim(d, "normalization_form");
  const double dd = d;
  const double d2 = dd * dd;
  Eigen::Matrix2d n;
  n << 2.0 * (d2 + 1.0), 4.0 * dd,
       4.0 * dd, 2.0 * (d2 + 1.0);
  return n;
}

CoefficientPair optimal_coefficients(int d) {
  const Eigen::Matrix2d m = fidelity_form(d);
  const Eigen::Matrix2d n = normalization_form(d);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> solver(m, n);
  if (solver.info() != Eigen::Success) throw std::runtime_error("optimal_coefficients: eigensolver failed");
  // Eigenvalues ascend; the last column is the constrained maximizer.
  Eigen::Vector2d x = solver.eigenvectors().col(1);
  x /= std::sqrt(x.dot(n * x));
  if (x(0) < 0.0) x = -x;
  return {x(0), x(1)};
}

PrintedCoefficients printed_optimal_coefficients(int d) {
  require_dim(d, "printed_optimal_coefficients");
  const double dd = d;
  const double d2 = dd * dd;
  const double num = (d2 - 2.0) * (d2 - 2.0);
  const double y = std::sqrt(1.0 - num / (d2 * (d2 - 1.0) * (d2 - 1.0) + 4.0 * num));
  const double denom = 2.0 * (d2 - 1.0);
  return {
      (dd * std::sqrt(1.0 + y) - std::sqrt(1.0 - y)) / denom,
      -(dd * std::sqrt(1.0 - y) + std::sqrt(1.0 + y)) / denom,
      y,
  };
}

double universal_fidelity(int d) {
  require_dim(d, "universal_fidelity");
  const double d2 = static_cast<double>(d) * d;
  return 0.5 + 1.0 / (d2 + 1.0);
}

double real_fidelity(int d) {
  require_dim(d, "real_fidelity");
  const double d2 = static_cast<double>(d) * d;
  return 0.5 + (std::sqrt(d2 * d2 + 4.0 * d2 + 20.0) - d2 + 2.0) / (4.0 * (d2 + 2.0));
}

double local_fidelity(int d) {
  require_dim(d, "local_fidelity");
  const double dd = d;
  return 0.25 + (dd + 2.0) / (2.0 * dd * (dd + 1.0));
}

DensityMatrix isotropic_state(const IsotropicParams& p) {
  require_dim(p.d, "isotropic_state");
  require_fidelity(p.fidelity, "isotropic_state");
  const Eigen::Index n = static_cast<Eigen::Index>(p.d) * p.d;
  const CVector phi = maximally_entangled(p.d);
  const CMatrix proj = phi * phi.adjoint();
  const double mixed = (1.0 - p.fidelity) / (static_cast<double>(n) - 1.0);
  CMatrix rho = mixed * (CMatrix::Identity(n, n) - proj) + p.fidelity * proj;
  return {{p.d, p.d}, std::move(rho)};
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double isotropic_gamma(double fidelity, int d) {
  require_dim(d, "isotropic_gamma");
  if (!(fidelity >= 1.0 / d && fidelity <= 1.0)) {
    throw std::domain_error("isotropic_gamma: fidelity outside [1/d, 1]");
  }
  const double root = std::sqrt(fidelity) + std::sqrt((d - 1.0) * (1.0 - fidelity));
  // Rounding can push gamma a hair above 1 at F = 1/d.
  return std::min(1.0, root * root / d);
}

double isotropic_r1(double fidelity, int d) {
  const double g = isotropic_gamma(fidelity, d);
  return binary_entropy(g) + (1.0 - g) * std::log2(d - 1.0);
}

std::string_view to_string(EofBranch b) {
  switch (b) {
    case EofBranch::zero: return "zero";
    case EofBranch::middle: return "middle";
    case EofBranch::linear: return "linear";
  }
  return "unknown";
}

double crossover_fidelity(int d) {
  require_dim(d, "crossover_fidelity");
  const double dd = d;
  return 4.0 * (dd - 1.0) / (dd * dd);
}

EofPoint eof_isotropic(const IsotropicParams& p) {
  require_dim(p.d, "eof_isotropic");
  require_fidelity(p.fidelity, "eof_isotropic");
  const int d = p.d;
  const double f = p.fidelity;
  EofPoint out{d, f, 0.0, EofBranch::zero};
  if (f <= 1.0 / d) return out;
  if (d == 2 || f < crossover_fidelity(d)) {
    out.branch = EofBranch::middle;
    out.eof = isotropic_r1(f, d);
    return out;
  }
  const double dd = d;
  out.branch = EofBranch::linear;
  out.eof = dd * std::log2(dd - 1.0) / (dd - 2.0) * (f - 1.0) + std::log2(dd);
  return out;
}

double input_entanglement(int d) {
  require_dim(d, "input_entanglement");
  return std::log2(static_cast<double>(d));
}

}  // namespace entclone
