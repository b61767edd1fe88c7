#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "qwalk/two_particle.hpp"

namespace qwalk {

/// Density operator of one walker. Row/column index is coin * width + (position - window_start).
struct DensityMatrix {
  Eigen::MatrixXcd entries;
  Position window_start = 0;
  std::size_t width = 0;

  Eigen::Index dim() const noexcept { return entries.rows(); }
  Complex trace() const { return entries.trace(); }
  /// Tr(rho^2)
  double purity() const { return (entries * entries).trace().real(); }

  /// Throws unless rho is square, Hermitian and unit-trace within `tol`.
  void validate(double tol = 1e-12) const {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
      throw std::invalid_argument("density matrix must be square and nonempty");
    }
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(trace() - Complex(1.0)) > tol) {
      throw std::invalid_argument("density matrix trace is not 1");
    }
  }
};

/// rho_1 = Tr_2 |psi><psi| over particle 2's coin and position.
///
/// With absorbing boundaries the surviving state is renormalized, so rho_1 is
/// the state conditioned on neither walker having been absorbed.
inline DensityMatrix reduced_density_particle1(const TwoParticleState& state) {
  const std::size_t w = state.width();
  const auto d = static_cast<Eigen::Index>(2 * w);
  // Rows index particle 1 (coin, position); columns particle 2.
  Eigen::MatrixXcd psi(d, d);
  const auto& data = state.data();
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t b = 0; b < w; ++b)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          psi(static_cast<Eigen::Index>(j * w + a), static_cast<Eigen::Index>(k * w + b)) =
              data[TwoParticleState::flat(w, a, b, j, k)];
  const double n2 = state.norm_squared();
  if (n2 <= 0.0) throw std::invalid_argument("state has no surviving amplitude");
  DensityMatrix rho;
  rho.entries = (psi * psi.adjoint()) / n2;
  rho.window_start = state.window_start();
  rho.width = w;
  return rho;
}

/// S = -sum lambda log2 lambda over eigenvalues above 1e-12, in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  rho.validate();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  if (lambda.minCoeff() < -1e-10) throw std::invalid_argument("density matrix is not positive semidefinite");
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > 1e-12) s -= lambda(i) * std::log2(lambda(i));
  }
  return s;
}

}  // namespace qwalk
