#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/types.hpp"

namespace qwalk::ctqw {

/// Vertex-indexed quantum amplitudes.
using AmplitudeVector = Eigen::VectorXcd;
/// Vertex-indexed classical probabilities.
using ProbabilityVector = Eigen::VectorXd;

class Graph {
 public:
  enum class Kind { LineSegment, Cycle };

  static Graph line_segment(Eigen::Index vertices) {
    if (vertices < 2) throw std::invalid_argument("line segment needs at least 2 vertices");
    return Graph(Kind::LineSegment, vertices);
  }

  static Graph cycle(Eigen::Index n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices, got " + std::to_string(n));
    return Graph(Kind::Cycle, n);
  }

  Kind kind() const noexcept { return kind_; }
  Eigen::Index vertices() const noexcept { return n_; }

 private:
  Graph(Kind k, Eigen::Index n) : kind_(k), n_(n) {}
  Kind kind_;
  Eigen::Index n_;
};

inline Eigen::MatrixXd adjacency(const Graph& g) {
  const Eigen::Index n = g.vertices();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) a(j, j + 1) = a(j + 1, j) = 1.0;
  if (g.kind() == Graph::Kind::Cycle) a(0, n - 1) = a(n - 1, 0) = 1.0;
  return a;
}

/// H = gamma (D - A) for a graph with degree matrix D, together with its
/// spectral factorization H = V diag(lambda) V^T. Both propagators are built
/// from the one factorization.
class GeneratorMatrix {
 public:
  GeneratorMatrix(const Graph& g, double gamma) : gamma_(gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw std::invalid_argument("gamma must be a positive rate");
    }
    const Eigen::MatrixXd a = adjacency(g);
    h_ = -gamma * a;
    for (Eigen::Index j = 0; j < a.rows(); ++j) h_(j, j) = gamma * a.row(j).sum();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h_);
    if (solver.info() != Eigen::Success) throw std::runtime_error("generator eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
  }

  const Eigen::MatrixXd& matrix() const noexcept { return h_; }
  double gamma() const noexcept { return gamma_; }
  Eigen::Index size() const noexcept { return h_.rows(); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }

 private:
  double gamma_;
  Eigen::MatrixXd h_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

inline GeneratorMatrix generator(const Graph& g, double gamma) { return GeneratorMatrix(g, gamma); }

/// |psi(t)> = exp(-iHt) |psi(0)>.
inline AmplitudeVector evolve_quantum(const AmplitudeVector& psi0, const GeneratorMatrix& h, double t) {
  if (psi0.size() != h.size()) throw std::invalid_argument("amplitude vector size does not match graph");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw std::invalid_argument("initial amplitudes are not normalized");
  const Eigen::MatrixXd& v = h.eigenvectors();
  const Eigen::VectorXcd phases =
      h.eigenvalues().unaryExpr([t](double lambda) { return std::polar(1.0, -lambda * t); });
  const Eigen::VectorXcd coeffs = v.transpose().cast<Complex>() * psi0;
  return v.cast<Complex>() * phases.cwiseProduct(coeffs);
}

/// P(t) = exp(-Ht) P(0). Round-off negatives are clamped to zero.
inline ProbabilityVector evolve_classical(const ProbabilityVector& p0, const GeneratorMatrix& h, double t) {
  if (p0.size() != h.size()) throw std::invalid_argument("probability vector size does not match graph");
  if (p0.minCoeff() < 0.0 || std::abs(p0.sum() - 1.0) > 1e-10) {
    throw std::invalid_argument("initial vector is not a probability distribution");
  }
  const Eigen::MatrixXd& v = h.eigenvectors();
  const Eigen::VectorXd decay = h.eigenvalues().unaryExpr([t](double lambda) { return std::exp(-lambda * t); });
  ProbabilityVector p = v * decay.cwiseProduct(v.transpose() * p0);
  return p.cwiseMax(0.0);
}

inline AmplitudeVector basis_amplitudes(Eigen::Index size, Eigen::Index vertex) {
  AmplitudeVector psi = AmplitudeVector::Zero(size);
  psi(vertex) = 1.0;
  return psi;
}

inline ProbabilityVector basis_probabilities(Eigen::Index size, Eigen::Index vertex) {
  ProbabilityVector p = ProbabilityVector::Zero(size);
  p(vertex) = 1.0;
  return p;
}

/// Probability sitting on the two end vertices of a line segment; a truncated
/// line is only faithful to the infinite one while this stays negligible.
inline double boundary_probability(const AmplitudeVector& psi) {
  return std::norm(psi(0)) + std::norm(psi(psi.size() - 1));
}

}  // namespace qwalk::ctqw
