#pragma once

#include <string>
#include <vector>

#include "qdist/linalg.hpp"

namespace qdist {

/// Orthonormal eigenbasis of a nondegenerate observable on a d-dimensional
/// space, with one distinct outcome label per eigenvector. Degenerate
/// spectra (rank > 1 projectors) are out of scope.
class Observable {
 public:
  Observable(std::vector<cvec> eigenvectors, std::vector<std::string> labels);

  int dim() const { return static_cast<int>(vecs_.size()); }
  const cvec& ket(int i) const { return vecs_.at(i); }
  cmat projector(int i) const { return vecs_.at(i) * vecs_.at(i).adjoint(); }
  /// Unitary whose columns are the eigenvectors, in label order.
  cmat basis_matrix() const;
  const std::vector<std::string>& labels() const { return labels_; }

  static Observable computational(int d);
  /// Discrete-Fourier basis, entries (1/√d) e^{2πi jk/d}; for d = 2 this is
  /// the Hadamard basis, mutually unbiased with the computational one.
  static Observable fourier(int d);

 private:
  std::vector<cvec> vecs_;
  std::vector<std::string> labels_;
};

/// Entry (x, z) = |<phi_x|theta_z>|^2; doubly stochastic for ONB pairs.
rmat overlap_matrix(const Observable& x, const Observable& z);

}  // namespace qdist
