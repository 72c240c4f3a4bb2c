#include "qdist/observable.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace qdist {

Observable::Observable(std::vector<cvec> eigenvectors, std::vector<std::string> labels)
    : vecs_(std::move(eigenvectors)), labels_(std::move(labels)) {
  const int d = static_cast<int>(vecs_.size());
  if (d == 0) throw ValidationError("Observable: need at least one eigenvector");
  if (static_cast<int>(labels_.size()) != d)
    throw ValidationError("Observable: label count must equal dimension");
  for (const cvec& v : vecs_)
    if (v.size() != d)
      throw DimensionMismatch(
          "Observable: eigenvector length must equal their count (nondegenerate spectrum)");
  std::set<std::string> uniq(labels_.begin(), labels_.end());
  if (static_cast<int>(uniq.size()) != d)
    throw ValidationError("Observable: labels must be distinct");
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const cplx g = vecs_[i].dot(vecs_[j]);  // <v_i|v_j>
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - want) > tols::orthonormal)
        throw ValidationError("Observable: eigenvectors not orthonormal at Gram entry (" +
                              std::to_string(i) + "," + std::to_string(j) + "), |deviation| = " +
                              std::to_string(std::abs(g - want)));
    }
  }
}

cmat Observable::basis_matrix() const {
  const int d = dim();
  cmat b(d, d);
  for (int i = 0; i < d; ++i) b.col(i) = vecs_[i];
  return b;
}

Observable Observable::computational(int d) {
  std::vector<cvec> vecs;
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i) {
    cvec v = cvec::Zero(d);
    v(i) = 1.0;
    vecs.push_back(std::move(v));
    labels.push_back(std::to_string(i));
  }
  return Observable(std::move(vecs), std::move(labels));
}

Observable Observable::fourier(int d) {
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<cvec> vecs;
  std::vector<std::string> labels;
  for (int k = 0; k < d; ++k) {
    cvec v(d);
    for (int j = 0; j < d; ++j) {
      const double phase = 2.0 * std::numbers::pi * j * k / d;
      v(j) = norm * cplx(std::cos(phase), std::sin(phase));
    }
    vecs.push_back(std::move(v));
    labels.push_back("f" + std::to_string(k));
  }
  return Observable(std::move(vecs), std::move(labels));
}

rmat overlap_matrix(const Observable& x, const Observable& z) {
  if (x.dim() != z.dim())
    throw DimensionMismatch("overlap_matrix: observables must share a dimension");
  const int d = x.dim();
  rmat o(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) o(i, j) = std::norm(x.ket(i).dot(z.ket(j)));
  return o;
}

}  // namespace qdist
