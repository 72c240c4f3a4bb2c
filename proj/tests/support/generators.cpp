#include "generators.hpp"

namespace qdist::testing {

namespace {

cmat random_gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  cmat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  return m;
}

}  // namespace

cvec random_unit_vector(Rng& rng, int d) {
  cvec v = random_gaussian(rng, d, 1);
  return v / v.norm();
}

cmat random_hermitian(Rng& rng, int d) {
  const cmat g = random_gaussian(rng, d, d);
  return 0.5 * (g + g.adjoint());
}

DensityOperator random_density(Rng& rng, int d) {
  const cmat g = random_gaussian(rng, d, d);
  cmat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(0.5 * (rho + rho.adjoint()));
}

cmat random_isometry(Rng& rng, int rows, int cols) {
  const cmat g = random_gaussian(rng, rows, cols);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ() * cmat::Identity(rows, cols);
  // Fix the phases so the distribution is Haar rather than QR-convention.
  const cmat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Observable random_observable(Rng& rng, int d) {
  const cmat u = random_isometry(rng, d, d);
  std::vector<cvec> vecs;
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i) {
    vecs.push_back(u.col(i));
    labels.push_back(std::to_string(i));
  }
  return Observable(std::move(vecs), std::move(labels));
}

QuantumChannel random_channel(Rng& rng, int dim_in, int dim_out, int dim_env) {
  const cmat v = random_isometry(rng, dim_out * dim_env, dim_in);
  std::vector<cmat> kraus;
  for (int k = 0; k < dim_env; ++k) {
    cmat kk(dim_out, dim_in);
    for (int i = 0; i < dim_out; ++i) kk.row(i) = v.row(static_cast<long>(i) * dim_env + k);
    kraus.push_back(std::move(kk));
  }
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

Apparatus random_apparatus(Rng& rng, int d, int r) {
  const cmat v = random_isometry(rng, r * d, d);
  std::vector<cmat> kraus;
  for (int x = 0; x < d; ++x) {
    cmat m(r, d);
    for (int i = 0; i < r; ++i) m.row(i) = v.row(static_cast<long>(i) * d + x);
    cmat ex = cmat::Zero(d, 1);
    ex(x, 0) = 1.0;
    kraus.push_back(tensor(m, ex));
  }
  QuantumChannel ch(d, r * d, std::move(kraus));
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i) labels.push_back(std::to_string(i));
  return Apparatus(std::move(ch),
                   {OutputFactor{r, FactorKind::quantum, {}},
                    OutputFactor{d, FactorKind::classical, std::move(labels)}});
}

Apparatus random_joint_apparatus(Rng& rng, int d, int r, std::vector<std::string> x_labels,
                                 std::vector<std::string> z_labels) {
  const cmat v = random_isometry(rng, r * d * d, d);
  std::vector<std::vector<cmat>> m(d, std::vector<cmat>(d));
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z) {
      cmat blk(r, d);
      for (int i = 0; i < r; ++i)
        blk.row(i) = v.row((static_cast<long>(i) * d + x) * d + z);
      m[x][z] = std::move(blk);
    }
  std::vector<std::string> defaults;
  for (int i = 0; i < d; ++i) defaults.push_back(std::to_string(i));
  return joint_apparatus(m, x_labels.empty() ? defaults : x_labels,
                         z_labels.empty() ? defaults : z_labels);
}

}  // namespace qdist::testing
