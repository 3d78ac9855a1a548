#include "corruptlab/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corruptlab/divergence.hpp"
#include "corruptlab/error.hpp"

namespace corruptlab {
namespace {

double left_inverse_residual(const Matrix& r, const Matrix& t) {
  return max_abs_diff(r * t, Matrix::identity(t.cols()));
}

}  // namespace

LossTable::LossTable(Space outcomes, Space actions, Matrix values)
    : outcomes_(std::move(outcomes)), actions_(std::move(actions)), values_(std::move(values)) {
  if (values_.rows() != outcomes_.size() || values_.cols() != actions_.size()) {
    throw Error(ErrorCode::LengthMismatch, "loss table must be " + std::to_string(outcomes_.size()) + "x" +
                                               std::to_string(actions_.size()));
  }
  for (double v : values_.data())
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "loss entries must be finite");
}

std::vector<double> LossTable::expected(const Dist& p) const {
  if (!(p.space() == outcomes_)) throw Error(ErrorCode::SpaceMismatch, "distribution not over loss outcomes");
  return transpose_times(values_, p.weights());
}

double LossTable::sup_norm() const noexcept {
  double s = 0.0;
  for (double v : values_.data()) s = std::max(s, std::abs(v));
  return s;
}

LossTable zero_one_loss(const Space& labels) {
  Matrix v(labels.size(), labels.size(), 1.0);
  for (std::size_t i = 0; i < labels.size(); ++i) v(i, i) = 0.0;
  return LossTable(labels, labels, std::move(v));
}

Reconstruction Reconstruction::from_matrix(const Kernel& t, Matrix r) {
  if (r.rows() != t.from().size() || r.cols() != t.to().size()) {
    throw Error(ErrorCode::LengthMismatch, "reconstruction must be |from| x |to|");
  }
  const double residual = left_inverse_residual(r, t.matrix());
  if (!(residual <= kResidualTol)) {
    throw Error(ErrorCode::InvalidParameter, "not a left inverse (residual " + std::to_string(residual) + ")");
  }
  return Reconstruction(t, std::move(r), residual);
}

bool is_reconstructible(const Kernel& t) {
  const Matrix& m = t.matrix();
  if (m.rows() < m.cols()) return false;
  const Matrix gram = m.transpose() * m;
  return !LuDecomposition(gram, kRankTol).singular();
}

Reconstruction pseudoinverse(const Kernel& t) {
  const Matrix& m = t.matrix();
  if (m.rows() < m.cols()) throw Error(ErrorCode::NotReconstructible, "fewer corrupted outcomes than clean ones");
  const Matrix mt = m.transpose();
  const LuDecomposition lu(mt * m, kRankTol);
  if (lu.singular()) throw Error(ErrorCode::NotReconstructible, "kernel does not have full column rank");
  Matrix r = lu.solve(mt);
  const double residual = left_inverse_residual(r, m);
  if (!(residual <= kResidualTol)) {
    throw Error(ErrorCode::NotReconstructible,
                "kernel too ill-conditioned for a left inverse (residual " + std::to_string(residual) + ")");
  }
  return Reconstruction::from_matrix(t, std::move(r));
}

LossTable corrected_loss(const Reconstruction& r, const LossTable& loss) {
  if (!(loss.outcomes() == r.kernel().from())) {
    throw Error(ErrorCode::SpaceMismatch, "loss outcomes differ from the kernel's clean space");
  }
  return LossTable(r.kernel().to(), loss.actions(), r.matrix().transpose() * loss.values());
}

double op_norm_row_sum(const Matrix& r) {
  double best = 0.0;
  for (std::size_t c = 0; c < r.cols(); ++c) {
    double s = 0.0;
    for (std::size_t z = 0; z < r.rows(); ++z) s += std::abs(r(z, c));
    best = std::max(best, s);
  }
  return best;
}

double op_norm_row_sum(const Reconstruction& r) { return op_norm_row_sum(r.matrix()); }

double corrected_sup_norm(const Reconstruction& r, const LossTable& loss) {
  return corrected_loss(r, loss).sup_norm();
}

SandwichReport sandwich_report(const Kernel& t) {
  const Reconstruction r = pseudoinverse(t);
  const double a = alpha(t);
  const double norm = op_norm_row_sum(r);
  if (t.from().size() == 1) return {a, std::numeric_limits<double>::infinity(), norm, true};
  const double inv = 1.0 / a;
  return {a, inv, norm, inv <= norm + 1e-9};
}

}  // namespace corruptlab
