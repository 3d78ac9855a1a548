#include "corruptlab/kernels.hpp"

#include <cmath>
#include <numeric>
#include <unordered_set>

#include "corruptlab/error.hpp"

namespace corruptlab {
namespace {

void check_weights(std::span<const double> w, const char* what) {
  for (double x : w) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidParameter, std::string(what) + " has a non-finite entry");
    if (x < 0.0) throw Error(ErrorCode::NegativeWeight, std::string(what) + " has a negative entry");
  }
}

double checked_product(std::size_t a, std::size_t b, std::size_t guard) {
  const double p = static_cast<double>(a) * static_cast<double>(b);
  if (p > static_cast<double>(guard)) {
    throw Error(ErrorCode::SizeGuardExceeded,
                "materialized product would have " + std::to_string(p) + " entries (guard " +
                    std::to_string(guard) + ")");
  }
  return p;
}

}  // namespace

Space::Space(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorCode::InvalidParameter, "space must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw Error(ErrorCode::InvalidParameter, "duplicate label '" + l + "'");
  }
}

std::size_t Space::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return i;
  throw Error(ErrorCode::UnknownOutcome, "no outcome named '" + name + "'");
}

Space product_space(std::span<const Space> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidParameter, "empty product");
  std::vector<std::string> labels = factors.front().labels();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    std::vector<std::string> next;
    next.reserve(labels.size() * factors[f].size());
    for (const auto& a : labels)
      for (const auto& b : factors[f].labels()) next.push_back(a + "⊗" + b);
    labels = std::move(next);
  }
  return Space(std::move(labels));
}

Dist::Dist(Space space, std::vector<double> weights) : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != space_.size()) {
    throw Error(ErrorCode::LengthMismatch, "distribution has " + std::to_string(weights_.size()) +
                                               " weights for a space of size " + std::to_string(space_.size()));
  }
  check_weights(weights_, "distribution");
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > kStochasticTol) {
    throw Error(ErrorCode::NotNormalized, "weights sum to " + std::to_string(total));
  }
}

Dist make_dist(const Space& space, std::span<const double> weights) {
  return Dist(space, std::vector<double>(weights.begin(), weights.end()));
}

std::vector<double> normalized(std::span<const double> weights) {
  check_weights(weights, "weights");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidParameter, "cannot normalize zero mass");
  std::vector<double> out(weights.begin(), weights.end());
  for (double& w : out) w /= total;
  return out;
}

Dist point_mass(const Space& space, std::size_t index) {
  if (index >= space.size()) throw Error(ErrorCode::IndexOutOfRange, "point mass index");
  std::vector<double> w(space.size(), 0.0);
  w[index] = 1.0;
  return Dist(space, std::move(w));
}

Dist uniform(const Space& space) {
  return Dist(space, std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size())));
}

Dist product_dist(std::span<const Dist> factors, std::size_t guard) {
  if (factors.empty()) throw Error(ErrorCode::InvalidParameter, "empty product");
  std::vector<Space> spaces;
  std::vector<double> w(factors.front().weights().begin(), factors.front().weights().end());
  spaces.push_back(factors.front().space());
  for (std::size_t f = 1; f < factors.size(); ++f) {
    checked_product(w.size(), factors[f].size(), guard);
    std::vector<double> next;
    next.reserve(w.size() * factors[f].size());
    for (double a : w)
      for (double b : factors[f].weights()) next.push_back(a * b);
    w = std::move(next);
    spaces.push_back(factors[f].space());
  }
  return Dist(product_space(spaces), std::move(w));
}

Kernel::Kernel(Space from, Space to, Matrix matrix)
    : from_(std::move(from)), to_(std::move(to)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != to_.size() || matrix_.cols() != from_.size()) {
    throw Error(ErrorCode::LengthMismatch, "kernel matrix must be " + std::to_string(to_.size()) + "x" +
                                               std::to_string(from_.size()));
  }
  check_weights(matrix_.data(), "kernel matrix");
  for (std::size_t j = 0; j < matrix_.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < matrix_.rows(); ++i) s += matrix_(i, j);
    if (std::abs(s - 1.0) > kStochasticTol) {
      throw Error(ErrorCode::NotStochastic, "column " + std::to_string(j) + " sums to " + std::to_string(s));
    }
  }
}

Dist Kernel::column(std::size_t j) const { return Dist(to_, matrix_.col(j)); }

Kernel identity_kernel(const Space& space) { return Kernel(space, space, Matrix::identity(space.size())); }

Kernel constant_kernel(const Space& from, const Dist& target) {
  Matrix m(target.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j)
    for (std::size_t i = 0; i < target.size(); ++i) m(i, j) = target[i];
  return Kernel(from, target.space(), std::move(m));
}

Kernel compose(const Kernel& t2, const Kernel& t1) {
  if (!(t1.to() == t2.from())) throw Error(ErrorCode::SpaceMismatch, "compose: t1.to != t2.from");
  return Kernel(t1.from(), t2.to(), t2.matrix() * t1.matrix());
}

Dist pushforward(const Kernel& t, const Dist& p) {
  if (!(p.space() == t.from())) throw Error(ErrorCode::SpaceMismatch, "pushforward: distribution not over kernel input");
  return Dist(t.to(), t.matrix() * p.weights());
}

std::vector<double> pullback(const Kernel& t, std::span<const double> f) {
  if (f.size() != t.to().size()) throw Error(ErrorCode::LengthMismatch, "pullback: function length");
  return transpose_times(t.matrix(), f);
}

Kernel parallel_product(std::span<const Kernel> ts, std::size_t guard) {
  if (ts.empty()) throw Error(ErrorCode::InvalidParameter, "empty product");
  Matrix m = ts.front().matrix();
  std::vector<Space> from{ts.front().from()}, to{ts.front().to()};
  checked_product(m.rows(), m.cols(), guard);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const Matrix& b = ts[i].matrix();
    checked_product(checked_product(m.rows(), b.rows(), guard), checked_product(m.cols(), b.cols(), guard), guard);
    m = kronecker(m, b);
    from.push_back(ts[i].from());
    to.push_back(ts[i].to());
  }
  return Kernel(product_space(from), product_space(to), std::move(m));
}

Kernel replicate(const Kernel& t, std::size_t n, std::size_t guard) {
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "replicate needs n >= 1");
  const double per_copy = static_cast<double>(t.matrix().rows()) * static_cast<double>(t.matrix().cols());
  if (n * std::log(per_copy) > std::log(static_cast<double>(guard)) + 1e-9) {
    throw Error(ErrorCode::SizeGuardExceeded, "replicate: " + std::to_string(n) + " copies exceed the size guard");
  }
  std::vector<Kernel> copies(n, t);
  return parallel_product(copies, guard);
}

}  // namespace corruptlab
