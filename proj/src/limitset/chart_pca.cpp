#include <cmath>

#include "sp6/limitset.hpp"

namespace sp6 {

Chart::Chart(const Vec6& functional, double cutoff) : ell_(functional), cutoff_(cutoff) {
  if (!(cutoff > 0)) throw std::invalid_argument("chart cutoff must be positive");
  if (vec_norm(functional) == 0) throw std::invalid_argument("chart functional is zero");
}

Chart Chart::automatic(const Vec6& seed, double cutoff) {
  std::size_t big = 0;
  for (std::size_t i = 1; i < kDim; ++i) {
    if (std::abs(seed[i]) > std::abs(seed[big])) big = i;
  }
  Vec6 ell{};
  ell[big] = 1;
  return Chart(ell, cutoff);
}

std::optional<Vec6> Chart::project(const Vec6& v) const {
  const double l = dot(ell_, v);
  if (!(std::abs(l) >= cutoff_)) return std::nullopt;
  Vec6 out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = v[i] / l;
  return out;
}

std::vector<ProjectedPoint> project_chart(std::span<const OrbitPoint> points, const Chart& chart) {
  std::vector<ProjectedPoint> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    if (auto p = chart.project(pt.v)) out.push_back(ProjectedPoint{*p, pt.tag, pt.length});
  }
  if (out.empty()) {
    throw AllPointsDiscarded("every point has |l(v)| below the chart cutoff");
  }
  return out;
}

// -------------------------------------------------------------------- PCA

void StreamingPca::add(const Vec6& x) {
  ++n_;
  Vec6 delta;
  for (std::size_t i = 0; i < kDim; ++i) {
    delta[i] = x[i] - mean_[i];
    mean_[i] += delta[i] / static_cast<double>(n_);
  }
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) comoment_[i * kDim + j] += delta[i] * (x[j] - mean_[j]);
  }
}

void StreamingPca::merge(const StreamingPca& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  Vec6 delta;
  for (std::size_t i = 0; i < kDim; ++i) delta[i] = other.mean_[i] - mean_[i];
  for (std::size_t i = 0; i < kDim; ++i) mean_[i] += delta[i] * nb / n;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      comoment_[i * kDim + j] += other.comoment_[i * kDim + j] + delta[i] * delta[j] * na * nb / n;
    }
  }
  n_ += other.n_;
}

Mat6 StreamingPca::covariance() const {
  Mat6 c{};
  if (n_ == 0) return c;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      c[i * kDim + j] =
          0.5 * (comoment_[i * kDim + j] + comoment_[j * kDim + i]) / static_cast<double>(n_);
    }
  }
  return c;
}

PcaResult StreamingPca::finish() const {
  if (n_ < 4) {
    throw TooFewPoints("PCA needs at least 4 points, got " + std::to_string(n_));
  }
  const SymmetricEigen eig = jacobi_eigen(covariance());
  PcaResult r;
  r.mean = mean_;
  r.count = n_;
  r.spectrum = eig.values;
  for (std::size_t k = 0; k < 3; ++k) {
    r.variances[k] = eig.values[k];
    for (std::size_t i = 0; i < kDim; ++i) r.components[k][i] = eig.vectors[i * kDim + k];
  }
  return r;
}

std::array<double, 3> PcaResult::project(const Vec6& p) const {
  Vec6 centered;
  for (std::size_t i = 0; i < kDim; ++i) centered[i] = p[i] - mean[i];
  return {dot(centered, components[0]), dot(centered, components[1]), dot(centered, components[2])};
}

PcaResult pca_top3(std::span<const Vec6> points) {
  StreamingPca acc;
  for (const auto& p : points) acc.add(p);
  return acc.finish();
}

}  // namespace sp6
