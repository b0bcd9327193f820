#include <algorithm>
#include <cmath>
#include <numeric>

#include "sp6/limitset.hpp"

namespace sp6 {

Mat6 to_float(const ExactMatrix& m) {
  if (m.rows() != kDim || m.cols() != kDim) throw DimensionMismatch("to_float: expected 6x6");
  Mat6 out;
  for (std::size_t i = 0; i < kDim * kDim; ++i) out[i] = m.data()[i].get_d();
  return out;
}

Vec6 mat_vec(const Mat6& m, const Vec6& v) {
  Vec6 out;
  for (std::size_t i = 0; i < kDim; ++i) {
    double acc = 0;
    for (std::size_t j = 0; j < kDim; ++j) acc += m[i * kDim + j] * v[j];
    out[i] = acc;
  }
  return out;
}

double dot(const Vec6& a, const Vec6& b) {
  double acc = 0;
  for (std::size_t i = 0; i < kDim; ++i) acc += a[i] * b[i];
  return acc;
}

double vec_norm(const Vec6& v) { return std::sqrt(dot(v, v)); }

Mat6 mat_mul(const Mat6& a, const Mat6& b) {
  Mat6 out{};
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t k = 0; k < kDim; ++k) {
      for (std::size_t j = 0; j < kDim; ++j) out[i * kDim + j] += a[i * kDim + k] * b[k * kDim + j];
    }
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void sign_align(Vec6& v) {
  std::size_t big = 0;
  for (std::size_t i = 1; i < kDim; ++i) {
    if (std::abs(v[i]) > std::abs(v[big])) big = i;
  }
  if (v[big] < 0) {
    for (auto& x : v) x = -x;
  }
}

}  // namespace

PowerIterationResult dominant_eigenvector(const Mat6& m, double tol, int max_iter,
                                          std::uint64_t seed) {
  Vec6 v;
  std::uint64_t state = seed;
  for (auto& x : v) x = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1.0;
  double n = vec_norm(v);
  for (auto& x : v) x /= n;
  sign_align(v);

  for (int k = 1; k <= max_iter; ++k) {
    Vec6 w = mat_vec(m, v);
    n = vec_norm(w);
    if (!(n > 0) || !std::isfinite(n)) throw NoConvergence("power iteration: iterate collapsed");
    for (auto& x : w) x /= n;
    sign_align(w);
    Vec6 diff;
    for (std::size_t i = 0; i < kDim; ++i) diff[i] = w[i] - v[i];
    v = w;
    if (vec_norm(diff) < tol) {
      return PowerIterationResult{v, dot(v, mat_vec(m, v)), k};
    }
  }
  throw NoConvergence("power iteration did not converge in " + std::to_string(max_iter) +
                      " iterations");
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs, double tol,
                                                   int max_iter) {
  using C = std::complex<double>;
  if (coeffs.size() < 2 || coeffs.back() == 0) {
    throw std::invalid_argument("polynomial_roots: need degree >= 1 with nonzero leading term");
  }
  const std::size_t n = coeffs.size() - 1;
  std::vector<double> a(coeffs.begin(), coeffs.end());
  for (auto& c : a) c /= coeffs.back();

  double radius = 0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[i]));
  radius = std::min(radius + 1, 1e6);
  std::vector<C> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius * 0.5 + 0.5, theta);
  }

  std::vector<C> step(n);
  for (int it = 0; it < max_iter; ++it) {
    bool done = true;
    for (std::size_t k = 0; k < n; ++k) {
      C p = 1, dp = 0;
      for (std::size_t i = n; i-- > 0;) {
        dp = dp * z[k] + p;
        p = p * z[k] + a[i];
      }
      if (p == C(0)) {
        step[k] = 0;
        continue;
      }
      const C ratio = p / dp;
      C s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) s += 1.0 / (z[k] - z[j]);
      }
      step[k] = ratio / (1.0 - ratio * s);
      if (std::abs(step[k]) > tol * std::max(1.0, std::abs(z[k]))) done = false;
    }
    for (std::size_t k = 0; k < n; ++k) z[k] -= step[k];
    if (done) return z;
  }
  throw NoConvergence("polynomial root finder did not converge");
}

SpectralGap spectral_gap(const ExactMatrix& m) {
  const IntPoly cp = char_poly(m);
  std::vector<double> coeffs;
  for (const auto& c : cp.coeffs()) coeffs.push_back(c.get_d());
  SpectralGap gap;
  gap.roots = polynomial_roots(coeffs);
  std::sort(gap.roots.begin(), gap.roots.end(), [](auto x, auto y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  const auto top = gap.roots[0];
  const double mag = std::abs(top);
  if (std::abs(top.imag()) > 1e-9 * std::max(1.0, mag)) {
    throw DominantNotRealSimple("dominant eigenvalue is not real");
  }
  if (gap.roots.size() > 1 && mag - std::abs(gap.roots[1]) <= 1e-9 * std::max(1.0, mag)) {
    throw DominantNotRealSimple("dominant eigenvalue is not simple in modulus");
  }
  gap.lambda1 = top.real();
  gap.ratio = gap.roots.size() > 1 ? mag / std::abs(gap.roots[1])
                                   : std::numeric_limits<double>::infinity();
  return gap;
}

SymmetricEigen jacobi_eigen(const Mat6& s, double tol, int max_sweeps) {
  Mat6 a = s;
  Mat6 v{};
  for (std::size_t i = 0; i < kDim; ++i) v[i * kDim + i] = 1;
  auto at = [](Mat6& m, std::size_t i, std::size_t j) -> double& { return m[i * kDim + j]; };

  double fro = 0;
  for (double x : s) fro += x * x;
  fro = std::sqrt(fro);

  SymmetricEigen out;
  for (; out.sweeps < max_sweeps; ++out.sweeps) {
    double off = 0;
    for (std::size_t i = 0; i < kDim; ++i) {
      for (std::size_t j = 0; j < kDim; ++j) {
        if (i != j) off += at(a, i, j) * at(a, i, j);
      }
    }
    if (std::sqrt(off) <= tol * fro || off == 0) break;

    for (std::size_t p = 0; p < kDim; ++p) {
      for (std::size_t q = p + 1; q < kDim; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0) continue;
        const double tau = (at(a, q, q) - at(a, p, p)) / (2 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t);
        const double sn = t * c;
        for (std::size_t k = 0; k < kDim; ++k) {
          const double akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = c * akp - sn * akq;
          at(a, k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < kDim; ++k) {
          const double apk = at(a, p, k), aqk = at(a, q, k);
          at(a, p, k) = c * apk - sn * aqk;
          at(a, q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < kDim; ++k) {
          const double vkp = at(v, k, p), vkq = at(v, k, q);
          at(v, k, p) = c * vkp - sn * vkq;
          at(v, k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  if (out.sweeps == max_sweeps) throw NoConvergence("Jacobi eigensolver did not converge");

  std::array<std::size_t, kDim> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return at(a, x, x) > at(a, y, y); });
  for (std::size_t k = 0; k < kDim; ++k) {
    const std::size_t src = order[k];
    out.values[k] = at(a, src, src);
    Vec6 col;
    for (std::size_t i = 0; i < kDim; ++i) col[i] = at(v, i, src);
    sign_align(col);
    for (std::size_t i = 0; i < kDim; ++i) out.vectors[i * kDim + k] = col[i];
  }
  return out;
}

}  // namespace sp6
