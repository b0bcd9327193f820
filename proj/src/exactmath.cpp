#include "sp6/exactmath.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace sp6 {

namespace {

using IntRow = std::vector<BigInt>;

BigInt lcm_of_denominators(std::span<const BigRat> values) {
  BigInt l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

void require_square(const ExactMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw DimensionMismatch(std::string(what) + ": matrix is " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ", expected square");
  }
}

// Strictly-upper index pairs (i, j), i < j, in row-major order.
std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace

BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  BigRat q(num, den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly() : coeffs_{BigInt(1)} {}

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw NonMonic("polynomial has no coefficients");
  if (coeffs_.back() != 1) {
    throw NonMonic("leading coefficient is " + coeffs_.back().get_str() + ", expected 1");
  }
}

IntPoly IntPoly::monomial(std::size_t degree) {
  std::vector<BigInt> c(degree + 1, BigInt(0));
  c[degree] = 1;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::x_pow_minus_one(std::size_t d) {
  std::vector<BigInt> c(d + 1, BigInt(0));
  c[d] = 1;
  c[0] -= 1;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
  std::vector<BigInt> out(coeffs_.size() + rhs.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return IntPoly(std::move(out));
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result;
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

IntPoly IntPoly::divide_exact(const IntPoly& divisor) const {
  const std::size_t n = degree();
  const std::size_t d = divisor.degree();
  if (d > n) throw std::domain_error("divisor degree exceeds dividend degree");
  std::vector<BigInt> rem = coeffs_;
  std::vector<BigInt> quot(n - d + 1, BigInt(0));
  for (std::size_t k = n - d + 1; k-- > 0;) {
    const BigInt q = rem[k + d];  // divisor is monic
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) rem[k + j] -= q * divisor.coeffs_[j];
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (rem[i] != 0) throw std::domain_error("polynomial division leaves a remainder");
  }
  return IntPoly(std::move(quot));
}

bool IntPoly::is_palindromic() const {
  const std::size_t n = degree();
  for (std::size_t i = 0; i <= n; ++i) {
    if (coeffs_[i] != coeffs_[n - i]) return false;
  }
  return true;
}

std::string IntPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str();
    os << "x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

// ------------------------------------------------------------ ExactVector

ExactVector::ExactVector(std::size_t n) : entries_(n, BigRat(0)) {
  if (n == 0) throw DimensionMismatch("vector length must be positive");
}

ExactVector::ExactVector(std::vector<BigRat> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionMismatch("vector length must be positive");
}

ExactVector ExactVector::from_ints(std::span<const long> values) {
  std::vector<BigRat> e;
  e.reserve(values.size());
  for (long v : values) e.emplace_back(v);
  return ExactVector(std::move(e));
}

bool ExactVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const BigRat& v) { return v == 0; });
}

bool ExactVector::is_integral() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const BigRat& v) { return v.get_den() == 1; });
}

ExactVector ExactVector::operator-() const { return scaled(BigRat(-1)); }

ExactVector ExactVector::scaled(const BigRat& s) const {
  ExactVector out(*this);
  for (auto& v : out.entries_) v *= s;
  return out;
}

ExactVector ExactVector::canonical() const {
  if (is_zero()) return *this;
  const BigInt l = lcm_of_denominators(entries_);
  std::vector<BigInt> ints;
  ints.reserve(entries_.size());
  BigInt g = 0;
  for (const auto& v : entries_) {
    BigInt n = v.get_num() * (l / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(std::move(n));
  }
  const auto lead = std::find_if(ints.begin(), ints.end(), [](const BigInt& v) { return v != 0; });
  if (*lead < 0) g = -g;
  std::vector<BigRat> out;
  out.reserve(ints.size());
  for (const auto& n : ints) out.emplace_back(BigInt(n / g));
  return ExactVector(std::move(out));
}

std::string ExactVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ", ";
    s += entries_[i].get_str();
  }
  return s + ")";
}

// ------------------------------------------------------------ ExactMatrix

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, BigRat(0)) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("matrix dimensions must be positive");
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, std::vector<BigRat> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("entry count " + std::to_string(data_.size()) + " does not match " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_ints(std::size_t rows, std::size_t cols,
                                   std::span<const long> values) {
  std::vector<BigRat> e;
  e.reserve(values.size());
  for (long v : values) e.emplace_back(v);
  return ExactMatrix(rows, cols, std::move(e));
}

ExactMatrix ExactMatrix::diagonal(std::span<const BigRat> values) {
  ExactMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ExactMatrix ExactMatrix::outer(const ExactVector& x, const ExactVector& y) {
  ExactMatrix m(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * y[j];
  }
  return m;
}

ExactVector ExactMatrix::row(std::size_t r) const {
  return ExactVector(std::vector<BigRat>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_));
}

ExactVector ExactMatrix::column(std::size_t c) const {
  ExactVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum: shape mismatch");
  ExactMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionMismatch("matrix difference: shape mismatch");
  }
  ExactMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

ExactMatrix ExactMatrix::operator-() const { return scaled(BigRat(-1)); }

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const { return mat_mul(*this, rhs); }

ExactVector ExactMatrix::operator*(const ExactVector& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector product: length mismatch");
  ExactVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    BigRat acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

ExactMatrix ExactMatrix::scaled(const BigRat& s) const {
  ExactMatrix out(*this);
  for (auto& v : out.data_) v *= s;
  return out;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigRat& v) { return v == 0; });
}

bool ExactMatrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigRat& v) { return v.get_den() == 1; });
}

bool ExactMatrix::is_antisymmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if ((*this)(i, j) != -(*this)(j, i)) return false;
    }
  }
  return true;
}

bool ExactMatrix::is_primitive() const {
  if (!is_integral()) return false;
  BigInt g = 0;
  for (const auto& v : data_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  return g == 1;
}

std::string ExactMatrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) {
    s += "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) s += ", ";
      s += (*this)(r, c).get_str();
    }
    s += "]\n";
  }
  return s;
}

// --------------------------------------------------------------- kernels

ExactMatrix mat_mul(const ExactMatrix& m, const ExactMatrix& n) {
  if (m.cols() != n.rows()) {
    throw DimensionMismatch("matrix product: " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " times " + std::to_string(n.rows()) +
                            "x" + std::to_string(n.cols()));
  }
  ExactMatrix out(m.rows(), n.cols());
  BigRat t;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const BigRat& a = m(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < n.cols(); ++j) {
        const BigRat& b = n(k, j);
        if (b == 0) continue;
        t = a * b;
        out(i, j) += t;
      }
    }
  }
  return out;
}

ExactMatrix mat_inverse(const ExactMatrix& m) {
  require_square(m, "inverse");
  const std::size_t n = m.rows();
  ExactMatrix a(m);
  ExactMatrix inv = ExactMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw SingularMatrix("inverse: matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const BigRat piv_inv = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= piv_inv;
      inv(c, j) *= piv_inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const BigRat f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

EchelonForm bareiss_echelon(const ExactMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  EchelonForm e;
  e.rows.assign(rows, IntRow(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row_span = std::span<const BigRat>(m.data()).subspan(r * cols, cols);
    const BigInt l = lcm_of_denominators(row_span);
    for (std::size_t c = 0; c < cols; ++c) {
      e.rows[r][c] = row_span[c].get_num() * (l / row_span[c].get_den());
    }
  }

  auto& a = e.rows;
  BigInt prev = 1;
  std::size_t r = 0;
  BigInt t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      e.swap_sign = -e.swap_sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = a[r][c] * a[i][j];
        t -= a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivot_cols.push_back(c);
    ++r;
  }
  return e;
}

std::size_t rank(const ExactMatrix& m) { return bareiss_echelon(m).pivot_cols.size(); }

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  const EchelonForm e = bareiss_echelon(m);
  const std::size_t cols = m.cols();
  const std::size_t r = e.pivot_cols.size();

  // Reduced row echelon form over Q from the fraction-free rows.
  std::vector<std::vector<BigRat>> rref(r, std::vector<BigRat>(cols));
  for (std::size_t i = 0; i < r; ++i) {
    const BigInt& piv = e.rows[i][e.pivot_cols[i]];
    for (std::size_t j = 0; j < cols; ++j) rref[i][j] = make_rat(e.rows[i][j], piv);
  }
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t pc = e.pivot_cols[i];
    for (std::size_t k = 0; k < i; ++k) {
      if (rref[k][pc] == 0) continue;
      const BigRat f = rref[k][pc];
      for (std::size_t j = pc; j < cols; ++j) rref[k][j] -= f * rref[i][j];
    }
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto pc : e.pivot_cols) is_pivot[pc] = true;
  std::vector<ExactVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    ExactVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < r; ++i) v[e.pivot_cols[i]] = -rref[i][f];
    basis.push_back(v.canonical());
  }
  return basis;
}

std::vector<ExactVector> image_basis(const ExactMatrix& m) {
  const EchelonForm e = bareiss_echelon(m);
  std::vector<ExactVector> basis;
  basis.reserve(e.pivot_cols.size());
  for (auto pc : e.pivot_cols) basis.push_back(m.column(pc).canonical());
  return basis;
}

BigRat det(const ExactMatrix& m) {
  require_square(m, "det");
  const EchelonForm e = bareiss_echelon(m);
  const std::size_t n = m.rows();
  if (e.pivot_cols.size() < n) return BigRat(0);
  BigInt scale = 1;
  for (std::size_t r = 0; r < n; ++r) {
    const auto row_span = std::span<const BigRat>(m.data()).subspan(r * n, n);
    scale *= lcm_of_denominators(row_span);
  }
  // det(M) = sign * last pivot / product of row scales
  return make_rat(e.swap_sign * e.rows[n - 1][n - 1], scale);
}

IntPoly char_poly(const ExactMatrix& m) {
  require_square(m, "char_poly");
  if (!m.is_integral()) throw NonIntegral("char_poly: matrix has non-integer entries");
  const std::size_t n = m.rows();
  using IntMat = std::vector<BigInt>;
  IntMat a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = m.data()[i].get_num();

  auto mul = [n](const IntMat& x, const IntMat& y) {
    IntMat out(n * n, BigInt(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (x[i * n + k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] += x[i * n + k] * y[k * n + j];
      }
    }
    return out;
  };

  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  IntMat mk(n * n, BigInt(0));
  IntMat amk(n * n, BigInt(0));  // A * M_{k-1}, zero for k = 1
  for (std::size_t k = 1; k <= n; ++k) {
    mk = amk;
    for (std::size_t i = 0; i < n; ++i) mk[i * n + i] += c[n - k + 1];
    amk = mul(a, mk);
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk[i * n + i];
    BigInt q;
    mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), k);
    c[n - k] = -q;
  }
  return IntPoly(std::move(c));
}

ExactMatrix evaluate_poly(const IntPoly& h, const ExactMatrix& m) {
  require_square(m, "evaluate_poly");
  const std::size_t n = m.rows();
  ExactMatrix acc(n, n);
  for (std::size_t i = h.coeffs().size(); i-- > 0;) {
    acc = mat_mul(acc, m);
    for (std::size_t d = 0; d < n; ++d) acc(d, d) += h[i];
  }
  return acc;
}

std::vector<ExactMatrix> solve_linear_space(std::size_t n,
                                            std::span<const ExactMatrix> preserving) {
  if (n < 2) throw DimensionMismatch("solve_linear_space: need n >= 2");
  const auto pairs = upper_pairs(n);
  const std::size_t unknowns = pairs.size();

  auto basis_element = [&](std::size_t k) {
    ExactMatrix e(n, n);
    e(pairs[k].first, pairs[k].second) = 1;
    e(pairs[k].second, pairs[k].first) = -1;
    return e;
  };

  std::vector<ExactVector> solutions;
  if (preserving.empty()) {
    for (std::size_t k = 0; k < unknowns; ++k) {
      ExactVector v(unknowns);
      v[k] = 1;
      solutions.push_back(std::move(v));
    }
  } else {
    ExactMatrix system(preserving.size() * n * n, unknowns);
    for (std::size_t p = 0; p < preserving.size(); ++p) {
      const ExactMatrix& g = preserving[p];
      if (g.rows() != n || g.cols() != n) {
        throw DimensionMismatch("solve_linear_space: constraint matrix has wrong shape");
      }
      const ExactMatrix gt = g.transpose();
      for (std::size_t k = 0; k < unknowns; ++k) {
        const ExactMatrix e = basis_element(k);
        const ExactMatrix d = gt * e * g - e;
        for (std::size_t i = 0; i < n * n; ++i) system(p * n * n + i, k) = d.data()[i];
      }
    }
    solutions = kernel_basis(system);
  }

  std::vector<ExactMatrix> out;
  out.reserve(solutions.size());
  for (const auto& s : solutions) {
    // kernel vectors are canonical in upper row-major order already
    ExactMatrix x(n, n);
    for (std::size_t k = 0; k < unknowns; ++k) {
      x(pairs[k].first, pairs[k].second) = s[k];
      x(pairs[k].second, pairs[k].first) = -s[k];
    }
    out.push_back(std::move(x));
  }
  return out;
}

BigRat bilinear(const ExactVector& x, const ExactMatrix& m, const ExactVector& y) {
  if (x.size() != m.rows() || y.size() != m.cols()) {
    throw DimensionMismatch("bilinear: length mismatch");
  }
  BigRat acc = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    BigRat row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

}  // namespace sp6
