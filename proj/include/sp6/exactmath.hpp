#ifndef SP6_EXACTMATH_HPP
#define SP6_EXACTMATH_HPP

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sp6 {

using BigInt = mpz_class;
using BigRat = mpq_class;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonMonic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonIntegral : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Builds a rational in lowest terms. Throws on zero denominator.
BigRat make_rat(const BigInt& num, const BigInt& den = 1);

/// Monic polynomial with integer coefficients, stored low degree first.
class IntPoly {
 public:
  /// x^0 = 1.
  IntPoly();
  /// Coefficients c_0..c_n; throws NonMonic unless c_n == 1.
  explicit IntPoly(std::vector<BigInt> coeffs);

  static IntPoly monomial(std::size_t degree);
  /// x^d - 1
  static IntPoly x_pow_minus_one(std::size_t d);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }

  IntPoly operator*(const IntPoly& rhs) const;
  IntPoly pow(unsigned e) const;
  /// Exact quotient by a monic divisor; throws std::domain_error when a
  /// remainder is left.
  IntPoly divide_exact(const IntPoly& divisor) const;

  /// c_i == c_{n-i} for all i.
  bool is_palindromic() const;

  /// Descending-power text, e.g. "x^6 - x^5 - x + 1".
  std::string to_string() const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

class ExactVector {
 public:
  explicit ExactVector(std::size_t n);
  explicit ExactVector(std::vector<BigRat> entries);
  static ExactVector from_ints(std::span<const long> values);

  std::size_t size() const { return entries_.size(); }
  BigRat& operator[](std::size_t i) { return entries_[i]; }
  const BigRat& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<BigRat>& entries() const { return entries_; }

  bool is_zero() const;
  bool is_integral() const;
  ExactVector operator-() const;
  ExactVector scaled(const BigRat& s) const;

  /// Clears denominators, divides out the content and makes the first
  /// nonzero coordinate positive. The zero vector is returned unchanged.
  ExactVector canonical() const;

  /// "(a, b, c)" with exact entries.
  std::string to_string() const;

  friend bool operator==(const ExactVector&, const ExactVector&) = default;

 private:
  std::vector<BigRat> entries_;
};

/// Dense row-major matrix of rationals.
class ExactMatrix {
 public:
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<BigRat> entries);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_ints(std::size_t rows, std::size_t cols,
                               std::span<const long> values);
  static ExactMatrix diagonal(std::span<const BigRat> values);
  /// Column vector x times row vector y.
  static ExactMatrix outer(const ExactVector& x, const ExactVector& y);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  BigRat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigRat& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  const std::vector<BigRat>& data() const { return data_; }

  ExactVector row(std::size_t r) const;
  ExactVector column(std::size_t c) const;

  ExactMatrix transpose() const;
  ExactMatrix operator+(const ExactMatrix& rhs) const;
  ExactMatrix operator-(const ExactMatrix& rhs) const;
  ExactMatrix operator-() const;
  ExactMatrix operator*(const ExactMatrix& rhs) const;
  ExactVector operator*(const ExactVector& v) const;
  ExactMatrix scaled(const BigRat& s) const;

  bool is_zero() const;
  bool is_integral() const;
  bool is_antisymmetric() const;
  /// gcd of all entries is 1 (integral matrices only).
  bool is_primitive() const;

  std::string to_string() const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<BigRat> data_;
};

/// Exact product M * N.
ExactMatrix mat_mul(const ExactMatrix& m, const ExactMatrix& n);

/// Gauss-Jordan inverse over Q. Throws SingularMatrix or DimensionMismatch.
ExactMatrix mat_inverse(const ExactMatrix& m);

/// Fraction-free (Bareiss) row echelon form of the row-scaled integer copy
/// of M. Pivots are chosen as the first nonzero entry in column order.
struct EchelonForm {
  std::vector<std::vector<BigInt>> rows;
  std::vector<std::size_t> pivot_cols;
  /// Sign flips from row swaps.
  int swap_sign = 1;
};
EchelonForm bareiss_echelon(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);
/// Canonical basis of {v : Mv = 0}, one vector per free column.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);
/// Canonical basis of the column space, built from the pivot columns.
std::vector<ExactVector> image_basis(const ExactMatrix& m);

BigRat det(const ExactMatrix& m);

/// Faddeev-LeVerrier on an integral square matrix.
IntPoly char_poly(const ExactMatrix& m);

/// h(M) by Horner's rule.
ExactMatrix evaluate_poly(const IntPoly& h, const ExactMatrix& m);

/// Basis of the antisymmetric n x n matrices X with P^t X P = X for every P
/// in `preserving`. Each basis element is primitive integral and its first
/// nonzero strictly-upper entry (row-major) is positive.
std::vector<ExactMatrix> solve_linear_space(std::size_t n,
                                            std::span<const ExactMatrix> preserving);

/// x^t M y
BigRat bilinear(const ExactVector& x, const ExactMatrix& m, const ExactVector& y);

}  // namespace sp6

#endif  // SP6_EXACTMATH_HPP
