#ifndef SP6_HYPERGEO_HPP
#define SP6_HYPERGEO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "sp6/exactmath.hpp"

namespace sp6 {

class NonGaloisStable : public std::invalid_argument {
 public:
  NonGaloisStable(long denominator, const std::string& detail);
  long denominator() const { return denominator_; }

 private:
  long denominator_;
};

class AmbiguousForm : public std::domain_error {
 public:
  explicit AmbiguousForm(std::size_t dimension);
  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t dimension_;
};

class DegenerateForm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Multiset of rationals in [0, 1), each kept in lowest terms, stored sorted.
class ParameterMultiset {
 public:
  explicit ParameterMultiset(std::vector<BigRat> values);
  /// Comma-separated fractions, e.g. "0,0,1/5,2/5,3/5,4/5".
  static ParameterMultiset parse(std::string_view text);

  std::size_t size() const { return values_.size(); }
  const std::vector<BigRat>& values() const { return values_; }
  std::string to_string() const;

  friend bool operator==(const ParameterMultiset&, const ParameterMultiset&) = default;

 private:
  std::vector<BigRat> values_;
};

/// The d-th cyclotomic polynomial by exact division of x^d - 1.
IntPoly cyclotomic(long d);

/// Product of (x - exp(2 pi i a)) over the multiset, as a product of
/// cyclotomic factors. Throws NonGaloisStable if some denominator class does
/// not cover its primitive residues evenly.
IntPoly parameters_to_polynomial(const ParameterMultiset& p);

/// Ones on the subdiagonal, last column -(c_0, ..., c_{n-1}).
ExactMatrix companion(const IntPoly& h);
/// Same, from raw coefficients c_0..c_n; throws NonMonic unless c_n == 1.
ExactMatrix companion(std::span<const BigInt> coeffs);

/// Primitive integral antisymmetric X with A^t X A = X and B^t X B = X, sign
/// fixed by a positive (1,2) entry (or the first nonzero strictly-upper entry
/// in row-major order when that one vanishes).
ExactMatrix invariant_symplectic_form(const ExactMatrix& a, const ExactMatrix& b);

struct HyperCase {
  std::string label;
  ParameterMultiset alpha;
  ParameterMultiset beta;
  IntPoly f;
  IntPoly g;
  ExactMatrix A;
  ExactMatrix B;
  ExactMatrix A_inv;
  ExactMatrix B_inv;
  ExactMatrix omega;
  /// Non-fatal findings: f == g, non-palindromic polynomials.
  std::vector<std::string> warnings;

  std::size_t dimension() const { return A.rows(); }
  /// A^{-1} B
  ExactMatrix T() const { return A_inv * B; }
};

struct BuildOptions {
  /// Lift the degree-six restriction.
  bool allow_any_degree = false;
};

HyperCase build_case(std::string label, const ParameterMultiset& alpha,
                     const ParameterMultiset& beta, BuildOptions options = {});

}  // namespace sp6

#endif  // SP6_HYPERGEO_HPP
