#include "sp6/hypergeo.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>

namespace sp6 {

NonGaloisStable::NonGaloisStable(long denominator, const std::string& detail)
    : std::invalid_argument("parameters are not Galois-stable for denominator " +
                            std::to_string(denominator) + ": " + detail),
      denominator_(denominator) {}

AmbiguousForm::AmbiguousForm(std::size_t dimension)
    : std::domain_error("invariant antisymmetric forms span a space of dimension " +
                        std::to_string(dimension) + ", expected 1"),
      dimension_(dimension) {}

// ------------------------------------------------------ ParameterMultiset

ParameterMultiset::ParameterMultiset(std::vector<BigRat> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidParameters("parameter multiset is empty");
  for (auto& v : values_) {
    v.canonicalize();
    if (v < 0 || v >= 1) {
      throw InvalidParameters("parameter " + v.get_str() + " is outside [0, 1)");
    }
  }
  std::sort(values_.begin(), values_.end());
}

ParameterMultiset ParameterMultiset::parse(std::string_view text) {
  std::vector<BigRat> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(pos, comma - pos));
    std::erase_if(item, [](unsigned char c) { return std::isspace(c); });
    if (item.empty()) throw InvalidParameters("empty entry in parameter list '" + std::string(text) + "'");
    const auto slash = item.find('/');
    BigInt num, den = 1;
    if (num.set_str(item.substr(0, slash), 10) != 0 ||
        (slash != std::string::npos && den.set_str(item.substr(slash + 1), 10) != 0)) {
      throw InvalidParameters("cannot parse fraction '" + item + "'");
    }
    if (den == 0) throw InvalidParameters("zero denominator in '" + item + "'");
    values.push_back(make_rat(num, den));
    pos = comma + 1;
  }
  return ParameterMultiset(std::move(values));
}

std::string ParameterMultiset::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) s += ",";
    s += values_[i].get_str();
  }
  return s;
}

// ------------------------------------------------------------ polynomials

IntPoly cyclotomic(long d) {
  if (d < 1) throw std::invalid_argument("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<long, IntPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  IntPoly p = IntPoly::x_pow_minus_one(static_cast<std::size_t>(d));
  for (long e = 1; e < d; ++e) {
    if (d % e == 0) p = p.divide_exact(cyclotomic(e));
  }
  std::lock_guard lock(mu);
  cache.emplace(d, p);
  return p;
}

IntPoly parameters_to_polynomial(const ParameterMultiset& p) {
  // denominator -> numerator -> multiplicity
  std::map<long, std::map<long, unsigned>> classes;
  for (const auto& v : p.values()) {
    if (!v.get_den().fits_slong_p()) {
      throw InvalidParameters("denominator of " + v.get_str() + " is too large");
    }
    classes[v.get_den().get_si()][v.get_num().get_si()] += 1;
  }

  IntPoly result;
  for (const auto& [d, numerators] : classes) {
    const unsigned m = numerators.begin()->second;
    for (long k = 0; k < d; ++k) {
      if (std::gcd(k, d) != 1) continue;
      auto it = numerators.find(k);
      const unsigned got = it == numerators.end() ? 0 : it->second;
      if (got != m) {
        throw NonGaloisStable(d, "residue " + std::to_string(k) + "/" + std::to_string(d) +
                                     " occurs " + std::to_string(got) + " times, expected " +
                                     std::to_string(m));
      }
    }
    result = result * cyclotomic(d).pow(m);
  }
  return result;
}

ExactMatrix companion(const IntPoly& h) {
  const std::size_t n = h.degree();
  if (n == 0) throw DimensionMismatch("companion: polynomial of degree 0");
  ExactMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -h[i];
  return c;
}

ExactMatrix companion(std::span<const BigInt> coeffs) {
  return companion(IntPoly(std::vector<BigInt>(coeffs.begin(), coeffs.end())));
}

ExactMatrix invariant_symplectic_form(const ExactMatrix& a, const ExactMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("invariant_symplectic_form: generators must be square of equal size");
  }
  const ExactMatrix gens[] = {a, b};
  auto space = solve_linear_space(a.rows(), gens);
  if (space.size() != 1) throw AmbiguousForm(space.size());
  ExactMatrix omega = std::move(space.front());
  if (det(omega) == 0) throw DegenerateForm("invariant antisymmetric form is degenerate");
  return omega;
}

// -------------------------------------------------------------- build_case

HyperCase build_case(std::string label, const ParameterMultiset& alpha,
                     const ParameterMultiset& beta, BuildOptions options) {
  if (alpha.size() != beta.size()) {
    throw InvalidParameters("alpha has " + std::to_string(alpha.size()) + " entries, beta has " +
                            std::to_string(beta.size()));
  }
  if (!options.allow_any_degree && alpha.size() != 6) {
    throw InvalidParameters("expected 6 parameters, got " + std::to_string(alpha.size()));
  }
  IntPoly f = parameters_to_polynomial(alpha);
  IntPoly g = parameters_to_polynomial(beta);
  ExactMatrix A = companion(f);
  ExactMatrix B = companion(g);
  ExactMatrix A_inv = mat_inverse(A);
  ExactMatrix B_inv = mat_inverse(B);
  ExactMatrix omega = invariant_symplectic_form(A, B);

  std::vector<std::string> warnings;
  if (f == g) warnings.emplace_back("f equals g; the group is cyclic");
  if (!f.is_palindromic()) warnings.emplace_back("f is not self-reciprocal");
  if (!g.is_palindromic()) warnings.emplace_back("g is not self-reciprocal");

  // invariants that the construction should already guarantee
  if (!omega.is_antisymmetric() || !omega.is_integral() || !omega.is_primitive() ||
      A.transpose() * omega * A != omega || B.transpose() * omega * B != omega) {
    throw std::logic_error("build_case: invariant form failed validation");
  }

  return HyperCase{std::move(label), alpha,          beta,           std::move(f),
                   std::move(g),     std::move(A),   std::move(B),   std::move(A_inv),
                   std::move(B_inv), std::move(omega), std::move(warnings)};
}

}  // namespace sp6
