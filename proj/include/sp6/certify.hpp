#ifndef SP6_CERTIFY_HPP
#define SP6_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sp6/exactmath.hpp"
#include "sp6/hypergeo.hpp"
#include "sp6/words.hpp"

namespace sp6 {

class NotRankOne : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NotUnipotent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NotOmegaTransvection : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// M = I + lambda * x * (x^t Omega).
struct TransvectionData {
  /// Primitive integral, first nonzero coordinate positive.
  ExactVector direction;
  /// First nonzero column of M - I, unnormalized.
  ExactVector image_column;
  BigRat lambda;
};

TransvectionData transvection_analyze(const ExactMatrix& m, const ExactMatrix& omega);

struct ExpectedValues {
  std::optional<BigInt> det_omega;
  std::optional<ExactVector> x1;
  std::optional<ExactVector> x2;

  bool empty() const { return !det_omega && !x1 && !x2; }
  friend bool operator==(const ExpectedValues&, const ExpectedValues&) = default;
};

struct Certificate {
  std::string label;
  ParameterMultiset alpha;
  ParameterMultiset beta;
  /// Witness word text as given; reduced at verification time.
  std::string word;
  /// Pinned form to validate instead of the recovered one.
  std::optional<ExactMatrix> omega;
  ExpectedValues expected;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

enum class CheckStatus { pass, fail, skipped, not_applicable };
std::string_view to_string(CheckStatus s);

struct CheckResult {
  int index;
  std::string name;
  CheckStatus status;
  std::string detail;
};

/// Fixed check names, in execution order.
inline constexpr std::string_view kCheckNames[] = {
    "integral_generators", "form_preservation", "word_evaluation", "transvections",
    "commutation",         "independence",      "orthogonality",   "expected_values"};

inline constexpr std::string_view kZariskiAssumption =
    "Zariski density of <A,B> in Sp_Omega is assumed, not checked: it follows from the "
    "Beukers-Heckman classification (Invent. Math. 95 (1989)).";

struct VerificationReport {
  std::string label;
  std::string word;  // reduced
  std::vector<CheckResult> checks;
  std::optional<ExactMatrix> omega;
  std::optional<BigRat> det_omega;
  std::optional<TransvectionData> t1;
  std::optional<TransvectionData> t2;
  std::optional<BigRat> pairing;
  bool verdict = false;
  std::vector<std::string> warnings;

  const CheckResult& check(std::string_view name) const;
  /// Null when every check passed or was not applicable.
  const CheckResult* first_failure() const;
};

/// Runs the eight checks in order; build errors propagate.
VerificationReport verify_certificate(const Certificate& cert);
/// Same, reusing an already built case for cert's parameters.
VerificationReport verify_certificate(const Certificate& cert, const HyperCase& hcase);

struct SearchResult {
  std::optional<Word> word;
  std::uint64_t examined = 0;
  bool budget_exhausted = false;
};

/// Enumerates freely reduced words by increasing length, lexicographic in
/// the letter order A, B, a, b, and returns the first whose certificate
/// verifies. `budget` caps the number of words examined (0 = unlimited).
SearchResult search_witness(const HyperCase& hcase, std::size_t max_len,
                            std::uint64_t budget = 0);

}  // namespace sp6

#endif  // SP6_CERTIFY_HPP
