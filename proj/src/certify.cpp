#include "sp6/certify.hpp"

#include <algorithm>
#include <array>

namespace sp6 {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::not_applicable: return "n/a";
  }
  return "?";
}

TransvectionData transvection_analyze(const ExactMatrix& m, const ExactMatrix& omega) {
  if (!m.is_square() || !omega.is_square() || m.rows() != omega.rows()) {
    throw DimensionMismatch("transvection_analyze: matrix and form must be square of equal size");
  }
  const std::size_t n = m.rows();
  const ExactMatrix nil = m - ExactMatrix::identity(n);
  const std::size_t r = rank(nil);
  if (r != 1) throw NotRankOne("rank(M - I) = " + std::to_string(r) + ", expected 1");
  if (!(nil * nil).is_zero()) throw NotUnipotent("(M - I)^2 is not zero");

  std::size_t first_col = 0;
  while (nil.column(first_col).is_zero()) ++first_col;
  ExactVector column = nil.column(first_col);
  ExactVector x = column.canonical();

  // covector x^t Omega
  ExactVector xo(n);
  for (std::size_t j = 0; j < n; ++j) {
    BigRat acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * omega(i, j);
    xo[j] = acc;
  }
  if (xo.is_zero()) throw NotOmegaTransvection("direction lies in the radical of Omega");

  std::size_t i0 = 0;
  while (x[i0] == 0) ++i0;
  std::size_t j0 = 0;
  while (xo[j0] == 0) ++j0;
  const BigRat lambda = nil(i0, j0) / (x[i0] * xo[j0]);
  if (lambda == 0 || nil != ExactMatrix::outer(x, xo).scaled(lambda)) {
    throw NotOmegaTransvection("M - I is not lambda * x * Omega(x, .) for any lambda");
  }
  return TransvectionData{std::move(x), std::move(column), lambda};
}

// ------------------------------------------------------------ verification

namespace {

bool det_is_unit(const ExactMatrix& m) {
  const BigRat d = det(m);
  return d == 1 || d == -1;
}

bool matches_up_to_sign(const ExactVector& expected, const TransvectionData& t) {
  return expected == t.image_column || expected == -t.image_column ||
         expected == t.direction || expected == -t.direction;
}

}  // namespace

const CheckResult& VerificationReport::check(std::string_view name) const {
  auto it = std::find_if(checks.begin(), checks.end(),
                         [&](const CheckResult& c) { return c.name == name; });
  if (it == checks.end()) throw std::out_of_range("no check named " + std::string(name));
  return *it;
}

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail || c.status == CheckStatus::skipped) return &c;
  }
  return nullptr;
}

VerificationReport verify_certificate(const Certificate& cert) {
  return verify_certificate(cert, build_case(cert.label, cert.alpha, cert.beta));
}

VerificationReport verify_certificate(const Certificate& cert, const HyperCase& hc) {
  VerificationReport rep;
  rep.label = cert.label;
  rep.warnings = hc.warnings;
  const Word word = Word::parse(cert.word);
  rep.word = word.letters();
  const std::size_t n = hc.dimension();
  const ExactMatrix id = ExactMatrix::identity(n);

  auto record = [&](CheckStatus s, std::string detail = {}) {
    const int idx = static_cast<int>(rep.checks.size());
    rep.checks.push_back({idx + 1, std::string(kCheckNames[idx]), s, std::move(detail)});
  };

  // (1) generators integral and unimodular
  {
    const bool integral =
        hc.A.is_integral() && hc.B.is_integral() && hc.A_inv.is_integral() && hc.B_inv.is_integral();
    const bool unimodular = det_is_unit(hc.A) && det_is_unit(hc.B);
    if (integral && unimodular) {
      record(CheckStatus::pass, "A, B, A^-1, B^-1 integral; det A, det B = +-1");
    } else {
      record(CheckStatus::fail, !integral ? "a generator or its inverse is not integral"
                                          : "det A or det B is not +-1");
    }
  }

  // (2) form preservation
  const ExactMatrix omega = cert.omega ? *cert.omega : hc.omega;
  rep.omega = omega;
  {
    std::string problem;
    if (omega.rows() != n || omega.cols() != n) {
      problem = "form has wrong shape";
    } else if (!omega.is_integral()) {
      problem = "form is not integral";
    } else if (!omega.is_antisymmetric()) {
      problem = "form is not antisymmetric";
    } else if (hc.A.transpose() * omega * hc.A != omega) {
      problem = "A^t Omega A != Omega";
    } else if (hc.B.transpose() * omega * hc.B != omega) {
      problem = "B^t Omega B != Omega";
    } else {
      rep.det_omega = det(omega);
      if (*rep.det_omega == 0) problem = "det Omega = 0";
    }
    if (problem.empty()) {
      record(CheckStatus::pass, "A^t Omega A = Omega, B^t Omega B = Omega, det Omega = " +
                                    rep.det_omega->get_str());
    } else {
      record(CheckStatus::fail, problem);
    }
  }
  const bool form_usable = omega.rows() == n && omega.cols() == n;

  // (3) T and gamma
  const ExactMatrix t = hc.A_inv * hc.B;
  const ExactMatrix gamma = evaluate(word, hc);
  const ExactMatrix gamma_inv = evaluate(word.inverse(), hc);
  if (gamma * gamma_inv == id && gamma.is_integral() && gamma_inv.is_integral() &&
      det_is_unit(gamma)) {
    record(CheckStatus::pass, "T = A^-1 B and gamma = M(w) computed, |w| = " +
                                  std::to_string(word.size()));
  } else {
    record(CheckStatus::fail, "gamma is not an integral unimodular matrix");
  }
  const ExactMatrix conj = gamma * t * gamma_inv;

  // (4) transvections
  if (form_usable) {
    std::string problem;
    try {
      rep.t1 = transvection_analyze(t, omega);
    } catch (const std::domain_error& e) {
      problem = std::string("T: ") + e.what();
    }
    try {
      rep.t2 = transvection_analyze(conj, omega);
    } catch (const std::domain_error& e) {
      if (!problem.empty()) problem += "; ";
      problem += std::string("gamma T gamma^-1: ") + e.what();
    }
    if (problem.empty()) {
      record(CheckStatus::pass, "T and gamma T gamma^-1 are Omega-transvections, lambda1 = " +
                                    rep.t1->lambda.get_str() + ", lambda2 = " +
                                    rep.t2->lambda.get_str());
    } else {
      record(CheckStatus::fail, problem);
    }
  } else {
    record(CheckStatus::skipped, "form unusable");
  }

  // (5) commutation
  if (t * conj == conj * t) {
    record(CheckStatus::pass, "T gamma T gamma^-1 = gamma T gamma^-1 T");
  } else {
    record(CheckStatus::fail, "T and gamma T gamma^-1 do not commute");
  }

  // (6) independence
  if (rep.t1 && rep.t2) {
    std::vector<BigRat> stacked = rep.t1->direction.entries();
    const auto& second = rep.t2->direction.entries();
    stacked.insert(stacked.end(), second.begin(), second.end());
    const std::size_t r = rank(ExactMatrix(2, n, std::move(stacked)));
    if (r == 2) {
      record(CheckStatus::pass, "rank [x1; x2] = 2");
    } else {
      record(CheckStatus::fail, "rank [x1; x2] = " + std::to_string(r));
    }
  } else {
    record(CheckStatus::skipped, "transvection directions unavailable");
  }

  // (7) orthogonality
  if (rep.t1 && rep.t2) {
    rep.pairing = bilinear(rep.t1->direction, omega, rep.t2->direction);
    if (*rep.pairing == 0) {
      record(CheckStatus::pass, "Omega(x1, x2) = 0");
    } else {
      record(CheckStatus::fail, "Omega(x1, x2) = " + rep.pairing->get_str());
    }
  } else {
    record(CheckStatus::skipped, "transvection directions unavailable");
  }

  // (8) expected values
  if (cert.expected.empty() && !cert.omega) {
    record(CheckStatus::not_applicable, "no expected values given");
  } else {
    std::vector<std::string> mismatches;
    std::vector<std::string> unavailable;
    if (cert.omega && *cert.omega != hc.omega) mismatches.emplace_back("omega");
    if (cert.expected.det_omega) {
      if (!rep.det_omega) {
        unavailable.emplace_back("det_omega");
      } else if (*rep.det_omega != BigRat(*cert.expected.det_omega)) {
        mismatches.emplace_back("det_omega");
      }
    }
    auto compare_vec = [&](const std::optional<ExactVector>& want,
                           const std::optional<TransvectionData>& got, const char* name) {
      if (!want) return;
      if (!got) {
        unavailable.emplace_back(name);
      } else if (!matches_up_to_sign(*want, *got)) {
        mismatches.emplace_back(name);
      }
    };
    compare_vec(cert.expected.x1, rep.t1, "x1");
    compare_vec(cert.expected.x2, rep.t2, "x2");
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
      return s;
    };
    if (!mismatches.empty()) {
      record(CheckStatus::fail, "mismatch: " + join(mismatches));
    } else if (!unavailable.empty()) {
      record(CheckStatus::skipped, "not computed: " + join(unavailable));
    } else {
      record(CheckStatus::pass, "all expected values match");
    }
  }

  rep.verdict = rep.first_failure() == nullptr;
  return rep;
}

// ------------------------------------------------------------------ search

SearchResult search_witness(const HyperCase& hc, std::size_t max_len, std::uint64_t budget) {
  SearchResult result;
  if (max_len == 0) return result;

  std::optional<TransvectionData> t1;
  try {
    t1 = transvection_analyze(hc.T(), hc.omega);
  } catch (const std::domain_error&) {
    return result;
  }
  const ExactVector& x1 = t1->direction;
  const std::size_t n = hc.dimension();

  // gamma T gamma^-1 has direction gamma x1, so only words whose image of x1
  // is Omega-orthogonal to x1 and not parallel to it are fully verified.
  constexpr std::array<char, 4> kLetters = {'A', 'B', 'a', 'b'};
  auto generator = [&](char l) -> const ExactMatrix& {
    switch (l) {
      case 'A': return hc.A;
      case 'B': return hc.B;
      case 'a': return hc.A_inv;
      default: return hc.B_inv;
    }
  };

  Certificate cert{hc.label, hc.alpha, hc.beta, "", std::nullopt, {}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::string letters(len, ' ');
    std::vector<ExactVector> images(len + 1, x1);  // images[k] = M(prefix_k) x1
    std::vector<std::size_t> choice(len, 0);
    std::size_t depth = 0;
    choice[0] = 0;
    while (true) {
      if (choice[depth] == kLetters.size()) {
        if (depth == 0) break;
        --depth;
        ++choice[depth];
        continue;
      }
      const char l = kLetters[choice[depth]];
      if (depth > 0 && letters[depth - 1] == inverse_letter(l)) {
        ++choice[depth];
        continue;
      }
      letters[depth] = l;
      images[depth + 1] = generator(l) * images[depth];
      if (depth + 1 < len) {
        ++depth;
        choice[depth] = 0;
        continue;
      }
      if (budget != 0 && result.examined >= budget) {
        result.budget_exhausted = true;
        return result;
      }
      ++result.examined;
      const ExactVector& v = images[len];
      if (bilinear(x1, hc.omega, v) == 0) {
        std::vector<BigRat> stacked = x1.entries();
        stacked.insert(stacked.end(), v.entries().begin(), v.entries().end());
        if (rank(ExactMatrix(2, n, std::move(stacked))) == 2) {
          cert.word = letters;
          if (verify_certificate(cert, hc).verdict) {
            result.word = Word::parse(letters);
            return result;
          }
        }
      }
      ++choice[depth];
    }
  }
  return result;
}

}  // namespace sp6
