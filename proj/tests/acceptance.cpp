#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sp6/certify.hpp"
#include "sp6/cli_io.hpp"
#include "sp6/hypergeo.hpp"
#include "sp6/limitset.hpp"
#include "sp6/words.hpp"

using namespace sp6;

namespace {

constexpr double kPolyBudgetMs = 1.0;
constexpr double kFormBudgetS = 1.0;
constexpr double kVerifyBudgetS = 5.0;
constexpr double kGapBudgetS = 1.0;
constexpr double kPipelineBudgetS = 300.0;
constexpr double kMinGap = 10.0;
constexpr int kMaxPowerIterations = 30;
constexpr double kPowerTol = 1e-12;
constexpr double kOrthoTol = 1e-10;
constexpr double kRotationTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

HyperCase builtin_case(std::string_view label) {
  const auto c = *find_builtin(label);
  return build_case(c.label, c.alpha, c.beta);
}

IntPoly poly(std::initializer_list<long> c) {
  return IntPoly(std::vector<BigInt>(c.begin(), c.end()));
}

Word random_word(std::mt19937_64& rng, std::size_t max_len) {
  static constexpr char kLetters[] = {'A', 'B', 'a', 'b'};
  std::string s(rng() % (max_len + 1), ' ');
  for (auto& c : s) c = kLetters[rng() % 4];
  return Word::parse(s);
}

bool same_up_to_sign(const ExactVector& a, const ExactVector& b) { return a == b || a == -b; }

Outcome criterion1() {
  Outcome o;
  const std::tuple<const char*, IntPoly> cases[] = {
      {"0,0,1/5,2/5,3/5,4/5", poly({1, -1, 0, 0, 0, -1, 1})},
      {"1/2,1/2,1/3,1/3,2/3,2/3", poly({1, 4, 8, 10, 8, 4, 1})},
      {"0,0,1/8,3/8,5/8,7/8", poly({1, -2, 1, 0, 1, -2, 1})},
      {"1/2,1/2,1/12,5/12,7/12,11/12", poly({1, 2, 0, -2, 0, 2, 1})},
  };
  double worst = 0;
  for (const auto& [text, expected] : cases) {
    const auto params = ParameterMultiset::parse(text);
    const auto t0 = Clock::now();
    const IntPoly p = parameters_to_polynomial(params);
    const double ms = seconds_since(t0) * 1e3;
    worst = std::max(worst, ms);
    o.require(p == expected, std::string("polynomial mismatch for ") + text);
    o.require(ms < kPolyBudgetMs, std::string("too slow for ") + text);
  }
  if (o.ok) o.detail = "4/4 polynomials exact, max " + std::to_string(worst) + " ms";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const long om47[36] = {0,   29,  -50, 51,  -28, 1,   -29, 0,   29,  -50, 51,  -28,
                         50,  -29, 0,   29,  -50, 51,  -51, 50,  -29, 0,   29,  -50,
                         28,  -51, 50,  -29, 0,   29,  -1,  28,  -51, 50,  -29, 0};
  const long om55[36] = {0,  1,  6,  3,  4,  5,  -1, 0,  1,  6,  3,  4,  -6, -1, 0,  1,  6,  3,
                         -3, -6, -1, 0,  1,  6,  -4, -3, -6, -1, 0,  1,  -5, -4, -3, -6, -1, 0};
  const std::tuple<const char*, const long*, long> cases[] = {{"C-47", om47, 1679616},
                                                             {"C-55", om55, 4096}};
  double worst = 0;
  for (const auto& [label, entries, d] : cases) {
    const auto hc = builtin_case(label);
    const auto t0 = Clock::now();
    const ExactMatrix om = invariant_symplectic_form(hc.A, hc.B);
    const BigRat dt = det(om);
    const double s = seconds_since(t0);
    worst = std::max(worst, s);
    o.require(om == ExactMatrix::from_ints(6, 6, std::span(entries, 36)),
              std::string("omega mismatch for ") + label);
    o.require(dt == d, std::string("det mismatch for ") + label);
    o.require(s < kFormBudgetS, std::string("too slow for ") + label);
  }
  if (o.ok) o.detail = "omega and det exact for C-47, C-55, max " + std::to_string(worst) + " s";
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst = 0;
  for (const auto* label : {"C-47", "C-55"}) {
    const auto cert = *find_builtin(label);
    std::ostringstream out, err;
    const auto t0 = Clock::now();
    const int code = run_cli({"sp6", "verify", "--case", label}, out, err);
    const double s = seconds_since(t0);
    worst = std::max(worst, s);
    o.require(code == kExitPass, std::string("verify exit code nonzero for ") + label);
    o.require(s < kVerifyBudgetS, std::string("verify too slow for ") + label);

    const auto rep = verify_certificate(cert);
    o.require(rep.verdict, std::string("verdict fail for ") + label);
    o.require(rep.t1 && rep.t2, std::string("missing transvections for ") + label);
    if (!rep.t1 || !rep.t2) continue;
    o.require(same_up_to_sign(rep.t1->image_column, *cert.expected.x1),
              std::string("x1 differs from the reference vector for ") + label);
    o.require(same_up_to_sign(rep.t2->image_column, *cert.expected.x2),
              std::string("x2 differs from the reference vector for ") + label);
    o.require(rep.pairing && *rep.pairing == 0, std::string("pairing nonzero for ") + label);
    o.require(rep.check("commutation").status == CheckStatus::pass,
              std::string("commutation failed for ") + label);
    o.require(rep.check("transvections").status == CheckStatus::pass,
              std::string("conjugates not rank-one unipotent for ") + label);
    const std::string text = out.str();
    o.require(text.find(cert.expected.x2->entries()[0].get_str()) != std::string::npos,
              std::string("report does not print x2 in full for ") + label);
  }
  if (o.ok) o.detail = "C-47, C-55 exit 0, x1/x2 match up to sign, pairing 0, max " +
                       std::to_string(worst) + " s";
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto run_empty = [] {
    auto c = *find_builtin("C-47");
    c.word = "";
    return verify_certificate(c);
  };
  auto run_tamper = [] {
    auto c = *find_builtin("C-47");
    (*c.omega)(0, 3) += 1;
    return verify_certificate(c);
  };
  for (int rep = 0; rep < 3; ++rep) {
    const auto e = run_empty();
    o.require(!e.verdict && e.first_failure() && e.first_failure()->name == "independence",
              "empty word does not fail at independence");
    const auto t = run_tamper();
    o.require(!t.verdict && t.first_failure() && t.first_failure()->name == "form_preservation",
              "tampered omega does not fail at form_preservation");
  }
  const auto a = run_tamper(), b = run_tamper();
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    o.require(a.checks[i].status == b.checks[i].status && a.checks[i].detail == b.checks[i].detail,
              "nondeterministic check results");
  }
  if (o.ok) o.detail = "empty word -> independence, omega tamper -> form_preservation, deterministic";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(0x5eed);
  const auto hc47 = builtin_case("C-47");
  const auto hc55 = builtin_case("C-55");
  const ExactMatrix id = ExactMatrix::identity(6);
  for (int i = 0; i < 1000; ++i) {
    const HyperCase& hc = i % 2 ? hc55 : hc47;
    const Word u = random_word(rng, 6), v = random_word(rng, 6);
    o.require(evaluate(u.concat(v), hc) == evaluate(v, hc) * evaluate(u, hc), "anti-order law violated");
    o.require(evaluate(invert(u), hc) * evaluate(u, hc) == id, "inverse law violated");
  }
  for (const HyperCase* hc : {&hc47, &hc55}) {
    const auto t = transvection_analyze(hc->T(), hc->omega);
    for (int i = 0; i < 50; ++i) {
      const ExactMatrix g = evaluate(random_word(rng, 8), *hc);
      const auto c = transvection_analyze(g * hc->T() * mat_inverse(g), hc->omega);
      o.require(c.direction == (g * t.direction).canonical() && c.lambda == t.lambda,
                "transvection not conjugation invariant");
    }
  }
  std::uniform_int_distribution<long> d(-1000000, 1000000);
  for (int i = 0; i < 1000; ++i) {
    const ExactMatrix& om = i % 2 ? hc55.omega : hc47.omega;
    ExactVector x(6), y(6);
    for (std::size_t k = 0; k < 6; ++k) {
      x[k] = d(rng);
      y[k] = d(rng);
    }
    o.require(bilinear(x, om, y) == -bilinear(y, om, x), "pairing not antisymmetric");
  }
  std::uniform_int_distribution<long> cd(-50, 50);
  for (int i = 0; i < 500; ++i) {
    const std::size_t deg = 1 + rng() % 10;
    std::vector<BigInt> c(deg + 1);
    for (std::size_t k = 0; k < deg; ++k) c[k] = cd(rng);
    c[deg] = 1;
    const IntPoly h(c);
    o.require(char_poly(companion(h)) == h, "char_poly(companion(h)) != h");
  }
  if (o.ok) {
    o.detail = "1000 word pairs, 100 conjugators (len <= 8), 1000 pairings, 500 companions";
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::ostringstream d;
  for (const auto* label : {"C-47", "C-55"}) {
    const auto t0 = Clock::now();
    const auto hc = builtin_case(label);
    const auto gap = spectral_gap(loxodromic_eta(hc));
    const auto gens = make_generators(hc);
    int iters = -1;
    double residual = INFINITY;
    try {
      const auto p = dominant_eigenvector(gens.eta, kPowerTol, kMaxPowerIterations);
      iters = p.iterations;
      const Vec6 ev = mat_vec(gens.eta, p.vector);
      Vec6 r;
      for (std::size_t i = 0; i < kDim; ++i) r[i] = ev[i] - p.eigenvalue * p.vector[i];
      residual = vec_norm(r);
    } catch (const NoConvergence&) {
    }
    const double s = seconds_since(t0);
    o.require(gap.ratio >= kMinGap, std::string("spectral gap below 10 for ") + label);
    o.require(iters >= 1 && iters <= kMaxPowerIterations, std::string("power iteration slow for ") + label);
    o.require(residual <= 1e-9, std::string("eigen-residual too large for ") + label);
    o.require(s < kGapBudgetS, std::string("too slow for ") + label);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s ratio %.6f, %d iterations", d.str().empty() ? "" : "; ", label,
                  gap.ratio, iters);
    d << buf;
  }
  if (o.ok) o.detail = d.str();
  return o;
}

struct SortingSink : OrbitSink {
  explicit SortingSink(std::size_t tasks) : inner(tasks) {}
  void consume(std::size_t task, std::span<const OrbitPoint> chunk) override { inner.consume(task, chunk); }
  std::vector<std::tuple<Vec6, int, int>> sorted() const {
    std::vector<std::tuple<Vec6, int, int>> out;
    for (const auto& p : inner.points()) out.emplace_back(p.v, static_cast<int>(p.tag), p.length);
    std::sort(out.begin(), out.end());
    return out;
  }
  CollectingSink inner;
};

Outcome criterion7() {
  Outcome o;
  const auto hc = builtin_case("C-47");
  const auto gens = make_generators(hc);
  const auto seed = dominant_eigenvector(gens.eta);
  for (int n = 0; n <= 10; ++n) {
    std::vector<std::tuple<Vec6, int, int>> reference;
    for (unsigned threads : {1u, 2u, 8u}) {
      OrbitConfig cfg;
      cfg.depth = n;
      cfg.threads = threads;
      cfg.check_reduced = n <= 6;
      SortingSink sink(orbit_task_count(n));
      const auto emitted = enumerate_orbit(gens, seed.vector, cfg, sink);
      auto pts = sink.sorted();
      o.require(emitted == orbit_size(n) && pts.size() == orbit_size(n),
                "wrong count at N=" + std::to_string(n));
      if (threads == 1) {
        reference = std::move(pts);
      } else {
        o.require(pts == reference, "multiset differs across threads at N=" + std::to_string(n));
      }
    }
  }
  const auto img = std::filesystem::temp_directory_path() / "sp6_acceptance_n12.png";
  PipelineConfig cfg;
  cfg.orbit.depth = 12;
  cfg.image_out = img;
  const auto t0 = Clock::now();
  const auto summary = run_pipeline(hc, cfg);
  const double s = seconds_since(t0);
  o.require(summary.emitted == orbit_size(12), "N=12 pipeline emitted wrong count");
  o.require(std::filesystem::exists(img) && std::filesystem::file_size(img) > 0, "N=12 image missing");
  o.require(s < kPipelineBudgetS, "N=12 pipeline too slow");
  std::filesystem::remove(img);
  if (o.ok) {
    o.detail = "N=0..10 counts exact, threads 1/2/8 identical; N=12 pipeline (" +
               std::to_string(summary.emitted) + " points) in " + std::to_string(s) + " s";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(88);
  std::normal_distribution<double> g(0, 1);
  const double scale[kDim] = {4, 2.5, 1.5, 1, 0.6, 0.3};
  double worst_ortho = 0, worst_rot = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec6> pts(5000);
    for (auto& p : pts) {
      for (std::size_t i = 0; i < kDim; ++i) p[i] = 2.0 + scale[i] * g(rng);
    }
    const auto r = pca_top3(pts);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        worst_ortho = std::max(worst_ortho, std::abs(dot(r.components[i], r.components[j]) - (i == j)));
      }
    }
    o.require(r.variances[0] >= r.variances[1] && r.variances[1] >= r.variances[2], "variances not ordered");

    std::array<Vec6, kDim> q;
    for (std::size_t k = 0; k < kDim; ++k) {
      for (auto& x : q[k]) x = g(rng);
      for (std::size_t j = 0; j < k; ++j) {
        const double d = dot(q[k], q[j]);
        for (std::size_t i = 0; i < kDim; ++i) q[k][i] -= d * q[j][i];
      }
      const double n = vec_norm(q[k]);
      for (auto& x : q[k]) x /= n;
    }
    Mat6 rot;
    for (std::size_t i = 0; i < kDim; ++i) {
      for (std::size_t j = 0; j < kDim; ++j) rot[i * kDim + j] = q[j][i];
    }
    std::vector<Vec6> rotated;
    rotated.reserve(pts.size());
    for (const auto& p : pts) rotated.push_back(mat_vec(rot, p));
    const auto rr = pca_top3(rotated);
    for (std::size_t k = 0; k < kDim; ++k) {
      worst_rot = std::max(worst_rot, std::abs(rr.spectrum[k] - r.spectrum[k]));
    }
  }
  o.require(worst_ortho <= kOrthoTol, "components not orthonormal within 1e-10");
  o.require(worst_rot <= kRotationTol, "spectrum not rotation invariant within 1e-9");
  if (o.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "20 clouds: max orthonormality error %.2e, max rotation drift %.2e",
                  worst_ortho, worst_rot);
    o.detail = buf;
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"polynomial reconstruction", criterion1}, {"form recovery", criterion2},
      {"certificate verification", criterion3},  {"negative controls", criterion4},
      {"property suites", criterion5},           {"spectral gap", criterion6},
      {"orbit counts", criterion7},              {"PCA contract", criterion8},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = seconds_since(t0);
    if (!o.ok) ++failures;
    std::printf("%s %d %s: %s [%.3f s]\n", o.ok ? "PASS" : "FAIL", index, name, o.detail.c_str(), s);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
