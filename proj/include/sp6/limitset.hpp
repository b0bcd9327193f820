#ifndef SP6_LIMITSET_HPP
#define SP6_LIMITSET_HPP

// Floating-point approximation of the proximal limit set: seed line from
// power iteration on eta = T B T, orbit under freely reduced words, affine
// chart, PCA, raster output. Nothing here feeds back into certification.

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sp6/exactmath.hpp"

namespace sp6 {

struct HyperCase;

inline constexpr std::size_t kDim = 6;
using Vec6 = std::array<double, kDim>;
/// Row-major 6x6.
using Mat6 = std::array<double, kDim * kDim>;

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DominantNotRealSimple : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class AllPointsDiscarded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class TooFewPoints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Mat6 to_float(const ExactMatrix& m);
Vec6 mat_vec(const Mat6& m, const Vec6& v);
double vec_norm(const Vec6& v);
double dot(const Vec6& a, const Vec6& b);
Mat6 mat_mul(const Mat6& a, const Mat6& b);

// ------------------------------------------------------------ eigen tools

struct PowerIterationResult {
  Vec6 vector;  // unit norm, largest-magnitude coordinate positive
  double eigenvalue = 0;
  int iterations = 0;
};

inline constexpr std::uint64_t kPowerIterationSeed = 0x5eed'1e55'0000'0047ULL;

/// v_{k+1} = M v_k / |M v_k| from a fixed pseudo-random start until
/// successive sign-aligned iterates differ by less than `tol`.
PowerIterationResult dominant_eigenvector(const Mat6& m, double tol = 1e-12, int max_iter = 100,
                                          std::uint64_t seed = kPowerIterationSeed);

/// Aberth-Ehrlich simultaneous iteration; coefficients low degree first,
/// leading coefficient nonzero.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs,
                                                   double tol = 1e-12, int max_iter = 500);

struct SpectralGap {
  double lambda1 = 0;  // signed real dominant eigenvalue
  double ratio = 0;    // |lambda1 / lambda2|
  std::vector<std::complex<double>> roots;  // by decreasing modulus
};

/// Exact characteristic polynomial, numeric roots, dominance check.
SpectralGap spectral_gap(const ExactMatrix& m);

struct SymmetricEigen {
  Vec6 values;   // descending
  Mat6 vectors;  // column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below tol times the matrix norm.
SymmetricEigen jacobi_eigen(const Mat6& symmetric, double tol = 1e-12, int max_sweeps = 100);

// ------------------------------------------------------------------ orbit

enum class GeneratorTag : std::uint8_t { A = 0, B = 1, a = 2, b = 3, seed = 4 };
inline constexpr std::size_t kTagCount = 5;

char tag_char(GeneratorTag t);
std::string_view tag_name(GeneratorTag t);

struct OrbitPoint {
  Vec6 v;
  GeneratorTag tag;
  std::uint8_t length;
};

/// Float copies of A, B, A^-1, B^-1 (indexed like GeneratorTag) and eta = T B T.
struct OrbitGenerators {
  std::array<Mat6, 4> generators;
  Mat6 eta;
};
OrbitGenerators make_generators(const HyperCase& hc);
ExactMatrix loxodromic_eta(const HyperCase& hc);

/// Receives points in chunks. All chunks of one task come from a single
/// thread in traversal order; distinct tasks may be delivered concurrently.
class OrbitSink {
 public:
  virtual ~OrbitSink() = default;
  virtual void consume(std::size_t task, std::span<const OrbitPoint> chunk) = 0;
};

struct OrbitConfig {
  int depth = 0;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
  /// Chart functional; nullopt selects the coordinate of the seed's
  /// largest-magnitude component.
  std::optional<Vec6> chart;
  double cutoff = 1e-3;
  /// Re-check free reduction of every traversal path.
  bool check_reduced = false;
  std::size_t chunk_size = 4096;
};

/// 2 * 3^N - 1
std::uint64_t orbit_size(int depth);
/// Task 0 holds the seed and the length-1 words; tasks 1..12 are the
/// subtrees under the twelve reduced length-2 prefixes.
std::size_t orbit_task_count(int depth);

/// Depth-first traversal of all reduced words up to config.depth applied to
/// `seed`. Returns the number of points emitted.
std::uint64_t enumerate_orbit(const OrbitGenerators& gens, const Vec6& seed,
                              const OrbitConfig& config, OrbitSink& sink);

/// Collects every point; safe for concurrent tasks.
class CollectingSink : public OrbitSink {
 public:
  explicit CollectingSink(std::size_t tasks) : per_task_(tasks) {}
  void consume(std::size_t task, std::span<const OrbitPoint> chunk) override;
  /// Task order, traversal order within a task.
  std::vector<OrbitPoint> points() const;

 private:
  std::vector<std::vector<OrbitPoint>> per_task_;
};

// ------------------------------------------------------------------ chart

struct ProjectedPoint {
  Vec6 p;
  GeneratorTag tag;
  std::uint8_t length;
};

class Chart {
 public:
  Chart(const Vec6& functional, double cutoff);
  /// Coordinate functional of the largest-magnitude entry of `seed`.
  static Chart automatic(const Vec6& seed, double cutoff);

  const Vec6& functional() const { return ell_; }
  double cutoff() const { return cutoff_; }
  /// v / l(v), or nullopt when |l(v)| < cutoff.
  std::optional<Vec6> project(const Vec6& v) const;

 private:
  Vec6 ell_;
  double cutoff_;
};

/// Throws AllPointsDiscarded when nothing survives the cut.
std::vector<ProjectedPoint> project_chart(std::span<const OrbitPoint> points, const Chart& chart);

// -------------------------------------------------------------------- PCA

struct PcaResult {
  Vec6 mean{};
  std::array<Vec6, 3> components{};
  std::array<double, 3> variances{};
  Vec6 spectrum{};  // all six covariance eigenvalues, descending
  std::uint64_t count = 0;

  /// Coordinates of p - mean along the three components.
  std::array<double, 3> project(const Vec6& p) const;
};

/// Single-pass mean and covariance (population normalization) with
/// pairwise merging.
class StreamingPca {
 public:
  void add(const Vec6& x);
  void merge(const StreamingPca& other);
  std::uint64_t count() const { return n_; }
  Mat6 covariance() const;
  /// Throws TooFewPoints below four samples.
  PcaResult finish() const;

 private:
  std::uint64_t n_ = 0;
  Vec6 mean_{};
  Mat6 comoment_{};
};

PcaResult pca_top3(std::span<const Vec6> points);

// ----------------------------------------------------------------- render

struct Rgb {
  std::uint8_t r, g, b;
};
Rgb tag_color(GeneratorTag t);

struct Viewport {
  double xmin, xmax, ymin, ymax;
};

struct RenderOptions {
  int width = 1024;
  int height = 1024;
  /// Vertical axis: 1 = PC2, 2 = PC3.
  int vertical_component = 1;
  /// Per-point additive weight.
  double alpha = 0.15;
  /// Explicit window in PC coordinates; otherwise the data bounds.
  std::optional<Viewport> window;
};

/// Accumulates per-pixel, per-color hit counts; the result does not depend
/// on insertion order.
class ScatterRaster {
 public:
  ScatterRaster(int width, int height, const Viewport& view);
  void add(double x, double y, GeneratorTag tag);
  void merge(const ScatterRaster& other);
  std::uint64_t plotted() const { return plotted_; }
  int width() const { return width_; }
  int height() const { return height_; }
  /// Row-major RGB bytes, black background.
  std::vector<std::uint8_t> to_rgb(double alpha) const;

 private:
  int width_, height_;
  Viewport view_;
  std::vector<std::array<std::uint32_t, kTagCount>> counts_;
  std::uint64_t plotted_ = 0;
};

/// Bounds of the points padded by 2% (unit box around a single point).
Viewport fit_viewport(double xmin, double xmax, double ymin, double ymax);

void write_png(const std::filesystem::path& path, int width, int height,
               std::span<const std::uint8_t> rgb);

/// Scatter of PC1 against PC2 (or PC3); throws RenderError on empty input.
void render_scatter(std::span<const ProjectedPoint> points, const PcaResult& pca,
                    const RenderOptions& options, const std::filesystem::path& out);

// ------------------------------------------------------------- cloud files

enum class CloudFormat { text, binary };

/// Binary layout: 8-byte magic "SP6CLD01", u64 point count, then per point
/// 3 x f64 (PC1..PC3) + u8 tag (ASCII A/B/a/b, 's' for the seed) + u8 word
/// length, all little-endian, 26 bytes per record.
inline constexpr std::string_view kCloudMagic = "SP6CLD01";
inline constexpr std::size_t kCloudRecordBytes = 26;

struct CloudRecord {
  std::array<double, 3> xyz;
  GeneratorTag tag;
  std::uint8_t length;
  friend bool operator==(const CloudRecord&, const CloudRecord&) = default;
};

std::string format_cloud_line(const CloudRecord& r);
std::vector<CloudRecord> read_cloud(const std::filesystem::path& path, CloudFormat format);

// --------------------------------------------------------------- pipeline

struct PipelineConfig {
  OrbitConfig orbit;
  std::optional<std::filesystem::path> cloud_out;
  CloudFormat cloud_format = CloudFormat::text;
  std::optional<std::filesystem::path> image_out;
  RenderOptions render;
};

struct PipelineSummary {
  PowerIterationResult seed;
  SpectralGap gap;
  Vec6 chart_functional{};
  std::uint64_t emitted = 0;
  std::uint64_t retained = 0;
  std::array<std::uint64_t, kTagCount> retained_by_tag{};
  PcaResult pca;
  std::optional<Viewport> viewport;
};

/// enumerate -> chart -> PCA -> (cloud export, render). Streams the orbit
/// once per pass, so memory stays O(depth) regardless of point count.
PipelineSummary run_pipeline(const HyperCase& hc, const PipelineConfig& config);

}  // namespace sp6

#endif  // SP6_LIMITSET_HPP
