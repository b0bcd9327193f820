#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>

#include "sp6/hypergeo.hpp"
#include "sp6/limitset.hpp"

namespace sp6 {

namespace {

// Pass 1: per-task PCA accumulators, merged in task order so the result
// does not depend on scheduling.
class PcaSink : public OrbitSink {
 public:
  PcaSink(const Chart& chart, std::size_t tasks) : chart_(chart), tasks_(tasks) {}

  void consume(std::size_t task, std::span<const OrbitPoint> chunk) override {
    auto& t = tasks_.at(task);
    for (const auto& pt : chunk) {
      if (auto p = chart_.project(pt.v)) {
        t.pca.add(*p);
        ++t.by_tag[static_cast<std::size_t>(pt.tag)];
      }
    }
  }

  StreamingPca merged() const {
    StreamingPca all;
    for (const auto& t : tasks_) all.merge(t.pca);
    return all;
  }
  std::array<std::uint64_t, kTagCount> by_tag() const {
    std::array<std::uint64_t, kTagCount> out{};
    for (const auto& t : tasks_) {
      for (std::size_t i = 0; i < kTagCount; ++i) out[i] += t.by_tag[i];
    }
    return out;
  }

 private:
  struct Task {
    StreamingPca pca;
    std::array<std::uint64_t, kTagCount> by_tag{};
  };
  const Chart& chart_;
  std::vector<Task> tasks_;
};

class BoundsSink : public OrbitSink {
 public:
  BoundsSink(const Chart& chart, const PcaResult& pca, std::size_t vert)
      : chart_(chart), pca_(pca), vert_(vert) {}

  void consume(std::size_t, std::span<const OrbitPoint> chunk) override {
    double lo[2] = {inf, inf}, hi[2] = {-inf, -inf};
    for (const auto& pt : chunk) {
      if (auto p = chart_.project(pt.v)) {
        const auto c = pca_.project(*p);
        const double xy[2] = {c[0], c[vert_]};
        for (int k = 0; k < 2; ++k) {
          lo[k] = std::min(lo[k], xy[k]);
          hi[k] = std::max(hi[k], xy[k]);
        }
      }
    }
    std::lock_guard lock(mu_);
    for (int k = 0; k < 2; ++k) {
      lo_[k] = std::min(lo_[k], lo[k]);
      hi_[k] = std::max(hi_[k], hi[k]);
    }
  }

  Viewport viewport() const { return fit_viewport(lo_[0], hi_[0], lo_[1], hi_[1]); }

 private:
  static constexpr double inf = std::numeric_limits<double>::infinity();
  const Chart& chart_;
  const PcaResult& pca_;
  std::size_t vert_;
  std::mutex mu_;
  double lo_[2] = {inf, inf};
  double hi_[2] = {-inf, -inf};
};

void store_u64_le(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

// Pass 2/3: raster and/or cloud export.
class OutputSink : public OrbitSink {
 public:
  OutputSink(const Chart& chart, const PcaResult& pca, std::size_t vert, ScatterRaster* raster,
             std::ostream* cloud, CloudFormat format)
      : chart_(chart), pca_(pca), vert_(vert), raster_(raster), cloud_(cloud), format_(format) {}

  void consume(std::size_t, std::span<const OrbitPoint> chunk) override {
    std::vector<CloudRecord> recs;
    recs.reserve(chunk.size());
    for (const auto& pt : chunk) {
      if (auto p = chart_.project(pt.v)) recs.push_back({pca_.project(*p), pt.tag, pt.length});
    }
    std::string text;
    if (cloud_ && format_ == CloudFormat::text) {
      for (const auto& r : recs) {
        text += format_cloud_line(r);
        text += '\n';
      }
    }
    std::lock_guard lock(mu_);
    if (raster_) {
      for (const auto& r : recs) raster_->add(r.xyz[0], r.xyz[vert_], r.tag);
    }
    if (cloud_) {
      if (format_ == CloudFormat::text) {
        *cloud_ << text;
      } else {
        for (const auto& r : recs) {
          for (double x : r.xyz) store_u64_le(*cloud_, std::bit_cast<std::uint64_t>(x));
          cloud_->put(tag_char(r.tag));
          cloud_->put(static_cast<char>(r.length));
        }
      }
      written_ += recs.size();
    }
  }

  std::uint64_t written() const { return written_; }

 private:
  const Chart& chart_;
  const PcaResult& pca_;
  std::size_t vert_;
  ScatterRaster* raster_;
  std::ostream* cloud_;
  CloudFormat format_;
  std::mutex mu_;
  std::uint64_t written_ = 0;
};

}  // namespace

PipelineSummary run_pipeline(const HyperCase& hc, const PipelineConfig& config) {
  if (hc.dimension() != kDim) throw DimensionMismatch("orbit pipeline needs a degree-six case");
  const auto vert = static_cast<std::size_t>(config.render.vertical_component);
  if (vert != 1 && vert != 2) throw RenderError("vertical component must be 1 or 2");

  PipelineSummary s;
  const OrbitGenerators gens = make_generators(hc);
  s.gap = spectral_gap(loxodromic_eta(hc));
  s.seed = dominant_eigenvector(gens.eta);
  const Chart chart = config.orbit.chart ? Chart(*config.orbit.chart, config.orbit.cutoff)
                                         : Chart::automatic(s.seed.vector, config.orbit.cutoff);
  s.chart_functional = chart.functional();
  const std::size_t tasks = orbit_task_count(config.orbit.depth);

  PcaSink pca_sink(chart, tasks);
  s.emitted = enumerate_orbit(gens, s.seed.vector, config.orbit, pca_sink);
  const StreamingPca acc = pca_sink.merged();
  s.retained = acc.count();
  s.retained_by_tag = pca_sink.by_tag();
  if (s.retained == 0) throw AllPointsDiscarded("every orbit point fell below the chart cutoff");
  s.pca = acc.finish();

  if (!config.image_out && !config.cloud_out) return s;

  std::optional<ScatterRaster> raster;
  if (config.image_out) {
    Viewport view;
    if (config.render.window) {
      view = *config.render.window;
    } else {
      BoundsSink bounds(chart, s.pca, vert);
      enumerate_orbit(gens, s.seed.vector, config.orbit, bounds);
      view = bounds.viewport();
    }
    s.viewport = view;
    raster.emplace(config.render.width, config.render.height, view);
  }

  std::ofstream cloud;
  if (config.cloud_out) {
    cloud.open(*config.cloud_out, std::ios::binary | std::ios::trunc);
    if (!cloud) throw std::runtime_error("cannot open " + config.cloud_out->string());
    if (config.cloud_format == CloudFormat::binary) {
      cloud.write(kCloudMagic.data(), static_cast<std::streamsize>(kCloudMagic.size()));
      store_u64_le(cloud, 0);  // patched below
    }
  }

  OutputSink out(chart, s.pca, vert, raster ? &*raster : nullptr,
                 config.cloud_out ? &cloud : nullptr, config.cloud_format);
  enumerate_orbit(gens, s.seed.vector, config.orbit, out);

  if (config.cloud_out) {
    if (config.cloud_format == CloudFormat::binary) {
      cloud.seekp(static_cast<std::streamoff>(kCloudMagic.size()));
      store_u64_le(cloud, out.written());
    }
    cloud.close();
    if (!cloud) throw std::runtime_error("write error on " + config.cloud_out->string());
  }
  if (raster) write_png(*config.image_out, raster->width(), raster->height(),
                        raster->to_rgb(config.render.alpha));
  return s;
}

}  // namespace sp6
