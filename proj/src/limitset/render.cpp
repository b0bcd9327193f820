#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <limits>
#include <memory>

#include "sp6/limitset.hpp"

namespace sp6 {

Rgb tag_color(GeneratorTag t) {
  switch (t) {
    case GeneratorTag::a: return {255, 0, 0};
    case GeneratorTag::A: return {255, 255, 0};
    case GeneratorTag::b: return {0, 255, 0};
    case GeneratorTag::B: return {0, 0, 255};
    case GeneratorTag::seed: return {128, 128, 128};
  }
  return {255, 255, 255};
}

Viewport fit_viewport(double xmin, double xmax, double ymin, double ymax) {
  auto pad = [](double& lo, double& hi) {
    const double span = hi - lo;
    if (!(span > 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)}))) {
      const double mid = 0.5 * (lo + hi);
      lo = mid - 0.5;
      hi = mid + 0.5;
    } else {
      lo -= 0.02 * span;
      hi += 0.02 * span;
    }
  };
  pad(xmin, xmax);
  pad(ymin, ymax);
  return {xmin, xmax, ymin, ymax};
}

ScatterRaster::ScatterRaster(int width, int height, const Viewport& view)
    : width_(width), height_(height), view_(view) {
  if (width <= 0 || height <= 0) throw RenderError("canvas size must be positive");
  if (!(view.xmax > view.xmin) || !(view.ymax > view.ymin)) throw RenderError("empty viewport");
  counts_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), {});
}

void ScatterRaster::add(double x, double y, GeneratorTag tag) {
  if (!(x >= view_.xmin && x <= view_.xmax && y >= view_.ymin && y <= view_.ymax)) return;
  const int px = std::min(width_ - 1, static_cast<int>((x - view_.xmin) / (view_.xmax - view_.xmin) * width_));
  const int py = std::min(height_ - 1, static_cast<int>((y - view_.ymin) / (view_.ymax - view_.ymin) * height_));
  const std::size_t row = static_cast<std::size_t>(height_ - 1 - py);
  auto& cell = counts_[row * static_cast<std::size_t>(width_) + static_cast<std::size_t>(px)];
  auto& c = cell[static_cast<std::size_t>(tag)];
  if (c != std::numeric_limits<std::uint32_t>::max()) ++c;
  ++plotted_;
}

void ScatterRaster::merge(const ScatterRaster& other) {
  if (other.width_ != width_ || other.height_ != height_) throw RenderError("raster size mismatch");
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    for (std::size_t t = 0; t < kTagCount; ++t) {
      const std::uint64_t sum = std::uint64_t{counts_[i][t]} + other.counts_[i][t];
      counts_[i][t] = static_cast<std::uint32_t>(
          std::min<std::uint64_t>(sum, std::numeric_limits<std::uint32_t>::max()));
    }
  }
  plotted_ += other.plotted_;
}

std::vector<std::uint8_t> ScatterRaster::to_rgb(double alpha) const {
  std::vector<std::uint8_t> out(counts_.size() * 3, 0);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    double r = 0, g = 0, b = 0;
    for (std::size_t t = 0; t < kTagCount; ++t) {
      const std::uint32_t n = counts_[i][t];
      if (n == 0) continue;
      const Rgb c = tag_color(static_cast<GeneratorTag>(t));
      const double w = alpha * n;
      r += w * c.r;
      g += w * c.g;
      b += w * c.b;
    }
    auto clamp8 = [](double v) {
      return static_cast<std::uint8_t>(std::lround(std::min(255.0, v)));
    };
    out[3 * i] = clamp8(r);
    out[3 * i + 1] = clamp8(g);
    out[3 * i + 2] = clamp8(b);
  }
  return out;
}

void write_png(const std::filesystem::path& path, int width, int height,
               std::span<const std::uint8_t> rgb) {
  if (rgb.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3) {
    throw RenderError("pixel buffer size does not match canvas");
  }
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw RenderError("cannot open " + path.string() + " for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw RenderError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw RenderError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw RenderError("libpng failed while writing " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    auto* row = const_cast<png_bytep>(rgb.data() + static_cast<std::size_t>(y) * width * 3);
    png_write_row(png, row);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(fp.get()) != 0) throw RenderError("write error on " + path.string());
}

void render_scatter(std::span<const ProjectedPoint> points, const PcaResult& pca,
                    const RenderOptions& options, const std::filesystem::path& out) {
  if (points.empty()) throw RenderError("nothing to render");
  const auto vert = static_cast<std::size_t>(options.vertical_component);
  if (vert != 1 && vert != 2) throw RenderError("vertical component must be 1 or 2");

  std::vector<std::array<double, 3>> coords;
  coords.reserve(points.size());
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& p : points) {
    coords.push_back(pca.project(p.p));
    xmin = std::min(xmin, coords.back()[0]);
    xmax = std::max(xmax, coords.back()[0]);
    ymin = std::min(ymin, coords.back()[vert]);
    ymax = std::max(ymax, coords.back()[vert]);
  }
  const Viewport view = options.window ? *options.window : fit_viewport(xmin, xmax, ymin, ymax);
  ScatterRaster raster(options.width, options.height, view);
  for (std::size_t i = 0; i < points.size(); ++i) {
    raster.add(coords[i][0], coords[i][vert], points[i].tag);
  }
  write_png(out, options.width, options.height, raster.to_rgb(options.alpha));
}

}  // namespace sp6
