#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <thread>

#include "sp6/hypergeo.hpp"
#include "sp6/limitset.hpp"

namespace sp6 {

namespace {

constexpr std::size_t kGenerators = 4;
// A <-> a, B <-> b under the GeneratorTag numbering
constexpr std::size_t inverse_of(std::size_t g) { return g ^ 2U; }

Vec6 step(const Mat6& g, const Vec6& v) {
  Vec6 w = mat_vec(g, v);
  const double n = vec_norm(w);
  for (auto& x : w) x /= n;
  return w;
}

class TaskEmitter {
 public:
  TaskEmitter(OrbitSink& sink, std::size_t task, std::size_t chunk)
      : sink_(sink), task_(task), chunk_(chunk) {
    buf_.reserve(chunk_);
  }
  void emit(const Vec6& v, GeneratorTag tag, int length) {
    buf_.push_back(OrbitPoint{v, tag, static_cast<std::uint8_t>(length)});
    ++count_;
    if (buf_.size() >= chunk_) flush();
  }
  void flush() {
    if (buf_.empty()) return;
    sink_.consume(task_, buf_);
    buf_.clear();
  }
  std::uint64_t count() const { return count_; }

 private:
  OrbitSink& sink_;
  std::size_t task_;
  std::size_t chunk_;
  std::vector<OrbitPoint> buf_;
  std::uint64_t count_ = 0;
};

// Subtree below a node at `depth` whose last letter is `last`.
void traverse(const OrbitGenerators& gens, const Vec6& root, std::size_t last, int depth,
              int max_depth, bool check_reduced, TaskEmitter& out) {
  const int levels = max_depth - depth;
  if (levels <= 0) return;
  std::vector<Vec6> vecs(static_cast<std::size_t>(levels) + 1);
  std::vector<std::size_t> letter(static_cast<std::size_t>(levels) + 1);
  std::vector<std::size_t> next(static_cast<std::size_t>(levels) + 1, 0);
  vecs[0] = root;
  letter[0] = last;
  std::size_t level = 0;
  while (true) {
    if (next[level] == kGenerators) {
      if (level == 0) break;
      --level;
      continue;
    }
    const std::size_t g = next[level]++;
    if (g == inverse_of(letter[level])) continue;
    const std::size_t child = level + 1;
    vecs[child] = step(gens.generators[g], vecs[level]);
    letter[child] = g;
    if (check_reduced) {
      for (std::size_t k = 1; k <= child; ++k) {
        if (letter[k] == inverse_of(letter[k - 1])) {
          throw std::logic_error("orbit traversal produced an unreduced word");
        }
      }
    }
    out.emit(vecs[child], static_cast<GeneratorTag>(g), depth + static_cast<int>(child));
    if (static_cast<int>(child) < levels) {
      level = child;
      next[level] = 0;
    }
  }
}

}  // namespace

char tag_char(GeneratorTag t) {
  switch (t) {
    case GeneratorTag::A: return 'A';
    case GeneratorTag::B: return 'B';
    case GeneratorTag::a: return 'a';
    case GeneratorTag::b: return 'b';
    case GeneratorTag::seed: return 's';
  }
  return '?';
}

std::string_view tag_name(GeneratorTag t) {
  switch (t) {
    case GeneratorTag::A: return "A";
    case GeneratorTag::B: return "B";
    case GeneratorTag::a: return "a";
    case GeneratorTag::b: return "b";
    case GeneratorTag::seed: return "seed";
  }
  return "?";
}

ExactMatrix loxodromic_eta(const HyperCase& hc) {
  const ExactMatrix t = hc.T();
  return t * hc.B * t;
}

OrbitGenerators make_generators(const HyperCase& hc) {
  return OrbitGenerators{{to_float(hc.A), to_float(hc.B), to_float(hc.A_inv), to_float(hc.B_inv)},
                         to_float(loxodromic_eta(hc))};
}

std::uint64_t orbit_size(int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  std::uint64_t p = 1;
  for (int i = 0; i < depth; ++i) p *= 3;
  return 2 * p - 1;
}

std::size_t orbit_task_count(int depth) { return depth >= 2 ? 13 : 1; }

std::uint64_t enumerate_orbit(const OrbitGenerators& gens, const Vec6& seed,
                              const OrbitConfig& config, OrbitSink& sink) {
  if (config.depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (config.depth > 255) throw std::invalid_argument("depth must fit in one byte");
  const std::size_t chunk = std::max<std::size_t>(config.chunk_size, 1);

  // reduced length-2 prefixes (first, second)
  std::vector<std::pair<std::size_t, std::size_t>> prefixes;
  for (std::size_t g1 = 0; g1 < kGenerators; ++g1) {
    for (std::size_t g2 = 0; g2 < kGenerators; ++g2) {
      if (g2 != inverse_of(g1)) prefixes.emplace_back(g1, g2);
    }
  }

  std::atomic<std::uint64_t> total{0};
  {
    TaskEmitter out(sink, 0, chunk);
    out.emit(seed, GeneratorTag::seed, 0);
    if (config.depth >= 1) {
      for (std::size_t g = 0; g < kGenerators; ++g) {
        out.emit(step(gens.generators[g], seed), static_cast<GeneratorTag>(g), 1);
      }
    }
    out.flush();
    total += out.count();
  }
  if (config.depth < 2) return total;

  std::atomic<std::size_t> next_task{0};
  auto worker = [&] {
    for (std::size_t i = next_task++; i < prefixes.size(); i = next_task++) {
      const auto [g1, g2] = prefixes[i];
      // same float path as a sequential walk from the seed
      const Vec6 v1 = step(gens.generators[g1], seed);
      const Vec6 v2 = step(gens.generators[g2], v1);
      TaskEmitter out(sink, i + 1, chunk);
      out.emit(v2, static_cast<GeneratorTag>(g2), 2);
      traverse(gens, v2, g2, 2, config.depth, config.check_reduced, out);
      out.flush();
      total += out.count();
    }
  };

  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(prefixes.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        try {
          worker();
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next_task = prefixes.size();
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  return total;
}

void CollectingSink::consume(std::size_t task, std::span<const OrbitPoint> chunk) {
  auto& dst = per_task_.at(task);
  dst.insert(dst.end(), chunk.begin(), chunk.end());
}

std::vector<OrbitPoint> CollectingSink::points() const {
  std::vector<OrbitPoint> out;
  for (const auto& t : per_task_) out.insert(out.end(), t.begin(), t.end());
  return out;
}

}  // namespace sp6
