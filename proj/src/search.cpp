#include "dexcube/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <thread>

#include "dexcube/kinematics.hpp"

namespace dexcube {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

// Points of the 3^d lattice {lo, mid, hi}^d of a box.
template <typename Fn>
bool any_lattice_point(const Point& lo, const Point& hi, Fn&& fn) {
  const Eigen::Index d = lo.size();
  int total = 1;
  for (Eigen::Index i = 0; i < d; ++i) total *= 3;
  Point q(d);
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (Eigen::Index i = 0; i < d; ++i, c /= 3) {
      const int which = c % 3;
      q[i] = which == 0 ? lo[i] : (which == 2 ? hi[i] : 0.5 * lo[i] + 0.5 * hi[i]);
    }
    if (fn(q)) return true;
  }
  return false;
}

class CubeSearch {
 public:
  CubeSearch(const MachineModel& m, const CubeSearchConfig& cfg)
      : m_(m), cfg_(cfg), domain_(cfg.initial_domain.value_or(default_search_domain(m))) {
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (domain_.dim() != m.search_dimension())
      throw std::invalid_argument("search domain dimension does not match the machine");
  }

  std::size_t classify_calls() const { return classify_calls_.load(); }
  const Box& domain() const { return domain_; }

  bool cube_inside(const Point& center, long k) {
    ++classify_calls_;
    return classify(m_, Box::cube(center, static_cast<double>(k) * cfg_.alpha), cfg_.spec, cfg_.split_budget)
               .code == Verdict::Inside;
  }

  // Largest k such that the cube of half edge k*alpha stays in the domain.
  long k_cap(const Point& center) const {
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < center.size(); ++i)
      dist = std::min({dist, center[i] - domain_[i].lo(), domain_[i].hi() - center[i]});
    if (!(dist >= 0.0)) return -1;
    return static_cast<long>(std::floor(dist / cfg_.alpha));
  }

  // Doubling schedule starting from a cube already expected to certify:
  // returns 0 when k_floor itself fails.
  long grow(const Point& center, long k_floor) {
    const long cap = k_cap(center);
    if (k_floor < 1 || k_floor > cap) return 0;
    if (!cube_inside(center, k_floor)) return 0;
    long good = k_floor;
    long step = 1;
    while (true) {
      const long k = good + step;
      if (k > cap || !cube_inside(center, k)) {
        if (step == 1) break;
        step = 1;
        continue;
      }
      good = k;
      step *= 2;
    }
    return good;
  }

  // True when no centre in `candidates` can host a certified cube of half
  // edge target_k * alpha: either the cube would leave the domain, or the
  // region common to all such cubes holds a pose outside the dextrous
  // workspace.
  bool fruitless(const Box& candidates, long target_k) const {
    const double half = static_cast<double>(target_k) * cfg_.alpha;
    const Eigen::Index d = candidates.dim();
    Point core_lo(d), core_hi(d);
    bool has_core = true;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (candidates[i].hi() < domain_[i].lo() + half || candidates[i].lo() > domain_[i].hi() - half) return true;
      core_lo[i] = candidates[i].hi() - half;
      core_hi[i] = candidates[i].lo() + half;
      if (core_lo[i] > core_hi[i]) has_core = false;
    }
    if (!has_core) return false;
    return any_lattice_point(core_lo, core_hi, [&](const Point& q) {
      return point_status(m_, q, cfg_.spec) != PointStatus::InBounds;
    });
  }

 private:
  const MachineModel& m_;
  const CubeSearchConfig& cfg_;
  Box domain_;
  std::atomic<std::size_t> classify_calls_{0};
};

struct BoxOutcome {
  long k = 0;
  bool split = false;
};

}  // namespace

Box default_search_domain(const MachineModel& m) {
  const double l = m.leg_length();
  IntervalVector dims(m.search_dimension());
  for (Eigen::Index i = 0; i < dims.size(); ++i) dims[i] = Interval(-l, l);
  return Box(std::move(dims));
}

double grow_cube_at(const MachineModel& m, const Point& center, const CubeSearchConfig& cfg) {
  if (center.size() != m.search_dimension()) throw std::invalid_argument("centre dimension does not match machine");
  CubeSearch search(m, cfg);
  return static_cast<double>(search.grow(center, 1)) * cfg.alpha;
}

CubeResult find_largest_cube(const MachineModel& m, const CubeSearchConfig& cfg) {
  const auto start = Clock::now();
  CubeSearch search(m, cfg);

  CubeResult result;
  result.alpha = cfg.alpha;
  result.center = search.domain().midpoint();
  long best_k = search.grow(result.center, 1);

  // FIFO work list of candidate-centre boxes; children go to the back.
  std::deque<Box> work{search.domain()};
  const std::size_t batch = cfg.workers > 1 ? 64 : 1;
  std::vector<Box> current;
  std::vector<BoxOutcome> outcomes;

  while (!work.empty()) {
    if (result.stats.boxes >= cfg.max_boxes) {
      result.incomplete = true;
      break;
    }
    current.clear();
    while (!work.empty() && current.size() < batch && result.stats.boxes + current.size() < cfg.max_boxes) {
      current.push_back(std::move(work.front()));
      work.pop_front();
    }
    outcomes.assign(current.size(), BoxOutcome{});
    const long target = best_k + 1;  // snapshot: never larger than the live best + 1

    parallel_for(current.size(), cfg.workers, [&](std::size_t i) {
      const Box& c = current[i];
      if (search.fruitless(c, target)) return;
      outcomes[i].k = search.grow(c.midpoint(), target);
      outcomes[i].split = c.width() > cfg.alpha;
    });

    for (std::size_t i = 0; i < current.size(); ++i) {
      ++result.stats.boxes;
      if (outcomes[i].k > best_k) {
        best_k = outcomes[i].k;
        result.center = current[i].midpoint();
      }
      if (outcomes[i].split) {
        auto [left, right] = current[i].bisect(current[i].widest_axis());
        work.push_back(std::move(left));
        work.push_back(std::move(right));
      }
    }
  }

  result.half_edge = static_cast<double>(best_k) * cfg.alpha;
  result.stats.classify_calls = search.classify_calls();
  result.stats.wall_ms = elapsed_ms(start);
  return result;
}

double Paving::measure(Verdict v) const {
  double total = 0.0;
  for (const PavedBox& pb : boxes) {
    if (pb.verdict != v) continue;
    double vol = 1.0;
    for (Eigen::Index i = 0; i < pb.box.dim(); ++i) vol *= pb.box[i].width();
    total += vol;
  }
  return total;
}

Paving pave_dextrous_workspace(const MachineModel& m, const DextrousSpec& spec, const PavingOptions& options) {
  if (!(options.resolution > 0.0)) throw std::invalid_argument("paving resolution must be positive");
  const auto start = Clock::now();
  Paving paving;
  std::vector<Box> level{options.domain.value_or(default_search_domain(m))};
  std::vector<Verdict> verdicts;

  while (!level.empty()) {
    if (paving.stats.boxes + level.size() > options.max_boxes) {
      paving.incomplete = true;
      for (Box& b : level) paving.boxes.push_back({std::move(b), Verdict::Undetermined});
      break;
    }
    verdicts.assign(level.size(), Verdict::Undetermined);
    parallel_for(level.size(), options.workers, [&](std::size_t i) {
      verdicts[i] = classify(m, level[i], spec, options.split_budget).code;
    });
    paving.stats.boxes += level.size();
    paving.stats.classify_calls += level.size();

    std::vector<Box> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (verdicts[i] == Verdict::Undetermined && level[i].width() >= options.resolution) {
        auto [left, right] = level[i].bisect(level[i].widest_axis());
        next.push_back(std::move(left));
        next.push_back(std::move(right));
      } else {
        paving.boxes.push_back({std::move(level[i]), verdicts[i]});
      }
    }
    level = std::move(next);
  }
  paving.stats.wall_ms = elapsed_ms(start);
  return paving;
}

double joint_stroke_range(const MachineModel& m, const Point& center, double half_edge, int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two samples per axis");
  const Eigen::Index d = center.size();
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  long total = 1;
  for (Eigen::Index i = 0; i < d; ++i) total *= samples;
  Point q(d);
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (Eigen::Index i = 0; i < d; ++i, c /= samples) {
      const double t = static_cast<double>(c % samples) / (samples - 1);
      q[i] = center[i] - half_edge + 2.0 * half_edge * t;
    }
    const Eigen::Vector3d rho = inverse_kinematics(m, pose_from_point(m, q));
    lo = lo.cwiseMin(rho);
    hi = hi.cwiseMax(rho);
  }
  return (hi - lo).maxCoeff();
}

}  // namespace dexcube
