#include <random>

#include "doctest.h"
#include "dexcube/search.hpp"
#include "oracle.hpp"

using namespace dexcube;

namespace {

const MachineModel kOrtho = MachineModel::orthoglide();

Point point3(double x, double y, double z) {
  Point p(3);
  p << x, y, z;
  return p;
}

CubeSearchConfig config(double alpha, double psi_max = 2.0) {
  CubeSearchConfig cfg;
  cfg.alpha = alpha;
  cfg.spec = DextrousSpec::from_psi_max(psi_max);
  return cfg;
}

// Largest multiple of alpha whose cube around c has only good points on a
// 21^3 sample lattice (including faces and corners).
double oracle_grow(const oracle::Geometry& g, const Eigen::Vector3d& c, double alpha) {
  auto ok = [&](double h) {
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j)
        for (int k = 0; k <= 20; ++k) {
          const Eigen::Vector3d p = c + h * Eigen::Vector3d(-1 + i / 10.0, -1 + j / 10.0, -1 + k / 10.0);
          if (!oracle::good(g, p, 0.5, 2.0)) return false;
        }
    return true;
  };
  int k = 0;
  while (ok((k + 1) * alpha)) ++k;
  return k * alpha;
}

double intersection_volume(const Box& a, const Box& b) {
  double v = 1.0;
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    v *= std::max(0.0, std::min(a[i].hi(), b[i].hi()) - std::max(a[i].lo(), b[i].lo()));
  return v;
}

const Paving& orthoglide_paving() {
  static const Paving paving = [] {
    PavingOptions options;
    options.resolution = 0.05;
    return pave_dextrous_workspace(kOrtho, DextrousSpec::from_psi_max(2.0), options);
  }();
  return paving;
}

const CubeResult& orthoglide_cube() {
  static const CubeResult result = find_largest_cube(kOrtho, config(0.001));
  return result;
}

}  // namespace

TEST_CASE("cube growth at the isotropic point matches the sampling oracle") {
  const double alpha = 0.001;
  const double h = grow_cube_at(kOrtho, point3(0, 0, 0), config(alpha));
  const double ref = oracle_grow(oracle::orthoglide(), Eigen::Vector3d::Zero(), alpha);
  CHECK(h <= ref + 1e-12);
  CHECK(ref - h <= 2 * alpha + 1e-12);
  CHECK(h <= 0.322);
  CHECK(h > 0.2);
}

TEST_CASE("cube growth from an unreachable centre returns zero") {
  CHECK(grow_cube_at(kOrtho, point3(0.9, 0.9, 0.9), config(0.01)) == 0.0);
  CHECK(grow_cube_at(kOrtho, point3(3, 0, 0), config(0.01)) == 0.0);
}

TEST_CASE("nested cubes certify monotonically in the half edge") {
  const CubeSearchConfig cfg = config(0.005);
  const double h = grow_cube_at(kOrtho, point3(0, 0, 0), cfg);
  const long k_max = std::lround(h / cfg.alpha);
  for (long k = 1; k <= k_max; k *= 2)
    CHECK(classify(kOrtho, Box::cube(point3(0, 0, 0), k * cfg.alpha), cfg.spec).code == Verdict::Inside);
  CHECK(classify(kOrtho, Box::cube(point3(0, 0, 0), k_max * cfg.alpha), cfg.spec).code == Verdict::Inside);
  CHECK(classify(kOrtho, Box::cube(point3(0, 0, 0), (k_max + 1) * cfg.alpha), cfg.spec).code != Verdict::Inside);
}

TEST_CASE("coarse Orthoglide search returns a certified cube near the reference cube") {
  const CubeResult r = find_largest_cube(kOrtho, config(0.01));
  CHECK_FALSE(r.incomplete);
  CHECK(classify(kOrtho, r.cube(), DextrousSpec::from_psi_max(2.0)).code == Verdict::Inside);
  CHECK(r.edge() >= 0.62);
  CHECK(r.edge() <= 0.66);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(r.center[i] - 0.086) <= 0.02);
  CHECK(r.stats.boxes > 0);
  CHECK(r.stats.classify_calls > 0);

  const CubeResult again = find_largest_cube(kOrtho, config(0.01));
  CHECK(again.center == r.center);
  CHECK(again.half_edge == r.half_edge);
  CHECK(again.stats.boxes == r.stats.boxes);
}

TEST_CASE("very coarse search stays within 0.2 of the fine result") {
  const CubeResult coarse = find_largest_cube(kOrtho, config(0.1));
  CHECK(coarse.stats.wall_ms < 5000);
  CHECK(std::abs(coarse.edge() - orthoglide_cube().edge()) <= 0.2);
}

TEST_CASE("parallel workers return a certified cube of the same size") {
  CubeSearchConfig cfg = config(0.01);
  cfg.workers = 3;
  const CubeResult r = find_largest_cube(kOrtho, cfg);
  CHECK(classify(kOrtho, r.cube(), cfg.spec).code == Verdict::Inside);
  CHECK(std::abs(r.edge() - find_largest_cube(kOrtho, config(0.01)).edge()) <= 2 * cfg.alpha + 1e-12);
}

TEST_CASE("box budget exhaustion is flagged") {
  CubeSearchConfig cfg = config(0.01);
  cfg.max_boxes = 10;
  const CubeResult r = find_largest_cube(kOrtho, cfg);
  CHECK(r.incomplete);
  CHECK(r.stats.boxes == 10);
  if (r.half_edge > 0) CHECK(classify(kOrtho, r.cube(), cfg.spec).code == Verdict::Inside);
}

TEST_CASE("edge shrinks with tighter transmission bounds") {
  const double e20 = find_largest_cube(kOrtho, config(0.02, 2.0)).edge();
  const double e15 = find_largest_cube(kOrtho, config(0.02, 1.5)).edge();
  const double e12 = find_largest_cube(kOrtho, config(0.02, 1.2)).edge();
  CHECK(e20 >= e15);
  CHECK(e15 >= e12);
  CHECK(e12 > 0.0);
}

TEST_CASE("UraneSX square for lambda = 0.2") {
  const MachineModel m = MachineModel::uranesx(1.0, 7.0 / 13.0 + 0.2, 3.0 / 26.0);
  CubeSearchConfig cfg = config(0.001);
  cfg.initial_domain = default_search_domain(m);
  const CubeResult r = find_largest_cube(m, cfg);
  CHECK(r.center.size() == 2);
  CHECK(std::abs(r.edge() - 0.32) <= 0.01);
  CHECK(classify(m, r.cube(), cfg.spec).code == Verdict::Inside);
}

TEST_CASE("joint stroke over a UraneSX square") {
  const MachineModel m = MachineModel::uranesx(1.0, 7.0 / 13.0, 3.0 / 26.0);
  Point c(2);
  c << -0.02, 0.0;
  const double stroke = joint_stroke_range(m, c, 0.25, 41);
  const oracle::Geometry g = oracle::uranesx(0.0);
  double ref = 0.0;
  for (int leg = 0; leg < 3; ++leg) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; j <= 40; ++j) {
        const double rho = (*oracle::joints(g, Eigen::Vector3d(-0.27 + 0.5 * i / 40, -0.25 + 0.5 * j / 40, 0)))[leg];
        lo = std::min(lo, rho);
        hi = std::max(hi, rho);
      }
    ref = std::max(ref, hi - lo);
  }
  CHECK(stroke == doctest::Approx(ref).epsilon(1e-12));
  CHECK(stroke > 0.0);
}

TEST_CASE("paving covers the domain and contains the reference cube") {
  const Paving& paving = orthoglide_paving();
  CHECK_FALSE(paving.incomplete);
  const double total = paving.measure(Verdict::Inside) + paving.measure(Verdict::Outside) +
                       paving.measure(Verdict::Undetermined);
  CHECK(total == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(paving.measure(Verdict::Inside) >= 0.644 * 0.644 * 0.644);
  for (const PavedBox& pb : paving.boxes)
    if (pb.verdict == Verdict::Undetermined) REQUIRE(pb.box.width() < 0.05);
}

TEST_CASE("inside boxes of the paving contain only good poses") {
  const Paving& paving = orthoglide_paving();
  std::vector<const Box*> inside;
  for (const PavedBox& pb : paving.boxes)
    if (pb.verdict == Verdict::Inside) inside.push_back(&pb.box);
  REQUIRE_FALSE(inside.empty());
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::size_t> pick(0, inside.size() - 1);
  const oracle::Geometry g = oracle::orthoglide();
  int violations = 0;
  for (int n = 0; n < 100000; ++n) {
    const Box& b = *inside[pick(rng)];
    Eigen::Vector3d p;
    for (int i = 0; i < 3; ++i) p[i] = std::uniform_real_distribution<double>(b[i].lo(), b[i].hi())(rng);
    if (!oracle::good(g, p, 0.5, 2.0)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("outside boxes of the paving do not meet the largest cube") {
  const Box cube = orthoglide_cube().cube();
  for (const PavedBox& pb : orthoglide_paving().boxes)
    if (pb.verdict == Verdict::Outside) REQUIRE(intersection_volume(pb.box, cube) == 0.0);
}

TEST_CASE("slice of the paving at z = 0.086 holds a 0.644 square of inside boxes") {
  const double z = 0.086, side = 0.644;
  const Box square{Interval(0.086 - side / 2, 0.086 + side / 2), Interval(0.086 - side / 2, 0.086 + side / 2)};
  double covered = 0.0;
  for (const PavedBox& pb : orthoglide_paving().boxes) {
    if (pb.verdict != Verdict::Inside || !(pb.box[2].lo() <= z && z < pb.box[2].hi())) continue;
    covered += intersection_volume(Box{pb.box[0], pb.box[1]}, square);
  }
  CHECK(covered == doctest::Approx(side * side).epsilon(1e-12));
}

TEST_CASE("UraneSX paving") {
  const MachineModel m = MachineModel::uranesx(1.0, 7.0 / 13.0, 3.0 / 26.0);
  PavingOptions options;
  options.resolution = 0.05;
  const Paving paving = pave_dextrous_workspace(m, DextrousSpec::from_psi_max(2.0), options);
  CHECK(paving.measure(Verdict::Inside) >= 0.51 * 0.51);

  options.resolution = 0.5;
  const Paving coarse = pave_dextrous_workspace(m, DextrousSpec::from_psi_max(2.0), options);
  CHECK(coarse.boxes.size() < paving.boxes.size());
  CHECK(coarse.boxes.size() <= 64);

  options.max_boxes = 5;
  const Paving capped = pave_dextrous_workspace(m, DextrousSpec::from_psi_max(2.0), options);
  CHECK(capped.incomplete);
}
