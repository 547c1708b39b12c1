#ifndef DEXCUBE_SEARCH_HPP
#define DEXCUBE_SEARCH_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "dexcube/box.hpp"
#include "dexcube/certify.hpp"
#include "dexcube/machine.hpp"

namespace dexcube {

struct CubeSearchConfig {
  /// Accuracy threshold: half edges are multiples of alpha.
  double alpha = 1e-3;
  DextrousSpec spec = DextrousSpec::from_psi_max(2.0);
  /// Region searched for centres; defaults to [-L, L]^d.
  std::optional<Box> initial_domain;
  /// Work-list boxes processed before giving up (result flagged incomplete).
  std::size_t max_boxes = 20'000'000;
  int split_budget = kDefaultSplitBudget;
  /// 1 runs the sequential reference traversal. More workers process the
  /// work list in fixed-size batches against a snapshot of the best cube.
  int workers = 1;
};

struct SearchStats {
  std::size_t boxes = 0;
  std::size_t classify_calls = 0;
  double wall_ms = 0.0;
};

/// Largest certified cube (square for the UraneSX) found by the search.
///
/// Guarantee: the cube [center - W, center + W] classifies Inside, and every
/// candidate centre the search discarded was shown (by a point of the
/// dextrous-workspace complement common to all cubes of half edge W + alpha
/// around it) not to host such a cube. Centres in boxes narrower than alpha
/// are represented by the box midpoint only, so the bound "no cube of half
/// edge W + alpha exists" holds at alpha resolution, not absolutely.
struct CubeResult {
  Point center;
  double half_edge = 0.0;
  double alpha = 0.0;
  SearchStats stats;
  bool incomplete = false;

  double edge() const { return 2.0 * half_edge; }
  Box cube() const { return Box::cube(center, half_edge); }
};

/// [-L, L]^d with d the machine's search dimension.
Box default_search_domain(const MachineModel& m);

/// Largest k*alpha such that the cube of half edge k*alpha around the centre
/// classifies Inside while (k+1)*alpha does not, found by doubling k and
/// restarting from k/2 + 1 after a failure. 0 when even alpha fails.
double grow_cube_at(const MachineModel& m, const Point& center, const CubeSearchConfig& cfg);

/// Branch and bound over candidate centres for the largest enclosed cube.
CubeResult find_largest_cube(const MachineModel& m, const CubeSearchConfig& cfg);

struct PavingOptions {
  /// Undetermined boxes narrower than this are reported as boundary boxes.
  double resolution = 0.05;
  std::size_t max_boxes = 5'000'000;
  int split_budget = kDefaultSplitBudget;
  int workers = 1;
  std::optional<Box> domain;
};

struct PavedBox {
  Box box;
  Verdict verdict;  // Undetermined marks a boundary box
};

struct Paving {
  std::vector<PavedBox> boxes;
  bool incomplete = false;
  SearchStats stats;

  /// Total volume (area in 2D) of the boxes with the given verdict.
  double measure(Verdict v) const;
};

/// Paving of the initial domain into Inside, Outside and boundary boxes.
/// Union(Inside) is contained in the dextrous workspace, which is contained
/// in Union(Inside) + Union(boundary).
Paving pave_dextrous_workspace(const MachineModel& m, const DextrousSpec& spec, const PavingOptions& options);

/// Joint stroke needed to sweep a UraneSX square at fixed z: the largest
/// (max - min) of any rho_i over a sample grid of the square.
double joint_stroke_range(const MachineModel& m, const Point& center, double half_edge, int samples = 101);

}  // namespace dexcube

#endif  // DEXCUBE_SEARCH_HPP
