#ifndef DEXCUBE_REPORT_HPP
#define DEXCUBE_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dexcube/certify.hpp"
#include "dexcube/machine.hpp"
#include "dexcube/search.hpp"

namespace dexcube {

/// Parses "3/26", "0.5", "-1e-3". Throws std::invalid_argument on anything
/// else (trailing characters, zero denominator, non-finite values).
double parse_rational(std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Parameters echoed in reports. R, r and lambda are absent for the Orthoglide.
struct RunParams {
  MachineKind kind = MachineKind::Orthoglide;
  double leg_length = 1.0;
  std::optional<double> base_radius;
  std::optional<double> platform_radius;
  std::optional<double> lambda;
  DextrousSpec spec = DextrousSpec::from_psi_max(2.0);
  double alpha = 1e-3;
};

/// {machine, params{L,R,r,lambda,psi_min,psi_max,alpha}, cube{center, edge},
///  stats{boxes, classify_calls, wall_ms}, incomplete}; wall_ms is left out
/// when deterministic. Pretty-printed with a trailing newline.
std::string cube_report_json(const RunParams& params, const CubeResult& result, bool deterministic);

/// Header plus one row with the same fields as the JSON report.
std::string cube_report_csv(const RunParams& params, const CubeResult& result, bool deterministic);

enum class SweepStatus { Ok, InvalidGeometry, Incomplete };
const char* to_string(SweepStatus s);

struct SweepRow {
  double lambda = 0.0;
  SweepStatus status = SweepStatus::Ok;
  std::optional<CubeResult> result;  // absent for invalid geometry
};

/// lambda,center_x,center_y,edge,status. Rows without a result leave the
/// numeric fields empty.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// One row per box: per-axis lo/hi then the verdict (inside, outside,
/// boundary).
void write_paving_csv(std::ostream& out, const Paving& paving);

const char* paving_label(Verdict v);

/// Standalone SVG of the boxes meeting the plane z = z_slice (3D pavings) or
/// of all boxes (2D pavings), drawn with rect elements only: inside filled
/// green, boundary yellow, outside grey. The drawing covers `frame`'s x-y
/// extent with y pointing up.
void write_paving_svg(std::ostream& out, const Paving& paving, const Box& frame, std::optional<double> z_slice);

}  // namespace dexcube

#endif  // DEXCUBE_REPORT_HPP
