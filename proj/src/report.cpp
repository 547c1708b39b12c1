#include "dexcube/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace dexcube {

namespace {

using Json = nlohmann::ordered_json;

double parse_decimal(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  return v;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

const char* kCsvCubeHeader =
    "machine,L,R,r,lambda,psi_min,psi_max,alpha,center_x,center_y,center_z,edge,boxes,classify_calls,wall_ms,"
    "incomplete";

std::string csv_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

const char* svg_fill(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "#3a9d5d";
    case Verdict::Outside: return "#c8c8c8";
    case Verdict::Undetermined: return "#f2c94c";
  }
  return "none";
}

}  // namespace

double parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  double v = 0.0;
  if (slash == std::string_view::npos) {
    v = parse_decimal(text, text);
  } else {
    const double num = parse_decimal(text.substr(0, slash), text);
    const double den = parse_decimal(text.substr(slash + 1), text);
    if (den == 0.0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    v = num / den;
  }
  if (!std::isfinite(v)) throw std::invalid_argument("not a finite number: '" + std::string(text) + "'");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string cube_report_json(const RunParams& params, const CubeResult& result, bool deterministic) {
  Json center = Json::array();
  for (Eigen::Index i = 0; i < result.center.size(); ++i) center.push_back(result.center[i]);

  Json stats = {{"boxes", result.stats.boxes}, {"classify_calls", result.stats.classify_calls}};
  if (!deterministic) stats["wall_ms"] = result.stats.wall_ms;

  const Json report = {
      {"machine", std::string(to_string(params.kind))},
      {"params",
       {{"L", params.leg_length},
        {"R", optional_number(params.base_radius)},
        {"r", optional_number(params.platform_radius)},
        {"lambda", optional_number(params.lambda)},
        {"psi_min", params.spec.psi_min()},
        {"psi_max", params.spec.psi_max()},
        {"alpha", params.alpha}}},
      {"cube", {{"center", center}, {"edge", result.edge()}}},
      {"stats", stats},
      {"incomplete", result.incomplete},
  };
  return report.dump(2) + "\n";
}

std::string cube_report_csv(const RunParams& params, const CubeResult& result, bool deterministic) {
  std::ostringstream out;
  out << kCsvCubeHeader << '\n';
  out << to_string(params.kind) << ',' << format_double(params.leg_length) << ','
      << csv_optional(params.base_radius) << ',' << csv_optional(params.platform_radius) << ','
      << csv_optional(params.lambda) << ',' << format_double(params.spec.psi_min()) << ','
      << format_double(params.spec.psi_max()) << ',' << format_double(params.alpha);
  for (Eigen::Index i = 0; i < 3; ++i)
    out << ',' << (i < result.center.size() ? format_double(result.center[i]) : std::string());
  out << ',' << format_double(result.edge()) << ',' << result.stats.boxes << ',' << result.stats.classify_calls
      << ',' << (deterministic ? std::string() : format_double(result.stats.wall_ms)) << ','
      << (result.incomplete ? "true" : "false") << '\n';
  return out.str();
}

const char* to_string(SweepStatus s) {
  switch (s) {
    case SweepStatus::Ok: return "ok";
    case SweepStatus::InvalidGeometry: return "invalid-geometry";
    case SweepStatus::Incomplete: return "incomplete";
  }
  return "?";
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "lambda,center_x,center_y,edge,status\n";
  for (const SweepRow& row : rows) {
    out << format_double(row.lambda) << ',';
    if (row.result)
      out << format_double(row.result->center[0]) << ',' << format_double(row.result->center[1]) << ','
          << format_double(row.result->edge());
    else
      out << ",,";
    out << ',' << to_string(row.status) << '\n';
  }
}

const char* paving_label(Verdict v) { return v == Verdict::Undetermined ? "boundary" : to_string(v); }

void write_paving_csv(std::ostream& out, const Paving& paving) {
  const Eigen::Index d = paving.boxes.empty() ? 0 : paving.boxes.front().box.dim();
  for (Eigen::Index i = 0; i < d; ++i) {
    const std::string axis(Box::label(i));
    out << axis << "_lo," << axis << "_hi,";
  }
  out << "verdict\n";
  for (const PavedBox& pb : paving.boxes) {
    for (Eigen::Index i = 0; i < d; ++i)
      out << format_double(pb.box[i].lo()) << ',' << format_double(pb.box[i].hi()) << ',';
    out << paving_label(pb.verdict) << '\n';
  }
}

void write_paving_svg(std::ostream& out, const Paving& paving, const Box& frame, std::optional<double> z_slice) {
  constexpr double kPixels = 800.0;
  const double x0 = frame[0].lo();
  const double y1 = frame[1].hi();
  const double scale = kPixels / std::max(frame[0].width(), frame[1].width());
  const double width = frame[0].width() * scale;
  const double height = frame[1].width() * scale;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width) << "\" height=\""
      << format_double(height) << "\" viewBox=\"0 0 " << format_double(width) << ' ' << format_double(height)
      << "\">\n";
  for (const PavedBox& pb : paving.boxes) {
    if (pb.box.dim() == 3 && z_slice) {
      // Half-open in z so a slice on a shared face picks one layer; the top face of the frame is closed.
      const Interval& z = pb.box[2];
      const bool top = frame.dim() == 3 && z.hi() == frame[2].hi();
      if (!(z.lo() <= *z_slice && (*z_slice < z.hi() || (top && *z_slice == z.hi())))) continue;
    }
    const double x = (pb.box[0].lo() - x0) * scale;
    const double y = (y1 - pb.box[1].hi()) * scale;
    out << "<rect class=\"" << paving_label(pb.verdict) << "\" x=\"" << format_double(x) << "\" y=\""
        << format_double(y) << "\" width=\"" << format_double(pb.box[0].width() * scale) << "\" height=\""
        << format_double(pb.box[1].width() * scale) << "\" fill=\"" << svg_fill(pb.verdict)
        << "\" stroke=\"#404040\" stroke-width=\"0.5\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace dexcube
