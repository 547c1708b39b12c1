#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "dexcube/certify.hpp"
#include "dexcube/kinematics.hpp"
#include "dexcube/machine.hpp"
#include "dexcube/report.hpp"
#include "dexcube/search.hpp"

namespace dexcube::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kDefaultBaseRadius = "7/13";
constexpr const char* kDefaultPlatformRadius = "3/26";

struct MachineArgs {
  std::string machine = "orthoglide";
  std::string leg_length = "1";
  std::string base_radius;
  std::string platform_radius;
  std::string lambda;
  std::string psi_max = "2";
  std::string signs;
};

struct SearchArgs {
  std::string alpha = "0.001";
  int workers = 1;
  std::size_t max_boxes = CubeSearchConfig{}.max_boxes;
  int split_budget = kDefaultSplitBudget;
  std::string output;
  bool deterministic = false;
};

struct Setup {
  MachineModel model;
  RunParams params;
};

double number(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

void add_machine_options(CLI::App* sub, MachineArgs& a, bool with_lambda) {
  sub->add_option("--machine", a.machine, "orthoglide or uranesx")
      ->check(CLI::IsMember({"orthoglide", "uranesx"}))
      ->capture_default_str();
  sub->add_option("--L", a.leg_length, "Leg length (decimal or p/q)")->capture_default_str();
  sub->add_option("--R", a.base_radius, "UraneSX base circumradius [7/13]");
  sub->add_option("--r", a.platform_radius, "UraneSX platform circumradius [3/26]");
  if (with_lambda) sub->add_option("--lambda", a.lambda, "UraneSX base enlargement, R' = R + lambda [0]");
  sub->add_option("--psi-max", a.psi_max, "Upper transmission bound; psi_min = 1/psi_max")->capture_default_str();
  sub->add_option("--signs", a.signs, "Branch signs of the three legs, e.g. -1,-1,-1");
}

void add_search_options(CLI::App* sub, SearchArgs& s, bool with_alpha) {
  if (with_alpha) sub->add_option("--alpha", s.alpha, "Half-edge accuracy threshold")->capture_default_str();
  sub->add_option("--workers", s.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--max-boxes", s.max_boxes, "Box budget before giving up")->capture_default_str();
  sub->add_option("--split-budget", s.split_budget, "Halvings per axis inside one certification")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--output", s.output, "Output file (standard output when absent)");
  sub->add_flag("--deterministic", s.deterministic, "Omit wall-clock fields");
}

BranchSigns parse_signs(const std::string& text, BranchSigns fallback) {
  if (text.empty()) return fallback;
  BranchSigns signs{};
  std::istringstream in(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 3 || (item != "1" && item != "+1" && item != "-1")) throw UsageError("--signs: expected three of +1/-1");
    signs[n++] = item == "-1" ? -1 : 1;
  }
  if (n != 3) throw UsageError("--signs: expected three of +1/-1");
  return signs;
}

Setup resolve(const MachineArgs& a, std::optional<double> lambda_override = std::nullopt) {
  RunParams params;
  params.kind = machine_kind_from_string(a.machine);
  params.leg_length = number(a.leg_length, "--L");
  try {
    params.spec = DextrousSpec::from_psi_max(number(a.psi_max, "--psi-max"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--psi-max: ") + e.what());
  }

  if (params.kind == MachineKind::Orthoglide) {
    if (!a.base_radius.empty() || !a.platform_radius.empty() || !a.lambda.empty() || lambda_override)
      throw UsageError("--R, --r and --lambda apply to the uranesx only");
    return {MachineModel::orthoglide(params.leg_length, parse_signs(a.signs, kOrthoglideDefaultSigns)), params};
  }
  params.base_radius = number(a.base_radius.empty() ? kDefaultBaseRadius : a.base_radius, "--R");
  params.platform_radius = number(a.platform_radius.empty() ? kDefaultPlatformRadius : a.platform_radius, "--r");
  params.lambda = lambda_override ? *lambda_override : number(a.lambda.empty() ? "0" : a.lambda, "--lambda");
  return {MachineModel::uranesx(params.leg_length, *params.base_radius + *params.lambda, *params.platform_radius,
                                parse_signs(a.signs, kUraneSXDefaultSigns)),
          params};
}

CubeSearchConfig search_config(const SearchArgs& s, const RunParams& params) {
  CubeSearchConfig cfg;
  cfg.alpha = params.alpha;
  cfg.spec = params.spec;
  cfg.max_boxes = s.max_boxes;
  cfg.split_budget = s.split_budget;
  cfg.workers = s.workers;
  return cfg;
}

double positive(const std::string& text, const char* flag) {
  const double v = number(text, flag);
  if (!(v > 0.0)) throw UsageError(std::string(flag) + " must be positive");
  return v;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("cannot write '" + path + "'");
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

std::string join(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

int cmd_eigen(const MachineArgs& a, const std::vector<std::string>& coords, std::ostream& out) {
  const Setup setup = resolve(a);
  const MachineModel& m = setup.model;
  const std::size_t need = m.kind() == MachineKind::Orthoglide ? 3 : 2;
  if (coords.size() != need && !(m.kind() == MachineKind::UraneSX && coords.size() == 3))
    throw UsageError(m.kind() == MachineKind::Orthoglide ? "eigen expects x y z" : "eigen expects x y [z]");
  Eigen::Vector3d pose = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < coords.size(); ++i) pose[static_cast<Eigen::Index>(i)] = number(coords[i], "pose");

  out << "machine " << m.name() << "\npose " << join(pose) << '\n';
  if ((leg_radicands<double>(m, pose).array() < 0.0).any()) {
    out << "reachable no\nstatus unreachable\n";
    return kUnreachable;
  }
  out << "reachable yes\nrho " << join(inverse_kinematics(m, pose)) << '\n';
  const SingularityMargins margins = singularity_margins(m, pose);
  Eigen::Vector3d psi;
  try {
    psi = transmission_factors(m, pose);
  } catch (const SingularConfiguration&) {
    out << "psi singular\ndet_a " << format_double(margins.det_a) << "\ndet_b " << format_double(margins.det_b)
        << "\nstatus singular\n";
    return kOutOfBounds;
  }
  const bool inside = setup.params.spec.admits(psi);
  out << "psi " << join(psi) << "\ndet_a " << format_double(margins.det_a) << "\ndet_b "
      << format_double(margins.det_b) << "\nstatus " << (inside ? "inside" : "outside") << '\n';
  return inside ? kOk : kOutOfBounds;
}

int cmd_certify_box(const MachineArgs& a, const SearchArgs& s, const std::vector<std::string>& bounds,
                    std::ostream& out) {
  const Setup setup = resolve(a);
  const MachineModel& m = setup.model;
  const auto d = static_cast<std::size_t>(m.search_dimension());
  if (bounds.size() != 2 * d) throw UsageError(d == 3 ? "certify-box expects six bounds" : "certify-box expects four bounds");
  IntervalVector dims(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const double lo = number(bounds[2 * i], "box");
    const double hi = number(bounds[2 * i + 1], "box");
    if (!(lo <= hi)) throw UsageError("box bounds must satisfy lo <= hi");
    dims[static_cast<Eigen::Index>(i)] = Interval(lo, hi);
  }
  const Box box(std::move(dims));
  const Reachability reach = in_reachable_domain(m, box);
  const BoxVerdict v = classify(m, box, setup.params.spec, s.split_budget);

  out << "machine " << m.name() << "\nbox";
  for (Eigen::Index i = 0; i < box.dim(); ++i)
    out << ' ' << Box::label(i) << " [" << format_double(box[i].lo()) << ", " << format_double(box[i].hi()) << ']';
  out << "\nreachability " << to_string(reach) << "\nverdict " << to_string(v.code) << '\n';
  if (v.witness.allFinite()) out << "sigma_mid " << join(v.witness) << '\n';

  switch (v.code) {
    case Verdict::Inside: return kOk;
    case Verdict::Outside: return reach == Reachability::Outside ? kUnreachable : kOutOfBounds;
    case Verdict::Undetermined: break;
  }
  return kBudgetExhausted;
}

int cmd_find_cube(const MachineArgs& a, const SearchArgs& s, const std::string& format, std::ostream& out,
                  std::ostream& err) {
  Setup setup = resolve(a);
  setup.params.alpha = positive(s.alpha, "--alpha");
  const CubeResult result = find_largest_cube(setup.model, search_config(s, setup.params));
  if (setup.model.kind() == MachineKind::UraneSX && result.half_edge > 0.0) {
    // Informational: z stroke the square needs, kept out of the fixed report schema.
    err << "z_range " << format_double(result.edge() + joint_stroke_range(setup.model, result.center, result.half_edge))
        << '\n';
  }
  emit(s.output,
       format == "csv" ? cube_report_csv(setup.params, result, s.deterministic)
                       : cube_report_json(setup.params, result, s.deterministic),
       out);
  return result.incomplete ? kBudgetExhausted : kOk;
}

int cmd_sweep(const MachineArgs& a, const SearchArgs& s, const std::vector<std::string>& lambdas, std::ostream& out,
              std::ostream& err) {
  if (a.machine != "uranesx") throw UsageError("sweep runs on the uranesx");
  const double alpha = positive(s.alpha, "--alpha");
  std::vector<double> values;
  for (const std::string& l : lambdas) values.push_back(number(l, "lambda"));

  std::vector<SweepRow> rows;
  bool incomplete = false;
  for (double lambda : values) {
    SweepRow row;
    row.lambda = lambda;
    try {
      Setup setup = resolve(a, lambda);
      setup.params.alpha = alpha;
      row.result = find_largest_cube(setup.model, search_config(s, setup.params));
      if (row.result->incomplete) {
        row.status = SweepStatus::Incomplete;
        incomplete = true;
      }
    } catch (const InvalidGeometry& e) {
      row.status = SweepStatus::InvalidGeometry;
      err << "lambda " << format_double(lambda) << ": " << e.what() << '\n';
    }
    rows.push_back(std::move(row));
  }
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  emit(s.output, csv.str(), out);
  return incomplete ? kBudgetExhausted : kOk;
}

int cmd_pave(const MachineArgs& a, const SearchArgs& s, const std::string& resolution, const std::string& svg_path,
             const std::string& slice, std::ostream& out) {
  const Setup setup = resolve(a);
  PavingOptions options;
  options.resolution = positive(resolution, "--resolution");
  options.max_boxes = s.max_boxes;
  options.split_budget = s.split_budget;
  options.workers = s.workers;
  const Paving paving = pave_dextrous_workspace(setup.model, setup.params.spec, options);

  std::ostringstream csv;
  write_paving_csv(csv, paving);
  emit(s.output, csv.str(), out);
  if (!svg_path.empty()) {
    std::ostringstream svg;
    const std::optional<double> z =
        setup.model.search_dimension() == 3 ? std::optional<double>(number(slice, "--slice")) : std::nullopt;
    write_paving_svg(svg, paving, default_search_domain(setup.model), z);
    write_file(svg_path, svg.str());
  }
  return paving.incomplete ? kBudgetExhausted : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified dextrous workspace of the Orthoglide and UraneSX machines"};
  app.name("dexcube");
  app.require_subcommand(1);

  MachineArgs machine;
  SearchArgs search;
  std::vector<std::string> positionals;
  std::string format = "json";
  std::string resolution = "0.05";
  std::string svg_path;
  std::string slice = "0";

  CLI::App* eigen = app.add_subcommand("eigen", "Transmission factors and singularity margins at a pose");
  add_machine_options(eigen, machine, true);
  eigen->add_option("pose", positionals, "x y [z]")->required();

  CLI::App* certify = app.add_subcommand("certify-box", "Classify a box of poses");
  add_machine_options(certify, machine, true);
  certify->add_option("--split-budget", search.split_budget, "Halvings per axis inside one certification")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  certify->add_option("bounds", positionals, "x_lo x_hi y_lo y_hi [z_lo z_hi]")->required();

  CLI::App* find = app.add_subcommand("find-cube", "Largest certified cube (square for the uranesx)");
  add_machine_options(find, machine, true);
  add_search_options(find, search, true);
  find->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "UraneSX square edge for a list of base enlargements");
  add_machine_options(sweep, machine, false);
  sweep->get_option("--machine")->default_str("uranesx");
  add_search_options(sweep, search, true);
  sweep->add_option("lambdas,--lambda", positionals, "lambda values")->delimiter(',');

  CLI::App* pave = app.add_subcommand("pave", "Paving of the workspace into inside, boundary and outside boxes");
  add_machine_options(pave, machine, true);
  add_search_options(pave, search, false);
  pave->add_option("--resolution", resolution, "Boundary boxes are narrower than this")->capture_default_str();
  pave->add_option("--svg", svg_path, "SVG slice output file");
  pave->add_option("--slice", slice, "z of the orthoglide slice drawn in the SVG")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (sweep->parsed() && sweep->get_option("--machine")->count() == 0) machine.machine = "uranesx";

  try {
    if (eigen->parsed()) return cmd_eigen(machine, positionals, out);
    if (certify->parsed()) return cmd_certify_box(machine, search, positionals, out);
    if (find->parsed()) return cmd_find_cube(machine, search, format, out, err);
    if (sweep->parsed()) return cmd_sweep(machine, search, positionals, out, err);
    if (pave->parsed()) return cmd_pave(machine, search, resolution, svg_path, slice, out);
  } catch (const IoError& e) {
    err << "dexcube: " << e.what() << '\n';
    return kIoError;
  } catch (const UsageError& e) {
    err << "dexcube: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    // Geometry or configuration rejected by the library before any computation.
    err << "dexcube: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace dexcube::cli
