#include "projdim_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "projdim/cover.hpp"
#include "projdim/ergodic.hpp"
#include "projdim/pressure.hpp"
#include "projdim/projective.hpp"
#include "projdim/random.hpp"
#include "projdim/semigroup.hpp"
#include "projdim/system_io.hpp"

#ifndef PROJDIM_VERSION
#define PROJDIM_VERSION "unknown"
#endif

namespace projdim::cli {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string system_path;
  std::string report_path;
  unsigned threads = 1;
  std::uint64_t seed = 0;

  double s = 1.0;
  int depth = 0;  // 0 = default for the alphabet size
  double tol = 1e-3;
  int N = 20;
  std::string emit_system;

  std::uint64_t steps = 100'000;
  int planes = 32;
  std::size_t samples = 1'000'000;
  int res = 12;
  std::uint64_t plane_steps = 200;

  std::size_t points = 100'000;
  std::string coords = "simplex";
  std::string method = "chaos";
  std::string out_path;
  std::string svg_path;

  double delta = 1e-2;
  std::string cloud_path;
  std::string res_range = "4:10";

  int check_depth = 8;
  int probe_depth = 3;
};

ordered number(double x) {
  // JSON has no infinities; keep them visible as strings
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

ordered estimate_fields(const DimensionEstimate& e) {
  ordered j;
  j["value"] = number(e.value);
  j["bracket"] = ordered::array({number(e.bracket_lo), number(e.bracket_hi)});
  j["depth"] = e.depth;
  j["method"] = to_string(e.method);
  ordered diag = ordered::object();
  for (const auto& [k, v] : e.diagnostics) diag[k] = number(v);
  j["diagnostics"] = diag;
  ordered notes = ordered::object();
  for (const auto& [k, v] : e.notes) notes[k] = v;
  j["notes"] = notes;
  return j;
}

ordered vec_json(const Vec3& v) { return ordered::array({number(v[0]), number(v[1]), number(v[2])}); }

ordered system_fields(const SystemSpec& sys) {
  ordered j;
  j["label"] = sys.label;
  j["letters"] = sys.size();
  j["conjugated"] = sys.conjugator.has_value();
  j["sosc_assumed"] = sys.sosc_assumed;
  return j;
}

std::vector<int> parse_resolutions(const std::string& text) {
  auto to_int = [&](std::string_view part) {
    int v = 0;
    const auto r = std::from_chars(part.data(), part.data() + part.size(), v);
    if (r.ec != std::errc() || r.ptr != part.data() + part.size())
      throw Error(Errc::validation, "bad resolution list '" + text + "'");
    return v;
  };
  std::vector<int> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const int a = to_int(std::string_view(text).substr(0, colon));
    const int b = to_int(std::string_view(text).substr(colon + 1));
    if (a > b) throw Error(Errc::validation, "resolution range '" + text + "' is empty");
    for (int n = a; n <= b; ++n) out.push_back(n);
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(to_int(part));
  }
  for (int n : out)
    if (n < 0 || n > 40) throw Error(Errc::validation, "resolutions must lie in [0, 40]");
  return out;
}

CoordinateSystem parse_coords(const std::string& c) {
  return c == "plane" ? CoordinateSystem::plane_P : CoordinateSystem::simplex_S;
}

// ---------------------------------------------------------------------------
// point clouds

void write_csv(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::validation, "cannot write '" + path + "'");
  out << "# coords=" << (cloud.coords == CoordinateSystem::plane_P ? "plane" : "simplex") << '\n';
  char buf[32];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t d = 0; d < p.size(); ++d) {
      const auto r = std::to_chars(buf, buf + sizeof buf, p[d]);
      if (d) out << ',';
      out.write(buf, r.ptr - buf);
    }
    out << '\n';
  }
}

PointCloud read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::validation, "cannot open cloud '" + path + "'");
  PointCloud cloud;
  std::optional<std::size_t> dim;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("coords=plane") != std::string::npos) dim = dim.value_or(2);
      continue;
    }
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const auto comma = std::min(line.find(',', pos), line.size());
      double v = 0.0;
      const auto r = std::from_chars(line.data() + pos, line.data() + comma, v);
      if (r.ec != std::errc() || r.ptr != line.data() + comma)
        throw Error(Errc::validation, path + ":" + std::to_string(line_no) + ": bad number");
      row.push_back(v);
      pos = comma + 1;
    }
    if (!dim) dim = row.size();
    if (row.size() != *dim || (*dim != 2 && *dim != 3))
      throw Error(Errc::validation, path + ":" + std::to_string(line_no) + ": expected 2 or 3 columns");
    cloud.data.insert(cloud.data.end(), row.begin(), row.end());
  }
  cloud.coords = dim.value_or(3) == 2 ? CoordinateSystem::plane_P : CoordinateSystem::simplex_S;
  return cloud;
}

void write_svg(const PointCloud& cloud, const std::string& path) {
  constexpr int kPixels = 512;
  std::vector<std::array<double, 2>> xy(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    if (cloud.coords == CoordinateSystem::simplex_S) {
      // barycentric -> equilateral triangle
      xy[i] = {p[1] + 0.5 * p[2], std::sqrt(3.0) / 2.0 * p[2]};
    } else {
      xy[i] = {p[0], p[1]};
    }
  }
  double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = std::sqrt(3.0) / 2.0;
  if (cloud.coords == CoordinateSystem::plane_P && !xy.empty()) {
    lo_x = hi_x = xy[0][0];
    lo_y = hi_y = xy[0][1];
    for (const auto& q : xy) {
      lo_x = std::min(lo_x, q[0]);
      hi_x = std::max(hi_x, q[0]);
      lo_y = std::min(lo_y, q[1]);
      hi_y = std::max(hi_y, q[1]);
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
  std::vector<char> lit(static_cast<std::size_t>(kPixels) * kPixels, 0);
  for (const auto& q : xy) {
    const int px = std::clamp(static_cast<int>((q[0] - lo_x) / span * (kPixels - 1)), 0, kPixels - 1);
    const int py = std::clamp(static_cast<int>((q[1] - lo_y) / span * (kPixels - 1)), 0, kPixels - 1);
    lit[static_cast<std::size_t>((kPixels - 1 - py) * kPixels + px)] = 1;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::validation, "cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPixels << "\" height=\"" << kPixels
      << "\" viewBox=\"0 0 " << kPixels << ' ' << kPixels << "\" shape-rendering=\"crispEdges\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g fill=\"black\">\n";
  for (int y = 0; y < kPixels; ++y)
    for (int x = 0; x < kPixels; ++x)
      if (lit[static_cast<std::size_t>(y * kPixels + x)])
        out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"1\" height=\"1\"/>\n";
  out << "</g>\n</svg>\n";
}

// ---------------------------------------------------------------------------
// commands

ordered config_fields(const RunConfig& c) {
  ordered j;
  j["command"] = c.command;
  j["threads"] = c.threads;
  j["node_cap"] = node_cap();
  if (!c.system_path.empty()) j["system"] = c.system_path;
  if (c.command == "pressure") {
    j["s"] = c.s;
    j["depth"] = c.depth;
  } else if (c.command == "dimension") {
    j["tol"] = c.tol;
    j["depth"] = c.depth;
  } else if (c.command == "rauzy") {
    j["N"] = c.N;
    j["tol"] = c.tol;
    j["depth"] = c.depth;
    j["epsilon"] = "1/5";
    if (!c.emit_system.empty()) j["emit_system"] = c.emit_system;
  } else if (c.command == "lyapunov") {
    j["steps"] = c.steps;
    j["seed"] = c.seed;
  } else if (c.command == "delta") {
    j["planes"] = c.planes;
    j["samples"] = c.samples;
    j["res"] = c.res;
    j["seed"] = c.seed;
    j["lyapunov_steps"] = c.steps;
    j["plane_steps"] = c.plane_steps;
  } else if (c.command == "render") {
    j["points"] = c.points;
    j["coords"] = c.coords;
    j["method"] = c.method;
    j["seed"] = c.seed;
    j["out"] = c.out_path;
    j["svg"] = c.svg_path;
  } else if (c.command == "cover") {
    j["s"] = c.s;
    j["delta"] = c.delta;
  } else if (c.command == "boxdim") {
    j["cloud"] = c.cloud_path;
    j["res"] = c.res_range;
  } else if (c.command == "check") {
    j["diophantine_depth"] = c.check_depth;
    j["probe_depth"] = c.probe_depth;
  }
  return j;
}

void resolve_depth(RunConfig& c, std::size_t alphabet_size) {
  if (c.depth == 0) c.depth = default_depth(alphabet_size);
}

ordered execute(RunConfig& c) {
  ordered r;
  std::optional<SystemSpec> sys;
  if (!c.system_path.empty()) sys = load_system(c.system_path);
  auto need_system = [&]() -> const SystemSpec& {
    if (!sys) throw Error(Errc::validation, "--system is required for '" + c.command + "'");
    return *sys;
  };

  if (c.command == "pressure") {
    const auto& s = need_system();
    resolve_depth(c, s.size());
    const PressureEstimate p = pressure_estimate(s, c.s, c.depth);
    r["system_info"] = system_fields(s);
    r["value"] = number(p.raw);
    r["bracket"] = ordered::array({number(p.lower), number(p.upper)});
    r["depth"] = p.depth;
    r["diagnostics"] = {{"submult_constant", number(p.submult_constant)},
                        {"supermult_constant", number(p.supermult_constant)},
                        {"heuristic", p.heuristic},
                        {"widened", p.widened}};
  } else if (c.command == "dimension") {
    const auto& s = need_system();
    resolve_depth(c, s.size());
    r["system_info"] = system_fields(s);
    r.update(estimate_fields(affinity_dimension(s, c.tol, c.depth)));
  } else if (c.command == "rauzy") {
    resolve_depth(c, 6 * static_cast<std::size_t>(c.N));
    if (!c.emit_system.empty()) save_system(rauzy_gamma_system(c.N), c.emit_system);
    r["system_info"] = system_fields(rauzy_gamma_system(c.N));
    r.update(estimate_fields(rauzy_dimension(c.N, c.depth, c.tol)));
  } else if (c.command == "lyapunov") {
    const auto& s = need_system();
    const LyapunovStats st = lyapunov_exponents(s, c.steps, c.seed);
    const auto p = s.probability_values();
    const double h = shannon_entropy(p);
    r["system_info"] = system_fields(s);
    r["exponents"] = ordered::array({number(st.chi1), number(st.chi2), number(st.chi3)});
    r["stderr"] = ordered::array({number(st.stderr1), number(st.stderr2), number(st.stderr3)});
    r["sum"] = number(st.chi1 + st.chi2 + st.chi3);
    r["entropy"] = number(h);
    r["chains"] = st.chains;
    r["steps_per_chain"] = st.steps;
    try {
      r["lyapunov_dimension"] = number(lyapunov_dimension(h, st));
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate_spectrum) throw;
      r["lyapunov_dimension"] = nullptr;
      r["notes"] = {{"lyapunov_dimension", e.what()}};
    }
  } else if (c.command == "delta") {
    const auto& s = need_system();
    DeltaOptions o;
    o.planes = c.planes;
    o.samples = c.samples;
    o.resolution = c.res;
    o.seed = c.seed;
    o.lyapunov_steps = c.steps;
    o.plane_steps = c.plane_steps;
    r["system_info"] = system_fields(s);
    r.update(estimate_fields(empirical_delta(s, o)));
  } else if (c.command == "render") {
    const auto& s = need_system();
    const auto method = c.method == "cylinder" ? AttractorMethod::cylinder : AttractorMethod::chaos;
    const PointCloud cloud = attractor_points(s, method, c.points, c.seed, parse_coords(c.coords));
    if (!c.out_path.empty()) write_csv(cloud, c.out_path);
    if (!c.svg_path.empty()) write_svg(cloud, c.svg_path);
    r["system_info"] = system_fields(s);
    r["points"] = cloud.size();
    std::vector<double> lo(cloud.dim(), std::numeric_limits<double>::infinity());
    std::vector<double> hi(cloud.dim(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const auto p = cloud.point(i);
      for (std::size_t d = 0; d < p.size(); ++d) {
        lo[d] = std::min(lo[d], p[d]);
        hi[d] = std::max(hi[d], p[d]);
      }
    }
    ordered box = ordered::array();
    for (std::size_t d = 0; d < cloud.dim(); ++d) box.push_back(ordered::array({number(lo[d]), number(hi[d])}));
    r["bounding_box"] = box;
  } else if (c.command == "cover") {
    const auto& s = need_system();
    const CoverReport cov = svd_cover_upper(s, c.s, c.delta);
    r["system_info"] = system_fields(s);
    r["cover_cost"] = number(cov.cover_cost);
    r["word_count"] = cov.word_count;
    r["ball_count"] = cov.ball_count;
    r["cone_constant"] = number(cov.cone_constant);
    r["cloud_radius"] = number(cov.cloud_radius);
    r["max_word_length"] = cov.max_word_length;
    r["notes"] = {{"cone_constant", "measured on a sampled cone, not a proven bound"}};
  } else if (c.command == "boxdim") {
    if (c.cloud_path.empty()) throw Error(Errc::validation, "--cloud is required for 'boxdim'");
    const PointCloud cloud = read_csv(c.cloud_path);
    r["points"] = cloud.size();
    r.update(estimate_fields(box_dimension_estimate(cloud, parse_resolutions(c.res_range))));
  } else if (c.command == "check") {
    const auto& s = need_system();
    const PositivityReport pos = positivity_report(s);
    const DiophantineReport dio = diophantine_check(s, c.check_depth);
    const IrreducibilityReport irr = irreducibility_probe(s, c.probe_depth);
    r["system_info"] = system_fields(s);
    r["positive"] = pos.positive;
    r["nonnegative"] = is_nonnegative(s);
    r["entry_ratio"] = to_string(pos.entry_ratio);
    r["diophantine"] = dio.all_distinct;
    r["diophantine_detail"] = {{"depth", c.check_depth},
                               {"first_collision_depth", dio.first_collision_depth},
                               {"min_gap", number(dio.min_gap)},
                               {"distinct_per_level", dio.distinct_per_level}};
    r["lie_dim"] = lie_algebra_dimension(s.effective_alphabet());
    r["invariant_line"] = irr.invariant_line ? vec_json(*irr.invariant_line) : ordered(nullptr);
    r["invariant_plane_normal"] =
        irr.invariant_plane_normal ? vec_json(*irr.invariant_plane_normal) : ordered(nullptr);
  }
  return r;
}

void add_common(CLI::App* sub, RunConfig& c, bool with_system) {
  if (with_system) sub->add_option("--system", c.system_path, "System JSON file")->check(CLI::ExistingFile);
  sub->add_option("--report", c.report_path, "Write the JSON report here instead of stdout");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

int exit_code(Errc code) {
  switch (code) {
    case Errc::validation:
    case Errc::domain_error:
    case Errc::singular_input:
    case Errc::bad_direction:
    case Errc::bad_vector:
    case Errc::not_traceless:
    case Errc::too_few_scales:
      return kExitValidation;
    case Errc::budget_exceeded:
      return kExitBudget;
    default:
      return kExitFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Dimension estimates for positive SL(3,R) systems", "projdim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PROJDIM_VERSION);

  auto* pressure = app.add_subcommand("pressure", "Pressure P(s) at one depth with a heuristic bracket");
  add_common(pressure, c, true);
  pressure->add_option("--s", c.s, "Exponent s")->check(CLI::Range(0.0, 2.0));
  pressure->add_option("--depth", c.depth, "Word length (0 = by alphabet size)")->check(CLI::Range(0, 64));

  auto* dimension = app.add_subcommand("dimension", "Affinity dimension (zero of the pressure)");
  add_common(dimension, c, true);
  dimension->add_option("--tol", c.tol, "Bisection tolerance")->check(CLI::Range(1e-12, 0.5));
  dimension->add_option("--depth", c.depth, "Word length (0 = by alphabet size)")->check(CLI::Range(0, 64));

  auto* rauzy = app.add_subcommand("rauzy", "Affinity dimension of the positive Rauzy subsystems up to N");
  add_common(rauzy, c, false);
  rauzy->add_option("--N", c.N, "Largest power n in A_i^n A_j")->check(CLI::Range(1, 1000));
  rauzy->add_option("--tol", c.tol, "Bisection tolerance")->check(CLI::Range(1e-12, 0.5));
  rauzy->add_option("--depth", c.depth, "Word length (0 = by alphabet size)")->check(CLI::Range(0, 64));
  rauzy->add_option("--emit-system", c.emit_system, "Also write the conjugated Gamma_N system here");

  auto* lyap = app.add_subcommand("lyapunov", "Lyapunov exponents and dimension");
  add_common(lyap, c, true);
  lyap->add_option("--steps", c.steps, "Steps per chain")->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1} << 40));
  lyap->add_option("--seed", c.seed, "Seed");

  auto* delta = app.add_subcommand("delta", "Empirical dimension of typical plane projections");
  add_common(delta, c, true);
  delta->add_option("--planes", c.planes, "Number of random planes")->check(CLI::Range(1, 100000));
  delta->add_option("--samples", c.samples, "Samples per plane")->check(CLI::Range(std::size_t{16}, std::size_t{1} << 32));
  delta->add_option("--res", c.res, "Dyadic resolution n")->check(CLI::Range(kDeltaLevelGap + 1, 40));
  delta->add_option("--seed", c.seed, "Seed");
  delta->add_option("--lyapunov-steps", c.steps, "Lyapunov steps per chain")
      ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1} << 40));
  delta->add_option("--plane-steps", c.plane_steps, "Letters per plane chain")
      ->check(CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 32));

  auto* render = app.add_subcommand("render", "Sample the attractor to CSV and/or SVG");
  add_common(render, c, true);
  render->add_option("--points", c.points, "Point budget")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 30));
  render->add_option("--coords", c.coords, "simplex or plane")->check(CLI::IsMember({"simplex", "plane"}));
  render->add_option("--method", c.method, "chaos or cylinder")->check(CLI::IsMember({"chaos", "cylinder"}));
  render->add_option("--seed", c.seed, "Seed");
  render->add_option("--out", c.out_path, "CSV output");
  render->add_option("--svg", c.svg_path, "SVG output");

  auto* cover = app.add_subcommand("cover", "Singular-value cover cost at scale delta");
  add_common(cover, c, true);
  cover->add_option("--s", c.s, "Exponent s")->check(CLI::Range(0.0, 2.0));
  cover->add_option("--delta", c.delta, "Scale delta")->check(CLI::Range(1e-12, 0.999999));

  auto* boxdim = app.add_subcommand("boxdim", "Box-counting slope of a CSV point cloud");
  add_common(boxdim, c, false);
  boxdim->add_option("--cloud", c.cloud_path, "CSV cloud")->check(CLI::ExistingFile);
  boxdim->add_option("--res", c.res_range, "Resolutions a:b or a,b,c");

  auto* check = app.add_subcommand("check", "Positivity, Diophantine, Lie-algebra and irreducibility diagnostics");
  add_common(check, c, true);
  check->add_option("--depth", c.check_depth, "Diophantine depth")->check(CLI::Range(1, 20));
  check->add_option("--probe-depth", c.probe_depth, "Irreducibility verification depth")->check(CLI::Range(0, 12));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitValidation;
  }
  c.command = app.get_subcommands().front()->get_name();
  set_worker_count(c.threads);

  ordered report;
  report["schema_version"] = kReportSchemaVersion;
  report["tool"] = "projdim";
  report["version"] = PROJDIM_VERSION;
  int status = kExitOk;
  try {
    ordered result = execute(c);
    report["config"] = config_fields(c);
    report["status"] = "ok";
    report.update(result);
  } catch (const Error& e) {
    status = exit_code(e.code());
    report["config"] = config_fields(c);
    report["status"] = "error";
    report["error"] = {{"kind", std::string(to_string(e.code()))}, {"message", e.what()}};
    err << "projdim " << c.command << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    status = kExitFailure;
    report["config"] = config_fields(c);
    report["status"] = "error";
    report["error"] = {{"kind", "Internal"}, {"message", e.what()}};
    err << "projdim " << c.command << ": " << e.what() << '\n';
  }

  const std::string text = report.dump(2) + "\n";
  if (c.report_path.empty()) {
    out << text;
  } else {
    std::ofstream f(c.report_path);
    if (!f) {
      err << "projdim: cannot write report '" << c.report_path << "'\n";
      return status == kExitOk ? kExitFailure : status;
    }
    f << text;
  }
  return status;
}

}  // namespace projdim::cli
