#include "hcr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include "hcr/envelope_builders.hpp"
#include "hcr/errors.hpp"
#include "hcr/limit_zero.hpp"
#include "hcr/report.hpp"
#include "hcr/shooting.hpp"
#include "hcr/verification.hpp"

namespace hcr::cli {

using Json = nlohmann::ordered_json;

const char* to_string(Command c) {
  switch (c) {
    case Command::Envelope: return "envelope";
    case Command::Shoot: return "shoot";
    case Command::Limit0: return "limit0";
    case Command::Blayer: return "blayer";
    case Command::Verify: return "verify";
    case Command::Report: return "report";
  }
  return "?";
}

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Global: return "global";
    case Kind::Partial: return "partial";
    case Kind::Both: return "both";
  }
  return "?";
}

void RunConfig::validate() const {
  const bool needs_b = command != Command::Report;
  const bool needs_t = needs_b && command != Command::Limit0;
  if (needs_b && !(b > 0.0 && std::isfinite(b))) throw ConfigError("--b must be a positive number");
  if (command == Command::Limit0 && !(b > 1.0)) throw ConfigError("limit0 needs --b > 1");
  if (needs_t && !(t > 0.0 && t < 1.0)) throw ConfigError("--t must lie in (0, 1)");
  if (grid_points < 2) throw ConfigError("--grid-points must be at least 2");
  if (command == Command::Report && output_path.empty()) throw ConfigError("report needs --out <dir>");
}

namespace {

const std::map<std::string, Command> kCommands = {
    {"envelope", Command::Envelope}, {"shoot", Command::Shoot},   {"limit0", Command::Limit0},
    {"blayer", Command::Blayer},     {"verify", Command::Verify}, {"report", Command::Report}};
const std::map<std::string, Kind> kKinds = {{"global", Kind::Global}, {"partial", Kind::Partial}, {"both", Kind::Both}};
const std::map<std::string, Format> kFormats = {{"csv", Format::Csv}, {"json", Format::Json}};

Json num(double v) { return format_number(v); }

std::size_t steps_or(const RunConfig& c, std::size_t fallback) {
  return c.steps > 0 ? c.steps : default_steps(fallback);
}

// Output grid: uniform nodes plus nodes crowding toward the hot end at the layer's rate.
Grid output_grid(const ProblemParams& p, std::size_t points) {
  const std::size_t n = points - 1;
  const double k = 1.5 * std::sqrt(2.0) * p.B() * p.T15();
  const Grid u = Grid::uniform(n);
  return k > 1.0 ? Grid::merge(u, Grid::graded_toward_one(n, k)) : u;
}

// Indices of a thinned sample holding roughly `target` entries, both ends kept.
std::vector<std::size_t> thin(std::size_t n, std::size_t target) {
  const std::size_t stride = std::max<std::size_t>(1, (n - 1) / std::max<std::size_t>(1, target - 1));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

struct Output {
  std::string name;
  CsvTable table;
  Json summary;
};

void emit(const RunConfig& c, const Output& o, std::ostream& out) {
  if (c.output_path.empty()) {
    if (c.output_format == Format::Csv) out << o.table.to_string();
    else out << o.summary.dump(2) << '\n';
    return;
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.output_path, ec);
  if (ec) throw ConfigError("cannot create output directory '" + c.output_path + "'");
  const fs::path dir(c.output_path);
  std::ofstream csv(dir / (o.name + ".csv"), std::ios::binary);
  std::ofstream js(dir / (o.name + ".json"), std::ios::binary);
  if (!csv || !js) throw ConfigError("cannot write into '" + c.output_path + "'");
  csv << o.table.to_string();
  js << o.summary.dump(2) << '\n';
  out << o.summary.dump(2) << '\n';
}

void error_record(std::ostream& err, const char* type, const std::string& message) {
  Json e;
  e["status"] = "error";
  e["type"] = type;
  e["message"] = message;
  err << e.dump() << '\n';
}

Json params_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["b"] = num(c.b);
  if (c.command != Command::Limit0) j["t"] = num(c.t);
  j["kind"] = to_string(c.kind);
  j["iteration_rule"] = hcr::to_string(c.iteration_rule);
  j["grid_points"] = std::to_string(c.grid_points);
  return j;
}

// ---- envelopes with certificates ----

struct CertEntry {
  CertificateKind kind;
  bool issued;
  std::string failed_check;
  std::string details;
  std::string residue_sign;
};

struct BandAttempt {
  Kind kind;
  std::optional<EnvelopeBand> band;  ///< set only when both certificates are issued
  std::vector<CertEntry> certs;
};

CertEntry refused_at_build(CertificateKind k, const std::string& why) {
  return CertEntry{k, false, "construction", why, ""};
}

CertEntry evaluate(const EnvelopeSpec& s, const ProblemParams& p, CertificateKind k) {
  const CertificateOutcome o = evaluate_certificate(s, p, k);
  return CertEntry{k, o.issued, o.failed_check, o.certificate.details,
                   hcr::to_string(o.certificate.residue_profile.sign_certified)};
}

BandAttempt attempt_band(Kind kind, const ProblemParams& p, const BuildOptions& opt) {
  const bool global = kind == Kind::Global;
  const CertificateKind ku = global ? CertificateKind::GlobalUpper : CertificateKind::PartialUpper;
  const CertificateKind kl = global ? CertificateKind::GlobalLower : CertificateKind::PartialLower;
  BandAttempt a{kind, std::nullopt, {}};
  std::optional<EnvelopeSpec> up, lo;
  try {
    up = global ? build_global_upper(p) : build_partial_upper(p, opt);
    a.certs.push_back(evaluate(*up, p, ku));
  } catch (const CertificationError& e) {
    a.certs.push_back(refused_at_build(ku, e.what()));
  }
  try {
    lo = global ? build_global_lower(p, opt) : build_partial_lower(p, opt);
    a.certs.push_back(evaluate(*lo, p, kl));
  } catch (const CertificationError& e) {
    a.certs.push_back(refused_at_build(kl, e.what()));
  }
  if (a.certs[0].issued && a.certs[1].issued)
    a.band = EnvelopeBand{*lo, *up, global ? Validity::Global : Validity::BoundaryLayer, p};
  return a;
}

std::vector<BandAttempt> attempt_bands(const RunConfig& c, const ProblemParams& p) {
  const BuildOptions opt{c.iteration_rule};
  std::vector<BandAttempt> v;
  if (c.kind != Kind::Partial) v.push_back(attempt_band(Kind::Global, p, opt));
  if (c.kind != Kind::Global) v.push_back(attempt_band(Kind::Partial, p, opt));
  return v;
}

Json certs_json(const std::vector<BandAttempt>& bands) {
  Json arr = Json::array();
  for (const auto& b : bands)
    for (const auto& ce : b.certs) {
      Json j;
      j["kind"] = hcr::to_string(ce.kind);
      j["status"] = ce.issued ? "issued" : "refused";
      if (!ce.issued) j["failed_check"] = ce.failed_check;
      if (!ce.residue_sign.empty()) j["residue_sign"] = ce.residue_sign;
      j["details"] = ce.details;
      arr.push_back(j);
    }
  return arr;
}

std::string first_refusal(const std::vector<BandAttempt>& bands) {
  for (const auto& b : bands)
    for (const auto& ce : b.certs)
      if (!ce.issued) return std::string(hcr::to_string(ce.kind)) + " refused: " + ce.failed_check + " (" + ce.details + ")";
  return {};
}

int envelope(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ProblemParams p(c.b, c.t);
  const std::vector<BandAttempt> bands = attempt_bands(c, p);
  const Grid grid = output_grid(p, c.grid_points);
  const bool both = c.kind == Kind::Both;

  Output o{"envelope", {}, Json::object()};
  o.table.header = {"x", "y_lower", "y_upper", "u_lower", "u_upper", "width_y", "width_u"};
  if (both) o.table.header.insert(o.table.header.begin(), "band");
  o.summary["params"] = params_json(c);
  o.summary["B"] = num(p.B());
  o.summary["T"] = num(p.T());
  o.summary["bt025"] = num(p.layer_value());
  o.summary["has_layer"] = boundary_layer(p).has_layer;

  Json band_list = Json::array();
  double best_y = INFINITY, best_u = INFINITY;
  for (const auto& a : bands) {
    Json bj;
    bj["kind"] = to_string(a.kind);
    bj["status"] = a.band ? "certified" : "refused";
    if (a.band) {
      const EnvelopeBand& band = *a.band;
      const double t = p.t(), T = p.T(), ymin = band.y_min(), xth = band.x_threshold();
      double wy = 0, raw = 0;
      std::size_t n = 0;
      for (double x : grid.points()) {
        if (x < xth) continue;
        const double lo_raw = band.lower_at(x), up_raw = band.upper_at(x);
        // the exact solution lies in [ymin, T] wherever the band is claimed
        const double up = std::clamp(up_raw, ymin, T);
        // lowering the lower bound keeps it valid; removes ulp crossings at the wall
        const double lo = std::min(std::clamp(lo_raw, ymin, T), up);
        wy = std::max(wy, up - lo);
        raw = std::max(raw, up_raw - lo_raw);
        ++n;
        std::vector<std::string> row{format_number(x),      format_number(lo),      format_number(up),
                                     format_number(t * lo), format_number(t * up),  format_number(up - lo),
                                     format_number(t * (up - lo))};
        if (both) row.insert(row.begin(), to_string(a.kind));
        o.table.add_row(std::move(row));
      }
      bj["y_range"] = Json::array({num(ymin), num(T)});
      bj["x_threshold"] = num(xth);
      bj["rows"] = std::to_string(n);
      bj["max_width_y"] = num(wy);
      bj["max_width_u"] = num(t * wy);
      bj["raw_max_width_y"] = num(raw);
      bj["raw_max_width_u"] = num(t * raw);
      if (wy < best_y) {
        best_y = wy;
        best_u = t * wy;
      }
    }
    band_list.push_back(bj);
  }
  if (std::isfinite(best_y)) {
    o.summary["max_width_y"] = num(best_y);
    o.summary["max_width_u"] = num(best_u);
  }
  o.summary["bands"] = band_list;
  o.summary["certificates"] = certs_json(bands);
  emit(c, o, out);
  const std::string refusal = first_refusal(bands);
  if (refusal.empty()) return 0;
  error_record(err, "CertificationError", refusal);
  return 1;
}

// ---- shooting ----

int shoot_cmd(const RunConfig& c, std::ostream& out) {
  const ProblemParams p(c.b, c.t);
  const std::size_t steps = steps_or(c, kTableSteps);
  const BracketError be = bracket_error(p, steps);
  const DerivativeBounds db = derivative_bounds(p);
  Output o{"shoot", {{"x", "y_rk_plus", "y_rk_minus", "err_y", "u_rk_plus", "u_rk_minus", "err_u"}, {}}, {}};
  const std::size_t n = be.upper.size();
  std::vector<std::size_t> idx = thin(n, c.grid_points);
  // ascending x: trajectories run from x = 1 down to 0
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
    const std::size_t i = *it;
    const double yp = be.upper.y(i), ym = be.lower.y(i);
    const double e = be.upper.y_minus_one[i] - be.lower.y_minus_one[i];
    o.table.add_row({format_number(be.upper.x[i]), format_number(yp), format_number(ym), format_number(e),
                     format_number(p.t() * yp), format_number(p.t() * ym), format_number(p.t() * e)});
  }
  o.summary["params"] = params_json(c);
  o.summary["steps"] = std::to_string(steps);
  o.summary["B"] = num(p.B());
  o.summary["Delta"] = num(db.Delta);
  o.summary["d"] = num(db.d);
  o.summary["y0_plus"] = num(be.upper.terminal_y0);
  o.summary["y0_minus"] = num(be.lower.terminal_y0);
  o.summary["max_err_y"] = num(be.max_err);
  o.summary["max_err_u"] = num(p.t() * be.max_err);
  o.summary["ln_err_over_B"] = num(be.log_ratio);
  o.summary["x_at_max"] = num(be.x_at_max);
  emit(c, o, out);
  return 0;
}

// ---- t -> 0 limit ----

int limit0_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::size_t steps = steps_or(c, kLimitZeroSteps);
  const LimitZeroResult r = bracket_r(c.b, 1e-7, steps);
  const WTrajectory lo = w0_integrate(c.b, r.r_lower, steps);
  const WTrajectory up = w0_integrate(c.b, r.r_upper, steps);
  Output o{"limit0", {{"x", "w_lower", "w_upper", "u0_upper"}, {}}, {}};
  for (std::size_t i : thin(lo.x.size(), c.grid_points))
    o.table.add_row({format_number(lo.x[i]), format_number(lo.w[i]), format_number(up.w[i]),
                     format_number(u0_upper(c.b, std::min(lo.x[i], 1.0)))});
  o.summary["params"] = params_json(c);
  o.summary["steps"] = std::to_string(steps);
  o.summary["gamma"] = num(r.gamma);
  o.summary["r_lower"] = num(r.r_lower);
  o.summary["r_upper"] = num(r.r_upper);
  o.summary["w_terminal_lower"] = num(r.w_terminal_lower);
  o.summary["w_terminal_upper"] = num(r.w_terminal_upper);
  o.summary["u0_upper_terminal"] = num(r.u0p_terminal);
  o.summary["below_validated_range"] = r.below_validated_range;
  emit(c, o, out);
  if (r.below_validated_range)
    error_record(err, "Warning", "b < 16: the seeded exponents are not known to bracket the solution");
  return 0;
}

// ---- boundary layer ----

int blayer_cmd(const RunConfig& c, std::ostream& out) {
  const ProblemParams p(c.b, c.t);
  const BoundaryLayerReport r = boundary_layer(p);
  Output o{"blayer", {{"b", "t", "B", "T", "bt025", "has_layer", "variation_ratio", "xi", "variation_ratio_bound"}, {}}, {}};
  o.table.add_row({format_number(p.b()), format_number(p.t()), format_number(p.B()), format_number(p.T()),
                   format_number(r.value), r.has_layer ? "true" : "false", format_number(r.variation_ratio),
                   format_number(r.xi), format_number(variation_ratio_bound(p.t()))});
  o.summary["params"] = params_json(c);
  o.summary["B"] = num(p.B());
  o.summary["T"] = num(p.T());
  o.summary["value"] = num(r.value);
  o.summary["has_layer"] = r.has_layer;
  o.summary["variation_ratio"] = num(r.variation_ratio);
  o.summary["xi"] = num(r.xi);
  o.summary["variation_ratio_bound"] = num(variation_ratio_bound(p.t()));
  emit(c, o, out);
  return 0;
}

// ---- verification against the shooting oracle ----

int verify_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ProblemParams p(c.b, c.t);
  const std::vector<BandAttempt> bands = attempt_bands(c, p);
  const std::size_t steps = steps_or(c, kOracleSteps);
  const OracleSolution oracle = oracle_solve(p, 1e-12, steps);
  const Grid grid = shooting_grid(p, steps);

  Output o{"verify",
           {{"band", "status", "points_checked", "max_width_y", "max_width_u", "max_oracle_minus_lower_y",
             "max_upper_minus_oracle_y", "min_lower_margin", "min_upper_margin"},
            {}},
           {}};
  o.summary["params"] = params_json(c);
  o.summary["oracle"] = Json{{"steps", std::to_string(steps)},
                             {"delta_star", num(oracle.delta_star)},
                             {"halvings", std::to_string(oracle.halvings)},
                             {"y0_minus_one", num(oracle.trajectory.y_minus_one.back())}};
  Json sand = Json::array();
  for (const auto& a : bands) {
    Json j;
    j["kind"] = to_string(a.kind);
    if (!a.band) {
      j["status"] = "refused";
      o.table.add_row({to_string(a.kind), "refused", "0", "", "", "", "", "", ""});
    } else {
      // throws OrderingError on a violation; no partial report is produced in that case
      const OracleReport r = compare_to_oracle(*a.band, oracle.trajectory, grid);
      j["status"] = "sandwich-ok";
      j["points_checked"] = std::to_string(r.points_checked);
      j["max_width_y"] = num(r.max_width_y);
      j["max_width_u"] = num(r.max_width_u);
      j["max_oracle_minus_lower_y"] = num(r.max_oracle_minus_lower_y);
      j["max_upper_minus_oracle_y"] = num(r.max_upper_minus_oracle_y);
      j["min_lower_margin"] = num(r.min_lower_margin);
      j["min_upper_margin"] = num(r.min_upper_margin);
      o.table.add_row({to_string(a.kind), "sandwich-ok", std::to_string(r.points_checked),
                       format_number(r.max_width_y), format_number(r.max_width_u),
                       format_number(r.max_oracle_minus_lower_y), format_number(r.max_upper_minus_oracle_y),
                       format_number(r.min_lower_margin), format_number(r.min_upper_margin)});
    }
    sand.push_back(j);
  }
  o.summary["sandwich"] = sand;
  o.summary["certificates"] = certs_json(bands);
  emit(c, o, out);
  const std::string refusal = first_refusal(bands);
  if (refusal.empty()) return 0;
  error_record(err, "CertificationError", refusal);
  return 1;
}

int report_cmd(const RunConfig& c, std::ostream& out) {
  const std::size_t steps = steps_or(c, kTableSteps);
  const std::size_t oracle_steps = c.steps > 0 ? c.steps : default_steps(kOracleSteps);
  const auto files = build_report(steps, oracle_steps, BuildOptions{c.iteration_rule});
  write_report(c.output_path, files);
  Json j;
  j["directory"] = c.output_path;
  Json names = Json::array();
  for (const auto& f : files) names.push_back(f.name + ".csv");
  j["files"] = names;
  out << j.dump(2) << '\n';
  return 0;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Certified envelopes for u'' = b^2 (u^4 - t^4), u(0) = 1, u(1) = t", "hcr"};
  RunConfig c;
  std::string command, kind = "global", format = "csv", rule = "listing";
  app.add_option("command", command, "envelope | shoot | limit0 | blayer | verify | report")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--b", c.b, "radiation parameter b > 0");
  app.add_option("--t", c.t, "temperature ratio t in (0, 1)");
  app.add_option("--kind", kind, "global | partial | both")->check(CLI::IsMember(kKinds));
  app.add_option("--steps", c.steps, "RK4 steps (default: per command, or HCR_DEFAULT_STEPS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid-points", c.grid_points, "output sample count (>= 2)");
  app.add_option("--format", format, "csv | json (stdout rendering)")->check(CLI::IsMember(kFormats));
  app.add_option("--out", c.output_path, "directory for CSV and JSON artifacts");
  app.add_option("--iteration-rule", rule, "text | listing")->check(CLI::IsMember({"text", "listing"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  c.command = kCommands.at(command);
  c.kind = kKinds.at(kind);
  c.output_format = kFormats.at(format);
  c.iteration_rule = parse_iteration_rule(rule);
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    switch (config.command) {
      case Command::Envelope: return envelope(config, out, err);
      case Command::Shoot: return shoot_cmd(config, out);
      case Command::Limit0: return limit0_cmd(config, out, err);
      case Command::Blayer: return blayer_cmd(config, out);
      case Command::Verify: return verify_cmd(config, out, err);
      case Command::Report: return report_cmd(config, out);
    }
  } catch (const CertificationError& e) {
    error_record(err, "CertificationError", e.what());
    return 1;
  } catch (const OrderingError& e) {
    error_record(err, "OrderingError", e.what());
    return 1;
  } catch (const ConfigError& e) {
    error_record(err, "ConfigError", e.what());
    return 2;
  } catch (const PreconditionError& e) {
    error_record(err, "PreconditionError", e.what());
    return 2;
  } catch (const Error& e) {
    error_record(err, "Error", e.what());
    return 1;
  }
  return 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const ConfigError& e) {
    error_record(err, "ConfigError", e.what());
    return 2;
  }
  return run(c, out, err);
}

}  // namespace hcr::cli
