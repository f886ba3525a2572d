#include "hcr/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <string>

#include "hcr/errors.hpp"
#include "hcr/limit_zero.hpp"
#include "hcr/shooting.hpp"
#include "hcr/verification.hpp"

namespace hcr {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int agreeing_decimals(double a, double b) {
  // glibc prints the exact binary value, so the digits below are truncations, not roundings
  char sa[80], sb[80];
  std::snprintf(sa, sizeof sa, "%.40f", a);
  std::snprintf(sb, sizeof sb, "%.40f", b);
  const std::string x(sa), y(sb);
  const auto da = x.find('.'), db = y.find('.');
  if (x.substr(0, da) != y.substr(0, db)) return 0;
  int n = 0;
  for (std::size_t i = 1; da + i < x.size() && db + i < y.size(); ++i, ++n)
    if (x[da + i] != y[db + i]) break;
  return n;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw PreconditionError("csv: row width differs from header");
  rows.push_back(std::move(row));
}

namespace {

void put_cell(std::string& out, const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) {
    out += cell;
    return;
  }
  out += '"';
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void put_record(std::string& out, const std::vector<std::string>& rec) {
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (i) out += ',';
    put_cell(out, rec[i]);
  }
  out += '\n';
}

template <class Row, class F>
std::vector<Row> parallel_rows(std::size_t n, F&& f) {
  std::vector<std::future<Row>> futs;
  futs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) futs.push_back(std::async(std::launch::async, f, i));
  std::vector<Row> rows;
  rows.reserve(n);
  for (auto& fu : futs) rows.push_back(fu.get());
  return rows;
}

using Row = std::vector<std::string>;

}  // namespace

std::string CsvTable::to_string() const {
  std::string out;
  put_record(out, header);
  for (const auto& r : rows) put_record(out, r);
  return out;
}

CsvTable table_bracket_error(std::size_t steps) {
  static constexpr double kRows[][2] = {{10, 0.3}, {55, 0.1}, {30, 0.7}};
  CsvTable tab{{"b", "t", "B", "max_err_y", "ln_err_over_B", "x_at_max", "Delta", "d"}, {}};
  const auto rows = parallel_rows<Row>(std::size(kRows), [&](std::size_t i) {
    const ProblemParams p(kRows[i][0], kRows[i][1]);
    const BracketError be = bracket_error(p, steps);
    const DerivativeBounds db = derivative_bounds(p);
    return Row{format_number(p.b()),       format_number(p.t()),         format_number(p.B()),
               format_number(be.max_err),  format_number(be.log_ratio),  format_number(be.x_at_max),
               format_number(db.Delta),    format_number(db.d)};
  });
  for (const auto& r : rows) tab.add_row(r);
  return tab;
}

CsvTable table_limit_gamma(std::size_t steps) {
  static constexpr double kB[] = {10, 30, 70, 100, 500, 1000, 50000, 100000};
  CsvTable tab{{"b", "gamma", "w_gamma_1", "u0_upper_1", "u0_upper_1_minus_w"}, {}};
  const auto rows = parallel_rows<Row>(std::size(kB), [&](std::size_t i) {
    const double b = kB[i];
    const double w = w0_integrate_gamma(b, gamma_of_b(b), steps).terminal;
    const double u = u0_upper(b, 1.0);
    return Row{format_number(b), format_number(gamma_of_b(b)), format_number(w), format_number(u),
               format_number(u - w)};
  });
  for (const auto& r : rows) tab.add_row(r);
  return tab;
}

CsvTable table_limit_seeds(std::size_t steps) {
  CsvTable tab{{"b", "r_minus", "w_r_minus_1", "r_plus", "w_r_plus_1", "u0_upper_1"}, {}};
  const auto rows = parallel_rows<Row>(10, [&](std::size_t i) {
    const double b = std::pow(10.0, static_cast<double>(i + 1));
    const double rm = exponent_seed(b, 2.84);
    const double rp = exponent_seed(b, 2.8);
    return Row{format_number(b),  format_number(rm), format_number(w0_integrate(b, rm, steps).terminal),
               format_number(rp), format_number(w0_integrate(b, rp, steps).terminal),
               format_number(u0_upper(b, 1.0))};
  });
  for (const auto& r : rows) tab.add_row(r);
  return tab;
}

CsvTable table_band_widths(std::size_t oracle_steps, const BuildOptions& opt) {
  static constexpr double kRows[][2] = {{500, 0.1}, {700, 0.2}, {5000, 0.01}, {10000, 0.005}, {1e6, 2e-4}};
  CsvTable tab{{"b", "t", "B", "bt025", "global_width_y", "global_width_u", "partial_width_y",
                "partial_width_u", "global_points", "partial_points", "delta_star"},
               {}};
  const auto rows = parallel_rows<Row>(std::size(kRows), [&](std::size_t i) {
    const ProblemParams p(kRows[i][0], kRows[i][1]);
    const OracleSolution oracle = oracle_solve(p, 1e-12, oracle_steps);
    const Grid grid = shooting_grid(p, oracle_steps);
    const OracleReport g = compare_to_oracle(build_global_band(p, opt), oracle.trajectory, grid);
    const OracleReport q = compare_to_oracle(build_partial_band(p, opt), oracle.trajectory, grid);
    return Row{format_number(p.b()),          format_number(p.t()),           format_number(p.B()),
               format_number(p.layer_value()), format_number(g.max_width_y),  format_number(g.max_width_u),
               format_number(q.max_width_y),  format_number(q.max_width_u),   std::to_string(g.points_checked),
               std::to_string(q.points_checked), format_number(oracle.delta_star)};
  });
  for (const auto& r : rows) tab.add_row(r);
  return tab;
}

CsvTable table_precision(const BuildOptions& opt) {
  const ProblemParams p(500, 0.1);
  const EnvelopeBand band = build_partial_band(p, opt);
  CsvTable tab{{"x", "u_upper", "u_lower", "exact_decimals"}, {}};
  for (double x : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    // x counts from the cold wall in the u picture, which is distance x from y's hot end
    const double up = p.t() * closed_form_y_from_end(band.upper, p, x);
    const double lo = p.t() * closed_form_y_from_end(band.lower, p, x);
    tab.add_row({format_number(x), format_number(up), format_number(lo),
                 std::to_string(agreeing_decimals(up, lo))});
  }
  return tab;
}

std::vector<ReportFile> build_report(std::size_t steps, std::size_t oracle_steps, const BuildOptions& opt) {
  auto t33 = std::async(std::launch::async, [&] { return table_bracket_error(steps); });
  auto t51 = std::async(std::launch::async, [&] { return table_limit_gamma(kLimitZeroSteps); });
  auto t52 = std::async(std::launch::async, [&] { return table_limit_seeds(kLimitZeroSteps); });
  auto t61 = std::async(std::launch::async, [&] { return table_band_widths(oracle_steps, opt); });
  std::vector<ReportFile> files;
  files.push_back({"bracket_error", t33.get()});
  files.push_back({"limit_gamma", t51.get()});
  files.push_back({"limit_seeds", t52.get()});
  files.push_back({"band_widths", t61.get()});
  files.push_back({"pointwise_bounds", table_precision(opt)});
  return files;
}

void write_report(const std::string& dir, const std::vector<ReportFile>& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& f : files) {
    const fs::path path = fs::path(dir) / (f.name + ".csv");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + path.string() + "'");
    os << f.table.to_string();
  }
}

}  // namespace hcr
