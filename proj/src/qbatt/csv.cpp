// csv.cpp — deterministic CSV output (12 significant digits, \n endings).

#include "qbatt/csv.hpp"

#include <cstdio>
#include <fstream>

#include "qbatt/errors.hpp"

namespace qbatt {

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols = {
      "k",         "k_tau",     "n_bar",       "energy",
      "power",     "ergotropy", "ergotropy_power", "purity",
      "beta_re",   "beta_im",   "p0",          "p_top",
      "n_bar_pred", "beta_pred_re", "beta_pred_im"};
  return cols;
}

std::string trajectory_row_csv(const step_observables& r) {
  std::string out = std::to_string(r.k);
  const double vals[] = {r.k_tau,         r.n_bar,      r.energy,
                         r.power,         r.ergotropy,  r.ergotropy_power,
                         r.purity,        r.beta.real(), r.beta.imag(),
                         r.p0,            r.p_top,      r.n_bar_pred,
                         r.beta_pred.real(), r.beta_pred.imag()};
  for (double v : vals) {
    out += ',';
    out += format_sig12(v);
  }
  return out;
}

namespace {

void write_lines(const std::string& path,
                 const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);  // binary: keep \n endings
  if (!out) fail(status::io, "cannot open output file '" + path + "'");
  for (const auto& l : lines) out << l << '\n';
  if (!out) fail(status::io, "write failed for '" + path + "'");
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

}  // namespace

void write_trajectory_csv(const trajectory& tr, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(tr.rows.size() + 1);
  lines.push_back(join(trajectory_columns()));
  for (const auto& r : tr.rows) lines.push_back(trajectory_row_csv(r));
  write_lines(path, lines);
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::string> lines;
  lines.reserve(rows.size() + 1);
  lines.push_back(join(columns));
  for (const auto& r : rows) {
    if (r.size() != columns.size())
      fail(status::invalid_argument, "csv row width differs from header");
    lines.push_back(join(r));
  }
  write_lines(path, lines);
}

}  // namespace qbatt
