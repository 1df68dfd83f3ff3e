#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sdfem {

// One convergence-sweep cell. Errors are absent when the cell failed
// (solver breakdown, exception); the row still appears in reports.
struct CaseResult {
  int n = 0;
  double epsilon = 0.0;
  bool ok = false;
  std::string message;  // failure note, empty when ok
  double err_interp_energy = 0.0;
  double err_interp_sd = 0.0;
  double err_energy = 0.0;
  std::optional<double> err_post_energy;
  int gmres_iters = 0;
  double residual = 0.0;
};

struct ErrorReport {
  std::string problem;
  double mu0 = 1.0;
  double c_star = 1.0;
  double rho = 2.5;
  double tol = 1e-12;
  std::vector<CaseResult> rows;  // sorted by (epsilon, n)
};

// Fixed column set; missing cells render as "---". Rates are recomputed
// from the error columns per epsilon group (consecutive doubling N only);
// the last row of each group has no rate.
void write_report_csv(std::ostream& os, const ErrorReport& report);
void write_report_markdown(std::ostream& os, const ErrorReport& report);

// Parsed CSV row; every cell that can be "---" is optional.
struct ParsedRow {
  int n = 0;
  double epsilon = 0.0;
  std::optional<double> err_interp_energy, rate_ie;
  std::optional<double> err_interp_sd, rate_is;
  std::optional<double> err_energy, rate_e;
  std::optional<double> err_post_energy, rate_p;
  std::optional<int> gmres_iters;
  std::optional<double> residual;
};

std::vector<ParsedRow> parse_report_csv(std::istream& is);

} // namespace sdfem
