#include "sdfem/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "sdfem/errors.hpp"

namespace sdfem {

namespace {

const char* kHeader =
    "N,epsilon,err_interp_energy,rate_ie,err_interp_sd,rate_is,"
    "err_energy,rate_e,err_post_energy,rate_p,gmres_iters,residual";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v, const char* spec) {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Rate out of row k toward row k+1 in the same epsilon group, if defined.
std::optional<double> rate_cell(const ErrorReport& r, std::size_t k,
                                std::optional<double> (*get)(const CaseResult&)) {
  if (k + 1 >= r.rows.size()) return std::nullopt;
  const CaseResult& a = r.rows[k];
  const CaseResult& b = r.rows[k + 1];
  if (a.epsilon != b.epsilon || b.n != 2 * a.n) return std::nullopt;
  const auto ea = get(a), eb = get(b);
  if (!ea || !eb || !(*ea > 0.0) || !(*eb > 0.0)) return std::nullopt;
  return std::log2(*ea / *eb);
}

std::optional<double> get_ie(const CaseResult& c) {
  return c.ok ? std::optional<double>(c.err_interp_energy) : std::nullopt;
}
std::optional<double> get_is(const CaseResult& c) {
  return c.ok ? std::optional<double>(c.err_interp_sd) : std::nullopt;
}
std::optional<double> get_e(const CaseResult& c) {
  return c.ok ? std::optional<double>(c.err_energy) : std::nullopt;
}
std::optional<double> get_p(const CaseResult& c) {
  return c.ok ? c.err_post_energy : std::nullopt;
}

struct Cells {
  std::optional<double> ie, rie, is, ris, e, re, p, rp;
};

Cells row_cells(const ErrorReport& r, std::size_t k) {
  const CaseResult& c = r.rows[k];
  Cells cells;
  cells.ie = get_ie(c);
  cells.is = get_is(c);
  cells.e = get_e(c);
  cells.p = get_p(c);
  cells.rie = rate_cell(r, k, get_ie);
  cells.ris = rate_cell(r, k, get_is);
  cells.re = rate_cell(r, k, get_e);
  cells.rp = rate_cell(r, k, get_p);
  return cells;
}

} // namespace

void write_report_csv(std::ostream& os, const ErrorReport& report) {
  os << "# problem=" << report.problem << " mu0=" << fmt(report.mu0)
     << " c_star=" << fmt(report.c_star) << " rho=" << fmt(report.rho)
     << " tol=" << fmt(report.tol) << "\n";
  os << kHeader << "\n";
  const auto cell = [](const std::optional<double>& v) { return v ? fmt(*v) : "---"; };
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const CaseResult& c = report.rows[k];
    const Cells cells = row_cells(report, k);
    os << c.n << ',' << fmt(c.epsilon) << ',' << cell(cells.ie) << ',' << cell(cells.rie) << ','
       << cell(cells.is) << ',' << cell(cells.ris) << ',' << cell(cells.e) << ','
       << cell(cells.re) << ',' << cell(cells.p) << ',' << cell(cells.rp) << ',';
    if (c.ok)
      os << c.gmres_iters << ',' << fmt(c.residual);
    else
      os << "---,---";
    os << "\n";
  }
}

void write_report_markdown(std::ostream& os, const ErrorReport& report) {
  os << "Problem " << report.problem << ": mu0=" << fmt_short(report.mu0, "%g")
     << ", C*=" << fmt_short(report.c_star, "%g") << ", rho=" << fmt_short(report.rho, "%g")
     << ", solver tol=" << fmt_short(report.tol, "%g") << "\n\n";
  os << "| N | epsilon | interp energy | rate | interp sd | rate | energy | rate "
        "| post energy | rate | iters | residual |\n";
  os << "|---|---------|---------------|------|-----------|------|--------|------"
        "|-------------|------|-------|----------|\n";
  const auto err = [](const std::optional<double>& v) {
    return v ? fmt_short(*v, "%.4e") : std::string("---");
  };
  const auto rate = [](const std::optional<double>& v) {
    return v ? fmt_short(*v, "%.2f") : std::string("---");
  };
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const CaseResult& c = report.rows[k];
    const Cells cells = row_cells(report, k);
    os << "| " << c.n << " | " << fmt_short(c.epsilon, "%.0e") << " | " << err(cells.ie) << " | "
       << rate(cells.rie) << " | " << err(cells.is) << " | " << rate(cells.ris) << " | "
       << err(cells.e) << " | " << rate(cells.re) << " | " << err(cells.p) << " | "
       << rate(cells.rp) << " | ";
    if (c.ok)
      os << c.gmres_iters << " | " << fmt_short(c.residual, "%.2e") << " |";
    else
      os << "--- | --- |";
    if (!c.ok && !c.message.empty()) os << " failed: " << c.message;
    os << "\n";
  }
}

std::vector<ParsedRow> parse_report_csv(std::istream& is) {
  std::vector<ParsedRow> rows;
  std::string line;
  bool saw_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != kHeader)
        throw ConfigError("parse_report_csv: unexpected header line: " + line);
      saw_header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 12)
      throw ConfigError("parse_report_csv: expected 12 cells, got " +
                        std::to_string(cells.size()));
    const auto opt = [](const std::string& s) -> std::optional<double> {
      if (s == "---") return std::nullopt;
      return std::stod(s);
    };
    ParsedRow r;
    r.n = std::stoi(cells[0]);
    r.epsilon = std::stod(cells[1]);
    r.err_interp_energy = opt(cells[2]);
    r.rate_ie = opt(cells[3]);
    r.err_interp_sd = opt(cells[4]);
    r.rate_is = opt(cells[5]);
    r.err_energy = opt(cells[6]);
    r.rate_e = opt(cells[7]);
    r.err_post_energy = opt(cells[8]);
    r.rate_p = opt(cells[9]);
    if (cells[10] != "---") r.gmres_iters = std::stoi(cells[10]);
    r.residual = opt(cells[11]);
    rows.push_back(r);
  }
  if (!saw_header) throw ConfigError("parse_report_csv: missing header");
  return rows;
}

} // namespace sdfem
