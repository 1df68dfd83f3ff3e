#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "sdfem/errors.hpp"
#include "sdfem/report.hpp"

using namespace sdfem;

namespace {

CaseResult make_row(int n, double eps, double base) {
  CaseResult r;
  r.n = n;
  r.epsilon = eps;
  r.ok = true;
  r.err_interp_energy = base;
  r.err_interp_sd = 1.1 * base;
  r.err_energy = 3.0 * base;
  r.err_post_energy = 1.5 * base;
  r.gmres_iters = 10 + n;
  r.residual = 1e-13;
  return r;
}

ErrorReport sample_report() {
  ErrorReport rep;
  rep.problem = "sinexp";
  rep.mu0 = 1.0;
  rep.c_star = 1.0;
  rep.rho = 2.5;
  rep.tol = 1e-12;
  rep.rows = {make_row(8, 1e-8, 0.1), make_row(16, 1e-8, 0.04), make_row(32, 1e-8, 0.015)};
  return rep;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("csv layout: comment, header, and one line per row") {
  std::ostringstream os;
  write_report_csv(os, sample_report());
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == 5);
  CHECK(lines[0].rfind("# problem=sinexp mu0=1", 0) == 0);
  CHECK(lines[1] ==
        "N,epsilon,err_interp_energy,rate_ie,err_interp_sd,rate_is,"
        "err_energy,rate_e,err_post_energy,rate_p,gmres_iters,residual");
  CHECK(lines[2].rfind("8,", 0) == 0);
  // The last row of an epsilon group has no rates.
  CHECK(lines[4].find("---") != std::string::npos);
}

TEST_CASE("csv round trip preserves values bitwise and rates recompute") {
  const ErrorReport rep = sample_report();
  std::ostringstream os;
  write_report_csv(os, rep);
  std::istringstream is(os.str());
  const std::vector<ParsedRow> rows = parse_report_csv(is);
  REQUIRE(rows.size() == 3);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].n == rep.rows[k].n);
    CHECK(rows[k].epsilon == rep.rows[k].epsilon);
    REQUIRE(rows[k].err_interp_energy.has_value());
    CHECK(*rows[k].err_interp_energy == rep.rows[k].err_interp_energy);
    CHECK(*rows[k].err_post_energy == *rep.rows[k].err_post_energy);
    CHECK(*rows[k].gmres_iters == rep.rows[k].gmres_iters);
    CHECK(*rows[k].residual == rep.rows[k].residual);
  }
  // Rate cells equal log2 ratios of the error cells exactly after the
  // %.17g round trip.
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    REQUIRE(rows[k].rate_ie.has_value());
    CHECK(*rows[k].rate_ie ==
          std::log2(*rows[k].err_interp_energy / *rows[k + 1].err_interp_energy));
    CHECK(*rows[k].rate_p ==
          std::log2(*rows[k].err_post_energy / *rows[k + 1].err_post_energy));
  }
  CHECK_FALSE(rows[2].rate_ie.has_value());
  CHECK_FALSE(rows[2].rate_p.has_value());
}

TEST_CASE("rates only bridge doubling N within one epsilon group") {
  ErrorReport rep = sample_report();
  rep.rows[1].epsilon = 1e-4;  // breaks the group in the middle
  std::ostringstream os;
  write_report_csv(os, rep);
  std::istringstream is(os.str());
  const auto rows = parse_report_csv(is);
  CHECK_FALSE(rows[0].rate_ie.has_value());

  ErrorReport skip = sample_report();
  skip.rows[1].n = 20;  // 8 -> 20 is not a doubling step
  std::ostringstream os2;
  write_report_csv(os2, skip);
  std::istringstream is2(os2.str());
  CHECK_FALSE(parse_report_csv(is2)[0].rate_ie.has_value());
}

TEST_CASE("failed rows keep their position with empty cells") {
  ErrorReport rep = sample_report();
  rep.rows[1].ok = false;
  rep.rows[1].message = "gmres did not converge";
  std::ostringstream os;
  write_report_csv(os, rep);
  std::istringstream is(os.str());
  const auto rows = parse_report_csv(is);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].n == 16);
  CHECK_FALSE(rows[1].err_interp_energy.has_value());
  CHECK_FALSE(rows[1].gmres_iters.has_value());
  CHECK_FALSE(rows[1].residual.has_value());
  // Rates touching the failed row are undefined on both sides.
  CHECK_FALSE(rows[0].rate_ie.has_value());
  CHECK_FALSE(rows[1].rate_ie.has_value());
}

TEST_CASE("missing postprocess column renders as ---") {
  ErrorReport rep = sample_report();
  for (CaseResult& r : rep.rows) r.err_post_energy.reset();
  std::ostringstream os;
  write_report_csv(os, rep);
  std::istringstream is(os.str());
  for (const ParsedRow& r : parse_report_csv(is)) {
    CHECK_FALSE(r.err_post_energy.has_value());
    CHECK_FALSE(r.rate_p.has_value());
    CHECK(r.err_interp_energy.has_value());
  }
}

TEST_CASE("markdown table mirrors the rows") {
  std::ostringstream os;
  write_report_markdown(os, sample_report());
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() >= 6);
  CHECK(lines[0].rfind("Problem sinexp", 0) == 0);
  CHECK(lines[2].rfind("| N |", 0) == 0);
  CHECK(lines[3].rfind("|---", 0) == 0);
  CHECK(lines[4].rfind("| 8 |", 0) == 0);
  CHECK(lines[4].find("1.0000e-01") != std::string::npos);
  CHECK(lines[6].find("---") != std::string::npos);
}

TEST_CASE("parser rejects malformed input") {
  std::istringstream bad_header("N,epsilon,oops\n8,1e-8,1\n");
  CHECK_THROWS_AS(parse_report_csv(bad_header), ConfigError);

  std::istringstream short_row(
      "N,epsilon,err_interp_energy,rate_ie,err_interp_sd,rate_is,"
      "err_energy,rate_e,err_post_energy,rate_p,gmres_iters,residual\n"
      "8,1e-8,0.1\n");
  CHECK_THROWS_AS(parse_report_csv(short_row), ConfigError);

  std::istringstream empty("");
  CHECK_THROWS_AS(parse_report_csv(empty), ConfigError);
}

} // TEST_SUITE
