#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cbsum/verify.hpp"

using namespace cbsum;

namespace {

VerifyOptions fast_options() {
  VerifyOptions opts;
  opts.cutoff = 2000;
  return opts;
}

std::string strip_elapsed(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("elapsed_ms") == std::string::npos) out << line << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("single catalog entries verify") {
  const PrecisionContext ctx{40};
  VerifyOptions opts = fast_options();
  opts.tol = 1e-25;

  const VerificationRecord s3 = verify_entry("s:3", ctx, opts);
  CHECK(s3.pass);
  CHECK(s3.converged);
  CHECK(Real::from_decimal(s3.abs_error, ctx).abs_below_pow10(25));

  const VerificationRecord z1 = verify_entry("z:1", PrecisionContext{25}, opts);
  CHECK(z1.pass);
  CHECK(z1.numeric_value.substr(0, 10) == "1.57079632");
}

TEST_CASE("a perturbed closed form fails with the expected error size") {
  const PrecisionContext ctx{30};
  CatalogEntry tweaked = catalog_get(SeriesFamily::s(2));
  tweaked.closed_form =
      tweaked.closed_form + ClosedForm::constant(Rational{1, 10000000000ul});
  const VerificationRecord rec = verify_catalog_entry(tweaked, ctx, fast_options());
  CHECK_FALSE(rec.pass);
  const Real err = Real::from_decimal(rec.abs_error, ctx);
  CHECK(err.abs_below_pow10(9));        // ~1e-10
  CHECK_FALSE(err.abs_below_pow10(11)); // not smaller than it should be
}

TEST_CASE("unknown targets are rejected") {
  CHECK_THROWS_AS(verify_entry("nope:1", PrecisionContext{20}, {}), std::invalid_argument);
}

TEST_CASE("full battery composition, exit codes and determinism") {
  const PrecisionContext ctx{25};
  VerifyOptions opts = fast_options();
  const Report report = verify_all(ctx, opts);

  CHECK(report.records.size() >= 45);
  CHECK(report.records.size() == verify_targets().size());
  CHECK(report.failed == 0);
  CHECK(report.passed == static_cast<int>(report.records.size()));
  CHECK(report_exit_code(report) == 0);

  // deterministic modulo elapsed_ms
  const Report again = verify_all(ctx, opts);
  CHECK(strip_elapsed(render_report(report, ReportFormat::Json)) ==
        strip_elapsed(render_report(again, ReportFormat::Json)));

  // JSON schema
  const auto j = nlohmann::json::parse(render_report(report, ReportFormat::Json));
  CHECK(j.contains("config"));
  CHECK(j.contains("records"));
  CHECK(j["summary"]["pass"].get<int>() == report.passed);
  CHECK(j["summary"]["fail"].get<int>() == 0);
  CHECK(j["summary"]["disputed"].get<int>() == 0);
  CHECK(j["records"].size() == report.records.size());
  CHECK(j["records"][0]["numeric_value"].is_string());

  // csv and text smoke
  const std::string csv = render_report(report, ReportFormat::Csv);
  CHECK(csv.find("id,digits,terms_used") == 0);
  const std::string text = render_report(report, ReportFormat::Text);
  CHECK(text.find("summary:") != std::string::npos);
}

TEST_CASE("disputed entries never fail the run") {
  Report report;
  report.version = "test";
  VerificationRecord bad;
  bad.id = "s:2";
  bad.pass = false;
  bad.disputed = true;
  bad.converged = true;
  report.records.push_back(bad);
  report.recount();
  CHECK(report.disputed_count == 1);
  CHECK(report.failed == 0);
  CHECK(report_exit_code(report) == 0);

  VerificationRecord failing = bad;
  failing.disputed = false;
  report.records.push_back(failing);
  report.recount();
  CHECK(report_exit_code(report) == 1);

  VerificationRecord unconverged = bad;
  unconverged.converged = false;
  report.records.push_back(unconverged);
  report.recount();
  CHECK(report_exit_code(report) == 3);
}

TEST_CASE("disputed file parsing") {
  const std::string path = "disputed_test_tmp.txt";
  {
    std::ofstream out(path);
    out << "s:3\n# a comment line\n  z:1  \n\nlin-h:3 # trailing\n";
  }
  const auto ids = load_disputed_file(path);
  std::remove(path.c_str());
  CHECK(ids == std::set<std::string>{"s:3", "z:1", "lin-h:3"});
  CHECK(load_disputed_file("does_not_exist.txt").empty());
}
