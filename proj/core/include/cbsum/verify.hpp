#pragma once

#include <set>
#include <string>
#include <vector>

#include "cbsum/catalog.hpp"
#include "cbsum/precision.hpp"

namespace cbsum {

/// One verification outcome.  All numeric fields are decimal strings so no
/// precision is lost in interchange.
struct VerificationRecord {
  std::string id;                 // "s:4", "conv:v2-chain", "lemma:1-recurrence", ...
  long digits = 0;
  long terms_used = 0;
  std::string numeric_value;      // independently computed series/residual value
  std::string closed_form;        // grammar text ("" for residual checks)
  std::string closed_form_value;  // target value ("0" for residual checks)
  std::string abs_error;
  std::string tol;
  bool pass = false;
  bool disputed = false;
  bool converged = true;
  std::string note;
  long elapsed_ms = 0;
};

struct VerifyOptions {
  double tol = 0.0;               // 0 -> default 10^-(digits-5)
  long cutoff = 10000;
  int em_order = 12;
  std::set<std::string> disputed; // ids quarantined via disputed.txt
};

struct Report {
  long digits = 0;
  std::string tol;
  long cutoff = 0;
  int em_order = 0;
  std::string version;
  std::vector<VerificationRecord> records;

  int passed = 0;
  int failed = 0;
  int disputed_count = 0;
  bool any_nonconverged = false;

  void recount();
};

enum class ReportFormat { Text, Json, Csv };

/// Verifies a single target: a catalog id ("s:4"), a convolution
/// ("conv:v2-chain"), a relation ("rel:even-odd-split"), a log-sine bridge
/// residual ("logsine:t1-n3", "logsine:ls4"), or a lemma suite
/// ("lemma:1-recurrence", ...).  Unknown targets throw std::invalid_argument.
VerificationRecord verify_entry(const std::string& target, PrecisionContext ctx,
                                const VerifyOptions& opts = {});

/// Verifies a catalog entry object directly (test hook for perturbed forms).
VerificationRecord verify_catalog_entry(const CatalogEntry& entry, PrecisionContext ctx,
                                        const VerifyOptions& opts = {});

/// Full deterministic battery: 31 catalog entries, 5 convolution chains,
/// 4 relations, 5 theorem-1 residuals, the log-sine value check and 6 exact
/// lemma suites.
Report verify_all(PrecisionContext ctx, const VerifyOptions& opts = {});

/// All target ids in the order verify_all emits them.
std::vector<std::string> verify_targets();

std::string render_report(const Report& report, ReportFormat format);

/// Reads one "family:n"-style id per line; '#' starts a comment.
std::set<std::string> load_disputed_file(const std::string& path);

/// Exit status per the CLI contract: 0 ok, 1 verification failure,
/// 3 non-convergence (usage errors are the caller's 2).
int report_exit_code(const Report& report);

}  // namespace cbsum
