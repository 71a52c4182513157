// Command-line front end: evaluate series, inspect closed forms, run the
// verification battery, and print lemma/log-sine diagnostics.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "cbsum/catalog.hpp"
#include "cbsum/closed_form.hpp"
#include "cbsum/identities.hpp"
#include "cbsum/logsine.hpp"
#include "cbsum/series.hpp"
#include "cbsum/verify.hpp"
#include "cbsum/version.hpp"

namespace {

using namespace cbsum;

struct SharedFlags {
  long digits = 30;
  double tol = 0.0;  // 0 -> 10^-(digits-5)
  long terms = 10000;
  std::string format = "text";
};

void add_shared(CLI::App* cmd, SharedFlags& flags) {
  cmd->add_option("--digits", flags.digits, "decimal working digits (>= 10)")
      ->check(CLI::Range(10L, 1000L));
  cmd->add_option("--tol", flags.tol, "absolute tolerance (default 1e-(digits-5))");
  cmd->add_option("--terms", flags.terms, "direct-summation cutoff K0")
      ->check(CLI::Range(100L, 100000000L));
  cmd->add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
}

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  return ReportFormat::Text;
}

VerifyOptions make_options(const SharedFlags& flags) {
  VerifyOptions opts;
  opts.tol = flags.tol;
  opts.cutoff = flags.terms;
  const std::string disputed_path = "disputed.txt";
  if (std::ifstream probe{disputed_path}; probe.good())
    opts.disputed = load_disputed_file(disputed_path);
  return opts;
}

SeriesFamily family_from_flags(const std::string& name, int n) {
  std::optional<SeriesFamily> family;
  if (name.find(':') != std::string::npos) {
    family = SeriesFamily::from_id(name);
  } else if ((family = SeriesFamily::from_id(name))) {
    // fixed-order id
  } else if (n > 0) {
    family = SeriesFamily::from_id(name + ":" + std::to_string(n));
  }
  if (!family)
    throw CLI::ValidationError("--family",
                               "unknown family '" + name + "' (ordered families need --n)");
  return *family;
}

int run_eval(const SharedFlags& flags, const std::string& family_name, int n) {
  const PrecisionContext ctx{flags.digits};
  const SeriesFamily family = family_from_flags(family_name, n);
  EvalOptions opts{.cutoff = flags.terms, .em_order = 12, .tol = {}};
  if (flags.tol > 0.0) opts.tol = flags.tol;
  const EvalResult r = family.alternating() ? evaluate_alternating(family, ctx, opts)
                                            : evaluate(family, ctx, opts);
  std::cout << family.id() << " = " << r.value.to_string() << "\n";
  std::cout << "  terms_used=" << r.terms_used << " converged=" << (r.converged ? "yes" : "no")
            << " self_error=" << r.self_error.to_string(6) << "\n";
  if (catalog_has(family)) {
    const CatalogEntry& entry = catalog_get(family);
    const Real closed = cf_evaluate(entry.closed_form, ctx);
    std::cout << "  closed form: " << cf_format(entry.closed_form) << "\n";
    std::cout << "  closed value = " << closed.to_string() << "\n";
    std::cout << "  abs_error = " << (r.value - closed).abs().to_string(6) << "\n";
  }
  return r.converged ? 0 : 3;
}

int run_closed_form(const SharedFlags& flags, const std::string& expr) {
  const PrecisionContext ctx{flags.digits};
  const ClosedForm form = cf_parse(expr);
  std::cout << "canonical: " << cf_format(form) << "\n";
  std::cout << "value     = " << cf_evaluate(form, ctx).to_string() << "\n";
  return 0;
}

int run_verify(const SharedFlags& flags, const std::string& family_name, int n, bool all) {
  const PrecisionContext ctx{flags.digits};
  VerifyOptions opts = make_options(flags);
  Report report;
  if (all) {
    report = verify_all(ctx, opts);
  } else {
    if (family_name.empty())
      throw CLI::ValidationError("verify", "pass --all or --family");
    report.digits = ctx.digits;
    report.cutoff = opts.cutoff;
    report.em_order = opts.em_order;
    report.version = kVersion;
    report.tol = "";
    const SeriesFamily family = family_from_flags(family_name, n);
    report.records.push_back(verify_entry(family.id(), ctx, opts));
    report.tol = report.records.front().tol;
    report.recount();
  }
  std::cout << render_report(report, parse_format(flags.format));
  return report_exit_code(report);
}

int run_lemma(const SharedFlags& flags, int id, long k) {
  const PrecisionContext ctx{flags.digits};
  switch (id) {
    case 1: {
      // exact recurrence residual up to k
      for (long i = 2; i <= k; ++i) {
        const Rational residual =
            lemma1_f(i) - Rational{2 * i - 2, static_cast<unsigned long>(2 * i - 1)} *
                              lemma1_f(i - 1) -
            Rational{1, static_cast<unsigned long>(i * (2 * i - 1))};
        if (!residual.is_zero()) {
          std::cout << "lemma 1 residual nonzero at k=" << i << "\n";
          return 1;
        }
      }
      std::cout << "lemma 1 recurrence residual for k<=" << k << ": exact\n";
      std::cout << "f(" << k << ") = " << lemma1_f(k).to_string() << "\n";
      return 0;
    }
    case 2: {
      const BasisValue f = lemma2_f(k);
      std::cout << "f(" << k << ") = " << f.rat.to_string() << " + (" << f.ln2_coeff.to_string()
                << ")*ln2 = " << f.numeric(ctx).to_string() << "\n";
      return 0;
    }
    case 3: {
      for (long i = 1; i < k; ++i) {
        BasisValue residual = lemma3_g(i + 1) -
                              Rational{2 * i - 1, static_cast<unsigned long>(2 * i)} *
                                  lemma3_g(i);
        residual.rat -= Rational{1, static_cast<unsigned long>(2 * i)} *
                        Rational{1, static_cast<unsigned long>(2 * i + 1)};
        if (!residual.is_zero()) {
          std::cout << "lemma 3 residual nonzero at k=" << i << "\n";
          return 1;
        }
      }
      std::cout << "lemma 3 recurrence residual for k<" << k << ": exact\n";
      const BasisValue g = lemma3_g(k);
      std::cout << "g(" << k << ") = (" << g.pi_coeff.to_string() << ")*pi + "
                << g.rat.to_string() << " = " << g.numeric(ctx).to_string() << "\n";
      return 0;
    }
    case 4: {
      std::cout << "rhs(" << k << ") = " << lemma4_rhs(k).to_string() << "\n";
      return 0;
    }
    default:
      throw CLI::ValidationError("--id", "lemma id must be 1..4");
  }
}

int run_logsine(const SharedFlags& flags, int n, int level) {
  QuadratureOptions opts{.level = level, .ctx = PrecisionContext{flags.digits}};
  const LogSineResult r = log_sin_moment(n, opts);
  std::cout << "moment(" << n << ") = " << r.value.to_string() << "\n";
  std::cout << "  levels_used=" << r.levels_used << " converged=" << (r.converged ? "yes" : "no")
            << " self_error=" << r.self_error.to_string(6) << "\n";
  return r.converged ? 0 : 3;
}

int run_report(const SharedFlags& flags, const std::string& out_path) {
  const PrecisionContext ctx{flags.digits};
  const Report report = verify_all(ctx, make_options(flags));
  const std::string rendered = render_report(report, parse_format(flags.format));
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << out_path << "\n";
      return 2;
    }
    out << rendered;
    std::cout << "wrote " << out_path << " (" << report.records.size() << " records)\n";
  }
  return report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"central-binomial and harmonic series verification laboratory"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SharedFlags flags;

  std::string family_name;
  int order = 0;
  auto* eval = app.add_subcommand("eval", "evaluate one series family");
  add_shared(eval, flags);
  eval->add_option("--family", family_name, "family id (s,l,v,z,w,lin-H,lin-h or fixed id)")
      ->required();
  eval->add_option("--n", order, "series order for the ordered families");

  std::string expr;
  auto* cf = app.add_subcommand("closed-form", "parse, canonicalize and evaluate a closed form");
  add_shared(cf, flags);
  cf->add_option("--expr", expr, "closed-form text, e.g. '9/4*z4 - 4*ln2*z3'")->required();

  bool all = false;
  auto* verify = app.add_subcommand("verify", "verify catalog entries and identity chains");
  add_shared(verify, flags);
  verify->add_flag("--all", all, "run the full battery");
  verify->add_option("--family", family_name, "single family to verify");
  verify->add_option("--n", order, "series order");

  int lemma_id = 1;
  long lemma_k = 100;
  auto* lemma = app.add_subcommand("lemma", "exact lemma residuals and values");
  add_shared(lemma, flags);
  lemma->add_option("--id", lemma_id, "lemma id (1..4)")->required();
  lemma->add_option("--k", lemma_k, "index / residual range")->check(CLI::Range(1L, 100000L));

  int moment_n = 1;
  int level = 11;
  auto* logsine = app.add_subcommand("logsine", "log-sine moment by tanh-sinh quadrature");
  add_shared(logsine, flags);
  logsine->add_option("--n", moment_n, "log power (>= 0)")->check(CLI::Range(0, 16));
  logsine->add_option("--level", level, "maximum quadrature level")->check(CLI::Range(3, 16));

  std::string out_path;
  auto* report = app.add_subcommand("report", "run the full battery and write a report");
  add_shared(report, flags);
  report->add_option("--out", out_path, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (eval->parsed()) return run_eval(flags, family_name, order);
    if (cf->parsed()) return run_closed_form(flags, expr);
    if (verify->parsed()) return run_verify(flags, family_name, order, all);
    if (lemma->parsed()) return run_lemma(flags, lemma_id, lemma_k);
    if (logsine->parsed()) return run_logsine(flags, moment_n, level);
    if (report->parsed()) return run_report(flags, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
