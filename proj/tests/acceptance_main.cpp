// Acceptance battery: runs every gate criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion.  Exit code 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "cbsum/catalog.hpp"
#include "cbsum/closed_form.hpp"
#include "cbsum/constants.hpp"
#include "cbsum/euler_relations.hpp"
#include "cbsum/identities.hpp"
#include "cbsum/logsine.hpp"
#include "cbsum/sequences.hpp"
#include "cbsum/series.hpp"
#include "cbsum/verify.hpp"

using namespace cbsum;

namespace {

int failures = 0;

void criterion(int number, const char* name, bool ok, const std::string& detail = "") {
  std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool within(const Real& value, long pow10) { return value.abs_below_pow10(pow10); }

// ---------------------------------------------------------------- criterion 1

// Entries whose closed forms carry polylogarithms (or alternating weights):
// these may verify at the relaxed 1e-15 @ 25 digits.
bool is_polylog_entry(const CatalogEntry& e) {
  for (const Monomial& m : e.closed_form.monomials())
    for (const auto& [sym, exp] : m.powers)
      if (sym.kind() == ConstSymbol::Kind::LiHalf) return true;
  return false;
}

bool catalog_criterion() {
  const auto start = std::chrono::steady_clock::now();
  bool all_ok = true;
  int count = 0;
  for (const CatalogEntry& e : catalog_all()) {
    ++count;
    const bool relaxed = is_polylog_entry(e);
    const PrecisionContext ctx{relaxed ? 25 : 40};
    EvalOptions opts;
    const EvalResult r = e.family.alternating() ? evaluate_alternating(e.family, ctx, opts)
                                                : evaluate(e.family, ctx, opts);
    const Real closed = cf_evaluate(e.closed_form, ctx);
    const Real err = (r.value - closed).abs();
    const bool ok = r.converged && within(err, relaxed ? 15 : 25);
    if (!ok) {
      std::printf("  entry %s FAILED: numeric=%s closed=%s err=%s\n", e.label.c_str(),
                  r.value.to_string(12).c_str(), closed.to_string(12).c_str(),
                  err.to_string(12).c_str());
      all_ok = false;
    }
  }
  const double secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count() /
                      1000.0;
  std::printf("  (%d entries verified in %.1fs)\n", count, secs);
  return all_ok && count == 31 && secs < 600.0;
}

// ---------------------------------------------------------------- criterion 2

bool lemma_suites_criterion() {
  const PrecisionContext ctx{30};
  const VerifyOptions opts;
  bool ok = true;
  for (const char* id : {"lemma:1-recurrence", "lemma:3-recurrence", "lemma:finite-binom-sum",
                         "lemma:odd-partial-fraction"}) {
    const VerificationRecord rec = verify_entry(id, ctx, opts);
    if (!rec.pass) {
      std::printf("  %s FAILED\n", id);
      ok = false;
    }
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 3

bool oracle_criterion() {
  const PrecisionContext ctx{30};
  bool ok = true;

  // lemma oracles at 1e-20
  for (long k = 1; k <= 20; ++k) {
    const Real l2 =
        evaluate(ShiftedKernel{ShiftedKernel::Kind::CentralOverShiftSq, k}, ctx).value;
    const Real l4 =
        evaluate(ShiftedKernel{ShiftedKernel::Kind::OddHCentralOverShift, k}, ctx).value;
    if (!within((l2 - lemma2_f(k).numeric(ctx)).abs(), 20) ||
        !within((l4 - Real{lemma4_rhs(k), ctx}).abs(), 20)) {
      std::printf("  lemma oracle failed at k=%ld\n", k);
      ok = false;
    }
  }

  // every catalog family: evaluate lands inside the bracket around the exact
  // 10^4-term partial sum; the same pass checks kernel positivity exactly
  const long K = 10000;
  for (const CatalogEntry& e : catalog_all()) {
    const bool alternating = e.family.alternating();
    SequenceStream st{true};
    Rational partial{0}, chunk{0};
    bool positive = true;
    for (long k = 1; k <= K; ++k) {
      st.advance();
      const Rational t = term_at(e.family, st);
      if (!alternating && t.sign() <= 0) positive = false;
      chunk += t;
      if (k % 128 == 0) {
        partial += chunk;
        chunk = Rational{0};
      }
    }
    partial += chunk;
    if (!positive) {
      std::printf("  kernel positivity failed for %s\n", e.label.c_str());
      ok = false;
    }
    if (alternating) continue;  // no monotone bracket
    const EvalResult r = evaluate(e.family, ctx);
    const TailBracket br = tail_bracket(e.family, K, ctx);
    if (!br.contains(r.value - Real{partial, ctx})) {
      std::printf("  bracket containment failed for %s\n", e.label.c_str());
      ok = false;
    }
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 4

bool theorem1_criterion() {
  const PrecisionContext ctx{30};
  bool ok = true;
  for (int n = 1; n <= 5; ++n) {
    const Real r = theorem1_residual(n, ctx);
    if (!within(r, 20)) {
      std::printf("  theorem-1 residual too large at n=%d: %s\n", n, r.to_string(8).c_str());
      ok = false;
    }
  }
  const Real ls4 = ls4_check(ctx);
  if (!within(ls4, 20)) {
    std::printf("  log-sine check residual too large: %s\n", ls4.to_string(8).c_str());
    ok = false;
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 5

bool convolution_criterion() {
  const PrecisionContext ctx{30};
  bool ok = true;
  for (auto id : {ConvolutionId::S3Chain, ConvolutionId::V2Chain, ConvolutionId::Z2Chain,
                  ConvolutionId::W1Square}) {
    const Real r = verify_convolution(id, ctx);
    if (!within(r, 20)) {
      std::printf("  %s residual too large: %s\n", convolution_name(id),
                  r.to_string(8).c_str());
      ok = false;
    }
  }
  if (!verify_convolution(ConvolutionId::S4Antisymmetry, ctx).is_zero()) {
    std::printf("  antisymmetry check not exactly zero\n");
    ok = false;
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 6

bool relation_criterion() {
  const PrecisionContext ctx{25};
  bool ok = true;
  for (auto id :
       {RelationId::EvenOddSplit, RelationId::OddSquareAssembly, RelationId::MixFromWeighted}) {
    const Real r = relation_residual(id, ctx);
    if (!within(r, 15)) {
      std::printf("  %s residual too large: %s\n", relation_name(id), r.to_string(8).c_str());
      ok = false;
    }
  }
  for (int n = 1; n <= 3; ++n) {
    if (!within(w_closed_form_check(n, ctx), 15)) {
      std::printf("  w closed-form check failed at n=%d\n", n);
      ok = false;
    }
  }
  // w(1) = 45/16 zeta(4), reproduced to 20 digits
  const Real w1 = evaluate(SeriesFamily::w(1), ctx).value;
  const Real target = const_zeta(4, ctx) * Rational{45, 16};
  if (!within((w1 - target).abs(), 20)) {
    std::printf("  w(1) does not reproduce 45/16 zeta(4) to 20 digits\n");
    ok = false;
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 7

bool property_criterion() {
  bool ok = true;

  // sequence recurrences and the h/H identity, exact to 10^4
  {
    SequenceStream st{true};
    Rational prev_c{1};
    for (long k = 1; k <= 10000; ++k) {
      st.advance();
      if (st.c() != prev_c * Rational{2 * k - 1, static_cast<unsigned long>(2 * k)}) ok = false;
      if (st.h() != st.H2() - st.H() / Rational{2}) ok = false;
      prev_c = st.c();
      if (!ok) {
        std::printf("  sequence identity failed at k=%ld\n", k);
        break;
      }
    }
  }

  // parse/format round-trip on all catalog strings
  for (const CatalogEntry& e : catalog_all()) {
    const std::string text = cf_format(e.closed_form);
    if (!(cf_parse(text) == e.closed_form)) {
      std::printf("  round-trip failed for %s\n", e.label.c_str());
      ok = false;
    }
  }

  // precision-doubling agreement
  for (const char* id : {"s:4", "v:2", "h-sq-k3"}) {
    const SeriesFamily f = *SeriesFamily::from_id(id);
    const Real lo = evaluate(f, PrecisionContext{20}).value;
    const Real hi = evaluate(f, PrecisionContext{40}).value;
    if (!within((lo - hi).abs(), 18)) {
      std::printf("  precision doubling failed for %s\n", id);
      ok = false;
    }
  }

  // harness sensitivity: a perturbed closed form must fail
  {
    CatalogEntry tweaked = catalog_get(SeriesFamily::s(2));
    tweaked.closed_form =
        tweaked.closed_form + ClosedForm::constant(Rational{1, 10000000000ul});
    const VerificationRecord rec = verify_catalog_entry(tweaked, PrecisionContext{30}, {});
    if (rec.pass) {
      std::printf("  perturbed fixture unexpectedly passed\n");
      ok = false;
    }
  }
  return ok;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  criterion(1, "catalog verification (31 entries, 1e-25 @ 40 digits, polylog 1e-15 @ 25)",
            catalog_criterion());
  criterion(2, "exact lemma suites (recurrences, finite sum, partial-fraction limits)",
            lemma_suites_criterion());
  criterion(3, "series/lemma oracles and tail-bracket containment", oracle_criterion());
  criterion(4, "theorem-1 residuals n=1..5 and the log-sine value check", theorem1_criterion());
  criterion(5, "convolution chains below 1e-20, antisymmetry exactly zero",
            convolution_criterion());
  criterion(6, "nonlinear relations below 1e-15 and w closed forms", relation_criterion());
  criterion(7, "property suites (recurrences, round-trip, doubling, sensitivity)",
            property_criterion());

  const double secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count() /
                      1000.0;
  std::printf("%s  acceptance battery finished in %.1fs\n", failures == 0 ? "PASS" : "FAIL",
              secs);
  return failures == 0 ? 0 : 1;
}
