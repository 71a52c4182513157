#include "cbsum/euler_relations.hpp"

#include <stdexcept>

#include "cbsum/catalog.hpp"
#include "cbsum/series.hpp"

namespace cbsum {

namespace {

Real full_h_square_cubic(PrecisionContext ctx) {
  return evaluate(ShiftedKernel{ShiftedKernel::Kind::HSqOverCube}, ctx).value;
}

}  // namespace

Real relation_residual(RelationId id, PrecisionContext ctx) {
  const PrecisionContext wctx{ctx.digits + ctx.guard, ctx.guard};
  switch (id) {
    case RelationId::EvenOddSplit: {
      const Real full = full_h_square_cubic(wctx);
      const Real alt =
          evaluate_alternating(SeriesFamily::fixed(FamilyTag::AltHSq3), wctx).value;
      const Real even_sq = evaluate(SeriesFamily::fixed(FamilyTag::SqH2k), wctx).value;
      return (full - alt - even_sq / 4).abs();
    }
    case RelationId::OddSquareAssembly: {
      const Real odd_sq = evaluate(SeriesFamily::fixed(FamilyTag::OddHSq3), wctx).value;
      const Real full = full_h_square_cubic(wctx);
      const Real alt =
          evaluate_alternating(SeriesFamily::fixed(FamilyTag::AltHSq3), wctx).value;
      const Real mix = evaluate(SeriesFamily::fixed(FamilyTag::MixHOddH3), wctx).value;
      return (odd_sq - (full * Rational{15, 4} - alt * 4L - mix)).abs();
    }
    case RelationId::MixFromWeighted: {
      // H_2k = h_k + H_k/2 splits the weighted sum into mixed and square parts.
      const Real mix = evaluate(SeriesFamily::fixed(FamilyTag::MixHOddH3), wctx).value;
      const Real weighted = evaluate(SeriesFamily::fixed(FamilyTag::WeightedH2k), wctx).value;
      const Real full = full_h_square_cubic(wctx);
      return (mix - (weighted * 8L - full / 2)).abs();
    }
    case RelationId::WOneSquare: {
      const Real w1 = evaluate(SeriesFamily::w(1), wctx).value;
      const Real v1 = evaluate(SeriesFamily::v(1), wctx).value;
      return (w1 * 2L - v1 * v1).abs();
    }
  }
  throw std::logic_error("relation_residual: unreachable");
}

const char* relation_name(RelationId id) {
  switch (id) {
    case RelationId::EvenOddSplit: return "even-odd-split";
    case RelationId::OddSquareAssembly: return "odd-square-assembly";
    case RelationId::MixFromWeighted: return "mix-from-weighted";
    case RelationId::WOneSquare: return "w1-square";
  }
  return "?";
}

Real w_closed_form_check(int n, PrecisionContext ctx) {
  if (n < 1 || n > 3) throw std::invalid_argument("w_closed_form_check: n must be 1..3");
  const PrecisionContext wctx{ctx.digits + ctx.guard, ctx.guard};
  const Real numeric = evaluate(SeriesFamily::w(n), wctx).value;
  const Real closed = cf_evaluate(catalog_get(SeriesFamily::w(n)).closed_form, wctx);
  return (numeric - closed).abs();
}

}  // namespace cbsum
