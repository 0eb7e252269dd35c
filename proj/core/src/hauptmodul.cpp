#include "thmoon/hauptmodul.hpp"

#include <functional>

namespace thmoon {

namespace {

const nlohmann::json& recipe_for(const std::string& cls) {
  const auto& recipes = PaperData::instance().recipes()["recipes"];
  const std::string& col = PaperData::instance().column_name(cls);
  if (!recipes.contains(col)) throw UnknownClass(cls);
  return recipes[col];
}

// Evaluate with increasing working order until the exact truncation
// tracking certifies reliability below q^order.
FracSeries ensure_order(const std::function<FracSeries(long)>& make, long order) {
  for (long work = order + 2;; work = work * 2 + 4) {
    FracSeries f = make(work);
    if (f.trunc_num() >= order * f.denom())
      return f.truncated(order * f.denom());
    if (work > 64 * (order + 4))
      throw SeriesError("series working order did not converge");
  }
}

FracSeries eval_expr(const nlohmann::json& e, long work);

FracSeries eval_eta_factors(const nlohmann::json& factors, long work) {
  FracSeries r = FracSeries::constant(Rat(1), work);
  for (const auto& f : factors) {
    long num = f[0].get<long>(), den = f[1].get<long>(), e = f[2].get<long>();
    // eta(num/den * tau): the rescale divides the reliable q-order by
    // num/den, so expand far enough first.
    long base = (work * den) / num + 2;
    FracSeries eta = standard_series(StdSeriesKind::Eta, base)
                         .rescaled(Rat(num, den));
    r = r * eta.pow_int(e);
  }
  return r;
}

FracSeries eval_rr(const std::string& kind, long work) {
  FracSeries G = standard_series(StdSeriesKind::RR_G, work + 8);
  FracSeries H = standard_series(StdSeriesKind::RR_H, work + 8);
  if (kind == "19A") {
    // q^{-1/3}(G(t)G(19t) + q^4 H(t)H(19t))
    FracSeries s = G * G.rescaled(Rat(19)) +
                   (H * H.rescaled(Rat(19))).shifted(4);
    return s.shifted(-1, 3);
  }
  if (kind == "31AB") {
    // q^{-1/3}(H(t)G(31t) - q^6 G(t)H(31t))
    FracSeries s = H * G.rescaled(Rat(31)) -
                   (G * H.rescaled(Rat(31))).shifted(6);
    return s.shifted(-1, 3);
  }
  throw SeriesError("unknown Rogers-Ramanujan combination " + kind);
}

FracSeries eval_expr(const nlohmann::json& e, long work) {
  const std::string op = e["op"].get<std::string>();
  if (op == "jay") return standard_series(StdSeriesKind::J, work);
  if (op == "eta") return eval_eta_factors(e["factors"], work);
  if (op == "const")
    return FracSeries::constant(Rat(e["c"].get<std::string>()), work);
  if (op == "scale")
    return eval_expr(e["arg"], work) * Rat(e["c"].get<std::string>());
  if (op == "sum") {
    FracSeries r(1, work);
    for (const auto& t : e["terms"]) r = r + eval_expr(t, work);
    return r;
  }
  if (op == "root") return eval_expr(e["arg"], work).root(e["k"].get<long>());
  if (op == "rr") return eval_rr(e["kind"].get<std::string>(), work);
  throw SeriesError("unknown recipe op " + op);
}

}  // namespace

FracSeries thompson_series(const std::string& cls, long order) {
  const auto& recipe = recipe_for(cls);
  return ensure_order(
      [&](long work) { return eval_expr(recipe["expr"], work); }, order);
}

FracSeries thompson_cubed(const std::string& cls, long order) {
  const auto& recipe = recipe_for(cls);
  return ensure_order(
      [&](long work) { return eval_expr(recipe["expr"], work).pow_int(3); },
      order);
}

FracSeries frame_eta(const std::string& cls, int power, long order) {
  const auto& shape = PaperData::instance().frame_shape(cls);
  return ensure_order(
      [&](long work) {
        FracSeries r = FracSeries::constant(Rat(1), work);
        for (auto [b, v] : shape) {
          long base = work / b + 2;
          FracSeries eta =
              standard_series(StdSeriesKind::Eta, base).rescaled(Rat(b));
          r = r * eta.pow_int(power * v);
        }
        return r;
      },
      order);
}

std::string invariance_symbol_T(const std::string& cls) {
  return recipe_for(cls)["invT"].get<std::string>();
}

std::string invariance_symbol_T3(const std::string& cls) {
  return recipe_for(cls)["invT3"].get<std::string>();
}

}  // namespace thmoon
