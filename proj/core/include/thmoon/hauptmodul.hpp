// The 48 weight-zero McKay-Thompson series: recipe evaluation to exact
// q-series, their cubes, and the Frame-shape eta products.  High-precision
// numeric evaluation at upper-half-plane points lives in tsm/mpcomplex.

#pragma once

#include <stdexcept>
#include <string>

#include "thmoon/paperdata.hpp"
#include "thmoon/qseries.hpp"

namespace thmoon {

struct UnknownClass : std::runtime_error {
  explicit UnknownClass(const std::string& cls)
      : std::runtime_error("no Hauptmodul recipe for class " + cls) {}
};

// T-tilde series for a class (or fused label), as a series in q^{1/3}
// starting q^{-1/3}(1 + ...), reliable below q^order.
FracSeries thompson_series(const std::string& cls, long order);

// The cube, starting q^{-1}(1 + ...); equals thompson_series^3.
FracSeries thompson_cubed(const std::string& cls, long order);

// Frame-shape eta product: prod_b eta(b tau)^(power * v_b); power 2 gives
// the eta correction of the weight-zero penumbral product.
FracSeries frame_eta(const std::string& cls, int power, long order);

// Recipe invariance-group symbols (metadata from the recipe table).
std::string invariance_symbol_T(const std::string& cls);
std::string invariance_symbol_T3(const std::string& cls);

}  // namespace thmoon
