#include "viscid/fluid_params.hpp"

#include <cmath>

namespace viscid {

void FluidParams::validate(const GridDims& dims) const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("FluidParams: rho must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("FluidParams: dt must be positive");
  if (mu.ni() != dims.nx || mu.nj() != dims.ny) throw ShapeError("FluidParams: mu field does not match grid");
  for (double m : mu.data())
    if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidArgument("FluidParams: mu must be finite and >= 0");
}

double FluidParams::mu_node(int i, int j) const {
  double sum = 0.0;
  int n = 0;
  for (int b = j - 1; b <= j; ++b)
    for (int a = i - 1; a <= i; ++a)
      if (mu.in_range(a, b)) {
        sum += mu(a, b);
        ++n;
      }
  return n ? sum / n : 0.0;
}

}  // namespace viscid
