// The quadrature routines are templates in the public header; this unit
// instantiates the common case once so the header stays honest under -Wall.
#include "tscale/quadrature.hpp"

#include <functional>

namespace tscale {

template QuadResult adaptive_simpson<std::function<double(double)>>(
    const std::function<double(double)>&, double, double, double, double, double, int, int);
template QuadResult integrate_piecewise<std::function<double(double)>>(
    const std::function<double(double)>&, double, double, std::vector<double>, double);

}  // namespace tscale
