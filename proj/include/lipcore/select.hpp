#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipcore/geom2d.hpp"
#include "lipcore/metricspace.hpp"
#include "lipcore/refine.hpp"

namespace lipcore {

struct Selection {
  std::vector<Point2> values;
  double seminorm = 0.0;
};

/// Raised when a selection is requested from a map with an Empty value.
class CertificationFailed : public std::runtime_error {
 public:
  CertificationFailed(std::size_t point, const std::string& label)
      : std::runtime_error("refined set is empty at point " + label), point_(point) {}
  std::size_t point() const { return point_; }

 private:
  std::size_t point_;
};

/// max over pairs with 0 < rho < inf of gauge(f(x) - f(y)) / rho(x,y);
/// +inf if some pair at distance 0 has distinct values.
double lipschitz_seminorm(std::span<const Point2> f, const PseudometricSpace& space, const PolygonalNorm& norm);

/// f(x) = Steiner point of F2(x), with its measured seminorm.
Selection steiner_selection(const SetValuedMap& f2);

}  // namespace lipcore
