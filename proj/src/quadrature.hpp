// Copyright 2026 The DCRM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DCRM_SRC_QUADRATURE_HPP
#define DCRM_SRC_QUADRATURE_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dcrm::detail {

// Adaptive 15-point Gauss-Kronrod on [a, b]. The tolerance is relative to the
// L1 norm of the integrand, so an identically zero integrand terminates at
// once with an exact 0. The integral is mapped onto [-1, 1] first: boost's
// error floor is not scaled by the interval width, which on short intervals
// would otherwise force bisection down to the maximum depth.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-13) {
  if (!(b > a)) {
    return 0.0;
  }
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double error = 0.0;
  return half * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                    [&](double x) { return f(mid + half * x); }, -1.0, 1.0, 15, rel_tol, &error);
}

}  // namespace dcrm::detail

#endif  // DCRM_SRC_QUADRATURE_HPP
