// Copyright 2026 The wecs-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Built as C++17: the uBLAS shipped with Boost 1.74 does not compile under C++20.

#include "stiff_ode.hpp"

#include <boost/numeric/odeint.hpp>

namespace wecs::acceptance {

namespace ode = boost::numeric::odeint;
using Vec = boost::numeric::ublas::vector<double>;
using Mat = boost::numeric::ublas::matrix<double>;

void integrate_stiff(const Rhs& rhs, const Jacobian& jac, std::vector<double>& x, double t_end,
                     double dt_obs, double abs_tol, double rel_tol, const Observer& observe) {
  const std::size_t n = x.size();
  Vec state(n);
  for (std::size_t k = 0; k < n; ++k) state[k] = x[k];
  std::vector<double> buf(n * n);

  auto system = [&](const Vec& s, Vec& ds, double) { rhs(&s.data()[0], &ds.data()[0]); };
  auto jacobian = [&](const Vec& s, Mat& j, double, Vec& dfdt) {
    jac(&s.data()[0], buf.data());
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) j(r, c) = buf[r * n + c];
      dfdt[r] = 0.0;
    }
  };
  auto observer = [&](const Vec& s, double t) {
    for (std::size_t k = 0; k < n; ++k) x[k] = s[k];
    observe(t, x);
  };
  auto stepper = ode::make_dense_output(abs_tol, rel_tol, ode::rosenbrock4<double>());
  ode::integrate_const(stepper, std::make_pair(system, jacobian), state, 0.0, t_end, dt_obs,
                       observer);
  for (std::size_t k = 0; k < n; ++k) x[k] = state[k];
}

}  // namespace wecs::acceptance
