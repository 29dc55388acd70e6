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

#pragma once

#include <functional>
#include <vector>

namespace wecs::acceptance {

// Row-major Jacobian, n*n entries.
using Rhs = std::function<void(const double* x, double* dx)>;
using Jacobian = std::function<void(const double* x, double* jac)>;
using Observer = std::function<void(double t, const std::vector<double>& x)>;

// Autonomous stiff system, Rosenbrock integration with dense output sampled
// every dt_obs up to t_end.
void integrate_stiff(const Rhs& rhs, const Jacobian& jac, std::vector<double>& x, double t_end,
                     double dt_obs, double abs_tol, double rel_tol, const Observer& observe);

}  // namespace wecs::acceptance
