// Copyright 2026 The tlsbath Authors
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

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tlsbath/core/error.hpp"
#include "tlsbath/fit/levenberg_marquardt.hpp"

namespace tlsbath::fit {

// Times and values of a measured or simulated curve; err is optional (empty or same length).
struct Trace {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> err;

  std::size_t size() const { return t.size(); }
};

struct FitResult {
  std::string model_id;
  std::vector<std::string> names;
  std::vector<double> params;
  std::vector<double> sigmas;
  double rss = 0.0;
  bool converged = false;
  int iterations = 0;
  double gradient_ratio = 0.0;            // |grad RSS| at the optimum over its starting value
  std::map<std::string, double> derived;  // e.g. median, skewness

  double value(const std::string& name) const { return params.at(index_of(name)); }
  double sigma(const std::string& name) const { return sigmas.at(index_of(name)); }

  std::size_t index_of(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw InvalidArgument("FitResult: no parameter '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
  }
};

inline FitResult make_result(std::string model_id, const std::vector<ParamSpec>& specs, const LmResult& lm) {
  FitResult r;
  r.model_id = std::move(model_id);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    r.names.push_back(specs[i].name);
    r.params.push_back(lm.params[static_cast<Eigen::Index>(i)]);
    r.sigmas.push_back(lm.sigmas[static_cast<Eigen::Index>(i)]);
  }
  r.rss = lm.rss;
  r.converged = lm.converged;
  r.iterations = lm.iterations;
  r.gradient_ratio = lm.initial_gradient_norm > 0.0 ? lm.final_gradient_norm / lm.initial_gradient_norm : 0.0;
  return r;
}

inline void require_converged(const FitResult& r) {
  if (!r.converged) throw ConvergenceError(r.model_id + ": no convergence within the iteration limit");
}

}  // namespace tlsbath::fit
