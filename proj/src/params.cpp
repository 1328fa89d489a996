// Copyright 2026 The dising Authors
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

#include "dising/params.hpp"

#include <cmath>
#include <sstream>

#include "dising/types.hpp"

namespace dising {

void ChainParams::validate_allow_odd() const {
  if (n_sites < 1) throw ConfigError("n_sites must be >= 1");
  if (n_sites > kMaxSites) {
    throw SizeError("n_sites = " + std::to_string(n_sites) + " exceeds the dense limit of " +
                    std::to_string(kMaxSites));
  }
  for (double x : {delta, omega, v, gamma, lambda}) {
    if (!std::isfinite(x)) throw ConfigError("chain parameters must be finite");
  }
  if (gamma <= 0.0) throw ConfigError("gamma must be positive");
  if (lambda < 0.0 || lambda > 1.0) throw ConfigError("lambda must lie in [0, 1]");
}

void ChainParams::validate() const {
  validate_allow_odd();
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw ConfigError("n_sites must be even and >= 2 for sublattice diagnostics");
  }
}

std::string describe(const ChainParams& p) {
  std::ostringstream os;
  os << "N=" << p.n_sites << " Delta=" << p.delta << " Omega=" << p.omega << " V=" << p.v
     << " gamma=" << p.gamma << " lambda=" << p.lambda;
  return os.str();
}

}  // namespace dising
