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

#pragma once

#include <string>

namespace dising {

/// Physical parameters of the periodic chain, all energies in units of gamma.
///
/// Site indices in the C++ API are zero-based: site s occupies bit s of a
/// basis index, and bit value 1 means spin-up (Rydberg). User-facing output
/// (CSV headers, reports) labels sites 1..N, so "odd sites" are s = 0, 2, 4, ...
struct ChainParams {
  int n_sites = 6;
  double delta = 2.0;
  double omega = 1.5;
  double v = 5.0;
  double gamma = 1.0;
  double lambda = 0.5;

  /// Throws ConfigError when N is odd or < 2, lambda is outside [0, 1],
  /// gamma <= 0, or any value is not finite.
  void validate() const;

  /// Same checks without the even-N requirement; single-site oracles use N = 1.
  void validate_allow_odd() const;

  bool operator==(const ChainParams&) const = default;
};

std::string describe(const ChainParams& p);

}  // namespace dising
