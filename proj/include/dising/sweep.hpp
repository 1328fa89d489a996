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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dising/integrator.hpp"
#include "dising/observables.hpp"
#include "dising/spectral.hpp"

namespace dising {

enum class Axis { kLambda, kDelta, kV };
std::string to_string(Axis axis);
Axis parse_axis(const std::string& name);

/// Inclusive range min, min + step, ..., <= max (with 1e-9 relative slack).
struct AxisRange {
  Axis axis = Axis::kLambda;
  double min = 0.0;
  double max = 0.0;
  double step = 0.01;

  std::size_t count() const;
  double value(std::size_t i) const { return min + static_cast<double>(i) * step; }
};

struct Grid2D {
  AxisRange x{Axis::kLambda, 0.0, 0.6, 0.01};
  AxisRange y{Axis::kDelta, 2.0, 2.0, 0.1};
  /// Values for the parameters not swept.
  ChainParams base;
  std::uint64_t seed = 0;
  /// Use `seed` unchanged for every cell, so a random initial state is
  /// shared along the scan instead of redrawn per cell.
  bool shared_seed = false;

  void validate() const;
  std::size_t nx() const { return x.count(); }
  std::size_t ny() const { return y.count(); }
  std::size_t size() const { return nx() * ny(); }
  ChainParams cell_params(std::size_t ix, std::size_t iy) const;
  /// Per-cell RNG seed derived from `seed` and the cell index (or `seed`
  /// itself when shared).
  std::uint64_t cell_seed(std::size_t ix, std::size_t iy) const;
};

struct SweepConfig {
  EvolveConfig evolve;
  InitialStateSpec initial;
  VarianceWindow variance;
  SpectralWindow spectral;
  ClassifierConfig classifier;
  /// Also record C_r and negativity of each cell's final state.
  bool steady_observables = false;
  /// Worker threads (>= 1). Results do not depend on this.
  int jobs = 1;
};

struct CellRecord {
  std::size_t ix = 0;
  std::size_t iy = 0;
  ChainParams params;
  double D = 0.0;
  PhaseLabel label;
  bool converged = false;
  double residual = 0.0;
  double peak_frequency = 0.0;
  double peak_amplitude = 0.0;
  StateDiagnostics diagnostics;
  std::vector<double> correlations;
  std::optional<double> negativity;
  /// Non-empty when the cell failed; the other fields are then unset.
  std::string error;

  bool ok() const { return error.empty(); }
};

struct SweepResult {
  Grid2D grid;
  SweepConfig config;
  /// Row-major by (iy, ix): cells[iy * nx + ix].
  std::vector<CellRecord> cells;
  double wall_seconds = 0.0;

  const CellRecord& at(std::size_t ix, std::size_t iy) const { return cells.at(iy * grid.nx() + ix); }
};

/// Fills the analysis fields of `rec` (D, label, peak, diagnostics and,
/// if configured, steady observables) from a finished trajectory.
void analyze_trajectory(const Trajectory& traj, const SweepConfig& config, CellRecord& rec);

/// Full pipeline for one parameter point: evolve from the configured
/// initial state, D over the variance window, spectrum and classification
/// over the spectral window. Numerical failures land in `error`.
CellRecord run_cell(const ChainParams& params, const SweepConfig& config, std::uint64_t seed);

/// Runs every grid cell on a bounded worker pool. `order`, if given, is the
/// permutation in which cells are dispatched; it does not affect the result.
SweepResult run_sweep(const Grid2D& grid, const SweepConfig& config,
                      const std::vector<std::size_t>& order = {});

/// Scalar field on a uniform rectangular grid, row-major by (iy, ix).
struct Field2D {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double hx = 1.0;
  double hy = 1.0;
  std::vector<double> values;

  double at(std::size_t ix, std::size_t iy) const { return values.at(iy * nx + ix); }
  double& at(std::size_t ix, std::size_t iy) { return values.at(iy * nx + ix); }
};

/// D over the grid (NaN for failed cells).
Field2D d_field(const SweepResult& result);

/// d . grad f using central differences (one-sided at edges). `d` must be a
/// unit vector; a component along an axis with a single point must be 0.
Field2D directional_derivative(const Field2D& field, double dx, double dy);

struct BoundaryPair {
  std::size_t ix0 = 0, iy0 = 0, ix1 = 0, iy1 = 0;
  double jump = 0.0;
};

struct BoundaryEstimate {
  std::vector<BoundaryPair> pairs;
  /// Indices into `pairs`, grouped into connected curves.
  std::vector<std::vector<std::size_t>> curves;
  double threshold = 0.0;
};

/// Neighbouring cells whose derivative values differ by more than the
/// threshold (default: 5x the median neighbour difference).
BoundaryEstimate detect_boundaries(const Field2D& derivative,
                                   std::optional<double> threshold = std::nullopt);

struct PhaseDiagram {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<std::string> labels;
  Field2D D;
  Field2D derivative;
  double direction_x = 1.0;
  double direction_y = 0.0;
  BoundaryEstimate boundaries;
};

PhaseDiagram phase_diagram(const SweepResult& result, double dx = 1.0, double dy = 0.0);

/// Fraction of boundary pairs that sit within one cell of a change in
/// coarse label along the pair's axis.
double boundary_label_agreement(const PhaseDiagram& diagram);

/// Bifurcations along each grid row; requires lambda on the x axis.
std::vector<std::vector<Bifurcation>> row_bifurcations(const SweepResult& result);

/// Lambda values where the coarse label changes along row iy, as
/// (midpoint, from, to).
struct LabelTransition {
  double lambda = 0.0;
  CoarsePhase from = CoarsePhase::kFm;
  CoarsePhase to = CoarsePhase::kFm;
};
std::vector<LabelTransition> row_transitions(const SweepResult& result, std::size_t iy);

}  // namespace dising
