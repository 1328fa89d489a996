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

#include "dising/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace dising {

std::string to_string(Axis axis) {
  switch (axis) {
    case Axis::kLambda:
      return "lambda";
    case Axis::kDelta:
      return "delta";
    case Axis::kV:
      return "v";
  }
  return "?";
}

Axis parse_axis(const std::string& name) {
  if (name == "lambda") return Axis::kLambda;
  if (name == "delta") return Axis::kDelta;
  if (name == "v") return Axis::kV;
  throw ConfigError("unknown axis '" + name + "' (expected lambda, delta or v)");
}

std::size_t AxisRange::count() const {
  if (!(step > 0.0)) throw ConfigError("axis step must be positive");
  if (max < min) throw ConfigError("axis max must be >= min");
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

void Grid2D::validate() const {
  if (x.axis == y.axis) throw ConfigError("grid axes must differ");
  for (const AxisRange* a : {&x, &y}) {
    a->count();
    if (a->axis == Axis::kLambda && (a->min < 0.0 || a->value(a->count() - 1) > 1.0 + 1e-12)) {
      throw ConfigError("lambda axis must lie within [0, 1]");
    }
  }
  base.validate();
}

namespace {

void set_axis(ChainParams& p, Axis axis, double value) {
  switch (axis) {
    case Axis::kLambda:
      p.lambda = std::clamp(value, 0.0, 1.0);
      break;
    case Axis::kDelta:
      p.delta = value;
      break;
    case Axis::kV:
      p.v = value;
      break;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ChainParams Grid2D::cell_params(std::size_t ix, std::size_t iy) const {
  ChainParams p = base;
  set_axis(p, x.axis, x.value(ix));
  set_axis(p, y.axis, y.value(iy));
  return p;
}

std::uint64_t Grid2D::cell_seed(std::size_t ix, std::size_t iy) const {
  if (shared_seed) return seed;
  return splitmix64(seed ^ splitmix64(iy * nx() + ix));
}

void analyze_trajectory(const Trajectory& traj, const SweepConfig& config, CellRecord& rec) {
  rec.D = variance_D(traj, config.variance);
  const Spectrum spectrum = fft_spectrum(traj, config.spectral);
  rec.label = classify_phase(traj, spectrum, config.classifier);
  rec.converged = traj.converged;
  rec.residual = traj.residual;
  rec.diagnostics = traj.diagnostics;
  if (rec.label.coarse == CoarsePhase::kLc) {
    rec.peak_frequency = rec.label.dominant_frequency();
    rec.peak_amplitude = rec.label.dominant_amplitude();
  }
  if (config.steady_observables) {
    rec.correlations = correlation_functions(traj.final_state, traj.n_sites);
    rec.negativity = negativity(traj.final_state, traj.n_sites).value;
  }
}

CellRecord run_cell(const ChainParams& params, const SweepConfig& config, std::uint64_t seed) {
  CellRecord rec;
  rec.params = params;
  try {
    params.validate();
    const OperatorCache cache(params);
    InitialStateSpec init = config.initial;
    init.seed = seed;
    const Trajectory traj = evolve(initial_state(init, params.n_sites), params, cache, config.evolve);
    analyze_trajectory(traj, config, rec);
  } catch (const NumericalError& e) {
    rec.error = std::string("numerical failure: ") + e.what();
  } catch (const ConfigError& e) {
    rec.error = std::string("invalid cell: ") + e.what();
  }
  return rec;
}

SweepResult run_sweep(const Grid2D& grid, const SweepConfig& config,
                      const std::vector<std::size_t>& order) {
  grid.validate();
  config.evolve.validate();
  config.variance.validate();
  config.spectral.validate();
  config.classifier.validate();
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  const std::size_t nx = grid.nx();
  const std::size_t total = grid.size();
  std::vector<std::size_t> dispatch = order;
  if (dispatch.empty()) {
    dispatch.resize(total);
    std::iota(dispatch.begin(), dispatch.end(), std::size_t{0});
  } else {
    std::vector<std::size_t> sorted = dispatch;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < total; ++i) {
      if (sorted.size() != total || sorted[i] != i) {
        throw ConfigError("execution order must be a permutation of the cell indices");
      }
    }
  }

  SweepResult result;
  result.grid = grid;
  result.config = config;
  result.cells.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < total; k = next.fetch_add(1)) {
      const std::size_t cell = dispatch[k];
      const std::size_t ix = cell % nx;
      const std::size_t iy = cell / nx;
      CellRecord rec = run_cell(grid.cell_params(ix, iy), config, grid.cell_seed(ix, iy));
      rec.ix = ix;
      rec.iy = iy;
      result.cells[cell] = std::move(rec);
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), total);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Field2D d_field(const SweepResult& result) {
  Field2D f;
  f.nx = result.grid.nx();
  f.ny = result.grid.ny();
  f.hx = result.grid.x.step;
  f.hy = result.grid.y.step;
  f.values.resize(result.cells.size());
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    f.values[i] = result.cells[i].ok() ? result.cells[i].D : std::numeric_limits<double>::quiet_NaN();
  }
  return f;
}

Field2D directional_derivative(const Field2D& field, double dx, double dy) {
  if (field.nx == 0 || field.ny == 0 || field.values.size() != field.nx * field.ny) {
    throw ConfigError("field shape does not match its values");
  }
  if (!(field.hx > 0.0) || !(field.hy > 0.0)) throw ConfigError("grid spacing must be uniform and positive");
  if (std::abs(std::hypot(dx, dy) - 1.0) > 1e-9) throw ConfigError("direction must be a unit vector");
  if ((field.nx == 1 && dx != 0.0) || (field.ny == 1 && dy != 0.0)) {
    throw ConfigError("direction has a component along an axis with a single grid point");
  }
  auto partial = [&](std::size_t ix, std::size_t iy, bool along_x) {
    const std::size_t n = along_x ? field.nx : field.ny;
    const double h = along_x ? field.hx : field.hy;
    const std::size_t i = along_x ? ix : iy;
    auto value = [&](std::size_t k) { return along_x ? field.at(k, iy) : field.at(ix, k); };
    if (n == 1) return 0.0;
    if (i == 0) return (value(1) - value(0)) / h;
    if (i + 1 == n) return (value(n - 1) - value(n - 2)) / h;
    return (value(i + 1) - value(i - 1)) / (2.0 * h);
  };
  Field2D out = field;
  for (std::size_t iy = 0; iy < field.ny; ++iy) {
    for (std::size_t ix = 0; ix < field.nx; ++ix) {
      double v = 0.0;
      if (dx != 0.0) v += dx * partial(ix, iy, true);
      if (dy != 0.0) v += dy * partial(ix, iy, false);
      out.at(ix, iy) = v;
    }
  }
  return out;
}

BoundaryEstimate detect_boundaries(const Field2D& derivative, std::optional<double> threshold) {
  BoundaryEstimate est;
  std::vector<BoundaryPair> candidates;
  for (std::size_t iy = 0; iy < derivative.ny; ++iy) {
    for (std::size_t ix = 0; ix < derivative.nx; ++ix) {
      if (ix + 1 < derivative.nx) {
        candidates.push_back({ix, iy, ix + 1, iy,
                              std::abs(derivative.at(ix + 1, iy) - derivative.at(ix, iy))});
      }
      if (iy + 1 < derivative.ny) {
        candidates.push_back({ix, iy, ix, iy + 1,
                              std::abs(derivative.at(ix, iy + 1) - derivative.at(ix, iy))});
      }
    }
  }
  std::vector<double> jumps;
  double largest = 0.0;
  for (const auto& c : candidates) {
    if (std::isfinite(c.jump)) {
      jumps.push_back(c.jump);
      largest = std::max(largest, c.jump);
    }
  }
  if (jumps.empty()) return est;
  if (threshold) {
    est.threshold = *threshold;
  } else {
    auto mid = jumps.begin() + static_cast<std::ptrdiff_t>(jumps.size() / 2);
    std::nth_element(jumps.begin(), mid, jumps.end());
    est.threshold = 5.0 * *mid;
  }
  // Differences at rounding level never count as a discontinuity.
  const double floor = 1e-9 * largest;
  for (const auto& c : candidates) {
    if (std::isfinite(c.jump) && c.jump > est.threshold && c.jump > floor) est.pairs.push_back(c);
  }

  // Union-find over pairs that share a cell.
  std::vector<std::size_t> parent(est.pairs.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const std::size_t nx = derivative.nx;
  std::vector<std::vector<std::size_t>> by_cell(derivative.nx * derivative.ny);
  for (std::size_t p = 0; p < est.pairs.size(); ++p) {
    by_cell[est.pairs[p].iy0 * nx + est.pairs[p].ix0].push_back(p);
    by_cell[est.pairs[p].iy1 * nx + est.pairs[p].ix1].push_back(p);
  }
  // Pairs touching the same or a diagonally/orthogonally adjacent cell chain together.
  for (std::size_t iy = 0; iy < derivative.ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const auto& here = by_cell[iy * nx + ix];
      if (here.empty()) continue;
      for (std::size_t p : here) parent[find(p)] = find(here.front());
      for (int oy = 0; oy <= 1; ++oy) {
        for (int ox = -1; ox <= 1; ++ox) {
          if (oy == 0 && ox <= 0) continue;
          const auto jx = static_cast<std::ptrdiff_t>(ix) + ox;
          const std::size_t jy = iy + static_cast<std::size_t>(oy);
          if (jx < 0 || jx >= static_cast<std::ptrdiff_t>(nx) || jy >= derivative.ny) continue;
          const auto& there = by_cell[jy * nx + static_cast<std::size_t>(jx)];
          if (!there.empty()) parent[find(there.front())] = find(here.front());
        }
      }
    }
  }
  std::vector<std::ptrdiff_t> curve_of(est.pairs.size(), -1);
  for (std::size_t p = 0; p < est.pairs.size(); ++p) {
    const std::size_t root = find(p);
    if (curve_of[root] < 0) {
      curve_of[root] = static_cast<std::ptrdiff_t>(est.curves.size());
      est.curves.emplace_back();
    }
    est.curves[static_cast<std::size_t>(curve_of[root])].push_back(p);
  }
  return est;
}

PhaseDiagram phase_diagram(const SweepResult& result, double dx, double dy) {
  PhaseDiagram diagram;
  diagram.nx = result.grid.nx();
  diagram.ny = result.grid.ny();
  for (const CellRecord& c : result.cells) {
    diagram.labels.push_back(c.ok() ? to_string(c.label.coarse) : "error");
  }
  diagram.D = d_field(result);
  diagram.direction_x = dx;
  diagram.direction_y = dy;
  diagram.derivative = directional_derivative(diagram.D, dx, dy);
  diagram.boundaries = detect_boundaries(diagram.derivative);
  return diagram;
}

double boundary_label_agreement(const PhaseDiagram& diagram) {
  const auto& pairs = diagram.boundaries.pairs;
  if (pairs.empty()) return 1.0;
  auto label = [&](std::ptrdiff_t ix, std::ptrdiff_t iy) -> const std::string* {
    if (ix < 0 || iy < 0 || ix >= static_cast<std::ptrdiff_t>(diagram.nx) ||
        iy >= static_cast<std::ptrdiff_t>(diagram.ny)) {
      return nullptr;
    }
    return &diagram.labels[static_cast<std::size_t>(iy) * diagram.nx + static_cast<std::size_t>(ix)];
  };
  std::size_t agree = 0;
  for (const BoundaryPair& p : pairs) {
    const auto ox = static_cast<std::ptrdiff_t>(p.ix1) - static_cast<std::ptrdiff_t>(p.ix0);
    const auto oy = static_cast<std::ptrdiff_t>(p.iy1) - static_cast<std::ptrdiff_t>(p.iy0);
    bool change = false;
    // Stencil of the central difference: one cell beyond each end of the pair.
    for (std::ptrdiff_t k = -1; k <= 1 && !change; ++k) {
      const auto* a = label(static_cast<std::ptrdiff_t>(p.ix0) + k * ox,
                            static_cast<std::ptrdiff_t>(p.iy0) + k * oy);
      const auto* b = label(static_cast<std::ptrdiff_t>(p.ix0) + (k + 1) * ox,
                            static_cast<std::ptrdiff_t>(p.iy0) + (k + 1) * oy);
      if (a && b && *a != *b) change = true;
    }
    if (change) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(pairs.size());
}

std::vector<std::vector<Bifurcation>> row_bifurcations(const SweepResult& result) {
  if (result.grid.x.axis != Axis::kLambda) {
    throw ConfigError("bifurcation detection needs lambda on the x axis");
  }
  std::vector<std::vector<Bifurcation>> rows;
  for (std::size_t iy = 0; iy < result.grid.ny(); ++iy) {
    std::vector<ScanPoint> scan;
    for (std::size_t ix = 0; ix < result.grid.nx(); ++ix) {
      const CellRecord& c = result.at(ix, iy);
      if (c.ok()) scan.push_back({c.params.lambda, c.label});
    }
    rows.push_back(detect_bifurcations(scan));
  }
  return rows;
}

std::vector<LabelTransition> row_transitions(const SweepResult& result, std::size_t iy) {
  std::vector<LabelTransition> out;
  const CellRecord* prev = nullptr;
  for (std::size_t ix = 0; ix < result.grid.nx(); ++ix) {
    const CellRecord& c = result.at(ix, iy);
    if (!c.ok()) continue;
    if (prev && prev->label.coarse != c.label.coarse) {
      out.push_back({0.5 * (result.grid.x.value(prev->ix) + result.grid.x.value(c.ix)),
                     prev->label.coarse, c.label.coarse});
    }
    prev = &c;
  }
  return out;
}

}  // namespace dising
