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

#include "dising/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "dising/observables.hpp"

namespace dising {

void SpectralWindow::validate() const {
  if (!(start >= 0.0) || !(length > 0.0) || !(sample_interval > 0.0)) {
    throw ConfigError("spectral window needs start >= 0 and positive length and spacing");
  }
  if (length < 4.0 * sample_interval) throw ConfigError("spectral window is too short");
}

std::string SignalSelector::name() const {
  switch (kind) {
    case Kind::kEven:
      return "n_even";
    case Kind::kOdd:
      return "n_odd";
    case Kind::kSite:
      return "n_" + std::to_string(site + 1);
  }
  return "?";
}

namespace {

// Planner calls are not thread-safe in FFTW; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Spectrum fft_spectrum(std::span<const double> signal, double sample_interval, bool taper) {
  const std::size_t m = signal.size();
  if (m < 4) throw ConfigError("spectrum needs at least four samples");
  if (!(sample_interval > 0.0)) throw ConfigError("sample interval must be positive");

  double mean = 0.0;
  for (double x : signal) mean += x;
  mean /= static_cast<double>(m);

  double* in = fftw_alloc_real(m);
  fftw_complex* out = fftw_alloc_complex(m / 2 + 1);
  const std::unique_ptr<double, decltype(&fftw_free)> in_guard(in, &fftw_free);
  const std::unique_ptr<fftw_complex, decltype(&fftw_free)> out_guard(out, &fftw_free);

  double variance = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double x = signal[k] - mean;
    if (taper) {
      x *= 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                 static_cast<double>(m));
    }
    in[k] = x;
  }
  // Tapering reintroduces a mean; the DC bin is not reported.
  double tapered_mean = 0.0;
  for (std::size_t k = 0; k < m; ++k) tapered_mean += in[k];
  tapered_mean /= static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) variance += (in[k] - tapered_mean) * (in[k] - tapered_mean);
  variance /= static_cast<double>(m);

  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in, out, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  Spectrum spec;
  spec.window_length = static_cast<double>(m) * sample_interval;
  spec.sample_interval = sample_interval;
  spec.signal_variance = variance;
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 1; k <= m / 2; ++k) {
    const double mag = std::hypot(out[k][0], out[k][1]) * inv_m;
    const bool nyquist_bin = (m % 2 == 0) && k == m / 2;
    const double amp = nyquist_bin ? mag : std::numbers::sqrt2 * mag;
    spec.frequency.push_back(static_cast<double>(k) / spec.window_length);
    spec.amplitude.push_back(amp);
    spec.log_amplitude.push_back(std::log(std::max(amp, 1e-300)));
  }
  return spec;
}

Spectrum fft_spectrum(const Trajectory& trajectory, const SpectralWindow& window,
                      SignalSelector signal, bool taper) {
  window.validate();
  const double dt = trajectory.sample_interval;
  for (std::size_t k = 1; k < trajectory.times.size(); ++k) {
    const double step = trajectory.times[k] - trajectory.times[k - 1];
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, dt)) {
      throw ConfigError("trajectory sampling is not uniform");
    }
  }
  const auto idx = window_indices(trajectory, window.start, window.length, window.sample_interval);
  std::vector<double> series;
  series.reserve(idx.size());
  for (std::size_t k : idx) {
    switch (signal.kind) {
      case SignalSelector::Kind::kEven:
        if (trajectory.n_even.empty()) throw ConfigError("trajectory has no sublattice series");
        series.push_back(trajectory.n_even[k]);
        break;
      case SignalSelector::Kind::kOdd:
        if (trajectory.n_odd.empty()) throw ConfigError("trajectory has no sublattice series");
        series.push_back(trajectory.n_odd[k]);
        break;
      case SignalSelector::Kind::kSite:
        if (signal.site < 0 || signal.site >= trajectory.n_sites) {
          throw ConfigError("signal site out of range");
        }
        series.push_back(trajectory.populations[k][signal.site]);
        break;
    }
  }
  Spectrum spec = fft_spectrum(series, window.sample_interval, taper);
  spec.window_start = trajectory.times[idx.front()];
  return spec;
}

std::vector<Peak> dominant_peaks(const Spectrum& spectrum, double prominence) {
  const std::vector<double>& a = spectrum.amplitude;
  const std::size_t n = a.size();
  std::vector<Peak> peaks;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (!(a[k] > a[k - 1] && a[k] >= a[k + 1])) continue;
    double left_min = a[k];
    std::size_t i = k;
    while (i > 0 && a[i - 1] <= a[k]) left_min = std::min(left_min, a[--i]);
    double right_min = a[k];
    std::size_t j = k;
    while (j + 1 < n && a[j + 1] <= a[k]) right_min = std::min(right_min, a[++j]);
    // A plateau continuing to a higher value on the right is not a peak.
    if (j + 1 < n && a[j + 1] > a[k] && right_min == a[k]) continue;
    const double prom = a[k] - std::max(left_min, right_min);
    if (prom >= prominence && prom > 0.0) {
      peaks.push_back({spectrum.frequency[k], a[k], prom, k});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& x, const Peak& y) { return x.amplitude > y.amplitude; });
  return peaks;
}

double spectral_flatness(const Spectrum& spectrum, double max_frequency) {
  double log_sum = 0.0, sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < spectrum.frequency.size(); ++k) {
    if (spectrum.frequency[k] > max_frequency) break;
    const double power = std::max(spectrum.amplitude[k] * spectrum.amplitude[k], 1e-300);
    log_sum += std::log(power);
    sum += power;
    ++count;
  }
  if (count == 0 || sum <= 0.0) return 0.0;
  const double n = static_cast<double>(count);
  return std::exp(log_sum / n) / (sum / n);
}

std::string to_string(CoarsePhase phase) {
  switch (phase) {
    case CoarsePhase::kFm:
      return "FM";
    case CoarsePhase::kAfm:
      return "AFM";
    case CoarsePhase::kLc:
      return "LC";
  }
  return "?";
}

std::string to_string(FinePhase phase) {
  switch (phase) {
    case FinePhase::kFm:
      return "FM";
    case FinePhase::kAfm:
      return "AFM";
    case FinePhase::kLc1:
      return "LC1";
    case FinePhase::kLc2:
      return "LC2";
    case FinePhase::kNearChaotic:
      return "nC";
  }
  return "?";
}

CoarsePhase coarse_of(FinePhase phase) {
  switch (phase) {
    case FinePhase::kFm:
      return CoarsePhase::kFm;
    case FinePhase::kAfm:
      return CoarsePhase::kAfm;
    default:
      return CoarsePhase::kLc;
  }
}

void ClassifierConfig::validate() const {
  for (double x : {oscillation_threshold, sublattice_threshold, peak_prominence,
                   half_frequency_tolerance, flatness_threshold, flatness_band}) {
    if (!(x > 0.0)) throw ConfigError("classifier thresholds must be positive");
  }
}

PhaseLabel classify_phase(const Trajectory& trajectory, const Spectrum& spectrum,
                          const ClassifierConfig& config) {
  config.validate();
  if (trajectory.n_even.empty()) throw ConfigError("classification needs even N");
  const auto idx = window_indices(trajectory, spectrum.window_start, spectrum.window_length,
                                  spectrum.sample_interval);
  PhaseLabel label;
  double lo = trajectory.n_even[idx.front()], hi = lo;
  for (std::size_t k : idx) {
    lo = std::min(lo, trajectory.n_even[k]);
    hi = std::max(hi, trajectory.n_even[k]);
    label.mean_odd += trajectory.n_odd[k];
    label.mean_even += trajectory.n_even[k];
  }
  label.mean_odd /= static_cast<double>(idx.size());
  label.mean_even /= static_cast<double>(idx.size());
  label.oscillation_amplitude = hi - lo;
  label.sublattice_gap = std::abs(label.mean_odd - label.mean_even);

  const double largest =
      spectrum.amplitude.empty()
          ? 0.0
          : *std::max_element(spectrum.amplitude.begin(), spectrum.amplitude.end());

  // Slow monotone relaxation near a boundary moves n_even without a line.
  std::vector<Peak> peaks = dominant_peaks(spectrum, config.peak_prominence * largest);
  if (label.oscillation_amplitude > config.oscillation_threshold && !peaks.empty()) {
    label.coarse = CoarsePhase::kLc;
    label.peaks = std::move(peaks);
    const double f0 = label.dominant_frequency();
    const double band = f0 > 0.0 ? config.flatness_band * f0 : spectrum.nyquist();
    // Leakage from a rectangular window hides the gap between discrete lines.
    const SpectralWindow window{spectrum.window_start, spectrum.window_length,
                                spectrum.sample_interval};
    label.broadband_score = spectral_flatness(fft_spectrum(trajectory, window, {}, true), band);
    for (std::size_t i = 1; i < label.peaks.size() && f0 > 0.0; ++i) {
      const double f = label.peaks[i].frequency;
      const double tol = std::max(config.half_frequency_tolerance * 0.5 * f0,
                                  1.5 * spectrum.resolution());
      if (std::abs(f - 0.5 * f0) <= tol) label.half_frequency = true;
    }
    if (label.broadband_score > config.flatness_threshold) {
      label.fine = FinePhase::kNearChaotic;
    } else if (label.half_frequency) {
      label.fine = FinePhase::kLc2;
    } else {
      label.fine = FinePhase::kLc1;
    }
  } else if (label.sublattice_gap > config.sublattice_threshold) {
    label.coarse = CoarsePhase::kAfm;
    label.fine = FinePhase::kAfm;
  } else {
    label.coarse = CoarsePhase::kFm;
    label.fine = FinePhase::kFm;
  }
  return label;
}

std::string to_string(BifurcationKind kind) {
  switch (kind) {
    case BifurcationKind::kHopf:
      return "Hopf";
    case BifurcationKind::kPeriodDoubling:
      return "period-doubling";
    case BifurcationKind::kNearChaoticBoundary:
      return "nC-boundary";
  }
  return "?";
}

std::vector<Bifurcation> detect_bifurcations(std::span<const ScanPoint> scan) {
  for (std::size_t i = 1; i < scan.size(); ++i) {
    if (!(scan[i].lambda > scan[i - 1].lambda)) {
      throw ConfigError("bifurcation scan must be sorted by strictly increasing lambda");
    }
  }
  std::vector<Bifurcation> out;
  for (std::size_t i = 1; i < scan.size(); ++i) {
    const PhaseLabel& a = scan[i - 1].label;
    const PhaseLabel& b = scan[i].label;
    const double mid = 0.5 * (scan[i - 1].lambda + scan[i].lambda);
    const bool lc_a = a.coarse == CoarsePhase::kLc;
    const bool lc_b = b.coarse == CoarsePhase::kLc;
    if (lc_a != lc_b) {
      out.push_back({mid, BifurcationKind::kHopf});
      continue;
    }
    if (!lc_a) continue;
    const bool nc_a = a.fine == FinePhase::kNearChaotic;
    const bool nc_b = b.fine == FinePhase::kNearChaotic;
    if (nc_a != nc_b) {
      out.push_back({mid, BifurcationKind::kNearChaoticBoundary});
      continue;
    }
    const bool pd = (a.fine == FinePhase::kLc2 && b.fine == FinePhase::kLc1) ||
                    (a.fine == FinePhase::kLc1 && b.fine == FinePhase::kLc2);
    if (pd) out.push_back({mid, BifurcationKind::kPeriodDoubling});
  }
  return out;
}

}  // namespace dising
