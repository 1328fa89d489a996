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

#include <span>
#include <string>
#include <vector>

#include "dising/integrator.hpp"

namespace dising {

/// Analysis window [start, start + length) sampled every `sample_interval`
/// (a multiple of the trajectory sampling).
struct SpectralWindow {
  double start = 300.0;
  double length = 200.0;
  double sample_interval = 0.05;

  void validate() const;
};

/// Which population series to transform.
struct SignalSelector {
  enum class Kind { kEven, kOdd, kSite };
  Kind kind = Kind::kEven;
  int site = 0;

  std::string name() const;
};

/// One-sided amplitude spectrum of a mean-subtracted real series, normalized
/// so that sum_k amplitude_k^2 equals the series variance (Parseval).
/// Frequencies are k / length for k = 1 .. M/2.
struct Spectrum {
  std::vector<double> frequency;
  std::vector<double> amplitude;
  std::vector<double> log_amplitude;
  double window_start = 0.0;
  double window_length = 0.0;
  double sample_interval = 0.0;
  /// Variance of the (tapered) mean-subtracted series.
  double signal_variance = 0.0;

  double resolution() const { return 1.0 / window_length; }
  double nyquist() const { return 0.5 / sample_interval; }
};

/// Spectrum of an equally spaced series. `taper` applies a Hann window
/// after mean subtraction.
Spectrum fft_spectrum(std::span<const double> signal, double sample_interval, bool taper = false);

/// Spectrum of a trajectory population series over `window`. Throws
/// ConfigError when the trajectory sampling is not uniform or the window
/// does not fit.
Spectrum fft_spectrum(const Trajectory& trajectory, const SpectralWindow& window,
                      SignalSelector signal = {}, bool taper = false);

struct Peak {
  double frequency = 0.0;
  double amplitude = 0.0;
  double prominence = 0.0;
  std::size_t bin = 0;
};

/// Interior local maxima whose topographic prominence is at least
/// `prominence`, sorted by amplitude (largest first).
std::vector<Peak> dominant_peaks(const Spectrum& spectrum, double prominence);

/// Geometric over arithmetic mean of the power amplitude^2 for bins with
/// 0 < f <= max_frequency. 1 for white noise, near 0 for line spectra.
double spectral_flatness(const Spectrum& spectrum, double max_frequency);

enum class CoarsePhase { kFm, kAfm, kLc };
enum class FinePhase { kFm, kAfm, kLc1, kLc2, kNearChaotic };

std::string to_string(CoarsePhase phase);
std::string to_string(FinePhase phase);
CoarsePhase coarse_of(FinePhase phase);

struct ClassifierConfig {
  /// Peak-to-peak n_even amplitude above which the window counts as oscillating.
  double oscillation_threshold = 1e-4;
  /// |<n_odd> - <n_even>| above which a stationary window counts as AFM.
  double sublattice_threshold = 1e-3;
  /// Minimum peak prominence, relative to the largest spectral amplitude.
  double peak_prominence = 0.05;
  /// Relative tolerance when matching a peak to half the dominant frequency.
  double half_frequency_tolerance = 0.05;
  /// Flatness of the Hann-tapered n_even spectrum above which an
  /// oscillating window is near-chaotic.
  double flatness_threshold = 0.02;
  /// Flatness band, in multiples of the dominant frequency.
  double flatness_band = 2.0;

  void validate() const;
};

struct PhaseLabel {
  CoarsePhase coarse = CoarsePhase::kFm;
  FinePhase fine = FinePhase::kFm;
  double oscillation_amplitude = 0.0;
  double sublattice_gap = 0.0;
  double mean_odd = 0.0;
  double mean_even = 0.0;
  double broadband_score = 0.0;
  bool half_frequency = false;
  std::vector<Peak> peaks;

  double dominant_frequency() const { return peaks.empty() ? 0.0 : peaks.front().frequency; }
  double dominant_amplitude() const { return peaks.empty() ? 0.0 : peaks.front().amplitude; }
};

/// Decision procedure over the spectrum's window:
///  1. peak-to-peak n_even > oscillation_threshold and
///     at least one prominent spectral peak             -> LC family
///  2. else |mean n_odd - mean n_even| > sublattice_thr -> AFM
///  3. else                                             -> FM
/// LC refinement: flatness > threshold -> nC; else a peak near half the
/// dominant frequency -> LC2; else LC1.
PhaseLabel classify_phase(const Trajectory& trajectory, const Spectrum& spectrum,
                          const ClassifierConfig& config);

struct ScanPoint {
  double lambda = 0.0;
  PhaseLabel label;
};

enum class BifurcationKind { kHopf, kPeriodDoubling, kNearChaoticBoundary };
std::string to_string(BifurcationKind kind);

struct Bifurcation {
  double lambda = 0.0;
  BifurcationKind kind = BifurcationKind::kHopf;
};

/// Transitions between neighbouring scan points, reported at the midpoint:
/// Hopf where the LC family starts or stops, period doubling at LC2 <-> LC1,
/// near-chaotic boundary at nC <-> other LC. Throws ConfigError if the scan
/// is not sorted by increasing lambda.
std::vector<Bifurcation> detect_bifurcations(std::span<const ScanPoint> scan);

}  // namespace dising
