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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dising/spectral.hpp"

using namespace dising;

namespace {

std::vector<double> tones(std::size_t m, double dt, std::vector<std::pair<double, double>> parts) {
  std::vector<double> x(m, 0.5);
  for (std::size_t k = 0; k < m; ++k) {
    for (auto [f, a] : parts) x[k] += a * std::sin(2.0 * std::numbers::pi * f * k * dt);
  }
  return x;
}

// Sublattice series n_odd = 0.3, n_even = signal over [0, (m - 1) dt].
Trajectory even_trajectory(const std::vector<double>& signal, double dt, double odd = 0.3) {
  Trajectory t;
  t.n_sites = 2;
  t.sample_interval = dt;
  for (std::size_t k = 0; k < signal.size(); ++k) {
    t.times.push_back(k * dt);
    t.populations.push_back({odd, signal[k]});
    t.n_odd.push_back(odd);
    t.n_even.push_back(signal[k]);
  }
  return t;
}

}  // namespace

TEST_CASE("pure tone on the grid occupies one bin") {
  const double dt = 0.05;
  const auto x = tones(4000, dt, {{0.5, 0.1}});
  const Spectrum s = fft_spectrum(x, dt);
  CHECK(s.resolution() == doctest::Approx(0.005));
  CHECK(s.nyquist() == doctest::Approx(10.0));
  REQUIRE(s.frequency.size() == 2000);
  for (std::size_t k = 0; k < s.frequency.size(); ++k) {
    if (std::abs(s.frequency[k] - 0.5) < 1e-12) {
      CHECK(s.amplitude[k] == doctest::Approx(0.1 / std::numbers::sqrt2));
    } else {
      CHECK(s.amplitude[k] < 1e-12);
    }
  }
}

TEST_CASE("Parseval") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (std::size_t m : {1000u, 1001u}) {
    std::vector<double> x(m);
    for (double& v : x) v = g(rng);
    for (bool taper : {false, true}) {
      const Spectrum s = fft_spectrum(x, 0.1, taper);
      double sum = 0.0;
      for (double a : s.amplitude) sum += a * a;
      CHECK(std::abs(sum - s.signal_variance) <= 1e-10 * s.signal_variance);
    }
  }
}

TEST_CASE("two tones give two peaks") {
  const auto x = tones(4000, 0.05, {{0.3, 0.1}, {1.1, 0.04}});
  const Spectrum s = fft_spectrum(x, 0.05);
  const auto peaks = dominant_peaks(s, 0.001);
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0].frequency == doctest::Approx(0.3));
  CHECK(peaks[1].frequency == doctest::Approx(1.1));
  CHECK(dominant_peaks(fft_spectrum(std::vector<double>(100, 0.2), 0.05), 1e-12).empty());
}

TEST_CASE("flatness separates lines from noise") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::vector<double> noise(4000);
  for (double& v : noise) v = g(rng);
  CHECK(spectral_flatness(fft_spectrum(noise, 0.05), 10.0) > 0.4);
  const auto x = tones(4000, 0.05, {{0.3, 0.1}});
  CHECK(spectral_flatness(fft_spectrum(x, 0.05, true), 0.6) < 1e-6);
}

TEST_CASE("classification") {
  const double dt = 0.05;
  const SpectralWindow w{100.0, 200.0, dt};
  ClassifierConfig cfg;
  auto label_of = [&](const std::vector<double>& x, double odd = 0.3) {
    const Trajectory t = even_trajectory(x, dt, odd);
    return classify_phase(t, fft_spectrum(t, w), cfg);
  };

  SUBCASE("steady uniform is FM") {
    const PhaseLabel l = label_of(std::vector<double>(6001, 0.3));
    CHECK(l.coarse == CoarsePhase::kFm);
    CHECK(l.fine == FinePhase::kFm);
  }
  SUBCASE("steady staggered is AFM") {
    const PhaseLabel l = label_of(std::vector<double>(6001, 0.2), 0.35);
    CHECK(l.coarse == CoarsePhase::kAfm);
    CHECK(l.sublattice_gap == doctest::Approx(0.15));
  }
  SUBCASE("single tone plus harmonic is LC1") {
    const PhaseLabel l = label_of(tones(6001, dt, {{0.4, 0.05}, {0.8, 0.01}}));
    CHECK(l.fine == FinePhase::kLc1);
    CHECK(l.dominant_frequency() == doctest::Approx(0.4));
  }
  SUBCASE("subharmonic gives LC2") {
    const PhaseLabel l = label_of(tones(6001, dt, {{0.4, 0.05}, {0.2, 0.01}}));
    CHECK(l.fine == FinePhase::kLc2);
    CHECK(l.half_frequency);
  }
  SUBCASE("broadband oscillation is nC") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    auto x = tones(6001, dt, {{0.4, 0.05}});
    // low-passed noise keeps the spectrum continuous below the main line
    double y = 0.0;
    for (double& v : x) {
      y = 0.95 * y + 0.01 * g(rng);
      v += y;
    }
    const PhaseLabel l = label_of(x);
    CHECK(l.coarse == CoarsePhase::kLc);
    CHECK(l.fine == FinePhase::kNearChaotic);
  }
  SUBCASE("slow relaxation without a spectral line is not LC") {
    std::vector<double> x(6001);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = 0.3 + 0.01 * std::exp(-0.02 * k * dt);
    const PhaseLabel l = label_of(x, 0.35);
    CHECK(l.oscillation_amplitude > cfg.oscillation_threshold);
    CHECK(l.coarse == CoarsePhase::kAfm);
    CHECK(l.peaks.empty());
  }
  SUBCASE("tiny wiggles below threshold do not count") {
    const PhaseLabel l = label_of(tones(6001, dt, {{0.4, 1e-6}}), 0.5);
    CHECK(l.coarse == CoarsePhase::kFm);
  }
}

TEST_CASE("bifurcations along a scan") {
  auto point = [](double lambda, CoarsePhase c, FinePhase f) {
    ScanPoint p;
    p.lambda = lambda;
    p.label.coarse = c;
    p.label.fine = f;
    return p;
  };
  using C = CoarsePhase;
  using F = FinePhase;
  const std::vector<ScanPoint> scan = {
      point(0.00, C::kLc, F::kNearChaotic), point(0.02, C::kLc, F::kNearChaotic),
      point(0.04, C::kLc, F::kLc2),         point(0.06, C::kLc, F::kLc2),
      point(0.08, C::kLc, F::kLc1),         point(0.10, C::kLc, F::kLc1),
      point(0.12, C::kAfm, F::kAfm),
  };
  const auto b = detect_bifurcations(scan);
  REQUIRE(b.size() == 3);
  CHECK(b[0].kind == BifurcationKind::kNearChaoticBoundary);
  CHECK(b[0].lambda == doctest::Approx(0.03));
  CHECK(b[1].kind == BifurcationKind::kPeriodDoubling);
  CHECK(b[1].lambda == doctest::Approx(0.07));
  CHECK(b[2].kind == BifurcationKind::kHopf);
  CHECK(b[2].lambda == doctest::Approx(0.11));

  std::vector<ScanPoint> unsorted = {scan[1], scan[0]};
  CHECK_THROWS_AS(detect_bifurcations(unsorted), ConfigError);
}
