// Copyright 2026 The curvelight Authors
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

#include <array>
#include <complex>
#include <map>
#include <string>
#include <utility>

#include "curvelight/geometry.hpp"
#include "curvelight/waveguide.hpp"

namespace curvelight::twophoton {

using cplx = std::complex<double>;

/// Single-photon label: port (1 or 2) and polarization.
struct Label {
  int port = 1;
  Polarization pol = Polarization::H;

  /// 0..3 as (1,H), (1,V), (2,H), (2,V).
  int index() const noexcept { return 2 * (port - 1) + (pol == Polarization::H ? 0 : 1); }
  static Label from_index(int i) noexcept;
  std::string name() const;
  auto operator<=>(const Label&) const = default;
};

inline constexpr int kLabels = 4;

enum class Stage { Input, AfterGuides, AfterBS };

/// Two photons over four labels. Amplitudes are stored against normalized
/// Fock states: for a != b the state a_a^+ a_b^+ |0>, for a == b the state
/// (a_a^+)^2 / sqrt(2) |0>. Keys are unordered pairs stored with the smaller
/// label index first; absent keys are zero.
class TwoPhotonState {
 public:
  TwoPhotonState() = default;
  explicit TwoPhotonState(Stage stage) : stage_(stage) {}

  Stage stage() const noexcept { return stage_; }
  void set_stage(Stage s) noexcept { stage_ = s; }

  cplx amplitude(Label a, Label b) const;
  void set_amplitude(Label a, Label b, cplx value);
  const std::map<std::pair<int, int>, cplx>& amplitudes() const noexcept { return amplitudes_; }

  /// Sum of |amplitude|^2 over normalized Fock states.
  double norm() const;

  // Phases applied by apply_guides, kept for reporting.
  double theta1 = 0.0;
  double theta2 = 0.0;

 private:
  Stage stage_ = Stage::Input;
  std::map<std::pair<int, int>, cplx> amplitudes_;
};

struct InterferenceResult {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double delta_phi = 0.0;
  double p_coincidence = 0.0;
  double p_bunch_port1 = 0.0;
  double p_bunch_port2 = 0.0;
};

struct GuidePhases {
  double theta1 = 0.0;       // k (n_sH T + n_sV s)
  double theta2 = 0.0;       // k (n_sV T + n_sH s)
  double delta_phi = 0.0;    // theta2 - theta1
  double excess_path = 0.0;  // s - T
};

/// (1/sqrt 2)(a_1H^+ a_2V^+ + a_1V^+ a_2H^+)|0>
TwoPhotonState bell_input();

/// Guide 1 is straight (length T), guide 2 follows `profile`. Phases are
/// total radians, never reduced mod 2 pi.
GuidePhases guide_phases(const WaveguideSpec& spec, const geometry::BendProfile& profile);

/// Multiplies the (1H,2V) branch by e^{i theta1} and the (1V,2H) branch by e^{i theta2}.
TwoPhotonState apply_guides(const TwoPhotonState& state, double theta1, double theta2);

/// 50/50 beam splitter: a_1^+ -> (b_1^+ + b_2^+)/sqrt 2, a_2^+ -> (b_1^+ - b_2^+)/sqrt 2,
/// for each polarization.
TwoPhotonState apply_beam_splitter(const TwoPhotonState& state);

/// Polarization-blind detection at the two output ports.
InterferenceResult coincidence(const TwoPhotonState& state);

/// bell_input -> apply_guides -> apply_beam_splitter -> coincidence.
InterferenceResult interfere(double theta1, double theta2);

/// Independent check: explicit state vector over the 10 two-photon occupation
/// states, beam splitter lifted through permanents.
InterferenceResult brute_force_oracle(double theta1, double theta2);

/// Amplitude A of a sinusoidal bend of length T that gives delta_phi = target.
double solve_amplitude_for_phase(const WaveguideSpec& spec, double length, double target);

}  // namespace curvelight::twophoton
