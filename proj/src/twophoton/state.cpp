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


#include <cmath>
#include <numbers>

#include "curvelight/error.hpp"
#include "curvelight/twophoton.hpp"

namespace curvelight::twophoton {
namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::pair<int, int> key(Label a, Label b) {
  const int i = a.index();
  const int j = b.index();
  return i <= j ? std::pair{i, j} : std::pair{j, i};
}

void require_stage(const TwoPhotonState& s, Stage expected, const char* op) {
  if (s.stage() != expected) throw StageError(std::string(op) + " applied at the wrong stage");
}

// Single-photon beam-splitter matrix on labels: U[out][in].
double bs_element(int out, int in) {
  const Label o = Label::from_index(out);
  const Label i = Label::from_index(in);
  if (o.pol != i.pol) return 0.0;
  const double sign = (i.port == 2 && o.port == 2) ? -1.0 : 1.0;
  return sign * kInvSqrt2;
}

}  // namespace

Label Label::from_index(int i) noexcept {
  return {i / 2 + 1, i % 2 == 0 ? Polarization::H : Polarization::V};
}

std::string Label::name() const { return std::to_string(port) + std::string(to_string(pol)); }

cplx TwoPhotonState::amplitude(Label a, Label b) const {
  const auto it = amplitudes_.find(key(a, b));
  return it == amplitudes_.end() ? cplx{} : it->second;
}

void TwoPhotonState::set_amplitude(Label a, Label b, cplx value) { amplitudes_[key(a, b)] = value; }

double TwoPhotonState::norm() const {
  double s = 0.0;
  for (const auto& [k, v] : amplitudes_) s += std::norm(v);
  return s;
}

TwoPhotonState bell_input() {
  TwoPhotonState s(Stage::Input);
  s.set_amplitude({1, Polarization::H}, {2, Polarization::V}, kInvSqrt2);
  s.set_amplitude({1, Polarization::V}, {2, Polarization::H}, kInvSqrt2);
  return s;
}

TwoPhotonState apply_guides(const TwoPhotonState& state, double theta1, double theta2) {
  require_stage(state, Stage::Input, "apply_guides");
  TwoPhotonState out = state;
  const Label h1{1, Polarization::H}, v1{1, Polarization::V}, h2{2, Polarization::H}, v2{2, Polarization::V};
  out.set_amplitude(h1, v2, state.amplitude(h1, v2) * std::polar(1.0, theta1));
  out.set_amplitude(v1, h2, state.amplitude(v1, h2) * std::polar(1.0, theta2));
  out.theta1 = theta1;
  out.theta2 = theta2;
  out.set_stage(Stage::AfterGuides);
  return out;
}

TwoPhotonState apply_beam_splitter(const TwoPhotonState& state) {
  require_stage(state, Stage::AfterGuides, "apply_beam_splitter");
  // Write the state as (1/2) sum_ab S_ab a_a^+ a_b^+ |0> with S symmetric:
  // S_ab = amplitude for a != b, S_aa = sqrt(2) amplitude. Substituting
  // a_a^+ = sum_c U_ca b_c^+ gives S' = U S U^T.
  cplx S[kLabels][kLabels] = {};
  for (const auto& [k, v] : state.amplitudes()) {
    if (k.first == k.second) {
      S[k.first][k.first] = std::numbers::sqrt2 * v;
    } else {
      S[k.first][k.second] = v;
      S[k.second][k.first] = v;
    }
  }
  cplx US[kLabels][kLabels] = {};
  for (int c = 0; c < kLabels; ++c)
    for (int b = 0; b < kLabels; ++b)
      for (int a = 0; a < kLabels; ++a) US[c][b] += bs_element(c, a) * S[a][b];

  TwoPhotonState out(Stage::AfterBS);
  out.theta1 = state.theta1;
  out.theta2 = state.theta2;
  for (int c = 0; c < kLabels; ++c) {
    for (int d = c; d < kLabels; ++d) {
      cplx s{};
      for (int b = 0; b < kLabels; ++b) s += US[c][b] * bs_element(d, b);
      const cplx amp = c == d ? s * kInvSqrt2 : s;
      if (amp != cplx{}) out.set_amplitude(Label::from_index(c), Label::from_index(d), amp);
    }
  }
  return out;
}

InterferenceResult coincidence(const TwoPhotonState& state) {
  require_stage(state, Stage::AfterBS, "coincidence");
  InterferenceResult r;
  r.theta1 = state.theta1;
  r.theta2 = state.theta2;
  r.delta_phi = state.theta2 - state.theta1;
  for (const auto& [k, v] : state.amplitudes()) {
    const int p1 = Label::from_index(k.first).port;
    const int p2 = Label::from_index(k.second).port;
    const double w = std::norm(v);
    if (p1 != p2) {
      r.p_coincidence += w;
    } else if (p1 == 1) {
      r.p_bunch_port1 += w;
    } else {
      r.p_bunch_port2 += w;
    }
  }
  return r;
}

InterferenceResult interfere(double theta1, double theta2) {
  return coincidence(apply_beam_splitter(apply_guides(bell_input(), theta1, theta2)));
}

}  // namespace curvelight::twophoton
