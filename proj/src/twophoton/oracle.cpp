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


#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "curvelight/twophoton.hpp"

namespace curvelight::twophoton {
namespace {

using Occupation = std::array<int, kLabels>;

std::vector<Occupation> two_photon_basis() {
  std::vector<Occupation> basis;
  for (int a = 0; a < kLabels; ++a) {
    for (int b = a; b < kLabels; ++b) {
      Occupation n{};
      ++n[static_cast<std::size_t>(a)];
      ++n[static_cast<std::size_t>(b)];
      basis.push_back(n);
    }
  }
  return basis;
}

// Mode list with each mode repeated by its occupation.
std::array<int, 2> expand(const Occupation& n) {
  std::array<int, 2> modes{};
  int k = 0;
  for (int i = 0; i < kLabels; ++i)
    for (int c = 0; c < n[static_cast<std::size_t>(i)]; ++c) modes[static_cast<std::size_t>(k++)] = i;
  return modes;
}

double factorial_product(const Occupation& n) {
  double p = 1.0;
  for (int v : n) p *= v == 2 ? 2.0 : 1.0;
  return p;
}

}  // namespace

InterferenceResult brute_force_oracle(double theta1, double theta2) {
  const double r = 1.0 / std::numbers::sqrt2;
  // Single-photon unitary, labels ordered (1H, 1V, 2H, 2V): U[out][in].
  const double U[kLabels][kLabels] = {
      {r, 0, r, 0},
      {0, r, 0, r},
      {r, 0, -r, 0},
      {0, r, 0, -r},
  };
  const std::vector<Occupation> basis = two_photon_basis();
  const std::size_t dim = basis.size();

  std::vector<cplx> in(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (basis[i] == Occupation{1, 0, 0, 1}) in[i] = std::polar(r, theta1);
    if (basis[i] == Occupation{0, 1, 1, 0}) in[i] = std::polar(r, theta2);
  }

  // <m| U |n> = perm(U[rows(m), cols(n)]) / sqrt(prod m_i! prod n_j!)
  std::vector<cplx> out(dim);
  for (std::size_t m = 0; m < dim; ++m) {
    const auto rows = expand(basis[m]);
    for (std::size_t n = 0; n < dim; ++n) {
      if (in[n] == cplx{}) continue;
      const auto cols = expand(basis[n]);
      const double perm = U[rows[0]][cols[0]] * U[rows[1]][cols[1]] + U[rows[0]][cols[1]] * U[rows[1]][cols[0]];
      out[m] += perm / std::sqrt(factorial_product(basis[m]) * factorial_product(basis[n])) * in[n];
    }
  }

  InterferenceResult res;
  res.theta1 = theta1;
  res.theta2 = theta2;
  res.delta_phi = theta2 - theta1;
  for (std::size_t m = 0; m < dim; ++m) {
    const Occupation& n = basis[m];
    const int port1 = n[0] + n[1];
    const double p = std::norm(out[m]);
    if (port1 == 1) {
      res.p_coincidence += p;
    } else if (port1 == 2) {
      res.p_bunch_port1 += p;
    } else {
      res.p_bunch_port2 += p;
    }
  }
  return res;
}

}  // namespace curvelight::twophoton
