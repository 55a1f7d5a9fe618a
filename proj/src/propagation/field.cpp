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

#include "curvelight/csv.hpp"
#include "curvelight/error.hpp"
#include "curvelight/propagation.hpp"

namespace curvelight {

double ScalarField::norm_sq() const {
  if (values.empty()) return 0.0;
  const double ends = 0.5 * (std::norm(values.front()) + std::norm(values.back()));
  return (kernels::active_kernels().norm_sq(values.data(), values.size()) - ends) * grid.dx();
}

ScalarField mode_field(const ModeBasis& basis, std::size_t n, Frame frame, double z) {
  if (n >= basis.size()) throw DomainError("mode index out of range");
  ScalarField f{basis.grid, std::vector<cplx>(basis.grid.points), z, frame, basis.polarization};
  const auto& u = basis.modes[n].u;
  for (std::size_t j = 0; j < u.size(); ++j) f.values[j] = u[j];
  return f;
}

double relative_l2_distance(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid == b.grid)) throw GridError("fields live on different grids");
  ScalarField diff = a;
  for (std::size_t j = 0; j < diff.values.size(); ++j) diff.values[j] -= b.values[j];
  return std::sqrt(diff.norm_sq() / a.norm_sq());
}

void write_field_csv(const ScalarField& field, const std::filesystem::path& path) {
  io::CsvWriter out(path, {"x_m", "re_psi", "im_psi"});
  for (std::size_t j = 0; j < field.values.size(); ++j) {
    out.row({field.grid.x(j), field.values[j].real(), field.values[j].imag()});
  }
}

void write_history_csv(const PropagationResult& result, const std::filesystem::path& path) {
  io::CsvWriter out(path, {"z_m", "norm", "ground_population", "phase_rad"});
  for (const HistoryEntry& h : result.history) out.row({h.z, h.norm, h.ground_population, h.phase});
}

}  // namespace curvelight
