// Copyright 2026 The FairDiv Authors.
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

// Picks a fair, spread-out subset from a small synthetic instance.

#include <iostream>
#include <random>

#include "fairdiv/fairdiv.hpp"

int main() {
  fairdiv::SyntheticSpec synth;
  synth.n = 2000;
  synth.num_colors = 3;
  const auto data = fairdiv::generate_synthetic(7, synth);

  const auto spec = fairdiv::make_spec(data.points.color_counts(), fairdiv::SpecMode::kEqual, 12);
  fairdiv::MwuParams params;  // eps = 0.25, g = 0.3
  fairdiv::SearchOptions options;
  std::mt19937_64 rng(1);

  const auto sol = fairdiv::mfd_with_coreset(data.points, spec, params, options, rng);
  std::cout << "gamma " << sol.gamma << ", diversity " << sol.diversity << "\n";
  for (std::size_t j = 0; j < sol.per_color_counts.size(); ++j) {
    std::cout << data.color_labels[j] << ": " << sol.per_color_counts[j] << " of "
              << spec.per_color[j] << "\n";
  }
  std::cout << "ids:";
  for (auto id : sol.selected_ids) std::cout << ' ' << id;
  std::cout << "\n";
}
