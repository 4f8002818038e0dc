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

// Command-line driver: solve a CSV instance or generate a synthetic one.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fairdiv/error.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/run.hpp"

namespace {

int report_error(const std::string& out, const std::string& code, const std::string& message) {
  const std::string text = fairdiv::error_json(code, message);
  bool written = false;
  if (!out.empty() && out != "-") {
    std::ofstream file(out, std::ios::binary);
    if (file) {
      file << text << '\n';
      written = static_cast<bool>(file);
    }
  }
  if (!written) std::cout << text << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair max-min diversification"};
  app.require_subcommand(0, 1);

  fairdiv::RunConfig config;
  std::string mode = "coreset";
  std::string search = "decay";
  std::string plot_csv;
  app.add_option("--input", config.input, "CSV file with a header row");
  app.add_option("--color-col", config.color_column, "name of the color column");
  app.add_option("--k", config.k, "total number of points to select");
  app.add_option("--spec", config.spec, "equal, proportional, or a list such as 3,2,5");
  app.add_option("--epsilon", config.epsilon, "approximation parameter in (0, 1]");
  app.add_option("--g", config.g, "fraction of the MWU iteration budget to run");
  app.add_option("--delta", config.delta, "failure probability for highprob mode");
  app.add_option("--mode", mode, "offline | coreset | stream | highprob");
  app.add_option("--search", search, "binary | decay");
  app.add_option("--seed", config.seed, "seed of the first run");
  app.add_option("--repeat", config.repeat, "number of runs, seeds seed..seed+repeat-1");
  app.add_option("--k-prime", config.k_prime, "centers per color for coreset and stream modes");
  app.add_option("--out", config.output, "JSON report path (stdout when omitted)");
  app.add_option("--plot-csv", plot_csv, "also write k,diversity,runtime_s,shortfall_total rows");

  auto* gen = app.add_subcommand("generate", "write a seeded Gaussian-mixture CSV");
  fairdiv::SyntheticSpec synth;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::string gen_color_col = "color";
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--n", synth.n, "number of points");
  gen->add_option("--dim", synth.dim, "dimension");
  gen->add_option("--colors", synth.num_colors, "number of colors");
  gen->add_option("--clusters", synth.clusters_per_color, "Gaussian clusters per color");
  gen->add_option("--proportions", synth.proportions, "color shares, one per color")->delimiter(',');
  gen->add_option("--spread", synth.spread, "per-axis standard deviation");
  gen->add_option("--extent", synth.extent, "cluster centers lie in [0, extent]^d");
  gen->add_option("--color-col", gen_color_col, "name of the color column");
  gen->add_option("--out", gen_out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(config.output, "InvalidArgument", e.what());
  }

  try {
    if (gen->parsed()) {
      const auto data = fairdiv::generate_synthetic(gen_seed, synth);
      if (gen_out.empty() || gen_out == "-") {
        fairdiv::write_csv(std::cout, data, gen_color_col);
      } else {
        fairdiv::write_csv(gen_out, data, gen_color_col);
      }
      return 0;
    }
    if (config.input.empty()) {
      return report_error(config.output, "InvalidArgument", "--input is required");
    }
    config.mode = fairdiv::parse_run_mode(mode);
    config.search = fairdiv::parse_search_mode(search);
    const auto report = fairdiv::run(config);
    fairdiv::emit(report, config.output);
    if (!plot_csv.empty()) fairdiv::write_plot_csv(plot_csv, report);
    return 0;
  } catch (const fairdiv::Error& e) {
    return report_error(config.output, std::string(fairdiv::to_string(e.code())), e.what());
  } catch (const std::exception& e) {
    return report_error(config.output, "Internal", e.what());
  }
}
