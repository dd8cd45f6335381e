// Copyright 2026 The demon-cycle Authors
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

// demon-cycle: run a measurement-engine configuration and write plot-ready
// CSV / JSON output.
//
//   demon-cycle <config-file> [--out DIR] [--seed N]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "demon/config.hpp"
#include "demon/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit measurement-engine simulator"};
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  app.add_option("config", config_path, "key=value configuration file")->required();
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "override master_seed");
  app.add_option("--workers", workers, "threads for trajectory ensembles (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  demon::RunConfig config;
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read config '" << config_path << "'\n";
      return kExitConfig;
    }
    std::ostringstream text;
    text << in.rdbuf();
    config = demon::parse_config(text.str());
    if (*seed_opt) config.master_seed = seed;
    (void)config.engine();
    config.continuous().validate();
  } catch (const std::exception& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return kExitConfig;
  }

  demon::RunOptions options;
  options.workers = workers;
  if (*out_opt) {
    options.out_dir = out_dir;
  } else if (config.output) {
    options.out_dir = *config.output;
  }

  try {
    for (const auto& p : demon::run(config, options, std::cerr)) {
      std::cout << p.string() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
