#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "commands.hpp"
#include "common.hpp"

namespace spcli {

namespace {

struct HvArgs {
  std::vector<std::string> files;
};

void run_hv(const HvArgs& args) {
  std::vector<std::vector<SolutionPoint>> sets;
  sets.reserve(args.files.size());
  for (const std::string& file : args.files) sets.push_back(read_solution_points(file));

  // Joint normalization bounds over the union of every file's points.
  std::vector<uint32_t> coverages;
  std::vector<double> costs;
  for (const auto& set : sets)
    for (const SolutionPoint& p : set) {
      coverages.push_back(p.coverage);
      costs.push_back(p.search_cost);
    }
  sp_bounds bounds{};
  check(sp_bounds_from_points(coverages.data(), costs.data(),
                              static_cast<uint32_t>(coverages.size()), &bounds),
        "computing joint bounds");

  std::printf("bounds: coverage [%s, %s] search_cost [%s, %s]\n",
              format_g6(bounds.coverage_min).c_str(), format_g6(bounds.coverage_max).c_str(),
              format_g6(bounds.cost_min).c_str(), format_g6(bounds.cost_max).c_str());

  for (std::size_t f = 0; f < args.files.size(); ++f) {
    std::vector<uint32_t> cov;
    std::vector<double> cost;
    for (const SolutionPoint& p : sets[f]) {
      cov.push_back(p.coverage);
      cost.push_back(p.search_cost);
    }
    double hv = 0.0;
    int clamped = 0;
    check(sp_hypervolume(cov.data(), cost.data(), static_cast<uint32_t>(cov.size()), &bounds,
                         &hv, &clamped),
          "computing hypervolume for " + args.files[f]);
    std::printf("%s: hv=%s%s\n", args.files[f].c_str(), format_g6(hv).c_str(),
                clamped != 0 ? " (clamped)" : "");
  }
}

}  // namespace

void register_hv(CLI::App& app, const AppContext&) {
  auto args = std::make_shared<HvArgs>();
  CLI::App* cmd = app.add_subcommand(
      "hv", "Hypervolume of solution files under joint max-min normalization");
  cmd->add_option("files", args->files, "Two or more solutions.csv files")
      ->required()
      ->expected(2, -1);
  cmd->final_callback([args] { run_hv(*args); });
}

}  // namespace spcli
