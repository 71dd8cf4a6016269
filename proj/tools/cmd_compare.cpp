#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "commands.hpp"
#include "common.hpp"

namespace spcli {

namespace {

struct CompareArgs {
  std::vector<std::uint32_t> sizes;
  std::vector<std::string> algos{"nmg", "eg"};
  std::vector<std::uint32_t> x_values{5, 10, 15, 20, 25};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::uint32_t population_size = 20;
  std::uint32_t sensor_budget = 20;
  double budget_s = 600.0;
  std::string out_dir;
};

struct CellDef {
  std::string algo;
  std::uint32_t x = 0;  // 0 for nmg
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  double hv = 0.0;
  double wall_ms = 0.0;
  std::uint32_t solutions = 0;
  std::uint32_t iterations = 0;
  std::uint64_t evaluations = 0;
  bool incomplete = false;
  bool over_budget = false;  // incomplete specifically because time ran out
};

struct FrontPoints {
  std::vector<uint32_t> coverages;
  std::vector<double> costs;
};

FrontPoints collect_front(const sp_result* res) {
  FrontPoints out;
  const uint32_t count = sp_result_solution_count(res);
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t coverage = 0;
    double cost = 0.0;
    check(sp_result_solution(res, i, &coverage, &cost, nullptr), "reading solution");
    out.coverages.push_back(coverage);
    out.costs.push_back(cost);
  }
  return out;
}

std::string seeds_column(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(seeds[i]);
  }
  return out;
}

void run_compare(const CompareArgs& args, const AppContext& ctx) {
  std::vector<CellDef> cells;
  for (const std::string& algo : args.algos) {
    if (algo == "nmg") {
      cells.push_back(CellDef{"nmg", 0});
    } else {
      for (std::uint32_t x : args.x_values) cells.push_back(CellDef{"eg", x});
    }
  }

  // outcomes[size_index][cell_index][seed_index]
  std::vector<std::vector<std::vector<SeedOutcome>>> outcomes(
      args.sizes.size(), std::vector<std::vector<SeedOutcome>>(cells.size()));

  for (std::size_t si = 0; si < args.sizes.size(); ++si) {
    const std::uint32_t size = args.sizes[si];
    for (std::uint64_t seed : args.seeds) {
      sp_network* raw_net = nullptr;
      check(sp_network_generate(size, seed, kDefaultBranchingProbabilities.data(),
                                static_cast<uint32_t>(kDefaultBranchingProbabilities.size()),
                                &raw_net),
            "generating network");
      NetworkHandle net(raw_net);
      IndexHandle idx = build_index(net.get());

      std::vector<FrontPoints> fronts(cells.size());
      std::vector<SeedOutcome> seed_outcomes(cells.size());
      for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        sp_run_options options{};
        options.algorithm = cells[ci].algo == "nmg" ? SP_ALGO_NMG : SP_ALGO_EG;
        options.population_size = args.population_size;
        options.sensor_budget = args.sensor_budget;
        options.offspring_per_plan = cells[ci].x;
        options.seed = seed;
        options.time_budget_ms = args.budget_s * 1000.0;

        log_debug("size " + std::to_string(size) + " seed " + std::to_string(seed) + " " +
                  cells[ci].algo + (cells[ci].x != 0 ? "(" + std::to_string(cells[ci].x) + ")"
                                                     : std::string()));
        sp_result* raw_res = nullptr;
        check(sp_run(idx.get(), &options, &raw_res), "running " + cells[ci].algo);
        ResultHandle res(raw_res);

        fronts[ci] = collect_front(res.get());
        SeedOutcome& o = seed_outcomes[ci];
        o.seed = seed;
        o.wall_ms = sp_result_wall_ms(res.get());
        o.solutions = sp_result_solution_count(res.get());
        o.iterations = sp_result_iterations(res.get());
        o.evaluations = sp_result_evaluations(res.get());
        o.incomplete = sp_result_incomplete(res.get()) != 0;
        o.over_budget = o.incomplete && args.budget_s > 0.0 && o.wall_ms >= args.budget_s * 1000.0;
      }

      // Joint normalization for this (size, seed) across every cell.
      FrontPoints all;
      for (const FrontPoints& f : fronts) {
        all.coverages.insert(all.coverages.end(), f.coverages.begin(), f.coverages.end());
        all.costs.insert(all.costs.end(), f.costs.begin(), f.costs.end());
      }
      sp_bounds bounds{};
      const bool have_bounds = !all.coverages.empty();
      if (have_bounds)
        check(sp_bounds_from_points(all.coverages.data(), all.costs.data(),
                                    static_cast<uint32_t>(all.coverages.size()), &bounds),
              "computing joint bounds");
      for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        if (have_bounds && !fronts[ci].coverages.empty()) {
          check(sp_hypervolume(fronts[ci].coverages.data(), fronts[ci].costs.data(),
                               static_cast<uint32_t>(fronts[ci].coverages.size()), &bounds,
                               &seed_outcomes[ci].hv, nullptr),
                "computing hypervolume");
        }
        outcomes[si][ci].push_back(seed_outcomes[ci]);
      }
    }
  }

  // Stdout table deliberately omits wall-clock columns so repeated runs with
  // the same seeds print identical bytes; timings live in the report files.
  std::string table = "size,algo,x,mean_hv,seeds\n";
  std::string report = "size,algo,x,mean_hv,mean_wall_s,seeds\n";
  nlohmann::ordered_json cells_json = nlohmann::ordered_json::array();
  for (std::size_t si = 0; si < args.sizes.size(); ++si) {
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      const std::vector<SeedOutcome>& outs = outcomes[si][ci];
      double hv_sum = 0.0;
      double wall_sum = 0.0;
      bool over_budget = false;
      nlohmann::ordered_json per_seed = nlohmann::ordered_json::array();
      for (const SeedOutcome& o : outs) {
        hv_sum += o.hv;
        wall_sum += o.wall_ms;
        over_budget = over_budget || o.over_budget;
        per_seed.push_back({{"seed", o.seed},
                            {"hv", o.hv},
                            {"wall_ms", o.wall_ms},
                            {"solutions", o.solutions},
                            {"iterations", o.iterations},
                            {"evaluations", o.evaluations},
                            {"incomplete", o.incomplete},
                            {"over_budget", o.over_budget}});
      }
      const double mean_hv = hv_sum / static_cast<double>(outs.size());
      const double mean_wall_s = wall_sum / 1000.0 / static_cast<double>(outs.size());
      // Cells that blew the time budget are masked like the reference tables.
      const std::string hv_cell = over_budget ? "**" : format_g6(mean_hv);
      const std::string wall_cell = over_budget ? "**" : format_g6(mean_wall_s);
      const std::string x_cell = cells[ci].x != 0 ? std::to_string(cells[ci].x) : std::string();

      const std::string prefix = std::to_string(args.sizes[si]) + "," + cells[ci].algo + "," +
                                 x_cell + "," + hv_cell;
      table += prefix + "," + seeds_column(args.seeds) + "\n";
      report += prefix + "," + wall_cell + "," + seeds_column(args.seeds) + "\n";

      cells_json.push_back({{"size", args.sizes[si]},
                            {"algo", cells[ci].algo},
                            {"x", cells[ci].x},
                            {"mean_hv", mean_hv},
                            {"mean_wall_s", mean_wall_s},
                            {"over_budget", over_budget},
                            {"seeds", per_seed}});
    }
  }
  std::fputs(table.c_str(), stdout);

  if (!args.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec)
      die(kExitData, "cannot create output directory " + args.out_dir + ": " + ec.message());
    std::ofstream rep(args.out_dir + "/report.csv", std::ios::binary);
    if (!rep) die(kExitData, "cannot write " + args.out_dir + "/report.csv");
    rep << report;
    rep.close();

    nlohmann::ordered_json manifest;
    manifest["tool"] = "sewerplace";
    manifest["version"] = sp_version();
    manifest["command"] = "compare";
    manifest["argv"] = ctx.argv;
    manifest["config"] = {{"sizes", args.sizes},
                          {"algos", args.algos},
                          {"x_values", args.x_values},
                          {"seeds", args.seeds},
                          {"population_size", args.population_size},
                          {"sensor_budget", args.sensor_budget},
                          {"budget_s", args.budget_s},
                          {"probabilities", kDefaultBranchingProbabilities}};
    manifest["cells"] = cells_json;
    write_json_file(args.out_dir + "/manifest.json", manifest);
  }
}

}  // namespace

void register_compare(CLI::App& app, const AppContext& ctx) {
  auto args = std::make_shared<CompareArgs>();
  CLI::App* cmd = app.add_subcommand(
      "compare", "Benchmark algorithms across synthetic network sizes and seeds");
  cmd->add_option("--sizes", args->sizes, "Synthetic network sizes")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd->add_option("--algos", args->algos, "Algorithms: nmg and/or eg")
      ->delimiter(',')
      ->check(CLI::IsMember({"nmg", "eg"}));
  cmd->add_option("--x", args->x_values, "Offspring counts for eg cells")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seeds", args->seeds, "Seeds; one network per (size, seed)")
      ->delimiter(',');
  cmd->add_option("--N", args->population_size, "Population size / target front size")
      ->default_val(20)
      ->check(CLI::PositiveNumber);
  cmd->add_option("--S", args->sensor_budget, "Sensor budget")
      ->default_val(20)
      ->check(CLI::PositiveNumber);
  cmd->add_option("--budget-s", args->budget_s, "Per-cell wall-clock budget in seconds")
      ->default_val(600.0);
  cmd->add_option("--out", args->out_dir, "Directory for report.csv and manifest.json");
  cmd->final_callback([args, &ctx] { run_compare(*args, ctx); });
}

}  // namespace spcli
