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

struct OptimizeConfig {
  std::string algorithm = "eg";  // eg | nmg | oracle
  std::uint32_t population_size = 20;
  std::uint32_t sensor_budget = 0;
  std::uint32_t offspring_per_plan = 5;
  std::uint64_t seed = 0;
  std::uint32_t max_iterations = 0;
  std::uint64_t oracle_cap = 0;
  double time_budget_s = 0.0;
};

sp_algorithm algo_from_name(const std::string& name) {
  if (name == "eg") return SP_ALGO_EG;
  if (name == "nmg") return SP_ALGO_NMG;
  return SP_ALGO_ORACLE;
}

std::string join_labels(const sp_network* net, const uint32_t* sensors, uint32_t count) {
  std::string out;
  for (uint32_t k = 0; k < count; ++k) {
    const char* label = nullptr;
    check(sp_network_label(net, sensors[k], &label), "resolving sensor label");
    if (k > 0) out += ';';
    out += label;
  }
  return out;
}

void write_solutions(const sp_result* res, const sp_network* net, const std::string& csv_path,
                     const std::string& json_path) {
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) die(kExitData, "cannot write " + csv_path);
  csv << "plan_id,coverage,search_cost,sensors\n";

  nlohmann::ordered_json solutions = nlohmann::ordered_json::array();
  const uint32_t count = sp_result_solution_count(res);
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t coverage = 0;
    double cost = 0.0;
    uint64_t plan_count = 0;
    check(sp_result_solution(res, i, &coverage, &cost, &plan_count), "reading solution");
    const uint32_t* sensors = nullptr;
    uint32_t sensor_count = 0;
    check(sp_result_solution_sensors(res, i, &sensors, &sensor_count), "reading solution plan");

    csv << i << ',' << coverage << ',' << format_g6(cost) << ','
        << join_labels(net, sensors, sensor_count) << '\n';

    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (uint32_t k = 0; k < sensor_count; ++k) {
      const char* label = nullptr;
      check(sp_network_label(net, sensors[k], &label), "resolving sensor label");
      labels.push_back(label);
    }
    solutions.push_back({{"plan_id", i},
                         {"coverage", coverage},
                         {"search_cost", cost},
                         {"plan_count", plan_count},
                         {"sensors", labels}});
  }
  csv.flush();
  if (!csv) die(kExitData, "write failed: " + csv_path);

  write_json_file(json_path, nlohmann::ordered_json{{"solutions", solutions}});
}

// Shared by `optimize` and `rerun`: load, run, write the artifact directory.
void execute_optimize(const std::string& network_dir_display,
                      const std::string& network_dir_resolved, const OptimizeConfig& cfg,
                      const std::string& out_dir, const std::vector<std::string>& argv) {
  NetworkHandle net = load_network_dir(network_dir_resolved);
  IndexHandle idx = build_index(net.get());

  sp_run_options options{};
  options.algorithm = algo_from_name(cfg.algorithm);
  options.population_size = cfg.population_size;
  options.sensor_budget = cfg.sensor_budget;
  options.offspring_per_plan = cfg.offspring_per_plan;
  options.seed = cfg.seed;
  options.max_iterations = cfg.max_iterations;
  options.oracle_cap = cfg.oracle_cap;
  options.time_budget_ms = cfg.time_budget_s * 1000.0;

  sp_result* raw = nullptr;
  check(sp_run(idx.get(), &options, &raw), "running " + cfg.algorithm);
  ResultHandle res(raw);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) die(kExitData, "cannot create output directory " + out_dir + ": " + ec.message());

  const std::string csv_path = out_dir + "/solutions.csv";
  const std::string json_path = out_dir + "/solutions.json";
  write_solutions(res.get(), net.get(), csv_path, json_path);

  std::string base = network_dir_resolved;
  while (!base.empty() && base.back() == '/') base.pop_back();
  nlohmann::ordered_json manifest;
  manifest["tool"] = "sewerplace";
  manifest["version"] = sp_version();
  manifest["command"] = "optimize";
  manifest["argv"] = argv;
  std::error_code abs_ec;
  const std::filesystem::path abs_dir =
      std::filesystem::absolute(network_dir_resolved, abs_ec);
  manifest["network"] = {{"dir", network_dir_display},
                         {"resolved_dir", abs_ec ? network_dir_resolved : abs_dir.string()},
                         {"nodes_digest", file_digest(base + "/nodes.csv")},
                         {"edges_digest", file_digest(base + "/edges.csv")},
                         {"node_count", sp_network_node_count(net.get())},
                         {"edge_count", sp_network_edge_count(net.get())}};
  manifest["config"] = {{"algorithm", cfg.algorithm},
                        {"population_size", cfg.population_size},
                        {"sensor_budget", cfg.sensor_budget},
                        {"offspring_per_plan", cfg.offspring_per_plan},
                        {"seed", cfg.seed},
                        {"max_iterations", cfg.max_iterations},
                        {"oracle_cap", cfg.oracle_cap},
                        {"time_budget_s", cfg.time_budget_s}};
  manifest["result"] = {{"solution_count", sp_result_solution_count(res.get())},
                        {"iterations", sp_result_iterations(res.get())},
                        {"evaluations", sp_result_evaluations(res.get())},
                        {"wall_ms", sp_result_wall_ms(res.get())},
                        {"incomplete", sp_result_incomplete(res.get()) != 0}};
  manifest["outputs"] = {{"solutions_csv", "solutions.csv"}, {"solutions_json", "solutions.json"}};
  write_json_file(out_dir + "/manifest.json", manifest);

  std::printf("algorithm: %s\nsolutions: %u\niterations: %u\nevaluations: %llu\n"
              "wall_ms: %.2f\nincomplete: %s\nwrote %s\n",
              cfg.algorithm.c_str(), sp_result_solution_count(res.get()),
              sp_result_iterations(res.get()),
              static_cast<unsigned long long>(sp_result_evaluations(res.get())),
              sp_result_wall_ms(res.get()),
              sp_result_incomplete(res.get()) != 0 ? "true" : "false", csv_path.c_str());
}

struct OptimizeArgs {
  std::string network_dir;
  std::string out_dir = ".";
  OptimizeConfig cfg;
};

struct RerunArgs {
  std::string manifest_path;
  std::string out_dir = ".";
};

void run_rerun(const RerunArgs& args, const AppContext& ctx) {
  nlohmann::ordered_json manifest = read_json_file(args.manifest_path);
  const std::string command = manifest.value("command", "");
  const std::filesystem::path manifest_dir =
      std::filesystem::path(args.manifest_path).parent_path();

  if (command == "optimize") {
    const auto& mnet = manifest.at("network");
    const auto& mcfg = manifest.at("config");
    const std::string dir = mnet.at("dir").get<std::string>();
    // The recorded absolute path is authoritative; fall back to resolving the
    // as-typed path against the manifest's own directory.
    std::filesystem::path resolved(mnet.value("resolved_dir", ""));
    if (resolved.empty()) {
      resolved = dir;
      if (resolved.is_relative()) resolved = manifest_dir / resolved;
    }

    std::string base = resolved.string();
    while (!base.empty() && base.back() == '/') base.pop_back();
    const std::string nodes_digest = file_digest(base + "/nodes.csv");
    const std::string edges_digest = file_digest(base + "/edges.csv");
    if (nodes_digest != mnet.at("nodes_digest").get<std::string>() ||
        edges_digest != mnet.at("edges_digest").get<std::string>())
      die(kExitData, "network files under " + resolved.string() +
                         " do not match the digests recorded in the manifest");

    OptimizeConfig cfg;
    cfg.algorithm = mcfg.at("algorithm").get<std::string>();
    cfg.population_size = mcfg.at("population_size").get<std::uint32_t>();
    cfg.sensor_budget = mcfg.at("sensor_budget").get<std::uint32_t>();
    cfg.offspring_per_plan = mcfg.at("offspring_per_plan").get<std::uint32_t>();
    cfg.seed = mcfg.at("seed").get<std::uint64_t>();
    cfg.max_iterations = mcfg.at("max_iterations").get<std::uint32_t>();
    cfg.oracle_cap = mcfg.at("oracle_cap").get<std::uint64_t>();
    cfg.time_budget_s = mcfg.at("time_budget_s").get<double>();
    execute_optimize(dir, resolved.string(), cfg, args.out_dir, ctx.argv);
    return;
  }

  if (command == "synth") {
    const auto& mcfg = manifest.at("config");
    const auto n = mcfg.at("n").get<std::uint32_t>();
    const auto seed = mcfg.at("seed").get<std::uint64_t>();
    const auto probabilities = mcfg.at("probabilities").get<std::vector<double>>();

    sp_network* raw = nullptr;
    check(sp_network_generate(n, seed, probabilities.data(),
                              static_cast<uint32_t>(probabilities.size()), &raw),
          "regenerating network");
    NetworkHandle net(raw);

    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec)
      die(kExitData, "cannot create output directory " + args.out_dir + ": " + ec.message());
    const std::string nodes_path = args.out_dir + "/nodes.csv";
    const std::string edges_path = args.out_dir + "/edges.csv";
    check(sp_network_save(net.get(), nodes_path.c_str(), edges_path.c_str()), "saving network");

    const auto& outputs = manifest.at("outputs");
    if (file_digest(nodes_path) != outputs.at("nodes_digest").get<std::string>() ||
        file_digest(edges_path) != outputs.at("edges_digest").get<std::string>())
      die(kExitData, "regenerated network does not match the digests in the manifest");
    std::printf("reproduced %s (%u nodes)\n", args.out_dir.c_str(), n);
    return;
  }

  die(kExitUsage, "rerun supports 'synth' and 'optimize' manifests, got '" + command + "'");
}

}  // namespace

void register_optimize(CLI::App& app, const AppContext& ctx) {
  auto args = std::make_shared<OptimizeArgs>();
  CLI::App* cmd = app.add_subcommand("optimize", "Search sensor placements on a network");
  cmd->add_option("network", args->network_dir, "Directory with nodes.csv and edges.csv")
      ->required();
  cmd->add_option("--algo", args->cfg.algorithm, "Algorithm: eg, nmg, or oracle")
      ->check(CLI::IsMember({"eg", "nmg", "oracle"}))
      ->default_val("eg");
  cmd->add_option("--N", args->cfg.population_size, "Population size / target front size")
      ->default_val(20)
      ->check(CLI::PositiveNumber);
  cmd->add_option("--S", args->cfg.sensor_budget, "Sensor budget (exact plan size)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--x", args->cfg.offspring_per_plan, "Offspring per plan (eg only)")
      ->default_val(5)
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args->cfg.seed, "Search seed (eg only)")->default_val(0);
  cmd->add_option("--max-iter", args->cfg.max_iterations,
                  "Iteration cap; 0 means 10 * sensor budget")
      ->default_val(0);
  cmd->add_option("--oracle-cap", args->cfg.oracle_cap,
                  "Oracle enumeration cap; 0 means 2000000")
      ->default_val(0);
  cmd->add_option("--time-budget-s", args->cfg.time_budget_s,
                  "Wall-clock budget in seconds; 0 means unlimited")
      ->default_val(0.0);
  cmd->add_option("--out", args->out_dir, "Output directory")->default_val(".");
  cmd->final_callback([args, &ctx] {
    execute_optimize(args->network_dir, args->network_dir, args->cfg, args->out_dir, ctx.argv);
  });
}

void register_rerun(CLI::App& app, const AppContext& ctx) {
  auto args = std::make_shared<RerunArgs>();
  CLI::App* cmd =
      app.add_subcommand("rerun", "Reproduce a previous run from its manifest file");
  cmd->add_option("manifest", args->manifest_path, "Path to a manifest.json")->required();
  cmd->add_option("--out", args->out_dir, "Output directory")->default_val(".");
  cmd->final_callback([args, &ctx] { run_rerun(*args, ctx); });
}

}  // namespace spcli
