#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "commands.hpp"
#include "common.hpp"

namespace spcli {

namespace {

struct SynthArgs {
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string dist_file;
  std::string fit_from;
};

std::vector<double> parse_distribution_file(const std::string& path) {
  nlohmann::ordered_json doc = read_json_file(path);
  nlohmann::ordered_json probs = doc.is_object() ? doc.value("probabilities", nlohmann::ordered_json()) : doc;
  if (!probs.is_array() || probs.empty())
    die(kExitData, path + ": expected a JSON array of probabilities "
                          "(or an object with a \"probabilities\" array)");
  std::vector<double> out;
  for (const auto& v : probs) {
    if (!v.is_number()) die(kExitData, path + ": probabilities must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<double> fit_from_dir(const std::string& dir) {
  NetworkHandle net = load_network_dir(dir);
  double* probs = nullptr;
  uint32_t count = 0;
  check(sp_network_fit_branching(net.get(), &probs, &count), "fitting branching distribution");
  std::vector<double> out(probs, probs + count);
  sp_buffer_free(probs);
  return out;
}

void run_synth(const SynthArgs& args, const AppContext& ctx) {
  std::string source = "default";
  std::vector<double> probabilities = kDefaultBranchingProbabilities;
  if (!args.dist_file.empty()) {
    source = "file";
    probabilities = parse_distribution_file(args.dist_file);
  } else if (!args.fit_from.empty()) {
    source = "fitted";
    probabilities = fit_from_dir(args.fit_from);
  }

  sp_network* raw = nullptr;
  check(sp_network_generate(args.n, args.seed, probabilities.data(),
                            static_cast<uint32_t>(probabilities.size()), &raw),
        "generating network");
  NetworkHandle net(raw);

  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) die(kExitData, "cannot create output directory " + args.out_dir + ": " + ec.message());

  const std::string nodes_path = args.out_dir + "/nodes.csv";
  const std::string edges_path = args.out_dir + "/edges.csv";
  check(sp_network_save(net.get(), nodes_path.c_str(), edges_path.c_str()), "saving network");

  nlohmann::ordered_json manifest;
  manifest["tool"] = "sewerplace";
  manifest["version"] = sp_version();
  manifest["command"] = "synth";
  manifest["argv"] = ctx.argv;
  manifest["config"] = {{"n", args.n},
                        {"seed", args.seed},
                        {"distribution_source", source},
                        {"probabilities", probabilities}};
  manifest["outputs"] = {{"nodes_csv", "nodes.csv"},
                         {"edges_csv", "edges.csv"},
                         {"nodes_digest", file_digest(nodes_path)},
                         {"edges_digest", file_digest(edges_path)}};
  write_json_file(args.out_dir + "/manifest.json", manifest);

  std::printf("wrote %s (%u nodes, %llu edges)\n", args.out_dir.c_str(),
              sp_network_node_count(net.get()),
              static_cast<unsigned long long>(sp_network_edge_count(net.get())));
}

}  // namespace

void register_synth(CLI::App& app, const AppContext& ctx) {
  auto args = std::make_shared<SynthArgs>();
  CLI::App* cmd = app.add_subcommand("synth", "Generate a random synthetic sewage network");
  cmd->add_option("--n", args->n, "Target node count")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args->seed, "Generator seed")->default_val(0);
  cmd->add_option("--out", args->out_dir, "Output directory")->required();
  CLI::Option* dist =
      cmd->add_option("--dist", args->dist_file, "JSON file with branching probabilities");
  cmd->add_option("--fit-from", args->fit_from,
                  "Network directory whose branching distribution should be fitted and used")
      ->excludes(dist);
  cmd->final_callback([args, &ctx] { run_synth(*args, ctx); });
}

}  // namespace spcli
