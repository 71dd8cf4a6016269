#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "commands.hpp"
#include "common.hpp"

namespace spcli {

namespace {

struct EvaluateArgs {
  std::string network_dir;
  std::string plan_file;
  std::string geojson_out;
};

std::vector<std::string> read_plan_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) die(kExitData, "cannot open plan file: " + path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    labels.push_back(line.substr(begin, end - begin + 1));
  }
  if (labels.empty()) die(kExitData, path + ": no sensor labels");
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    die(kExitData, path + ": duplicate sensor label '" +
                       *std::adjacent_find(sorted.begin(), sorted.end()) + "'");
  return labels;
}

void write_geojson(const std::string& path, const sp_network* net, const sp_index* idx,
                   const std::vector<uint32_t>& sensors) {
  int has_coords = 0;
  check(sp_network_has_coords(net, &has_coords), "checking coordinates");
  if (has_coords == 0)
    die(kExitData, "network has no coordinates; cannot write GeoJSON");

  const uint32_t n = sp_network_node_count(net);
  std::vector<uint32_t> owner(n, SP_NO_OWNER);
  check(sp_assign_entry_sets(idx, sensors.data(), static_cast<uint32_t>(sensors.size()),
                             owner.data()),
        "assigning entry sets");

  nlohmann::ordered_json features = nlohmann::ordered_json::array();
  for (uint32_t v = 0; v < n; ++v) {
    double x = 0.0;
    double y = 0.0;
    check(sp_network_coord(net, v, &x, &y), "reading coordinates");
    const char* label = nullptr;
    check(sp_network_label(net, v, &label), "reading label");

    nlohmann::ordered_json props;
    props["label"] = label;
    props["sensor"] =
        std::find(sensors.begin(), sensors.end(), v) != sensors.end();
    if (owner[v] == SP_NO_OWNER) {
      props["entry_set"] = nullptr;
    } else {
      const char* owner_label = nullptr;
      check(sp_network_label(net, owner[v], &owner_label), "reading owner label");
      props["entry_set"] = owner_label;
    }
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", {x, y}}}},
                        {"properties", props}});
  }
  write_json_file(path,
                  nlohmann::ordered_json{{"type", "FeatureCollection"}, {"features", features}});
}

void run_evaluate(const EvaluateArgs& args) {
  NetworkHandle net = load_network_dir(args.network_dir);
  IndexHandle idx = build_index(net.get());

  const std::vector<std::string> labels = read_plan_labels(args.plan_file);
  std::vector<uint32_t> sensors;
  sensors.reserve(labels.size());
  for (const std::string& label : labels) {
    uint32_t id = 0;
    check(sp_network_find_label(net.get(), label.c_str(), &id), "resolving plan");
    sensors.push_back(id);
  }

  uint32_t coverage = 0;
  double cost = 0.0;
  check(sp_evaluate_plan(idx.get(), sensors.data(), static_cast<uint32_t>(sensors.size()),
                         &coverage, &cost),
        "evaluating plan");
  std::vector<uint32_t> sizes(sensors.size(), 0);
  check(sp_entry_set_sizes(idx.get(), sensors.data(), static_cast<uint32_t>(sensors.size()),
                           sizes.data()),
        "computing entry set sizes");

  std::printf("coverage: %u\n", coverage);
  std::printf("search_cost: %s\n", format_g6(cost).c_str());
  std::printf("entry_set_sizes:\n");
  for (std::size_t k = 0; k < labels.size(); ++k)
    std::printf("  %s: %u\n", labels[k].c_str(), sizes[k]);

  if (!args.geojson_out.empty()) {
    write_geojson(args.geojson_out, net.get(), idx.get(), sensors);
    std::printf("wrote %s\n", args.geojson_out.c_str());
  }
}

}  // namespace

void register_evaluate(CLI::App& app, const AppContext&) {
  auto args = std::make_shared<EvaluateArgs>();
  CLI::App* cmd =
      app.add_subcommand("evaluate", "Evaluate one placement plan against a network");
  cmd->add_option("network", args->network_dir, "Directory with nodes.csv and edges.csv")
      ->required();
  cmd->add_option("--plan", args->plan_file, "Text file with one sensor label per line")
      ->required();
  cmd->add_option("--geojson", args->geojson_out,
                  "Write sensors and entry-set membership as GeoJSON (needs coordinates)");
  cmd->final_callback([args] { run_evaluate(*args); });
}

}  // namespace spcli
