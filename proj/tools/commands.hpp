#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>

namespace spcli {

/// Invocation details shared with every command (manifests record argv).
struct AppContext {
  std::vector<std::string> argv;
};

void register_synth(CLI::App& app, const AppContext& ctx);
void register_optimize(CLI::App& app, const AppContext& ctx);
void register_rerun(CLI::App& app, const AppContext& ctx);
void register_hv(CLI::App& app, const AppContext& ctx);
void register_evaluate(CLI::App& app, const AppContext& ctx);
void register_compare(CLI::App& app, const AppContext& ctx);

}  // namespace spcli
