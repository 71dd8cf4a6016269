#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "common.hpp"
#include "sewerplace/sewerplace.h"

int main(int argc, char** argv) {
  spcli::AppContext ctx;
  for (int i = 0; i < argc; ++i) ctx.argv.emplace_back(argv[i]);

  CLI::App app{"sewerplace: multi-objective sensor placement on sewage networks"};
  app.set_version_flag("--version", sp_version());
  app.require_subcommand(1);

  spcli::register_synth(app, ctx);
  spcli::register_optimize(app, ctx);
  spcli::register_rerun(app, ctx);
  spcli::register_hv(app, ctx);
  spcli::register_evaluate(app, ctx);
  spcli::register_compare(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the parse diagnostic
    return spcli::kExitUsage;
  } catch (const spcli::CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return spcli::kExitOk;
}
