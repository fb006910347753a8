#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wapeq/commands.hpp"

namespace {

struct ModeArgs {
  std::string config_path;
  std::string out_dir = ".";
};

void add_mode(CLI::App& app, const std::string& name, const std::string& desc,
              ModeArgs& args, int& rc) {
  CLI::App* sub = app.add_subcommand(name, desc);
  sub->add_option("--config", args.config_path, "run configuration file")
      ->required();
  sub->add_option("--out-dir", args.out_dir, "output directory (default .)");
  sub->callback([name, &args, &rc] {
    const wapeq::cli::RunConfig cfg =
        wapeq::cli::load_config(args.config_path, name);
    if (name == "verify")
      rc = wapeq::cli::cmd_verify(cfg, args.out_dir);
    else if (name == "conserve")
      rc = wapeq::cli::cmd_conserve(cfg, args.out_dir);
    else
      rc = wapeq::cli::cmd_tl(cfg, args.out_dir);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wide-angle range-stepping solver for sloping waveguides"};
  app.require_subcommand(1);

  ModeArgs verify_args, conserve_args, tl_args;
  int rc = 0;
  add_mode(app, "verify", "manufactured-solution convergence study",
           verify_args, rc);
  add_mode(app, "conserve", "per-step conserved-quantity run", conserve_args,
           rc);
  add_mode(app, "tl", "transmission-loss simulation", tl_args, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const wapeq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wapeq::SingularStep& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
