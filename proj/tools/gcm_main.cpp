#include "gcm/cli.hpp"

#include <iostream>

#include "CLI11.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Generalized complex Hodge theory on invariant models"};
  app.require_subcommand(1);

  gcm::RunOptions opts;
  std::string file, all_dir;
  app.add_flag("--json", opts.json, "Emit the structured report");
  app.add_flag("--quiet", opts.quiet, "Print verdicts only");
  app.add_option("--all", all_dir, "Run over every .gcm file in a directory");
  app.add_option("--at", opts.at, "Evaluate families at a point, e.g. t1=1/2,t2=0");

  for (const auto &name : gcm::command_names()) {
    CLI::App *sub = app.add_subcommand(name);
    sub->add_option("file", file, "Model file (.gcm)");
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (file.empty() == all_dir.empty()) {
    std::cerr << "give either a model file or --all DIR\n";
    return 2;
  }
  gcm::RunResult r = all_dir.empty() ? gcm::run_command(command, file, opts)
                                     : gcm::run_all(command, all_dir, opts);
  std::cout << r.text;
  return r.exit_code;
}
