#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ctc/expr.hpp"
#include "ctc/report.hpp"

using namespace ctc::cli;

int main(int argc, char** argv) {
  CLI::App app{"contact triad connections: construction and verification"};
  app.set_version_flag("--version", std::string("ctc ") + ctc::kLibraryVersion);
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--tol", g.tol, "residual tolerance (default 1e-9)");
  app.add_option("--seed", g.seed, "seed for sample points and random vectors");
  app.add_option("--points", g.points, "number of random sample points");
  app.add_option("--json", g.json_path, "write the machine-readable result to this path");
  app.add_option("--connection", g.connection, "triad-direct | triad-frame | levi-civita")
      ->check(CLI::IsMember({"triad-direct", "triad-frame", "levi-civita", "triad"}));
  app.add_option("--c", g.c, "constant of the c-connection");
  app.add_option("--threads", g.threads, "worker threads (0: all cores)");
  app.add_flag("-q,--quiet", g.quiet, "print failing rows only");

  std::string target, what, point, triad_key = "standard-r3";
  std::optional<double> assert_zero;
  int grid = 20;

  auto* check = app.add_subcommand("check", "verify axioms and identities of a triad's connections")->fallthrough();
  check->add_option("target", target, "gallery:<key> or manifest.json")->required();

  auto* eval = app.add_subcommand("eval", "print one object at a point")->fallthrough();
  eval->add_option("what", what, "reeb | metric | gamma | torsion | frame | alpha-beta | nijenhuis")->required();
  eval->add_option("target", target, "gallery:<key> or manifest.json")->required();
  eval->add_option("--point", point, "comma-separated coordinates")->required();

  auto* cr = app.add_subcommand("cr", "contact instanton residuals of a map on a sample grid")->fallthrough();
  cr->add_option("target", target, "map:<key> or a map manifest")->required();
  cr->add_option("--triad", triad_key, "gallery triad for built-in maps");
  cr->add_option("--grid", grid, "grid points per axis on [-1, 1]^2");
  cr->add_option("--assert-zero", assert_zero, "exit 1 unless every residual is below this tolerance");

  auto* list = app.add_subcommand("gallery-list", "list built-in triads and maps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*check) return cmd_check(target, g);
    if (*eval) return cmd_eval(what, target, point, g);
    if (*cr) return cmd_cr(target, triad_key, grid, assert_zero, g);
    if (*list) return cmd_gallery_list();
  } catch (const ctc::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
