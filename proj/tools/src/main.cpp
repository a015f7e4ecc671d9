#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace equispectra::cli;
  CLI::App app{"Equivariant spectrahedral descriptions and polar-representation checks"};
  app.require_subcommand(1);
  GlobalOptions opts;
  double tol = 0;
  auto* tol_opt = app.add_option("--tol", tol, "PSD tolerance for float sampling checks");
  app.add_option("--seed", opts.seed, "Seed for every sampled check");
  app.add_option("--samples", opts.samples, "Sample count for set and invariance checks");
  app.add_option("--out", opts.out, "Directory for output documents");

  EquivariantizeArgs eq;
  auto* eq_cmd = app.add_subcommand("equivariantize", "Construct an equivariant description of a pencil");
  eq_cmd->add_option("pencil", eq.pencil, "Pencil document or builtin (disk, hermitian, quartic)")->required();
  eq_cmd->add_option("group", eq.group, "Group document or builtin (disk-so2, hermitian-su2, quartic-o2, trivial:<n>)")
      ->required();
  eq_cmd->add_option("--shift", eq.shift, "G-fixed interior point, comma-separated rationals");
  eq_cmd->add_option("--basis", eq.basis, "Preferred orbit-span basis, semicolon-separated polynomials");
  eq_cmd->add_flag("--orthonormal-view", eq.orthonormal_view, "Add a floating-point view of Mbar with gram0 = I");

  std::string family;
  std::size_t n = 0;
  std::string objective;
  auto* red_cmd = app.add_subcommand("reduce", "Reduce a linear objective over an orbitope to the section");
  red_cmd->add_option("--family", family, "sym or skew")->required();
  red_cmd->add_option("--n", n, "Matrix size")->required();
  red_cmd->add_option("objective", objective, "Objective matrix document")->required();

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run one verification check");
  check_cmd->add_option("which", check.which, "invariance|equivariance|set|kostant|rigid|hopf")->required();
  check_cmd->add_option("inputs", check.inputs, "Inputs of the check");
  check_cmd->add_option("--point", check.point, "rigid: base point, comma-separated rationals");
  check_cmd->add_option("--directions", check.directions, "rigid: number of test directions");
  check_cmd->add_option("--instances", check.instances, "kostant: number of membership instances");
  check_cmd->add_option("--conjugates", check.conjugates, "kostant: sampled conjugates per instance");

  std::string example;
  auto* ex_cmd = app.add_subcommand("examples", "Rerun the worked examples against their golden documents");
  ex_cmd->add_option("name", example, "disk|quartic|hermitian|all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }
  if (*tol_opt) opts.tol = tol;
  for (int i = 0; i < argc; ++i) opts.command_line += (i ? " " : "") + std::string(argv[i]);

  if (*eq_cmd) return run_equivariantize(eq, opts, std::cout, std::cerr);
  if (*red_cmd) return run_reduce(family, n, objective, opts, std::cout, std::cerr);
  if (*check_cmd) return run_check(check, opts, std::cout, std::cerr);
  return run_examples(example, opts, std::cout, std::cerr);
}
