#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vbroadcast/cli.hpp"

namespace {

// Flag values are forwarded as the raw strings the user typed; the command
// layer parses and validates them, so numbers never round-trip through a
// lossy intermediate type.
struct FlagCapture {
  std::string d, n, out, out_a, out_b;
  std::string unitaries, tol, max_iter, state, state_file, config_path;
  std::uint64_t seed = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonical virtual broadcasting: maps, axioms, overheads, simulations"};
  app.require_subcommand(1);

  FlagCapture f;
  vbroadcast::RunConfig cfg;
  int status = vbroadcast::kExitOk;
  const auto dispatch = [&] { status = vbroadcast::run_with_status(cfg); };

  auto* choi = app.add_subcommand("choi", "write the canonical broadcast Choi operator as JSON");
  choi->add_option("--d", f.d, "input dimension")->required()->check(CLI::Number);
  choi->add_option("--N", f.n, "number of receivers")->required()->check(CLI::Number);
  choi->add_option("--out", f.out, "output JSON path")->required();
  choi->callback([&] {
    cfg = {};
    cfg.command = "choi";
    cfg.parameters = {{"d", f.d}, {"N", f.n}, {"out", f.out}};
    cfg.output_path = f.out;
    dispatch();
  });

  auto* verify = app.add_subcommand("verify", "check the map axioms and print the report JSON");
  verify->add_option("--d", f.d, "input dimension")->required()->check(CLI::Number);
  verify->add_option("--N", f.n, "number of receivers")->required()->check(CLI::Number);
  auto* v_unit =
      verify->add_option("--unitaries", f.unitaries, "Haar samples for the covariance check "
                                                     "(default 20)")
          ->check(CLI::Number);
  auto* v_tol = verify->add_option("--tol", f.tol, "override every per-check tolerance")
                    ->check(CLI::Number);
  auto* v_seed = verify->add_option("--seed", f.seed, "sampling seed (default 0)");
  verify->callback([&] {
    cfg = {};
    cfg.command = "verify";
    cfg.parameters = {{"d", f.d}, {"N", f.n}};
    if (v_unit->count() > 0) cfg.parameters["unitaries"] = f.unitaries;
    if (v_tol->count() > 0) cfg.parameters["tol"] = f.tol;
    if (v_seed->count() > 0) cfg.seed = f.seed;
    dispatch();
  });

  auto* overhead =
      app.add_subcommand("overhead", "solve the sampling-overhead program over a (d, N) grid");
  overhead->add_option("--d", f.d, "comma-separated input dimensions")->required();
  overhead->add_option("--N", f.n, "comma-separated receiver counts")->required();
  auto* o_tol =
      overhead->add_option("--tol", f.tol, "solver tolerance (default 1e-7)")->check(CLI::Number);
  auto* o_iter = overhead->add_option("--max-iter", f.max_iter, "iteration cap (default 200000)")
                     ->check(CLI::Number);
  overhead->add_option("--out", f.out, "output CSV path")->required();
  overhead->callback([&] {
    cfg = {};
    cfg.command = "overhead";
    cfg.parameters = {{"d", f.d}, {"N", f.n}, {"out", f.out}};
    if (o_tol->count() > 0) cfg.parameters["tol"] = f.tol;
    if (o_iter->count() > 0) cfg.parameters["max_iter"] = f.max_iter;
    cfg.output_path = f.out;
    dispatch();
  });

  auto* simulate =
      app.add_subcommand("simulate", "run naive and virtual estimation protocols on a scenario");
  simulate->add_option("--config", f.config_path, "scenario JSON path")
      ->required()
      ->check(CLI::ExistingFile);
  auto* s_seed = simulate->add_option("--seed", f.seed, "override the scenario seed");
  simulate->add_option("--out", f.out, "report JSON path (summary CSV lands beside it)")
      ->required();
  simulate->callback([&] {
    cfg = {};
    cfg.command = "simulate";
    cfg.parameters = {{"config", f.config_path}, {"out", f.out}};
    if (s_seed->count() > 0) {
      cfg.parameters["seed"] = std::to_string(f.seed);
      cfg.seed = f.seed;
    }
    cfg.output_path = f.out;
    dispatch();
  });

  auto* pdo = app.add_subcommand(
      "pdo", "compare the identity-chain pseudo-density operator with the broadcast output");
  pdo->add_option("--d", f.d, "input dimension")->required()->check(CLI::Number);
  pdo->add_option("--N", f.n, "number of points / receivers")->required()->check(CLI::Number);
  auto* p_state = pdo->add_option("--state", f.state, "state source: 'ginibre'");
  auto* p_seed = pdo->add_option("--seed", f.seed, "ginibre seed (default 0)");
  auto* p_file = pdo->add_option("--state-file", f.state_file, "density matrix JSON path");
  pdo->add_option("--out", f.out, "output JSON path")->required();
  pdo->callback([&] {
    cfg = {};
    cfg.command = "pdo";
    cfg.parameters = {{"d", f.d}, {"N", f.n}, {"out", f.out}};
    if (p_state->count() > 0) cfg.parameters["state"] = f.state;
    if (p_file->count() > 0) cfg.parameters["state_file"] = f.state_file;
    if (p_seed->count() > 0) cfg.seed = f.seed;
    cfg.output_path = f.out;
    dispatch();
  });

  auto* figure2 = app.add_subcommand("figure2", "emit both overhead-versus-naive cost panels");
  figure2->add_option("--out-a", f.out_a, "panel a CSV path (dimension sweep, N = 2)")
      ->required();
  figure2->add_option("--out-b", f.out_b, "panel b CSV path (receiver sweep, d = 2)")
      ->required();
  figure2->callback([&] {
    cfg = {};
    cfg.command = "figure2";
    cfg.parameters = {{"out_a", f.out_a}, {"out_b", f.out_b}};
    cfg.output_path = f.out_a;
    dispatch();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    const nlohmann::json err{
        {"error", {{"type", "usage"}, {"message", e.what()}}},
        {"exit", vbroadcast::kExitUsage}};
    std::cerr << err.dump() << "\n";
    return vbroadcast::kExitUsage;
  }
  return status;
}
