#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hcstar/commands.hpp"
#include "hcstar/config.hpp"
#include "hcstar/error.hpp"

int main(int argc, char** argv) {
  using namespace hcstar;
  CLI::App app{"Finite-dimensional higher C*-structure toolkit"};
  std::string command, path;
  RunOptions o;
  if (const char* env = std::getenv("HCSTAR_TOL")) {
    try {
      o.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed HCSTAR_TOL\n";
    }
  }
  std::string mode, sizes;
  app.add_option("command", command, "one of: check-category check-involutions check-exchange check-nc-exchange "
                                     "detect-eh build-convolution check-hyper-cstar hypermatrix-product gns modular "
                                     "kms centralizer a-omega net bimodule-build bimodule-compose check-intertwiner")
      ->required();
  app.add_option("workspace", path, "workspace JSON file")->required();
  app.add_option("--tol", o.tol, "numerical tolerance (default 1e-9, or HCSTAR_TOL)");
  app.add_option("--seed", o.seed, "seed for sampled checks");
  app.add_option("--samples", o.samples, "random samples per sampled check");
  app.add_option("--parallel", o.parallel, "targets processed concurrently");
  app.add_option("--category", o.category, "category name");
  app.add_option("--algebra", o.algebra, "algebra name (coefficients, or subalgebra for a-omega)");
  app.add_option("--ambient", o.ambient, "ambient algebra for a-omega and net");
  app.add_option("--state", o.state, "state name");
  app.add_option("--bimodule", o.bimodule, "bimodule name");
  app.add_option("--intertwiner", o.intertwiner, "intertwiner name");
  app.add_option("--left", o.left, "left operand (hypermatrix or bimodule)");
  app.add_option("--right", o.right, "right operand (hypermatrix or bimodule)");
  app.add_option("--sub", o.subalgebras, "subalgebra names for net")->delimiter(',');
  app.add_option("--q", o.q, "lower level for detect-eh");
  app.add_option("--p", o.p, "upper level for detect-eh");
  app.add_option("--beta", o.beta, "inverse temperature for kms");
  app.add_option("--mode", o.mode, "product mode depths, 1-based, comma separated")->delimiter(',');
  app.add_option("--sizes", o.sizes, "hypermatrix factor sizes, comma separated")->delimiter(',');
  app.add_flag("--trivial-flow", o.trivial_flow, "use the trivial flow in kms");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  set_default_tolerance(o.tol);

  const auto start = std::chrono::steady_clock::now();
  try {
    const Workspace ws = Workspace::load(path);
    const RunResult r = run_command(command, ws, o);
    std::cout << r.report.dump(2) << "\n";
    for (const auto& line : r.summary) std::cerr << line << "\n";
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "wall time " << secs << " s\n";
    return r.exit_code;
  } catch (const Error& e) {
    Json err;
    err["command"] = command;
    err["passed"] = false;
    err["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
