// Command-line front end. Talks to the simulator exclusively through the
// shared-library C API.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hubbardvha.h"

namespace {

struct CliOptions {
  std::string command;
  std::string config_path;
  std::string lattice;
  std::string t, U;
  std::string method;
  std::string n, fidelity;
  std::string runs, seed, starts;
  std::string tau_min, tau_max, tau_points;
  std::string out, threads, qubit_cap;
  std::string dump_circuit_path;
  int dump_n = 0;
  double dump_fbar = 1.0;
};

int fail(const char* what, hv_status status) {
  std::fprintf(stderr, "error: %s: %s", what, hv_status_message(status));
  const char* detail = hv_last_error();
  if (detail && detail[0]) std::fprintf(stderr, " (%s)", detail);
  std::fprintf(stderr, "\n");
  return 1;
}

int apply(hv_config* cfg, const char* key, const std::string& value) {
  if (value.empty()) return 0;
  const hv_status st = hv_config_set(cfg, key, value.c_str());
  if (st != HV_OK) return fail(key, st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliOptions opt;
  CLI::App app{
      "Ground state preparation for the 2D Fermi-Hubbard model on a "
      "simulated noisy gate-based quantum computer"};
  app.add_option("command", opt.command,
                 "ground-truth | vha | adiabatic | frozen-transfer | table")
      ->required()
      ->check(CLI::IsMember(
          {"ground-truth", "vha", "adiabatic", "frozen-transfer", "table"}));
  app.add_option("--config", opt.config_path, "config file (key = value lines)");
  app.add_option("--lattice", opt.lattice, "lattice as CxR, e.g. 3x2");
  app.add_option("--t", opt.t, "hopping amplitude");
  app.add_option("--U", opt.U, "on-site interaction");
  app.add_option("--method", opt.method, "method for the table command");
  app.add_option("--n", opt.n, "comma list of step counts");
  app.add_option("--fidelity", opt.fidelity, "comma list of gate fidelities");
  app.add_option("--runs", opt.runs, "noise realizations per cell");
  app.add_option("--seed", opt.seed, "base seed; run r uses seed + r");
  app.add_option("--starts", opt.starts, "start family: baseline | improved");
  app.add_option("--tau-min", opt.tau_min, "tau grid lower end (units 1/t)");
  app.add_option("--tau-max", opt.tau_max, "tau grid upper end (units 1/t)");
  app.add_option("--tau-points", opt.tau_points, "tau grid size");
  app.add_option("--out", opt.out, "CSV output path (one row per realization)");
  app.add_option("--threads", opt.threads, "worker threads");
  app.add_option("--qubit-cap", opt.qubit_cap, "refuse lattices above this");
  app.add_option("--dump-circuit", opt.dump_circuit_path,
                 "write the compiled gate list to this path and exit");
  app.add_option("--dump-n", opt.dump_n, "step count for --dump-circuit");
  app.add_option("--dump-fbar", opt.dump_fbar,
                 "gate fidelity for --dump-circuit over-rotations");
  CLI11_PARSE(app, argc, argv);

  hv_config* cfg = hv_config_create();
  if (!cfg) {
    std::fprintf(stderr, "error: out of memory\n");
    return 1;
  }

  if (!opt.config_path.empty()) {
    const hv_status st = hv_config_load_file(cfg, opt.config_path.c_str());
    if (st != HV_OK) {
      hv_config_destroy(cfg);
      return fail("config", st);
    }
  }
  if (apply(cfg, "lattice", opt.lattice) || apply(cfg, "t", opt.t) ||
      apply(cfg, "U", opt.U) || apply(cfg, "method", opt.method) ||
      apply(cfg, "n", opt.n) || apply(cfg, "fidelity", opt.fidelity) ||
      apply(cfg, "runs", opt.runs) || apply(cfg, "seed", opt.seed) ||
      apply(cfg, "starts", opt.starts) || apply(cfg, "tau-min", opt.tau_min) ||
      apply(cfg, "tau-max", opt.tau_max) ||
      apply(cfg, "tau-points", opt.tau_points) || apply(cfg, "out", opt.out) ||
      apply(cfg, "threads", opt.threads) ||
      apply(cfg, "qubit-cap", opt.qubit_cap)) {
    hv_config_destroy(cfg);
    return 1;
  }
  if (opt.command != "table" && opt.command != "ground-truth") {
    if (apply(cfg, "method", opt.command)) {
      hv_config_destroy(cfg);
      return 1;
    }
  }

  int rc = 0;
  if (!opt.dump_circuit_path.empty()) {
    const int n = opt.dump_n > 0 ? opt.dump_n : 1;
    const hv_status st =
        hv_dump_circuit(cfg, n, opt.dump_fbar, opt.dump_circuit_path.c_str());
    if (st != HV_OK)
      rc = fail("dump-circuit", st);
    else
      std::printf("wrote %s\n", opt.dump_circuit_path.c_str());
  } else if (opt.command == "ground-truth") {
    char* report = nullptr;
    const hv_status st = hv_ground_truth_report(cfg, &report);
    if (st != HV_OK) {
      rc = fail("ground-truth", st);
    } else {
      std::fputs(report, stdout);
      hv_string_free(report);
    }
  } else {
    char* summary = nullptr;
    const hv_status st = hv_run(cfg, &summary);
    if (st != HV_OK) {
      rc = fail(opt.command.c_str(), st);
    } else {
      std::fputs(summary, stdout);
      hv_string_free(summary);
    }
  }

  hv_config_destroy(cfg);
  return rc;
}
