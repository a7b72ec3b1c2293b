// Exercises the shared-library C API surface.

#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "hubbardvha.h"

static int failures = 0;

#define EXPECT(cond)                                                        \
  do {                                                                      \
    if (!(cond)) {                                                          \
      std::fprintf(stderr, "FAILED %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                           \
    }                                                                       \
  } while (0)

int main() {
  EXPECT(std::strcmp(hv_status_message(HV_OK), "ok") == 0);
  EXPECT(hv_status_message(HV_ERR_INVALID_ARGUMENT) != nullptr);
  EXPECT(hv_version() != nullptr);

  // Null-argument handling.
  EXPECT(hv_config_set(nullptr, "t", "1") == HV_ERR_INVALID_ARGUMENT);
  EXPECT(hv_ground_truth(nullptr, nullptr, nullptr, nullptr) ==
         HV_ERR_INVALID_ARGUMENT);

  hv_config* cfg = hv_config_create();
  EXPECT(cfg != nullptr);

  EXPECT(hv_config_set(cfg, "lattice", "2x2") == HV_OK);
  EXPECT(hv_config_set(cfg, "t", "1.0") == HV_OK);
  EXPECT(hv_config_set(cfg, "U", "2.0") == HV_OK);
  EXPECT(hv_config_set(cfg, "bogus-key", "1") == HV_ERR_INVALID_ARGUMENT);
  EXPECT(hv_last_error()[0] != '\0');

  // Gate counts for the three published lattices.
  int total = 0, t_gates = 0, cz = 0, onsite = 0;
  EXPECT(hv_gate_counts(cfg, &total, &t_gates, &cz, &onsite) == HV_OK);
  EXPECT(total == 20);
  EXPECT(t_gates == 8);
  EXPECT(cz == 8);
  EXPECT(onsite == 4);
  EXPECT(hv_config_set(cfg, "lattice", "3x2") == HV_OK);
  EXPECT(hv_gate_counts(cfg, &total, nullptr, nullptr, nullptr) == HV_OK);
  EXPECT(total == 44);
  EXPECT(hv_config_set(cfg, "lattice", "3x3") == HV_OK);
  EXPECT(hv_gate_counts(cfg, &total, nullptr, nullptr, nullptr) == HV_OK);
  EXPECT(total == 81);

  // Ground truth values: 2x2 at U = 0 has E_g = -4t; at U = 2t the known
  // initial overlap is 98.87 %.
  EXPECT(hv_config_set(cfg, "lattice", "2x2") == HV_OK);
  EXPECT(hv_config_set(cfg, "U", "0.0") == HV_OK);
  double eg = 0.0, e0 = 0.0, fid = 0.0;
  EXPECT(hv_ground_truth(cfg, &eg, &e0, &fid) == HV_OK);
  EXPECT(std::abs(eg + 4.0) < 1e-8);

  EXPECT(hv_config_set(cfg, "U", "2.0") == HV_OK);
  EXPECT(hv_ground_truth(cfg, &eg, &e0, &fid) == HV_OK);
  EXPECT(std::abs(fid - 0.9887) < 5e-4);
  EXPECT(eg <= e0);

  char* report = nullptr;
  EXPECT(hv_ground_truth_report(cfg, &report) == HV_OK);
  EXPECT(report != nullptr);
  EXPECT(std::string(report).find("98.87") != std::string::npos);
  hv_string_free(report);

  // Oversized lattices are refused, not attempted.
  EXPECT(hv_config_set(cfg, "lattice", "4x3") == HV_OK);
  EXPECT(hv_ground_truth(cfg, &eg, &e0, &fid) == HV_ERR_UNSUPPORTED_SIZE);
  EXPECT(hv_config_set(cfg, "lattice", "2x2") == HV_OK);

  // A small noiseless vha run through the full pipeline.
  EXPECT(hv_config_set(cfg, "method", "vha") == HV_OK);
  EXPECT(hv_config_set(cfg, "n", "2") == HV_OK);
  EXPECT(hv_config_set(cfg, "fidelity", "1.0") == HV_OK);
  EXPECT(hv_config_set(cfg, "threads", "2") == HV_OK);
  EXPECT(hv_config_set(cfg, "out", "capi_rows.tmp.csv") == HV_OK);
  char* summary = nullptr;
  EXPECT(hv_run(cfg, &summary) == HV_OK);
  EXPECT(summary != nullptr);
  EXPECT(std::string(summary).find("99.68") != std::string::npos);
  hv_string_free(summary);
  {
    std::ifstream csv("capi_rows.tmp.csv");
    EXPECT(csv.good());
    std::string header;
    std::getline(csv, header);
    EXPECT(header.find("lattice,method,n,fbar,seed") == 0);
  }
  std::remove("capi_rows.tmp.csv");

  // Config file loading via the API.
  {
    std::ofstream file("capi_cfg.tmp");
    file << "lattice = 2x2\nn = 2\nfidelity = 1.0\nmethod = adiabatic\n";
  }
  EXPECT(hv_config_load_file(cfg, "capi_cfg.tmp") == HV_OK);
  EXPECT(hv_config_load_file(cfg, "no_such_file.cfg") == HV_ERR_IO);
  std::remove("capi_cfg.tmp");

  // Circuit dump: 2 steps x 20 gates on the 2x2 lattice.
  EXPECT(hv_dump_circuit(cfg, 2, 0.999, "capi_gates.tmp") == HV_OK);
  {
    std::ifstream gates("capi_gates.tmp");
    EXPECT(gates.good());
    int lines = 0;
    std::string line;
    bool saw_nonzero_delta = false;
    while (std::getline(gates, line)) {
      ++lines;
      const auto last_space = line.find_last_of(' ');
      if (std::stod(line.substr(last_space + 1)) != 0.0) saw_nonzero_delta = true;
    }
    EXPECT(lines == 40);
    EXPECT(saw_nonzero_delta);
  }
  std::remove("capi_gates.tmp");

  hv_config_destroy(cfg);
  hv_config_destroy(nullptr);  // must be a no-op

  if (failures == 0) std::printf("all C API checks passed\n");
  return failures == 0 ? 0 : 1;
}
