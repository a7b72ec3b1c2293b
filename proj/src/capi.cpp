#define HV_API __attribute__((visibility("default")))

#include "hubbardvha.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <stdexcept>
#include <string>

#include "circuit.hpp"
#include "experiments.hpp"
#include "noise.hpp"

struct hv_config {
  hv::ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
hv_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return HV_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return HV_ERR_UNSUPPORTED_SIZE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    const std::string what = e.what();
    if (what.find("converge") != std::string::npos) return HV_ERR_NO_CONVERGENCE;
    if (what.find("cannot open") != std::string::npos ||
        what.find("cannot write") != std::string::npos)
      return HV_ERR_IO;
    return HV_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

HV_API const char* hv_status_message(hv_status status) {
  switch (status) {
    case HV_OK: return "ok";
    case HV_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HV_ERR_UNSUPPORTED_SIZE: return "problem size unsupported";
    case HV_ERR_NO_CONVERGENCE: return "iteration did not converge";
    case HV_ERR_IO: return "i/o error";
    case HV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

HV_API const char* hv_version(void) { return "1.0.0"; }

HV_API const char* hv_last_error(void) { return g_last_error.c_str(); }

HV_API void hv_string_free(char* s) { std::free(s); }

HV_API hv_config* hv_config_create(void) { return new (std::nothrow) hv_config; }

HV_API void hv_config_destroy(hv_config* cfg) { delete cfg; }

HV_API hv_status hv_config_set(hv_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) {
    g_last_error = "null argument";
    return HV_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    hv::apply_config_line(cfg->cfg, key, value);
    return HV_OK;
  });
}

HV_API hv_status hv_config_load_file(hv_config* cfg, const char* path) {
  if (!cfg || !path) {
    g_last_error = "null argument";
    return HV_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    cfg->cfg = hv::load_config_file(path);
    return HV_OK;
  });
}

HV_API hv_status hv_ground_truth(const hv_config* cfg, double* eg, double* e0,
                          double* initial_fidelity) {
  if (!cfg) {
    g_last_error = "null config";
    return HV_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const hv::Lattice lat = cfg->cfg.lattice();
    if (lat.qubits() > cfg->cfg.qubit_cap)
      throw std::domain_error("lattice exceeds the qubit cap");
    auto gt = hv::cached_ground_truth(lat, cfg->cfg.qubit_cap);
    if (eg) *eg = gt->eg;
    if (e0) *e0 = gt->e0_expectation;
    if (initial_fidelity) *initial_fidelity = gt->initial_fidelity;
    return HV_OK;
  });
}

HV_API hv_status hv_ground_truth_report(const hv_config* cfg, char** report) {
  if (!cfg || !report) {
    g_last_error = "null argument";
    return HV_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *report = dup_string(hv::ground_truth_report(cfg->cfg));
    return *report ? HV_OK : HV_ERR_INTERNAL;
  });
}

HV_API hv_status hv_gate_counts(const hv_config* cfg, int* total, int* t_gates,
                         int* cz_gates, int* onsite_gates) {
  if (!cfg) {
    g_last_error = "null config";
    return HV_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const hv::GateCounts counts = hv::gate_counts_per_step(cfg->cfg.lattice());
    if (total) *total = counts.total();
    if (t_gates) *t_gates = counts.t_gates;
    if (cz_gates) *cz_gates = counts.cz_gates;
    if (onsite_gates) *onsite_gates = counts.onsite_gates;
    return HV_OK;
  });
}

HV_API hv_status hv_run(const hv_config* cfg, char** summary) {
  if (!cfg) {
    g_last_error = "null config";
    return HV_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const hv::TableResult table = hv::run_table(cfg->cfg);
    if (summary) {
      *summary = dup_string(table.summary);
      if (!*summary) return HV_ERR_INTERNAL;
    }
    return HV_OK;
  });
}

HV_API hv_status hv_dump_circuit(const hv_config* cfg, int n, double fbar,
                          const char* path) {
  if (!cfg || !path) {
    g_last_error = "null argument";
    return HV_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const hv::Lattice lat = cfg->cfg.lattice();
    if (lat.qubits() > cfg->cfg.qubit_cap)
      throw std::domain_error("lattice exceeds the qubit cap");
    hv::Circuit circuit =
        hv::compile_vha(lat, hv::ThetaMatrix(n, {0, 0, 0, 0, 0}));
    const hv::NoiseTable noise = hv::sample_noise(
        circuit, hv::FidelitySpec::from_fbar(fbar), cfg->cfg.base_seed);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(std::string("cannot write ") + path);
    out << hv::dump_circuit(circuit, noise.deltas);
    return HV_OK;
  });
}

}  // extern "C"
