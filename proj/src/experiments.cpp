#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace hv {

Method parse_method(const std::string& name) {
  if (name == "vha") return Method::vha;
  if (name == "adiabatic") return Method::adiabatic;
  if (name == "frozen-transfer" || name == "frozen_transfer")
    return Method::frozen_transfer;
  throw std::invalid_argument("unknown method: " + name);
}

std::string to_string(Method method) {
  switch (method) {
    case Method::vha: return "vha";
    case Method::adiabatic: return "adiabatic";
    case Method::frozen_transfer: return "frozen-transfer";
  }
  return "?";
}

Lattice ExperimentConfig::lattice() const {
  return make_lattice(ncols, nrows, t, U);
}

int ExperimentConfig::runs_for(double fbar) const {
  if (runs > 0) return runs;
  if (fbar >= 1.0) return 1;  // noiseless runs are deterministic
  return method == Method::adiabatic ? 10000 : 100;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

void parse_lattice_dims(const std::string& value, int& ncols, int& nrows) {
  const auto x = value.find_first_of("xX");
  if (x == std::string::npos)
    throw std::invalid_argument("lattice must look like CxR, got: " + value);
  ncols = std::stoi(value.substr(0, x));
  nrows = std::stoi(value.substr(x + 1));
}

}  // namespace

void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value) {
  if (key == "lattice") {
    parse_lattice_dims(value, cfg.ncols, cfg.nrows);
  } else if (key == "t") {
    cfg.t = std::stod(value);
  } else if (key == "U") {
    cfg.U = std::stod(value);
  } else if (key == "method") {
    cfg.method = parse_method(value);
  } else if (key == "n") {
    cfg.n_values.clear();
    for (const std::string& part : split(value, ','))
      cfg.n_values.push_back(std::stoi(part));
  } else if (key == "fidelity") {
    cfg.fidelities.clear();
    for (const std::string& part : split(value, ','))
      cfg.fidelities.push_back(std::stod(part));
  } else if (key == "runs") {
    cfg.runs = std::stoi(value);
  } else if (key == "seed") {
    cfg.base_seed = std::stoull(value);
  } else if (key == "starts") {
    cfg.starts = parse_start_family(value);
  } else if (key == "tau-min") {
    cfg.tau_grid.min_tau_t = std::stod(value);
  } else if (key == "tau-max") {
    cfg.tau_grid.max_tau_t = std::stod(value);
  } else if (key == "tau-points") {
    cfg.tau_grid.points = std::stoi(value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "threads") {
    cfg.threads = std::stoi(value);
  } else if (key == "qubit-cap") {
    cfg.qubit_cap = std::stoi(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

namespace {

struct GroundTruthCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, double, double>, std::shared_ptr<const GroundTruth>> map;
};

GroundTruthCache& ground_truth_cache() {
  static GroundTruthCache cache;
  return cache;
}

struct OptimumCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, double, double, int, int>,
           std::shared_ptr<const VhaResult>> map;
};

OptimumCache& optimum_cache() {
  static OptimumCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const GroundTruth> cached_ground_truth(const Lattice& lat,
                                                       int qubit_cap) {
  auto& cache = ground_truth_cache();
  const auto key = std::make_tuple(lat.ncols, lat.nrows, lat.t, lat.U);
  std::lock_guard<std::mutex> lock(cache.mutex);
  auto it = cache.map.find(key);
  if (it != cache.map.end()) return it->second;
  auto gt = std::make_shared<const GroundTruth>(compute_ground_truth(lat, qubit_cap));
  cache.map.emplace(key, gt);
  return gt;
}

std::shared_ptr<const VhaResult> cached_noiseless_optimum(
    const Lattice& lat, int n, StartFamily family, int threads) {
  auto& cache = optimum_cache();
  const auto key = std::make_tuple(lat.ncols, lat.nrows, lat.t, lat.U, n,
                                   static_cast<int>(family));
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.map.find(key);
    if (it != cache.map.end()) return it->second;
  }
  auto gt = cached_ground_truth(lat, kDefaultQubitCap);
  Circuit circuit = compile_vha(lat, ThetaMatrix(n, {0, 0, 0, 0, 0}));
  const NoiseTable zero = sample_noise(circuit, FidelitySpec::from_fbar(1.0), 0);
  OptimizeOptions opts;
  opts.threads = threads;
  auto result =
      std::make_shared<const VhaResult>(optimize(lat, n, zero, family, *gt, opts));
  std::lock_guard<std::mutex> lock(cache.mutex);
  cache.map.emplace(key, result);
  return cache.map[key];
}

namespace {

std::string lattice_label(const Lattice& lat) {
  return std::to_string(lat.ncols) + "x" + std::to_string(lat.nrows);
}

std::string format_csv(const std::vector<RunRecord>& records) {
  std::string csv =
      "lattice,method,n,fbar,seed,start_set,tau,energy,fidelity,evaluations,"
      "converged\n";
  char line[320];
  for (const RunRecord& r : records) {
    std::snprintf(line, sizeof(line),
                  "%s,%s,%d,%.6f,%llu,%s,%.10g,%.12g,%.12g,%ld,%d\n",
                  r.lattice.c_str(), to_string(r.method).c_str(), r.n, r.fbar,
                  static_cast<unsigned long long>(r.seed), r.start_set.c_str(),
                  r.tau, r.energy, r.fidelity, r.evaluations,
                  r.converged ? 1 : 0);
    csv += line;
  }
  return csv;
}

std::string format_summary(const ExperimentConfig& cfg,
                           const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s, %dx%d, t=%g, U=%g, starts=%s\n",
                to_string(cfg.method).c_str(), cfg.ncols, cfg.nrows, cfg.t,
                cfg.U, to_string(cfg.starts).c_str());
  out << buf;
  out << "final state fidelity |<psi_g|psi_f>| in percent (mean over runs)\n";
  std::snprintf(buf, sizeof(buf), "%6s", "n\\F");
  out << buf;
  for (double f : cfg.fidelities) {
    std::snprintf(buf, sizeof(buf), " %10.3f", 100.0 * f);
    out << buf;
  }
  out << "\n";
  for (int n : cfg.n_values) {
    std::snprintf(buf, sizeof(buf), "%6d", n);
    out << buf;
    for (double f : cfg.fidelities) {
      const CellSummary* cell = nullptr;
      for (const CellSummary& c : cells)
        if (c.n == n && c.fbar == f) cell = &c;
      if (cell) {
        std::snprintf(buf, sizeof(buf), " %10.2f", 100.0 * cell->mean_fidelity);
        out << buf;
      } else {
        std::snprintf(buf, sizeof(buf), " %10s", "-");
        out << buf;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

TableResult run_table(const ExperimentConfig& cfg) {
  const Lattice lat = cfg.lattice();
  if (lat.qubits() > cfg.qubit_cap)
    throw std::domain_error("lattice needs " + std::to_string(lat.qubits()) +
                            " qubits, above the cap of " +
                            std::to_string(cfg.qubit_cap) +
                            "; refusing to run");
  auto gt = cached_ground_truth(lat, cfg.qubit_cap);
  const SparseOperator ham = build_hamiltonian(lat, cfg.qubit_cap);
  ham.diagonal();  // materialize before the workers share it

  TableResult table;
  for (int n : cfg.n_values) {
    const Circuit layout_probe = compile_vha(lat, ThetaMatrix(n, {0, 0, 0, 0, 0}));
    const std::size_t slots = layout_probe.size() / n;

    std::shared_ptr<const VhaResult> frozen_source;
    if (cfg.method == Method::frozen_transfer)
      frozen_source = cached_noiseless_optimum(lat, n, cfg.starts, cfg.threads);

    // The ramp duration is tuned once on the noiseless problem and then
    // frozen for every noisy realization.
    double frozen_tau = 0.0;
    if (cfg.method == Method::adiabatic) {
      const NoiseTable zero =
          sample_noise(layout_probe, FidelitySpec::from_fbar(1.0), 0);
      frozen_tau = optimize_tau(lat, n, zero, cfg.tau_grid, *gt).tau;
    }

    for (double fbar : cfg.fidelities) {
      const FidelitySpec spec = FidelitySpec::from_fbar(fbar);
      const int cell_runs = cfg.runs_for(fbar);
      std::vector<RunRecord> records(cell_runs);

      // Independent realizations; one start-level (single realization) or
      // realization-level worker pool, never both.
      const bool parallel_inside = cell_runs == 1;
      parallel_for_index(
          static_cast<std::size_t>(cell_runs),
          parallel_inside ? 1 : cfg.threads, [&](std::size_t run) {
            const std::uint64_t seed = cfg.base_seed + run;
            const NoiseTable noise = sample_noise(slots, n, spec, seed);
            RunRecord rec;
            rec.lattice = lattice_label(lat);
            rec.method = cfg.method;
            rec.n = n;
            rec.fbar = fbar;
            rec.seed = seed;
            switch (cfg.method) {
              case Method::vha: {
                OptimizeOptions opts;
                opts.threads = parallel_inside ? cfg.threads : 1;
                VhaResult r = optimize(lat, n, noise, cfg.starts, *gt, opts);
                rec.start_set = r.start_set_id;
                rec.energy = r.final_energy;
                rec.fidelity = r.final_fidelity;
                rec.evaluations = r.evaluations;
                rec.converged = r.converged;
                break;
              }
              case Method::frozen_transfer: {
                rec.start_set = "frozen:" + frozen_source->start_set_id;
                const StateVector final_state = vha_final_state(
                    lat, frozen_source->best_theta, noise, gt->psi0);
                rec.fidelity = state_fidelity(gt->psig, final_state);
                rec.energy = ham.expectation(final_state);
                rec.evaluations = 1;
                rec.converged = true;
                break;
              }
              case Method::adiabatic: {
                const AdiabaticResult r =
                    evaluate_ramp(lat, n, frozen_tau, noise, *gt);
                rec.tau = r.tau;
                rec.start_set = "ramp";
                rec.energy = r.energy;
                rec.fidelity = r.fidelity;
                rec.evaluations = 1;
                rec.converged = true;
                break;
              }
            }
            records[run] = std::move(rec);
          });

      CellSummary cell;
      cell.n = n;
      cell.fbar = fbar;
      cell.runs = cell_runs;
      double sum = 0.0, sum_sq = 0.0, esum = 0.0;
      for (const RunRecord& r : records) {
        sum += r.fidelity;
        sum_sq += r.fidelity * r.fidelity;
        esum += r.energy;
      }
      cell.mean_fidelity = sum / cell_runs;
      cell.mean_energy = esum / cell_runs;
      cell.std_fidelity =
          cell_runs > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / cell_runs) /
                                                      (cell_runs - 1)))
                        : 0.0;
      table.cells.push_back(cell);
      table.records.insert(table.records.end(), records.begin(), records.end());
    }
  }

  table.csv = format_csv(table.records);
  table.summary = format_summary(cfg, table.cells);
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CSV to " + cfg.out);
    out << table.csv;
  }
  return table;
}

std::string ground_truth_report(const ExperimentConfig& cfg) {
  const Lattice lat = cfg.lattice();
  if (lat.qubits() > cfg.qubit_cap)
    throw std::domain_error("lattice needs " + std::to_string(lat.qubits()) +
                            " qubits, above the cap of " +
                            std::to_string(cfg.qubit_cap) +
                            "; refusing to run");
  auto gt = cached_ground_truth(lat, cfg.qubit_cap);
  const GateCounts counts = gate_counts_per_step(lat);
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "lattice              : %dx%d (t=%g, U=%g)\n",
                lat.ncols, lat.nrows, lat.t, lat.U);
  out << buf;
  std::snprintf(buf, sizeof(buf), "Hilbert dimension    : %zu\n", lat.dimension());
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "gates per step       : %d (%d t, %d CZ, %d on-site)\n",
                counts.total(), counts.t_gates, counts.cz_gates,
                counts.onsite_gates);
  out << buf;
  std::snprintf(buf, sizeof(buf), "E_g                  : %.6f t\n",
                gt->eg / lat.t);
  out << buf;
  std::snprintf(buf, sizeof(buf), "<psi_0|H|psi_0>      : %.6f t\n",
                gt->e0_expectation / lat.t);
  out << buf;
  std::snprintf(buf, sizeof(buf), "|<psi_g|psi_0>|      : %.2f %%\n",
                100.0 * gt->initial_fidelity);
  out << buf;
  return out.str();
}

}  // namespace hv
