#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "experiments.hpp"
#include "noise.hpp"

using namespace hv;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.ncols = 2;
  cfg.nrows = 2;
  cfg.method = Method::vha;
  cfg.n_values = {2};
  cfg.fidelities = {1.0};
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST_CASE("config file parsing with comments and overrides") {
  const std::string path = "hv_test_config.tmp";
  {
    std::ofstream out(path);
    out << "# experiment setup\n";
    out << "lattice = 3x2\n";
    out << "t = 1.5\n";
    out << "U = 3.0   # U = 2t\n";
    out << "n = 4, 6\n";
    out << "fidelity = 0.999, 0.995\n";
    out << "starts = improved\n";
    out << "seed = 777\n";
  }
  ExperimentConfig cfg = load_config_file(path);
  std::remove(path.c_str());

  CHECK(cfg.ncols == 3);
  CHECK(cfg.nrows == 2);
  CHECK(cfg.t == 1.5);
  CHECK(cfg.U == 3.0);
  CHECK(cfg.n_values == std::vector<int>{4, 6});
  CHECK(cfg.fidelities == std::vector<double>{0.999, 0.995});
  CHECK(cfg.starts == StartFamily::improved);
  CHECK(cfg.base_seed == 777);

  apply_config_line(cfg, "lattice", "2x2");
  CHECK(cfg.ncols == 2);
  CHECK_THROWS_AS(apply_config_line(cfg, "bogus", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_line(cfg, "lattice", "22"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_line(cfg, "method", "annealing"), std::invalid_argument);
}

TEST_CASE("default run counts per method and fidelity") {
  ExperimentConfig cfg = small_config();
  CHECK(cfg.runs_for(1.0) == 1);
  CHECK(cfg.runs_for(0.999) == 100);
  cfg.method = Method::adiabatic;
  CHECK(cfg.runs_for(0.999) == 10000);
  cfg.runs = 17;
  CHECK(cfg.runs_for(0.999) == 17);
  CHECK(cfg.runs_for(1.0) == 17);
}

TEST_CASE("run_table refuses lattices above the qubit cap") {
  ExperimentConfig cfg = small_config();
  cfg.ncols = 4;
  cfg.nrows = 3;
  CHECK_THROWS_AS(run_table(cfg), std::domain_error);
}

TEST_CASE("run_table produces one CSV row per realization and exact means") {
  ExperimentConfig cfg = small_config();
  cfg.method = Method::frozen_transfer;
  cfg.n_values = {2};
  cfg.fidelities = {0.999};
  cfg.runs = 8;
  const TableResult table = run_table(cfg);

  REQUIRE(table.records.size() == 8);
  REQUIRE(table.cells.size() == 1);

  double sum = 0.0;
  for (const RunRecord& r : table.records) sum += r.fidelity;
  CHECK(table.cells[0].mean_fidelity == doctest::Approx(sum / 8).epsilon(1e-15));

  // Seeds are consecutive from the base seed.
  for (std::size_t i = 0; i < table.records.size(); ++i)
    CHECK(table.records[i].seed == cfg.base_seed + i);

  // Header plus one line per record.
  std::istringstream csv(table.csv);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == 9);
}

TEST_CASE("identical configs yield byte-identical CSV") {
  ExperimentConfig cfg = small_config();
  cfg.method = Method::frozen_transfer;
  cfg.fidelities = {0.999};
  cfg.runs = 5;
  const TableResult a = run_table(cfg);
  const TableResult b = run_table(cfg);
  CHECK(a.csv == b.csv);
}

TEST_CASE("noise tables are shared between vha and frozen-transfer at equal seeds") {
  // Both methods draw their per-realization table from (slots, steps,
  // sigma, seed) only, so paired cells see identical errors.
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  const Circuit circuit = compile_vha(lat, ThetaMatrix(3, {0, 0, 0, 0, 0}));
  const FidelitySpec spec = FidelitySpec::from_fbar(0.999);
  const NoiseTable for_vha = sample_noise(circuit, spec, 4711);
  const NoiseTable for_frozen = sample_noise(circuit.size() / 3, 3, spec, 4711);
  CHECK(for_vha.deltas == for_frozen.deltas);
}

TEST_CASE("adiabatic cells freeze tau from the noiseless scan") {
  ExperimentConfig cfg = small_config();
  cfg.method = Method::adiabatic;
  cfg.n_values = {5};
  cfg.fidelities = {0.999};
  cfg.runs = 6;
  const TableResult table = run_table(cfg);
  REQUIRE(table.records.size() == 6);
  for (const RunRecord& r : table.records) {
    CHECK(r.tau == table.records[0].tau);  // shared noiseless maximizer
    CHECK(r.tau > 0.0);
  }
}

TEST_CASE("zero-noise vha cell hits the known 2x2 fidelities") {
  ExperimentConfig cfg = small_config();
  cfg.n_values = {2, 3};
  const TableResult table = run_table(cfg);
  REQUIRE(table.cells.size() == 2);
  CHECK(100.0 * table.cells[0].mean_fidelity == doctest::Approx(99.68).epsilon(2e-3));
  CHECK(100.0 * table.cells[1].mean_fidelity >= 99.99);
  for (const RunRecord& r : table.records) CHECK(r.converged);
}

TEST_CASE("summary table formats percentages") {
  ExperimentConfig cfg = small_config();
  const TableResult table = run_table(cfg);
  CHECK(table.summary.find("vha") != std::string::npos);
  CHECK(table.summary.find("99.68") != std::string::npos);
}

TEST_CASE("ground truth report carries the headline numbers") {
  ExperimentConfig cfg = small_config();
  const std::string report = ground_truth_report(cfg);
  CHECK(report.find("2x2") != std::string::npos);
  CHECK(report.find("20 (8 t, 8 CZ, 4 on-site)") != std::string::npos);
  CHECK(report.find("98.87") != std::string::npos);
  CHECK(report.find("256") != std::string::npos);
}

TEST_CASE("CSV is written to the configured path") {
  ExperimentConfig cfg = small_config();
  cfg.out = "hv_test_out.tmp.csv";
  const TableResult table = run_table(cfg);
  std::ifstream in(cfg.out, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == table.csv);
  in.close();
  std::remove(cfg.out.c_str());
}
