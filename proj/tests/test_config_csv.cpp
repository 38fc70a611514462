// test_config_csv.cpp — config parsing and deterministic CSV output.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qbatt/channel.hpp"
#include "qbatt/config.hpp"
#include "qbatt/csv.hpp"
#include "qbatt/errors.hpp"

using namespace qbatt;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

status code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  return status::ok;
}

}  // namespace

TEST_CASE("config parses keys, comments, and blank lines") {
  const config c = config::from_string(
      "# full-line comment\n"
      "scenario = trajectory\n"
      "\n"
      "  n_atoms = 4   # inline comment\n"
      "tau=0.25\n"
      "output_path = /tmp/run.csv\n");
  CHECK(c.has("scenario"));
  CHECK(c.get_string("scenario", "") == "trajectory");
  CHECK(c.get_int("n_atoms", 0) == 4);
  CHECK(c.get_double("tau", 0) == 0.25);
  CHECK(c.get_string("output_path", "") == "/tmp/run.csv");
  CHECK_FALSE(c.has("steps"));
  CHECK(c.get_int("steps", 77) == 77);  // fallback
}

TEST_CASE("config rejects malformed input with precise codes") {
  CHECK(code_of([] { config::from_string("bogus_key = 1\n"); }) ==
        status::unknown_key);
  CHECK(code_of([] { config::from_string("tau = 1\ntau = 2\n"); }) ==
        status::invalid_argument);
  CHECK(code_of([] { config::from_string("tau =\n"); }) ==
        status::invalid_argument);
  CHECK(code_of([] { config::from_string("tau 0.5\n"); }) ==
        status::invalid_argument);
  CHECK(code_of([] { config::from_file("/nonexistent/qbatt.cfg"); }) ==
        status::io);
}

TEST_CASE("typed getters validate their values") {
  const config c = config::from_string("output_path = x\nscenario = y\n");
  config c2 = config::from_string("tau = abc\nsteps = 12x\n");
  CHECK_THROWS_AS(c2.get_double("tau", 0), error);
  CHECK_THROWS_AS(c2.get_int("steps", 0), error);
  config c3;
  c3.set("steps", "250");
  CHECK(c3.get_int("steps", 0) == 250);
  CHECK_THROWS_AS(c3.set("not_a_key", "1"), error);
  CHECK(config::known_key("scenario"));
  CHECK(config::known_key("k_tau_budget"));
  CHECK_FALSE(config::known_key("k tau budget"));
}

TEST_CASE("format_sig12 pins the numeric text format") {
  CHECK(format_sig12(1.0 / 3.0) == "3.33333333333e-01");
  CHECK(format_sig12(0.0) == "0.00000000000e+00");
  CHECK(format_sig12(-2.5) == "-2.50000000000e+00");
  CHECK(format_sig12(123456.0) == "1.23456000000e+05");
}

TEST_CASE("trajectory CSV schema is stable") {
  const auto& cols = trajectory_columns();
  REQUIRE(cols.size() == 15);
  std::string header;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) header += ',';
    header += cols[i];
  }
  CHECK(header ==
        "k,k_tau,n_bar,energy,power,ergotropy,ergotropy_power,purity,"
        "beta_re,beta_im,p0,p_top,n_bar_pred,beta_pred_re,beta_pred_im");

  step_observables r;
  r.k = 5;
  r.k_tau = 2.5;
  r.n_bar = 1.0 / 3.0;
  const std::string line = trajectory_row_csv(r);
  CHECK(line.substr(0, 2) == "5,");
  CHECK(line.find("3.33333333333e-01") != std::string::npos);
  // 15 comma-separated cells.
  CHECK(std::count(line.begin(), line.end(), ',') == 14);
}

TEST_CASE("CSV files are written deterministically") {
  const std::string path = "qbatt_test_tmp_table.csv";
  const std::vector<std::string> cols = {"a", "b"};
  const std::vector<std::vector<std::string>> rows = {{"1", "2"},
                                                      {"3", "4"}};
  write_table_csv(path, cols, rows);
  const std::string first = slurp(path);
  CHECK(first == "a,b\n1,2\n3,4\n");
  write_table_csv(path, cols, rows);
  CHECK(slurp(path) == first);  // byte-identical on rewrite
  std::remove(path.c_str());

  CHECK(code_of([&] {
          write_table_csv(path, cols, {{"only_one_cell"}});
        }) == status::invalid_argument);
  CHECK(code_of([&] {
          write_table_csv("/nonexistent_dir_qbatt/x.csv", cols, rows);
        }) == status::io);
  std::remove(path.c_str());
}

TEST_CASE("a full trajectory file round-trips its header and row count") {
  battery_spec bs;
  bs.n_levels_top = 6;
  atom_spec as;
  as.n_atoms = 2;
  as.polar_angle = 1.1;
  as.azimuthal_angle = 0.4;
  as.coherence_factor = 0.7;
  const collision_channel ch(bs, as, 0.6);
  const trajectory tr = run_trajectory(ch, make_level_state(bs, 2), 4, 2);
  const std::string path = "qbatt_test_tmp_traj.csv";
  write_trajectory_csv(tr, path);
  const std::string text = slurp(path);
  std::remove(path.c_str());
  // Header + one line per recorded row (k = 0, 2, 4), trailing newline.
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(text.rfind("k,k_tau,", 0) == 0);
}
