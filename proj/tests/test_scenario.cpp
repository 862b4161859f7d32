#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>
#include <sstream>
#include <system_error>

#include "doctest.h"
#include "djcm/error.hpp"
#include "djcm/scenario.hpp"

using namespace djcm;

namespace {

Scenario short_grid(Scenario s, double t_max, int points) {
  s.grid = TimeGrid(t_max, points);
  return s;
}

std::string csv_text(const ResultTable& t) {
  std::ostringstream out;
  emit_csv(t, out);
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

Scenario config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

TEST_CASE("all figure presets resolve") {
  const std::vector<std::string> ids = preset_ids();
  REQUIRE(ids.size() == 25);
  for (int i = 1; i <= 25; ++i) {
    const std::string id = "fig" + std::to_string(i);
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    const Scenario s = preset(id);
    CHECK(s.id == id);
    CHECK_NOTHROW(s.validate());
    CHECK_FALSE(preset_summary(id).empty());
    CHECK(s.field_a.coherent_mean == 0.5);
    CHECK(s.grid.t_max() == 25.0);
    CHECK(s.grid.points() == 1001);
  }
  CHECK_THROWS_AS(preset("fig26"), ConfigError);
  CHECK_THROWS_AS(preset("figure1"), ConfigError);
}

TEST_CASE("preset parameters") {
  const Scenario f1 = preset("fig1");
  CHECK(f1.atom.kind == AtomKind::Bell);
  CHECK(*f1.atom.theta == doctest::Approx(std::numbers::pi / 4));
  CHECK(f1.field_a.kind == FieldKind::SqueezedCoherent);
  CHECK(f1.model.variant == Variant::Bare);
  CHECK(f1.sweep.name == "n_s");
  CHECK(f1.sweep.values == std::vector<double>{0.0, 0.1, 0.3, 0.5});

  const Scenario f8 = preset("fig8");
  CHECK(f8.atom.kind == AtomKind::Werner);
  CHECK(*f8.atom.lambda == 0.75);
  CHECK(f8.field_a.kind == FieldKind::GlauberLachs);
  CHECK(f8.sweep.name == "n_th");
  CHECK(f8.sweep.values == std::vector<double>{0.0, 0.1, 0.3, 0.5});
  CHECK(f8.model.variant == Variant::Bare);

  const Scenario f15 = preset("fig15");
  CHECK(f15.atom.kind == AtomKind::Bell);
  CHECK(f15.field_a.kind == FieldKind::GlauberLachs);
  CHECK(*f15.field_a.thermal_mean == 0.1);
  CHECK(f15.model.variant == Variant::Ising);
  CHECK(f15.sweep.name == "J_z");
  CHECK(f15.sweep.values == std::vector<double>{0.1, 0.3, 0.7, 1.0});

  for (const char* id : {"fig5", "fig10"}) {
    const Scenario s = preset(id);
    CHECK(s.sweep.name == "lambda");
    REQUIRE(s.sweep.values.size() == 21);
    CHECK(s.sweep.values.front() == 0.0);
    CHECK(s.sweep.values.back() == 1.0);
  }
  for (const char* id : {"fig14", "fig17"}) {
    const Scenario s = preset(id);
    CHECK(*s.atom.lambda == 0.25);
    CHECK(s.sweep.name == "J_z");
    CHECK(s.sweep.values.size() == 21);
  }
  CHECK(preset("fig18").sweep.values == std::vector<double>{2.0, 5.0, 10.0});
  CHECK(preset("fig22").sweep.values == std::vector<double>{0.0, 0.2, 0.5, 1.0});
  CHECK(preset("fig22").model.omega == 1.0);
}

TEST_CASE("sweep values are applied to both fields") {
  const Scenario s = preset("fig6").with_sweep_value(0.3);
  CHECK(*s.field_a.thermal_mean == 0.3);
  CHECK(*s.field_b.thermal_mean == 0.3);
  CHECK(s.sweep.name == "none");
  CHECK(*preset("fig11").with_sweep_value(0.7).model.j_z == 0.7);
}

TEST_CASE("mismatched sweeps are rejected") {
  Scenario s = preset("fig1");
  s.sweep = {"n_th", {0.1}};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.sweep = {"J_z", {0.1}};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.sweep = {"lambda", {0.5}};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.sweep = {"bogus", {0.5}};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.sweep = {"n_s", {}};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.sweep = {"n_s", {-0.1}};
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("recommended cutoff bounds the field tails") {
  for (const std::string& id : preset_ids()) {
    const Scenario s = preset(id);
    const int n = recommended_cutoff(s);
    CHECK(n >= kMinCutoff);
    bool tight = n == kMinCutoff;
    for (double v : s.sweep.values) {
      const Scenario one = s.with_sweep_value(v);
      CHECK(photon_tail(one.field_a, n - 3) <= 2.5e-7);
      CHECK(photon_tail(one.field_a, n) <= 1e-8);
      tight = tight || photon_tail(one.field_a, n - 4) > 2.5e-7 || photon_tail(one.field_a, n - 1) > 1e-8;
    }
    CHECK(tight);
  }
  Scenario fixed = preset("fig1");
  fixed.cutoff = 20;
  CHECK(resolved_cutoff(fixed) == 20);
}

TEST_CASE("every preset evolves without leakage over the default grid") {
  for (const std::string& id : preset_ids()) {
    const Scenario s = preset(id);
    const CompositeSpace space(resolved_cutoff(s));
    for (double v : s.sweep.values) {
      const Scenario one = s.with_sweep_value(v);
      const PreparedState initial = assemble_initial(one.atom, one.field_a, one.field_b, space);
      const Trajectory traj = trajectory(initial, build(one.model, space), one.grid);
      CHECK_MESSAGE(traj.max_leakage() < kLeakageWarn, id << " at " << v);
      CHECK(traj.warnings().empty());
      CHECK(*std::max_element(traj.trace_error().begin(), traj.trace_error().end()) < 1e-9);
    }
  }
}

TEST_CASE("initial rows of a run") {
  const ResultTable t = run(short_grid(preset("fig1"), 25.0, 6));
  CHECK(t.sweep_name == "n_s");
  CHECK(t.rows.size() == 4 * 6);
  CHECK(t.warnings.empty());
  for (const ResultRow& r : t.rows) {
    if (r.gt != 0.0) continue;
    CHECK(r.values.concurrence_AB == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.values.negativity_ab < 1e-12);
  }
}

TEST_CASE("Werner sweep starts at the Wootters value") {
  const ResultTable t = run(short_grid(preset("fig5"), 1.0, 2));
  int checked = 0;
  for (const ResultRow& r : t.rows) {
    if (r.gt != 0.0) continue;
    CHECK(std::abs(r.values.concurrence_AB - std::max(0.0, (3 * r.sweep_value - 1) / 2)) < 1e-12);
    ++checked;
  }
  CHECK(checked == 21);
}

TEST_CASE("halving the grid gives a subset of the rows") {
  const Scenario base = preset("fig13");
  const std::vector<std::string> fine = lines_of(csv_text(run(short_grid(base, 10.0, 21))));
  const std::vector<std::string> coarse = lines_of(csv_text(run(short_grid(base, 10.0, 11))));
  const std::set<std::string> all(fine.begin(), fine.end());
  CHECK(coarse.size() < fine.size());
  for (const std::string& line : coarse) CHECK(all.count(line) == 1);
}

TEST_CASE("identical scenarios give identical CSV") {
  const Scenario s = short_grid(preset("fig16"), 8.0, 9);
  CHECK(csv_text(run(s)) == csv_text(run(s)));
}

TEST_CASE("full fig1 table has one row per sweep value and time") {
  const ResultTable t = run(preset("fig1"));
  CHECK(t.rows.size() == 4 * 1001);
  CHECK(lines_of(csv_text(t)).size() == 4 * 1001 + 1);
}

TEST_CASE("csv layout") {
  ResultTable empty;
  CHECK(csv_text(empty) == std::string(kCsvHeader) + "\n");

  ResultTable t;
  t.sweep_name = "J_z";
  t.rows.push_back({2.0, 0.7, {0.1, 0.2, 0.3, 0.4}, 1e-15, 0.0});
  t.rows.push_back({1.0, 0.7, {0.5, 0.6, 0.7, 0.8}, 0.0, 2e-9});
  t.rows.push_back({0.0, 0.1, {1.0 / 3.0, 0.0, 0.0, 0.0}, 0.0, 0.0});
  const std::vector<std::string> lines = lines_of(csv_text(t));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "gt,sweep_name,sweep_value,C_AB,N_Aa,N_Ab,N_ab,trace_err,leakage");
  CHECK(lines[1] == "0,J_z,0.1,0.333333333333,0,0,0,0,0");
  CHECK(lines[2] == "1,J_z,0.7,0.5,0.6,0.7,0.8,0,2e-09");
  CHECK(lines[3] == "2,J_z,0.7,0.1,0.2,0.3,0.4,1e-15,0");
}

TEST_CASE("csv round trip") {
  const ResultTable t = run(short_grid(preset("fig12"), 20.0, 7));
  const std::string text = csv_text(t);
  std::istringstream in(text);
  const ResultTable back = parse_csv(in);
  CHECK(back.sweep_name == "J_z");
  CHECK(back.rows.size() == t.rows.size());
  CHECK(csv_text(back) == text);

  const auto path = std::filesystem::temp_directory_path() / "djcm_roundtrip.csv";
  write_csv(t, path.string());
  CHECK(csv_text(read_csv(path.string())) == text);
  std::filesystem::remove(path);

  std::istringstream bad("gt,C_AB\n");
  CHECK_THROWS_AS(parse_csv(bad), ConfigError);
  CHECK_THROWS_AS(write_csv(t, "/nonexistent-dir/out.csv"), std::system_error);
  CHECK_THROWS_AS(read_csv("/nonexistent-dir/in.csv"), std::system_error);
}

TEST_CASE("run errors name the sweep value") {
  Scenario s = short_grid(preset("fig1"), 1.0, 2);
  s.cutoff = 16;
  try {
    run(s);
    FAIL("expected a cutoff error");
  } catch (const CutoffTooSmall& e) {
    CHECK(std::string(e.what()).find("n_s=0.3") != std::string::npos);
  }
}

TEST_CASE("config file with every key kind") {
  const Scenario s = config(R"(
# Ising run
atom = werner
lambda = 0.6
field = gl
n_c = 0.4
n_th = 0.2   # thermal part
model = ising
J_z = 0.3
t_max = 12
points = 13
cutoff = 18
sweep = J_z
sweep_values = 0.1, 0.5
)");
  CHECK(s.id == "custom");
  CHECK(*s.atom.lambda == 0.6);
  CHECK(s.field_b.kind == FieldKind::GlauberLachs);
  CHECK(s.field_b.coherent_mean == 0.4);
  CHECK(*s.field_b.thermal_mean == 0.2);
  CHECK(*s.model.j_z == 0.3);
  CHECK(s.grid.t_max() == 12.0);
  CHECK(s.grid.points() == 13);
  CHECK(*s.cutoff == 18);
  CHECK(s.sweep.values == std::vector<double>{0.1, 0.5});
}

TEST_CASE("config overrides a preset") {
  const Scenario s = config("preset = fig15\npoints = 101\ncutoff = auto\n");
  CHECK(s.id == "fig15");
  CHECK(s.grid.points() == 101);
  CHECK(s.model.variant == Variant::Ising);
  CHECK(s.sweep.values.size() == 4);
  CHECK_FALSE(s.cutoff.has_value());

  const Scenario k = config("preset = fig1\nmodel = kerr\nk = 0.5\nsweep = none\n");
  CHECK(k.model.variant == Variant::Kerr);
  CHECK(*k.model.kerr == 0.5);
  CHECK(k.sweep.name == "none");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(config("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(config("n_c = 0.5\nn_c = 0.6\n"), ConfigError);
  CHECK_THROWS_AS(config("just a line\n"), ConfigError);
  CHECK_THROWS_AS(config("atom = bell\nlambda = 0.3\n"), ConfigError);
  CHECK_THROWS_AS(config("field = scs\nn_th = 0.3\n"), ConfigError);
  CHECK_THROWS_AS(config("model = bare\nJ_z = 0.3\n"), ConfigError);
  CHECK_THROWS_AS(config("model = ising\n"), ConfigError);
  CHECK_THROWS_AS(config("model = quantum\n"), ConfigError);
  CHECK_THROWS_AS(config("sweep = n_s\n"), ConfigError);
  CHECK_THROWS_AS(config("sweep_values = 1, 2\n"), ConfigError);
  CHECK_THROWS_AS(config("n_c = abc\n"), ConfigError);
  CHECK_THROWS_AS(config("points = 1\n"), ConfigError);
  CHECK_THROWS_AS(config("points = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(config("lambda = 1.5\natom = werner\n"), ConfigError);
  CHECK_THROWS_AS(config("cutoff = 1\n"), ConfigError);
  CHECK_THROWS_AS(config("preset = fig99\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent-dir/x.cfg"), ConfigError);
}
