#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "mhd/config.hpp"
#include "mhd/diagnostics.hpp"
#include "mhd/error.hpp"
#include "mhd/snapshot.hpp"
#include "mhd/spectral.hpp"
#include "mhd/timeseries.hpp"

using namespace mhd;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("mhd_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

ScalarField random_field(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  ScalarField f = ScalarField::physical(g);
  for (double& v : f.values()) v = d(rng);
  return f;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

ConfigError config_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for: " << text;
  return ConfigError("none");
}

}  // namespace

TEST(Config, EmptyTextGivesDefaults) {
  const ExperimentConfig c = parse_config_text("");
  EXPECT_DOUBLE_EQ(c.L, 8 * kPi);
  EXPECT_EQ(c.n, 128);
  EXPECT_EQ(c.data.M, 1.0);
  EXPECT_EQ(c.data.rho, 1e-3);
  EXPECT_EQ(c.data.N, 8.0);
  EXPECT_EQ(c.data.alpha, 2.0);
  EXPECT_EQ(c.data.T, 0.1);
  EXPECT_EQ(c.data.eta, 1.0);
  EXPECT_EQ(c.r, 3);
  EXPECT_EQ(c.mode, Mode::reconnection);
}

TEST(Config, EmptyFileGivesDefaults) {
  TempDir dir;
  write_bytes(dir / "empty.cfg", "");
  EXPECT_EQ(parse_config(dir / "empty.cfg").n, 128);
  EXPECT_THROW(parse_config(dir / "missing.cfg"), ConfigError);
}

TEST(Config, ParsesEveryCanonicalKey) {
  const ExperimentConfig c = parse_config_text(
      "# comment\n"
      "grid.L = 4pi\n"
      "grid.n = 64\n"
      "data.M = 2\n"
      "data.rho = 1e-4\n"
      "data.N = 16\n"
      "data.alpha = 2.5\n"
      "data.T = 0.05\n"
      "data.eta = 0.5\n"
      "solver.dt = 1e-3\n"
      "solver.cadence = 0.01\n"
      "census.radius = 1.5\n"
      "mode = global-bounds\n"
      "out_dir = \"results dir\"\n");
  EXPECT_DOUBLE_EQ(c.L, 4 * kPi);
  EXPECT_EQ(c.n, 64);
  EXPECT_EQ(c.data.M, 2.0);
  EXPECT_EQ(c.data.rho, 1e-4);
  EXPECT_EQ(c.data.N, 16.0);
  EXPECT_EQ(c.data.alpha, 2.5);
  EXPECT_EQ(c.data.T, 0.05);
  EXPECT_EQ(c.data.eta, 0.5);
  EXPECT_EQ(c.dt, 1e-3);
  EXPECT_EQ(c.cadence, 0.01);
  EXPECT_EQ(c.census_radius, 1.5);
  EXPECT_EQ(c.mode, Mode::global_bounds);
  EXPECT_EQ(c.out_dir, "results dir");
}

TEST(Config, FormatRoundTrips) {
  const ExperimentConfig a = parse_config_text("grid.L = 4pi\ndata.N = 16\nsolver.dt = 2e-3\nmode = lemma-checks\n");
  const ExperimentConfig b = parse_config_text(format_config(a));
  EXPECT_EQ(a.L, b.L);
  EXPECT_EQ(a.data.N, b.data.N);
  EXPECT_EQ(a.dt, b.dt);
  EXPECT_EQ(a.mode, b.mode);
  EXPECT_EQ(format_config(a), format_config(b));
}

TEST(Config, FractionalFrequencyOnCommensurateBox) {
  // 7.5 * 8pi / 2pi = 30 is an integer; alpha = 1.5 keeps N >= 4 alpha.
  const ExperimentConfig c = parse_config_text("grid.L = 8pi\ndata.N = 7.5\ndata.alpha = 1.5\n");
  EXPECT_EQ(c.data.N, 7.5);
  const ConfigError e = config_error("grid.L = 8pi\ndata.N = 7.5\n");
  EXPECT_NE(std::string(e.what()).find("N ≥ 4α"), std::string::npos) << e.what();
}

TEST(Config, RejectsViolatedRules) {
  EXPECT_NE(std::string(config_error("data.alpha = 1.0\n").what()).find("α ≥ 3/2 required"), std::string::npos);
  EXPECT_NE(std::string(config_error("data.N = 8.1\n").what()).find("N·L/(2π) not an integer"), std::string::npos);
  EXPECT_NE(std::string(config_error("grid.L = 5\n").what()).find("L/(2π) not an integer"), std::string::npos);
}

TEST(Config, SyntaxErrorsCarryLineAndColumn) {
  const ConfigError unknown = config_error("grid.n = 64\n  data.beta = 3\n");
  EXPECT_EQ(unknown.line(), 2);
  EXPECT_EQ(unknown.column(), 3);
  EXPECT_NE(std::string(unknown.what()).find("unknown key 'data.beta'"), std::string::npos);

  const ConfigError dup = config_error("grid.n = 64\ngrid.n = 32\n");
  EXPECT_EQ(dup.line(), 2);
  const ConfigError missing = config_error("data.M =\n");
  EXPECT_EQ(missing.line(), 1);
  const ConfigError syntax = config_error("\n\ngrid.n 64\n");
  EXPECT_EQ(syntax.line(), 3);
  const ConfigError bad_n = config_error("grid.n = 64.5\n");
  EXPECT_EQ(bad_n.line(), 1);
  EXPECT_EQ(bad_n.column(), 10);
}

TEST(Config, ParseRealAcceptsMultiplesOfPi) {
  EXPECT_DOUBLE_EQ(parse_real("8pi"), 8 * kPi);
  EXPECT_DOUBLE_EQ(parse_real("8*pi"), 8 * kPi);
  EXPECT_DOUBLE_EQ(parse_real("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_real("0.25"), 0.25);
  EXPECT_THROW(parse_real("eight"), std::invalid_argument);
}

TEST(Snapshot, RoundTripIsBitwise) {
  TempDir dir;
  const Grid g(3.5, 16);
  Snapshot s;
  s.L = g.length();
  s.n = g.n();
  s.t = 0.125;
  s.eta = 0.7;
  s.add("p", random_field(g, 1));
  s.add("u", VectorField(random_field(g, 2), random_field(g, 3), random_field(g, 4)));
  write_snapshot(s, dir / "a.mhds");
  const Snapshot r = read_snapshot(dir / "a.mhds", 16);
  EXPECT_EQ(r.L, s.L);
  EXPECT_EQ(r.t, s.t);
  EXPECT_EQ(r.eta, s.eta);
  ASSERT_EQ(r.fields.size(), 4u);
  for (std::size_t i = 0; i < s.fields.size(); ++i) {
    EXPECT_EQ(r.fields[i].name, s.fields[i].name);
    const std::span<const double> a = s.fields[i].field.values(), b = r.fields[i].field.values();
    EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size_bytes()), 0);
  }
  EXPECT_TRUE(r.has_vector("u"));
  EXPECT_TRUE(r.has_scalar("p"));
  EXPECT_EQ(r.vector_names(), std::vector<std::string>{"u"});
  EXPECT_THROW(r.scalar("q"), SnapshotError);
}

TEST(Snapshot, FileLayout) {
  TempDir dir;
  const Grid g(2 * kPi, 64);
  Snapshot s;
  s.L = g.length();
  s.n = 64;
  s.add("b", VectorField::physical(g));
  write_snapshot(s, dir / "b.mhds");
  const std::string bytes = read_bytes(dir / "b.mhds");
  const std::size_t header = 8 + 4 + 4 + 8 + 8 + 8 + 4;
  const std::size_t names = 3 * (2 + 3);  // "b.x", "b.y", "b.z"
  EXPECT_EQ(bytes.size(), header + names + 3u * 64 * 64 * 64 * 8);
  EXPECT_EQ(bytes.substr(0, 8), "MHDSNAP1");
  std::uint32_t version = 0, n = 0, count = 0;
  double L = 0;
  std::memcpy(&version, bytes.data() + 8, 4);
  std::memcpy(&n, bytes.data() + 12, 4);
  std::memcpy(&L, bytes.data() + 16, 8);
  std::memcpy(&count, bytes.data() + 40, 4);
  EXPECT_EQ(version, 1u);
  EXPECT_EQ(n, 64u);
  EXPECT_EQ(L, 2 * kPi);
  EXPECT_EQ(count, 3u);
  EXPECT_EQ(bytes.substr(header + 2, 3), "b.x");
}

TEST(Snapshot, RejectsDamagedFiles) {
  TempDir dir;
  const Grid g(1.0, 8);
  Snapshot s;
  s.L = 1.0;
  s.n = 8;
  s.add("f", random_field(g, 5));
  write_snapshot(s, dir / "ok.mhds");
  const std::string bytes = read_bytes(dir / "ok.mhds");

  auto message = [&](const std::string& content, std::optional<int> n = std::nullopt) -> std::string {
    write_bytes(dir / "bad.mhds", content);
    try {
      read_snapshot(dir / "bad.mhds", n);
    } catch (const SnapshotError& e) {
      return e.what();
    }
    return "accepted";
  };
  std::string magic = bytes;
  magic[0] = 'X';
  EXPECT_NE(message(magic).find("not a snapshot"), std::string::npos);
  std::string version = bytes;
  version[8] = 2;
  EXPECT_NE(message(version).find("version"), std::string::npos);
  EXPECT_NE(message(bytes.substr(0, bytes.size() - 8)).find("truncated"), std::string::npos);
  EXPECT_NE(message(bytes + "x").find("trailing"), std::string::npos);
  EXPECT_NE(message(bytes, 16).find("does not match"), std::string::npos);
  EXPECT_THROW(read_snapshot(dir / "nothing.mhds"), SnapshotError);
}

TEST(Timeseries, HeaderAndOneRowPerTick) {
  TempDir dir;
  const Grid g(2 * kPi, 8);
  const VectorField b = sample(g, [](double, double, double z) -> std::array<double, 3> {
    return {std::sin(z), std::cos(z), 0.0};
  });
  const VectorField u = VectorField::physical(g);
  std::vector<TimeseriesRow> rows;
  simulate(u, b, MhdParams{}, 0.1, [&](const SolverState& s) { rows.push_back(make_row(s, u, b)); }, 0.02);
  ASSERT_EQ(rows.size(), 6u);
  emit_timeseries(rows, dir / "ts.csv");
  const std::string text = read_bytes(dir / "ts.csv");
  EXPECT_EQ(text.substr(0, text.find("\r\n")), kTimeseriesHeader);
  std::size_t lines = 0;
  for (std::size_t p = 0; (p = text.find("\r\n", p)) != std::string::npos; p += 2) ++lines;
  EXPECT_EQ(lines, 7u);
  const auto back = read_timeseries(dir / "ts.csv");
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].t, rows[i].t);
    EXPECT_EQ(back[i].energy_total, rows[i].energy_total);
    EXPECT_EQ(back[i].linf_b, rows[i].linf_b);
  }
}

TEST(Timeseries, ZeroRunGivesZeroRows) {
  const Grid g(2 * kPi, 8);
  const VectorField z = VectorField::physical(g);
  std::vector<TimeseriesRow> rows;
  simulate(z, z, MhdParams{}, 0.05, [&](const SolverState& s) { rows.push_back(make_row(s, z, z)); }, 0.01);
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    for (double e : r.e) EXPECT_EQ(e, 0.0);
    EXPECT_EQ(r.e0_low, 0.0);
    EXPECT_EQ(r.e0_high, 0.0);
    EXPECT_EQ(r.energy_total, 0.0);
    EXPECT_EQ(r.linf_u, 0.0);
    EXPECT_EQ(r.linf_b, 0.0);
    EXPECT_EQ(r.div_max, 0.0);
  }
}

TEST(Timeseries, RowMatchesDiagnosticsRecomputation) {
  const Grid g(2 * kPi, 16);
  const VectorField u0 = leray_project(sample(g, [](double x, double y, double z) -> std::array<double, 3> {
    return {std::sin(y + z), std::cos(2 * x), std::sin(x - y)};
  }));
  const VectorField b0 = leray_project(sample(g, [](double x, double y, double z) -> std::array<double, 3> {
    return {std::cos(z), std::sin(x + 2 * z), std::cos(y)};
  }));
  const SolverState s = simulate(u0, b0, MhdParams{}, 0.02);
  const TimeseriesRow row = make_row(s, u0, b0);
  const auto d = perturbation_diagnostics(s, u0, b0, 3);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(row.e[k], d.e[static_cast<std::size_t>(k)], 1e-12 * d.e[3]);
  EXPECT_NEAR(row.e0_low, d.e_low[0], 1e-12 * d.e[0]);
  EXPECT_NEAR(row.energy_total, total_energy(s), 1e-12 * total_energy(s));
  EXPECT_NEAR(row.linf_u, lp_norm(to_physical(s.u), std::numeric_limits<double>::infinity()), 1e-14);
}
