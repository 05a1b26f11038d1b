#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>

#include "mhd/config.hpp"
#include "mhd/diagnostics.hpp"
#include "mhd/error.hpp"
#include "mhd/experiments.hpp"
#include "mhd/snapshot.hpp"
#include "mhd/spectral.hpp"
#include "mhd/timeseries.hpp"
#include "mhd/topology.hpp"

namespace mhd::cli {
namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Snapshot state_snapshot(const SolverState& s) {
  Snapshot snap;
  snap.t = s.t;
  snap.eta = s.params.eta;
  snap.add("u", s.u);
  snap.add("b", s.b);
  return snap;
}

void print_census(std::ostream& out, const NullCensus& c) {
  out << "nulls: " << c.points.size() << " (hyperbolic " << c.hyperbolic_count() << ", non-hyperbolic "
      << c.count(NullClass::non_hyperbolic) << ", unresolved " << c.count(NullClass::unresolved) << "; seeds "
      << c.seeds << ", dropped " << c.dropped << ", field scale " << num(c.field_scale) << ")\n";
  for (const auto& p : c.points) {
    out << "  x = (" << num(p.x[0]) << ", " << num(p.x[1]) << ", " << num(p.x[2]) << ")  residual " << num(p.residual)
        << "  " << to_string(p.classification) << "  eigenvalues";
    for (const auto& l : p.eigenvalues) out << " " << num(l.real()) << (l.imag() < 0 ? "-" : "+") << num(std::abs(l.imag())) << "i";
    out << "\n";
  }
}

int cmd_init(const std::string& path, std::ostream& out) {
  const ExperimentConfig c = parse_config(path);
  const Grid g = c.grid();
  Snapshot snap;
  snap.eta = c.data.eta;
  snap.add("u0", build_u0(c.data, g));
  snap.add("b0", build_b0(c.data, g));
  snap.add("curl_psiW", spectral_psiW_curl(c.data.eta, c.data.T, false, g));
  const fs::path file = fs::path(c.out_dir) / "initial.mhds";
  write_snapshot(snap, file);
  out << "wrote " << file.string() << " (u0, b0, curl_psiW)\n";
  return kSuccess;
}

int cmd_simulate(const std::string& path, bool every_tick, std::ostream& out) {
  const ExperimentConfig c = parse_config(path);
  const fs::path dir(c.out_dir);
  int tick = 0;
  auto extra = [&](const SolverState& s) {
    if (every_tick) {
      char name[32];
      std::snprintf(name, sizeof name, "tick_%04d.mhds", tick);
      write_snapshot(state_snapshot(s), dir / name);
    }
    ++tick;
  };
  const SimulationResult r = run_simulation(c, extra);
  emit_timeseries(r.rows, dir / "timeseries.csv");
  write_snapshot(state_snapshot(r.final_state), dir / "final.mhds");
  out << "t = " << num(r.final_state.t) << " after " << r.final_state.step_count << " steps, " << r.rows.size()
      << " ticks, runtime " << num(r.runtime_seconds) << " s\n"
      << "worst div ratio " << num(r.invariants.worst_divergence_ratio()) << ", worst energy increase "
      << num(r.invariants.worst_energy_increase()) << "\n"
      << "wrote " << (dir / "timeseries.csv").string() << " and " << (dir / "final.mhds").string() << "\n";
  return r.invariants.ok() ? kSuccess : kCheckFailure;
}

int cmd_reconnect(const std::string& path, std::ostream& out) {
  const ExperimentConfig c = parse_config(path);
  const ReconnectionReport r = run_reconnection(c);
  const std::string report = format_report(r);
  write_text_atomic(fs::path(c.out_dir) / "reconnection.txt", report);
  write_text_atomic(fs::path(c.out_dir) / "reconnection.ledger", format_ledger(r));
  out << report;
  return r.detected && r.precondition_ok ? kSuccess : kCheckFailure;
}

int cmd_bounds(const std::string& path, std::vector<double> rhos, std::vector<double> Ns, std::ostream& out) {
  const ExperimentConfig c = parse_config(path);
  if (rhos.empty()) rhos = {1e-2, 1e-3, 1e-4};
  if (Ns.empty()) Ns = {c.data.N};
  const BoundsTable t = run_global_bounds(c, rhos, Ns);
  const std::string table = format_table(t);
  write_text_atomic(fs::path(c.out_dir) / "bounds.csv", table);
  out << table;
  bool ok = true;
  for (const auto& s : t.rho_slope)
    if (!std::isnan(s[0]) && std::abs(s[0] - 1.0) > 0.1) ok = false;
  return ok ? kSuccess : kCheckFailure;
}

int cmd_lemmas(const std::string& path, std::ostream& out) {
  const ExperimentConfig c = parse_config(path);
  const LemmaLedger l = run_lemma_checks(c);
  const std::string text = format_ledger(l);
  write_text_atomic(fs::path(c.out_dir) / "lemmas.ledger", text);
  out << text << (l.all_pass() ? "all checks passed\n" : "some checks FAILED\n");
  return l.all_pass() ? kSuccess : kCheckFailure;
}

int cmd_nulls(const std::string& path, const std::string& field, double radius, int stride, std::ostream& out) {
  const Snapshot s = read_snapshot(path);
  const VectorField f = s.vector(field);
  NullSearchOptions opt;
  opt.seed_stride = stride;
  const CensusRegion region = radius > 0.0 ? CensusRegion::ball(radius) : CensusRegion::whole_box();
  print_census(out, find_nulls(f, region, opt));
  return kSuccess;
}

int cmd_norms(const std::string& path, const std::string& field, std::ostream& out) {
  const Snapshot s = read_snapshot(path);
  const NormReport r = norm_report(field, s.vector(field));
  out << "field " << r.field_id << " (t = " << num(s.t) << ")\n";
  for (const auto& e : r.entries) {
    out << "  " << to_string(e.kind);
    if (e.kind != NormKind::besov_neg1_inf) out << "[" << (std::isinf(e.index) ? std::string("inf") : num(e.index)) << "]";
    out << " = " << num(e.value) << "\n";
  }
  return kSuccess;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-spectral resistive MHD with null-point topology diagnostics"};
  app.require_subcommand(1);

  std::string config, snapshot, field = "b";
  bool every_tick = false;
  std::vector<double> rhos, Ns;
  double radius = 0.0;
  int stride = 1;

  auto* init = app.add_subcommand("init", "Write the initial fields and curl(psi W) to <out_dir>/initial.mhds");
  init->add_option("config", config, "Configuration file")->required();
  auto* sim = app.add_subcommand("simulate", "Run to T and write the time series and final snapshot");
  sim->add_option("config", config, "Configuration file")->required();
  sim->add_flag("--snapshot-ticks", every_tick, "Also write a snapshot at every observer tick");
  auto* rec = app.add_subcommand("reconnect", "Null censuses at t=0 and t=T with the reconnection report");
  rec->add_option("config", config, "Configuration file")->required();
  auto* bounds = app.add_subcommand("bounds", "Perturbation-energy scaling sweep over rho and N");
  bounds->add_option("config", config, "Configuration file")->required();
  bounds->add_option("--rho", rhos, "Comma-separated rho values")->delimiter(',');
  bounds->add_option("--N", Ns, "Comma-separated N values")->delimiter(',');
  auto* lemmas = app.add_subcommand("check-lemmas", "Run the lemma checks and print the ledger");
  lemmas->add_option("config", config, "Configuration file")->required();
  auto* nulls = app.add_subcommand("nulls", "Null census of a snapshot vector field");
  nulls->add_option("snapshot", snapshot, "Snapshot file")->required();
  nulls->add_option("--field", field, "Vector field name (components name.x/.y/.z)");
  nulls->add_option("--radius", radius, "Census ball radius around the origin (0: whole box)");
  nulls->add_option("--stride", stride, "Seed stride")->check(CLI::PositiveNumber);
  auto* norms = app.add_subcommand("norms", "Norm report of a snapshot vector field");
  norms->add_option("snapshot", snapshot, "Snapshot file")->required();
  norms->add_option("--field", field, "Vector field name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (*init) return cmd_init(config, out);
    if (*sim) return cmd_simulate(config, every_tick, out);
    if (*rec) return cmd_reconnect(config, out);
    if (*bounds) return cmd_bounds(config, rhos, Ns, out);
    if (*lemmas) return cmd_lemmas(config, out);
    if (*nulls) return cmd_nulls(snapshot, field, radius, stride, out);
    if (*norms) return cmd_norms(snapshot, field, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what();
    if (e.line() > 0) err << " (line " << e.line() << ", column " << e.column() << ")";
    err << "\n";
    return kConfigError;
  } catch (const BlowUpError& e) {
    err << "blow-up: " << e.what() << "\n";
    return kRuntimeFailure;
  } catch (const SnapshotError& e) {
    err << "snapshot error: " << e.what() << "\n";
    return kRuntimeFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kConfigError;
}

}  // namespace mhd::cli
