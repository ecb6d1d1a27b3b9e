#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "masq/analytic.hpp"
#include "masq/circuit.hpp"
#include "masq/dynamics.hpp"
#include "masq/entanglement.hpp"
#include "masq/flux.hpp"
#include "masq/hilbert.hpp"

namespace masq::scenario {

/// How the scenario obtains its couplings: derived from circuit
/// parameters + device geometry, or given directly.
enum class CouplingMode { Circuit, Direct };

/// Optional resonance solver: overrides the bias fields so the mode
/// frequencies satisfy the chosen condition given omega_s.
enum class Resonance { None, Sum, Diff, Switch, Jc };

enum class DephasingConvention { Literal, Half };

struct MagnonState {
  bool coherent = false;
  int fock_n = 0;
  std::complex<double> alpha{0.0, 0.0};
};

enum class QubitState { Ground, Excited, Plus };

struct TimeGrid {
  std::optional<double> t_max_gt;  ///< in units of g_ref * t
  std::optional<double> t_max_us;
  int samples = 2;
};

struct DissipationRates {
  double kappa_m = 0, kappa_a = 0, kappa_s = 0;  ///< rad/s
  double gamma_a = 0, gamma_s = 0;               ///< rad/s
  DephasingConvention convention = DephasingConvention::Literal;
};

struct OutputRequest {
  bool populations = true;
  bool entanglement = false;
  bool analytic_overlay = false;
  std::vector<dynamics::BasisStateLabel> basis_states;
};

struct ScenarioConfig {
  int schema_version = 1;
  std::string name;
  hilbert::HamiltonianKind kind = hilbert::HamiltonianKind::EffSum;
  bool interaction_frame = true;

  CouplingMode mode = CouplingMode::Direct;
  circuit::CircuitParams circuit_params;   // Circuit mode
  flux::DeviceGeometry geometry;           // Circuit mode
  Resonance resonance = Resonance::None;
  circuit::CouplingSet direct;             // Direct mode
  double frequency_scale = 1.0;            ///< divides mode frequencies only

  MagnonState magnon;
  QubitState asq = QubitState::Ground;
  QubitState scq = QubitState::Ground;
  int fock_cutoff = 2;
  TimeGrid grid;
  DissipationRates rates;
  dynamics::IntegratorOptions integrator;
  OutputRequest outputs;
  bool compare_with_total = false;
};

struct RunOptions {
  std::filesystem::path out_dir;  ///< empty: do not write files
  unsigned threads = 0;           ///< 0: hardware concurrency
  std::string format = "csv";     ///< "csv" or "json"
};

struct ScenarioResult {
  ScenarioConfig config;
  circuit::CouplingSet couplings;            ///< resolved, frequency scaling applied
  double g_ref = 0;                          ///< coupling defining the Gt axis
  std::optional<flux::FluxResult> flux_used; ///< Circuit mode only
  std::vector<std::string> warnings;
  dynamics::Trajectory traj;
  dynamics::PopulationSeries pops;
  std::vector<entanglement::EntanglementReport> reports;
  std::optional<dynamics::PopulationSeries> total_pops;  ///< compare_with_total overlay
  std::vector<std::filesystem::path> files;
};

/// Parse + validate a scenario config; throws masq::ConfigError with
/// key-path diagnostics.
ScenarioConfig load_scenario(const std::filesystem::path& file);
ScenarioConfig parse_scenario(const std::string& json_text, const std::string& origin);

/// Resolve couplings (circuit + flux path or direct), apply resonance and
/// frequency scaling. Appends any parameter warnings.
circuit::CouplingSet resolve_couplings(const ScenarioConfig& cfg,
                                       std::optional<flux::FluxResult>* flux_out,
                                       std::vector<std::string>& warnings);

/// Run the scenario end to end; writes CSV/JSON outputs and a run manifest
/// when opts.out_dir is set.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

/// Bundled scenarios shipped with the repository (name -> config path).
std::vector<std::pair<std::string, std::filesystem::path>> bundled_scenarios();
std::filesystem::path bundled_scenario_path(const std::string& name);

/// Closed-form series runner for overlay CSVs (same schemas as the
/// numeric populations/entanglement outputs).
struct AnalyticConfig {
  std::string name = "analytic";
  std::complex<double> alpha{4.0, 0.0};
  double coupling_g = 0;  ///< rad/s
  std::optional<int> n_terms;
  std::optional<int> match_cutoff;  ///< truncated-pair model at this Fock cutoff
  TimeGrid grid;
};
AnalyticConfig parse_analytic(const std::string& json_text, const std::string& origin);
std::vector<std::filesystem::path> run_analytic(const AnalyticConfig& cfg,
                                                const RunOptions& opts);

/// Deterministic float formatting used by every table writer
/// (17 significant digits, scientific).
std::string format_float(double v);

/// A generic column table with deterministic serialization.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  void write_csv(const std::filesystem::path& file) const;
  void write_json(const std::filesystem::path& file) const;
  void write(const std::filesystem::path& file_base, const std::string& format,
             std::vector<std::filesystem::path>& files) const;
};

}  // namespace masq::scenario
