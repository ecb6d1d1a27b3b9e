#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "masq/circuit.hpp"
#include "masq/flux.hpp"
#include "masq/scenario.hpp"

namespace masq::sweep {

/// One swept axis: key, inclusive range, positive step.
struct Axis {
  std::string key;
  double start = 0, stop = 0, step = 0;
  std::vector<double> values() const;
};

/// A derived-quantity sweep over circuit/geometry/enhancement parameters.
/// Keys: phi_ext_ratio, asymmetry, e_so_mhz, e_c_mhz, ej_sum_ghz, ej_over_ec,
/// b_z_mt, b_k_mt, r_k_um, l_um, d_um, squeeze_r.
struct SweepSpec {
  std::string name = "sweep";
  Axis axis;                  ///< inner axis
  std::optional<Axis> outer;  ///< optional outer axis (contour tables)
  circuit::CircuitParams base;
  flux::DeviceGeometry geometry;
};

struct SweepRow {
  std::optional<double> outer;
  double value = 0;
  circuit::CouplingSet couplings;
  double phi_yig = 0;
  double g_eff = 0;      ///< only for squeeze_r sweeps (G cosh r)
  std::string error;     ///< empty on success
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  ///< sweep order, regardless of scheduling
  std::vector<std::filesystem::path> files;
};

SweepSpec parse_sweep(const std::string& json_text, const std::string& origin);
SweepSpec load_sweep(const std::filesystem::path& file);

/// Evaluates every sweep point (in parallel; row order preserved). A point
/// failure is recorded in its row and the sweep continues.
SweepResult run_sweep(const SweepSpec& spec, const scenario::RunOptions& opts = {});

}  // namespace masq::sweep
