#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhdci/blocks.hpp"
#include "mhdci/diagnostics.hpp"
#include "mhdci/fields.hpp"
#include "mhdci/iteration.hpp"
#include "mhdci/params.hpp"
#include "mhdci/state.hpp"

namespace mhdci {

// Serialization and run-configuration plumbing.  Every artifact written here
// is a pure function of its inputs: no timestamps, no environment state, no
// locale dependence.  Identical configurations therefore produce
// byte-identical files, and every emitted file embeds the configuration
// hash it was produced under.

// ---- run configuration ---------------------------------------------------
struct RunConfig {
    ParamSet params;
    int q_max = 1;
    int grid_n = 54;
    int time_n = 9;
    int t_pad = -1;  // extra input slices per side and level; -1 = automatic
    bool strict_regime = false;
    bool strict_products = false;   // dealiased nonlinear products
    bool force_resolution = false;  // insist on fully resolved blocks
    bool dump_fields = false;
    bool emit_vtk = false;
    std::string output_dir = "out";
    std::string seed_profile = "linear";  // or "exponential"
    double residual_tol = 1e-6;
    double identity_tol = 1e-10;
    double oracle_tol = 1e-8;
};

// Parses the flat "key = value" format ('#' starts a comment).  Unknown
// keys, malformed values, and invariant violations (non-positive
// tolerances, unknown profile name, ...) raise std::runtime_error.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical text form: every key on its own line in fixed order, doubles
// printed with 17 significant digits so the round trip is exact.
std::string format_config(const RunConfig& c);

// FNV-1a (64-bit) over the canonical text form.
std::uint64_t config_hash(const RunConfig& c);
std::string hash_hex(std::uint64_t h);

SeedProfile parse_seed_profile(const std::string& name);

// ---- field dumps ("MHDFIELD v1") ----------------------------------------
// Short ASCII header (magic, kind, n, component count, config hash)
// followed by raw little-endian doubles, component-major.
void write_field(const std::string& path, const ScalarField& f,
                 std::uint64_t cfg_hash);
void write_field(const std::string& path, const VectorField& f,
                 std::uint64_t cfg_hash);
void write_field(const std::string& path, const TensorField& f,
                 std::uint64_t cfg_hash);
ScalarField read_scalar_field(const std::string& path);
VectorField read_vector_field(const std::string& path);
TensorField read_tensor_field(const std::string& path);

// ---- checkpoints ("MHDCKPT v1") -----------------------------------------
// A checkpoint is a directory holding manifest.txt plus, when with_fields
// is set, one dump per field per slice (u_0000.fld, b_0000.fld, p_0000.fld,
// ru_0000.fld, rb_0000.fld, ...).
void write_checkpoint(const std::string& dir, const State& s,
                      const ParamSet& params, std::uint64_t cfg_hash,
                      bool with_fields);

struct CheckpointInfo {
    int q = 0, n = 0, slices = 0;
    double t0 = 0.0, dt = 0.0;
    std::uint64_t cfg_hash = 0;
    bool has_fields = false;
    ParamSet params;
};

CheckpointInfo read_checkpoint_info(const std::string& dir);
State read_checkpoint_state(const std::string& dir);

// ---- CSV reports ---------------------------------------------------------
// All CSVs open with "# MHDDIAG v1 config=<hash>" followed by a header row;
// numbers are printed with 17 significant digits.
void write_diagnostics_csv(const std::string& path, const DiagnosticsReport& rep,
                           std::uint64_t cfg_hash);
void write_margins_csv(const std::string& path, const StepReport& rep,
                       std::uint64_t cfg_hash);
void write_helicity_csv(const std::string& path, const HelicityGrowthReport& rep,
                        std::uint64_t cfg_hash);
void write_block_sweep_csv(const std::string& path,
                           const std::vector<BlockScalingRow>& rows,
                           std::uint64_t cfg_hash);

// Human-readable summaries.
std::string format_step_report(const StepReport& rep);
std::string format_diagnostics_summary(const DiagnosticsReport& rep);

// ---- optional VTK emission (legacy structured points, ASCII) ------------
void write_vtk_scalar(const std::string& path, const std::string& name,
                      const ScalarField& f);
void write_vtk_vector(const std::string& path, const std::string& name,
                      const VectorField& f);

// ---- small file utilities ------------------------------------------------
void ensure_directory(const std::string& dir);
std::string read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::string& bytes);
std::string format_double(double v);  // %.17g

}  // namespace mhdci
