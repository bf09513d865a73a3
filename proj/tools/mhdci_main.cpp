// Command-line driver: run orchestration, validation, checkpointing and the
// oracle suite for the relaxed-MHD iteration library.
//
// Exit codes: 0 ok, 1 usage/configuration error, 2 parameter-regime failure
// (hard violation, or any violation in strict mode), 3 internal invariant
// failure.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mhdci/blocks.hpp"
#include "mhdci/diagnostics.hpp"
#include "mhdci/fields.hpp"
#include "mhdci/geometry.hpp"
#include "mhdci/invdiv.hpp"
#include "mhdci/io.hpp"
#include "mhdci/iteration.hpp"
#include "mhdci/params.hpp"
#include "mhdci/spectral.hpp"
#include "mhdci/state.hpp"
#include "mhdci/threading.hpp"

namespace {

using namespace mhdci;

struct RegimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string config_path;
    std::string output_override;
};

RunConfig resolve_config(const CommonOpts& opts) {
    RunConfig cfg = opts.config_path.empty() ? RunConfig{}
                                             : load_config(opts.config_path);
    if (!opts.output_override.empty()) cfg.output_dir = opts.output_override;
    return cfg;
}

ProductMode products_of(const RunConfig& cfg) {
    return cfg.strict_products ? ProductMode::dealiased : ProductMode::pointwise;
}

// Regime gate shared by run/step: hard violations always stop, soft ones
// only in strict mode.
void gate_regime(const RunConfig& cfg, int q) {
    const RegimeReport rep = validate_regime(cfg.params, q);
    std::cout << format_regime_report(rep);
    if (!rep.hard_ok)
        throw RegimeFailure("hard parameter-regime violation at level " +
                            std::to_string(q));
    if (cfg.strict_regime && !rep.all_ok)
        throw RegimeFailure("parameter regime not satisfied at level " +
                            std::to_string(q) + " (strict mode)");
    if (cfg.force_resolution) {
        const ScaleSet sc = derive_scales(cfg.params, q);
        const ResolutionCheck res = check_resolution(sc.lambda_q1, cfg.grid_n, 1e-3);
        if (!res.resolved)
            throw RegimeFailure("grid cannot resolve the level-" +
                                std::to_string(q + 1) + " blocks");
    }
}

int total_padding(const RunConfig& cfg, double dt) {
    int total = 0;
    for (int q = 0; q < cfg.q_max; ++q) {
        total += cfg.t_pad >= 0 ? cfg.t_pad
                                : step_time_padding(cfg.params, q, dt);
    }
    return total;
}

int cmd_validate(const CommonOpts& opts) {
    const RunConfig cfg = resolve_config(opts);
    std::cout << "config " << hash_hex(config_hash(cfg)) << "\n";
    bool hard_ok = true, all_ok = true;
    for (int q = 0; q <= cfg.q_max; ++q) {
        const RegimeReport rep = validate_regime(cfg.params, q);
        std::cout << format_regime_report(rep);
        hard_ok = hard_ok && rep.hard_ok;
        all_ok = all_ok && rep.all_ok;
        const ScaleSet sc = derive_scales(cfg.params, q);
        const ResolutionCheck res = check_resolution(sc.lambda_q1, cfg.grid_n, 1e-3);
        std::cout << "  grid " << cfg.grid_n << "^3: block frequency content ~ "
                  << format_double(res.max_frequency) << " vs nyquist "
                  << format_double(res.nyquist) << " -> "
                  << (res.resolved ? "resolved" : "aliased (reported)") << "\n";
    }
    if (!hard_ok) return 2;
    if (cfg.strict_regime && !all_ok) return 2;
    return 0;
}

State build_initial_state(const RunConfig& cfg) {
    const double dt = 1.0 / (cfg.time_n - 1);
    const int pad = total_padding(cfg, dt);
    const int slices = cfg.time_n + 2 * pad;
    return initial_state(cfg.params, cfg.grid_n, -pad * dt, dt, slices,
                         parse_seed_profile(cfg.seed_profile));
}

void emit_level(const RunConfig& cfg, std::uint64_t hash, const State& s) {
    const DiagnosticsReport rep = diagnose(s, products_of(cfg));
    std::cout << format_diagnostics_summary(rep);
    const std::string tag = "q" + std::to_string(s.q);
    write_diagnostics_csv(cfg.output_dir + "/diagnostics_" + tag + ".csv", rep,
                          hash);
    write_checkpoint(cfg.output_dir + "/checkpoint_" + tag, s, cfg.params, hash,
                     cfg.dump_fields);
    if (cfg.emit_vtk) {
        const std::size_t mid = static_cast<std::size_t>(s.slices() / 2);
        write_vtk_vector(cfg.output_dir + "/u_" + tag + ".vtk", "u", s.u[mid]);
        write_vtk_vector(cfg.output_dir + "/b_" + tag + ".vtk", "b", s.b[mid]);
    }
}

int cmd_run(const CommonOpts& opts) {
    const RunConfig cfg = resolve_config(opts);
    const std::uint64_t hash = config_hash(cfg);
    std::cout << "config " << hash_hex(hash) << "\n";
    ensure_directory(cfg.output_dir);
    write_file_bytes(cfg.output_dir + "/config.txt", format_config(cfg));

    State state = build_initial_state(cfg);
    std::cout << "seed: grid " << cfg.grid_n << "^3, " << state.slices()
              << " slices, dt " << format_double(state.dt) << ", profile "
              << cfg.seed_profile << "\n";
    const SeedProfile prof = parse_seed_profile(cfg.seed_profile);
    {
        const int j1 = slice_index_at(state, 1.0);
        const double measured =
            magnetic_helicity(state.b[static_cast<std::size_t>(j1)]);
        const double expected = seed_magnetic_helicity(cfg.params, 1.0, prof);
        std::cout << "seed magnetic helicity at t=1: measured "
                  << format_double(measured) << ", closed form "
                  << format_double(expected) << "\n";
    }

    for (int q = 0; q <= cfg.q_max; ++q) {
        std::cout << "\n== level " << q << " ==\n";
        emit_level(cfg, hash, state);
        if (q == cfg.q_max) break;
        gate_regime(cfg, q);
        StepConfig scfg;
        scfg.params = cfg.params;
        scfg.products = products_of(cfg);
        StepResult res = perform_step(state, scfg);
        std::cout << format_step_report(res.report);
        const std::string tag = "q" + std::to_string(q + 1);
        write_margins_csv(cfg.output_dir + "/margins_" + tag + ".csv", res.report,
                          hash);
        write_file_bytes(cfg.output_dir + "/step_" + tag + ".txt",
                         format_step_report(res.report));
        const HelicityGrowthReport hg = helicity_growth_report(state, res.next);
        write_helicity_csv(cfg.output_dir + "/helicity_" + tag + ".csv", hg, hash);
        state = std::move(res.next);
    }
    std::cout << "\nrun complete: outputs in " << cfg.output_dir << "\n";
    return 0;
}

int cmd_step(const CommonOpts& opts) {
    const RunConfig cfg = resolve_config(opts);
    const std::uint64_t hash = config_hash(cfg);
    std::cout << "config " << hash_hex(hash) << "\n";
    gate_regime(cfg, 0);

    const double dt = 1.0 / (cfg.time_n - 1);
    const int pad =
        cfg.t_pad >= 0 ? cfg.t_pad : step_time_padding(cfg.params, 0, dt);
    State seed = initial_state(cfg.params, cfg.grid_n, -pad * dt, dt,
                               cfg.time_n + 2 * pad,
                               parse_seed_profile(cfg.seed_profile));
    StepConfig scfg;
    scfg.params = cfg.params;
    scfg.products = products_of(cfg);
    StepResult res = perform_step(seed, scfg);
    std::cout << format_step_report(res.report);
    ensure_directory(cfg.output_dir);
    write_margins_csv(cfg.output_dir + "/margins_q1.csv", res.report, hash);
    write_file_bytes(cfg.output_dir + "/step_q1.txt",
                     format_step_report(res.report));
    if (cfg.dump_fields) {
        write_checkpoint(cfg.output_dir + "/checkpoint_q1", res.next, cfg.params,
                         hash, true);
    }
    return 0;
}

int cmd_diagnose(const CommonOpts& opts, const std::string& checkpoint_dir) {
    const RunConfig cfg = resolve_config(opts);
    const State s = read_checkpoint_state(checkpoint_dir);
    const CheckpointInfo info = read_checkpoint_info(checkpoint_dir);
    const DiagnosticsReport rep = diagnose(s, products_of(cfg));
    std::cout << format_diagnostics_summary(rep);
    if (!opts.output_override.empty()) {
        ensure_directory(opts.output_override);
        write_diagnostics_csv(opts.output_override + "/diagnostics_q" +
                                  std::to_string(s.q) + ".csv",
                              rep, info.cfg_hash);
    }
    return 0;
}

int cmd_dump_tables(const CommonOpts& opts) {
    const RunConfig cfg = resolve_config(opts);
    const std::uint64_t hash = config_hash(cfg);
    std::cout << "config " << hash_hex(hash) << "\n";
    std::cout << geometry_report();
    for (int q = 0; q <= cfg.q_max; ++q) {
        std::cout << format_regime_report(validate_regime(cfg.params, q));
    }
    const ScaleSet sc = derive_scales(cfg.params, 0);
    if (sc.r_lambda_in_u64 && sc.lambda_q1_in_u64) {
        const BlockSet bs = make_block_set(sc, cfg.grid_n);
        std::cout << "blocks at level 0 -> 1 on " << cfg.grid_n << "^3:\n";
        auto describe = [](const Block& b) {
            std::ostringstream os;
            os << "  family " << b.family << " index " << b.index << "  m = ("
               << b.wavevector[0] << ", " << b.wavevector[1] << ", "
               << b.wavevector[2] << ")  parity " << b.parity << "  gcd "
               << b.subgroup_gcd << "  norm_factor "
               << format_double(b.norm_factor) << "\n";
            return os.str();
        };
        for (const Block& b : bs.vel) std::cout << describe(b);
        for (const Block& b : bs.mag) std::cout << describe(b);
    }
    ensure_directory(cfg.output_dir);
    const std::vector<double> lambdas{64.0, 128.0, 256.0};
    const std::vector<double> rs{1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0};
    const std::vector<int> orders{0, 1, 2};
    const std::vector<double> ps{1.0, 2.0, 3.0};
    const auto rows = block_scaling_sweep(lambdas, rs, orders, ps, 1e-3);
    write_block_sweep_csv(cfg.output_dir + "/block_scaling.csv", rows, hash);
    std::cout << "block scaling sweep (" << rows.size() << " rows) -> "
              << cfg.output_dir << "/block_scaling.csv\n";
    return 0;
}

// ---- oracle suite --------------------------------------------------------

struct OracleOutcome {
    int total = 0;
    int passed = 0;
};

void oracle_line(OracleOutcome& out, const std::string& name, double measured,
                 double expected, double tol) {
    const bool ok = std::abs(measured - expected) <= tol;
    ++out.total;
    if (ok) ++out.passed;
    std::cout << (ok ? "ok   " : "FAIL ") << name << "  measured "
              << format_double(measured) << "  expected "
              << format_double(expected) << "  tol " << format_double(tol)
              << "\n";
}

Mat3 random_skew(std::mt19937& rng, double scale) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const double a = unif(rng) * scale, b = unif(rng) * scale,
                 c = unif(rng) * scale;
    Mat3 m = mat3_zero();
    m[1] = a;
    m[3] = -a;
    m[2] = b;
    m[6] = -b;
    m[5] = c;
    m[7] = -c;
    return m;
}

Mat3 random_sym_near_id(std::mt19937& rng, double eps) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Mat3 m = mat3_identity();
    double entries[6];
    double norm2 = 0.0;
    for (double& e : entries) {
        e = unif(rng);
        norm2 += e * e;
    }
    norm2 += entries[3] * entries[3] + entries[4] * entries[4] +
             entries[5] * entries[5];  // off-diagonal entries appear twice
    const double scale = eps / std::sqrt(std::max(norm2, 1e-30));
    std::uniform_real_distribution<double> mag(0.0, 1.0);
    const double s = scale * mag(rng);
    m[0] += s * entries[0];
    m[4] += s * entries[1];
    m[8] += s * entries[2];
    m[1] = m[3] = s * entries[3];
    m[2] = m[6] = s * entries[4];
    m[5] = m[7] = s * entries[5];
    return m;
}

VectorField random_band_limited(std::mt19937& rng, int n, int kmax, int modes) {
    std::uniform_int_distribution<int> ki(-kmax, kmax);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    struct Mode {
        int kx, ky, kz;
        double amp, phase;
        int comp;
    };
    std::vector<Mode> ms;
    for (int m = 0; m < modes; ++m) {
        Mode mo{ki(rng), ki(rng), ki(rng), unif(rng), M_PI * unif(rng),
                static_cast<int>((unif(rng) + 1.0) * 1.49)};
        if (mo.kx == 0 && mo.ky == 0 && mo.kz == 0) mo.kx = 1;
        ms.push_back(mo);
    }
    VectorField f(n);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x = grid_coord(n, ix);
        for (int iy = 0; iy < n; ++iy) {
            const double y = grid_coord(n, iy);
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double z = grid_coord(n, iz);
                for (const Mode& mo : ms) {
                    f.c[static_cast<std::size_t>(mo.comp)][idx] +=
                        mo.amp *
                        std::cos(mo.kx * x + mo.ky * y + mo.kz * z + mo.phase);
                }
            }
        }
    }
    return f;
}

int cmd_oracles(const CommonOpts& opts) {
    const RunConfig cfg = resolve_config(opts);
    std::cout << "config " << hash_hex(config_hash(cfg)) << "\n";
    OracleOutcome out;
    std::mt19937 rng(20260823u);

    // Frame weights at the unperturbed points (closed forms).
    {
        const std::array<double, 5> base{7.0 / 4.0, 11.0 / 3.0, 1.0, 35.0 / 12.0,
                                         5.0 / 3.0};
        const std::array<double, 5> got = gamma_b_squared(mat3_zero());
        double err = 0.0;
        for (int i = 0; i < 5; ++i) err = std::max(err, std::abs(got[i] - base[i]));
        oracle_line(out, "frame_weights_skew_origin", err, 0.0, 1e-14);
    }
    {
        const std::array<double, 6> got = gamma_u_squared(mat3_identity());
        double err = 0.0;
        for (int i = 0; i < 6; ++i) err = std::max(err, std::abs(got[i] - 0.5));
        oracle_line(out, "frame_weights_sym_identity", err, 0.0, 1e-14);
    }

    // Reconstruction identities on random inputs.
    {
        double err = 0.0;
        for (int trial = 0; trial < 2000; ++trial) {
            const Mat3 a = random_skew(rng, 0.5);
            err = std::max(err, frobenius(reconstruct_skew(gamma_b_squared(a)) - a));
        }
        oracle_line(out, "frame_reconstruction_skew", err, 0.0, 1e-10);
    }
    {
        double err = 0.0;
        for (int trial = 0; trial < 2000; ++trial) {
            const Mat3 s = random_sym_near_id(rng, epsilon_u());
            err = std::max(err, frobenius(reconstruct_sym(gamma_u_squared(s)) - s));
        }
        oracle_line(out, "frame_reconstruction_sym", err, 0.0, 1e-10);
    }

    // Inverse-divergence identities on random band-limited fields.
    {
        const int n = 32;
        double err_div = 0.0, err_shape = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            VectorField v = random_band_limited(rng, n, 5, 6);
            remove_mean_inplace(v);
            const TensorField t = inv_divergence_sym(v);
            err_shape = std::max(err_shape,
                                 std::max(max_asymmetry(t), max_trace(t)));
            const VectorField back = tensor_divergence(t);
            err_div = std::max(err_div, mean_lp_norm(back - v, 2.0) /
                                            mean_lp_norm(v, 2.0));
        }
        oracle_line(out, "inverse_divergence_sym", err_div, 0.0, 1e-10);
        oracle_line(out, "inverse_divergence_sym_shape", err_shape, 0.0, 1e-12);
    }
    {
        const int n = 32;
        double err_div = 0.0, err_shape = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const VectorField f = curl(random_band_limited(rng, n, 5, 6));
            const TensorField t = inv_divergence_skew(f);
            err_shape = std::max(err_shape, max_symmetry(t));
            const VectorField back = tensor_divergence(t);
            err_div = std::max(err_div, mean_lp_norm(back - f, 2.0) /
                                            mean_lp_norm(f, 2.0));
        }
        oracle_line(out, "inverse_divergence_skew", err_div, 0.0, 1e-10);
        oracle_line(out, "inverse_divergence_skew_shape", err_shape, 0.0, 1e-12);
    }

    // Block scaling: direct quadrature against the closed-form oracle, and
    // the power laws as log-log slopes.
    {
        const std::vector<double> lambdas{64.0, 128.0, 256.0};
        const std::vector<double> rs{1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0};
        const std::vector<int> orders{0, 1};
        const std::vector<double> ps{1.0, 2.0};
        const auto rows = block_scaling_sweep(lambdas, rs, orders, ps, 1e-3);
        double agree = 0.0;
        for (const auto& r : rows) {
            agree = std::max(agree,
                             std::abs(r.norm_direct / r.norm_oracle - 1.0));
        }
        oracle_line(out, "block_norm_direct_vs_oracle", agree, 0.0, 1e-6);

        auto fit = [](const std::vector<double>& x, const std::vector<double>& y) {
            double mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                mx += x[i];
                my += y[i];
            }
            mx /= static_cast<double>(x.size());
            my /= static_cast<double>(x.size());
            double sxx = 0.0, sxy = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                sxx += (x[i] - mx) * (x[i] - mx);
                sxy += (x[i] - mx) * (y[i] - my);
            }
            return sxy / sxx;
        };
        std::vector<double> lx, ly;
        for (const auto& r : rows) {
            if (r.M == 1 && r.p == 2.0 && r.r == rs[0]) {
                lx.push_back(std::log(r.lambda));
                ly.push_back(std::log(r.norm_direct));
            }
        }
        oracle_line(out, "block_derivative_slope", fit(lx, ly), 1.0, 0.05);
        lx.clear();
        ly.clear();
        for (const auto& r : rows) {
            if (r.M == 0 && r.p == 1.0 && r.lambda == lambdas[0]) {
                lx.push_back(std::log(r.r));
                ly.push_back(std::log(r.norm_direct));
            }
        }
        oracle_line(out, "block_concentration_slope", fit(lx, ly), 0.5, 0.05);
        lx.clear();
        ly.clear();
        for (const auto& r : rows) {
            if (r.M == 0 && r.p == 1.0 && r.lambda == lambdas[0]) {
                lx.push_back(std::log(r.r));
                ly.push_back(std::log(r.psupport_direct));
            }
        }
        oracle_line(out, "block_product_support_slope", fit(lx, ly), 2.0, 0.1);
    }

    // Decorrelation of slow modulation against fine combs.
    {
        const int samples = 1 << 17;
        oracle_line(out, "decorrelation_constant_exact",
                    decorrelation_ratio_constant(16, 0.1, samples), 1.0, 1e-14);
        const DecorrelationReport rep =
            decorrelation_sweep({16}, 0.1, samples);
        oracle_line(out, "decorrelation_fine_comb", rep.rows[0].ratio, 1.0, 0.05);
    }

    // Inverse-gradient gain.
    {
        const std::vector<int> kappas{4, 8, 16, 32};
        const CommutatorGainReport plain = commutator_gain_sweep(96, {8}, false);
        oracle_line(out, "gain_single_mode_exact", plain.rows[0].ratio, 1.0,
                    1e-12);
        const CommutatorGainReport mod = commutator_gain_sweep(96, kappas, true);
        oracle_line(out, "gain_sweep_slope", mod.slope, -1.0, 0.1);
    }

    std::cout << "oracles passed " << out.passed << "/" << out.total << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relaxed-MHD convex-integration pipeline"};
    app.require_subcommand(1);

    CommonOpts opts;
    int threads = 0;
    app.add_option("--threads", threads,
                   "Worker thread cap (default: MHD_THREADS or 1)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", opts.config_path,
                        "Key-value configuration file");
        sub->add_option("-o,--output", opts.output_override,
                        "Output directory override");
    };

    CLI::App* validate = app.add_subcommand(
        "validate", "Check the parameter regime and grid resolution");
    add_common(validate);
    CLI::App* run = app.add_subcommand(
        "run", "Run levels 0..q_max with diagnostics and checkpoints");
    add_common(run);
    CLI::App* step = app.add_subcommand(
        "step", "Perform a single iteration step from the seed state");
    add_common(step);
    CLI::App* oracles = app.add_subcommand(
        "oracles", "Evaluate the derived-value oracle suite");
    add_common(oracles);
    CLI::App* dump = app.add_subcommand(
        "dump-tables", "Emit frame, regime and block-scaling tables");
    add_common(dump);
    std::string checkpoint_dir;
    CLI::App* diagnose_cmd = app.add_subcommand(
        "diagnose", "Diagnose a checkpoint directory");
    add_common(diagnose_cmd);
    diagnose_cmd->add_option("checkpoint", checkpoint_dir, "Checkpoint directory")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (threads > 0) set_thread_count(threads);

    try {
        if (app.got_subcommand(validate)) return cmd_validate(opts);
        if (app.got_subcommand(run)) return cmd_run(opts);
        if (app.got_subcommand(step)) return cmd_step(opts);
        if (app.got_subcommand(oracles)) return cmd_oracles(opts);
        if (app.got_subcommand(dump)) return cmd_dump_tables(opts);
        if (app.got_subcommand(diagnose_cmd))
            return cmd_diagnose(opts, checkpoint_dir);
    } catch (const internal_error& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return 3;
    } catch (const RegimeFailure& e) {
        std::cerr << "regime failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
