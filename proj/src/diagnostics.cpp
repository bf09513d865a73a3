#include "mhdci/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mhdci/profile.hpp"

namespace mhdci {

namespace {

constexpr double kEstimateFloor = 1e-12;

ScalarField component_field(const VectorField& f, int i) {
    ScalarField out(f.n);
    out.v = f.c[i];
    return out;
}

// Centered first difference over the j-th slice, second order in dt.
VectorField d2_slice(const std::vector<VectorField>& f, int j, double dt) {
    VectorField out = f[static_cast<std::size_t>(j) + 1] -
                      f[static_cast<std::size_t>(j) - 1];
    return scale(1.0 / (2.0 * dt), out);
}

// Five-point fourth-order first difference.
VectorField d4_slice(const std::vector<VectorField>& f, int j, double dt) {
    VectorField out = scale(8.0, f[static_cast<std::size_t>(j) + 1] -
                                     f[static_cast<std::size_t>(j) - 1]);
    add_scaled(out, -1.0, f[static_cast<std::size_t>(j) + 2]);
    add_scaled(out, 1.0, f[static_cast<std::size_t>(j) - 2]);
    return scale(1.0 / (12.0 * dt), out);
}

// u x b - b x u as twice the skew part of a single product tensor.
TensorField exchange_flux(const VectorField& u, const VectorField& b,
                          ProductMode mode) {
    return scale(2.0, skew_part(outer_product(u, b, mode)));
}

double sup_spectral_gradient(const VectorField& f) {
    double sup = 0.0;
    for (int i = 0; i < 3; ++i) {
        const ScalarField comp = component_field(f, i);
        for (int axis = 0; axis < 3; ++axis) {
            sup = std::max(sup, linf_norm(derivative(comp, axis)));
        }
    }
    return sup;
}

void check_slice_range(const State& s, int j, int margin, const char* what) {
    if (j < margin || j > s.slices() - 1 - margin) {
        throw internal_error(what);
    }
}

double lstsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    check_internal(x.size() == y.size() && x.size() >= 2,
                   "slope fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    check_internal(sxx > 0.0, "slope fit needs distinct abscissae");
    return sxy / sxx;
}

// 1D concentrated comb with `fast` spikes per period and concentration r,
// renormalized on the sample grid to zero mean and unit mean square.
std::vector<double> comb_table(int fast, double r, int samples) {
    check_internal(fast >= 1 && samples >= 16 && r > 0.0 && r < 1.0,
                   "invalid decorrelation comb parameters");
    const BumpProfile& prof = bump_profile();
    std::vector<double> phi(static_cast<std::size_t>(samples), 0.0);
    const double inv_sqrt_r = 1.0 / std::sqrt(r);
    for (int i = 0; i < samples; ++i) {
        const double s = 2.0 * M_PI * static_cast<double>(i) / samples;
        double phase = std::fmod(fast * s, 2.0 * M_PI);
        if (phase > M_PI) phase -= 2.0 * M_PI;
        const double arg = phase / (M_PI * r);
        if (std::abs(arg) < 1.0) {
            phi[static_cast<std::size_t>(i)] = inv_sqrt_r * prof.value(arg);
        }
    }
    double m = 0.0;
    for (double v : phi) m += v;
    m /= samples;
    double ms = 0.0;
    for (double& v : phi) {
        v -= m;
        ms += v * v;
    }
    ms /= samples;
    check_internal(ms > 0.0, "degenerate decorrelation comb");
    const double inv_rms = 1.0 / std::sqrt(ms);
    for (double& v : phi) v *= inv_rms;
    return phi;
}

double rms(const std::vector<double>& a) {
    double ms = 0.0;
    for (double v : a) ms += v * v;
    return std::sqrt(ms / static_cast<double>(a.size()));
}

double modulation_ratio(const std::vector<double>& a,
                        const std::vector<double>& phi) {
    check_internal(a.size() == phi.size(), "modulation table size mismatch");
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * phi[i];
    return rms(prod) / (rms(a) * rms(phi));
}

}  // namespace

double energy(const VectorField& u, const VectorField& b) {
    return 0.5 * (inner_l2(u, u) + inner_l2(b, b));
}

double cross_helicity(const VectorField& u, const VectorField& b) {
    return inner_l2(u, b);
}

VectorField vector_potential(const VectorField& b) {
    const double size = 1.0 + mean_lp_norm(b, 2.0);
    for (int i = 0; i < 3; ++i) {
        ScalarField comp = component_field(b, i);
        check_internal(std::abs(mean(comp)) <= 1e-10 * size,
                       "vector potential requires a zero-mean field");
    }
    check_internal(mean_lp_norm(divergence(b), 2.0) <= 1e-8 * size,
                   "vector potential requires a solenoidal field");
    return curl(inv_neg_laplacian(b));
}

double magnetic_helicity(const VectorField& b) {
    return inner_l2(vector_potential(b), b);
}

double magnetic_helicity_gauge_deviation(const VectorField& b, unsigned seed) {
    const VectorField a = vector_potential(b);
    const double h = inner_l2(a, b);

    // Band-limited pseudo-random gauge function chi.
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ScalarField chi(b.n);
    const int modes = 3;
    struct Mode {
        int kx, ky, kz;
        double amp, phase;
    };
    std::vector<Mode> ms;
    for (int m = 0; m < 8; ++m) {
        Mode mo;
        mo.kx = 1 + static_cast<int>((unif(rng) + 1.0) * 0.5 * modes);
        mo.ky = 1 + static_cast<int>((unif(rng) + 1.0) * 0.5 * modes);
        mo.kz = 1 + static_cast<int>((unif(rng) + 1.0) * 0.5 * modes);
        mo.amp = unif(rng);
        mo.phase = M_PI * unif(rng);
        ms.push_back(mo);
    }
    const int n = b.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x = grid_coord(n, ix);
        for (int iy = 0; iy < n; ++iy) {
            const double y = grid_coord(n, iy);
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double z = grid_coord(n, iz);
                double v = 0.0;
                for (const Mode& mo : ms) {
                    v += mo.amp *
                         std::cos(mo.kx * x + mo.ky * y + mo.kz * z + mo.phase);
                }
                chi.v[idx] = v;
            }
        }
    }

    VectorField shifted = a + gradient(chi);
    const double h_shifted = inner_l2(shifted, b);
    return std::abs(h_shifted - h) / (1.0 + std::abs(h));
}

double velocity_weak_residual(const State& s, int j, ProductMode mode) {
    check_slice_range(s, j, 1, "velocity residual needs an interior slice");
    const VectorField& u = s.u[static_cast<std::size_t>(j)];
    const VectorField& b = s.b[static_cast<std::size_t>(j)];
    TensorField flux = outer_product(u, u, mode);
    add_scaled(flux, -1.0, outer_product(b, b, mode));
    VectorField res = d2_slice(s.u, j, s.dt) + tensor_divergence(flux);
    add_scaled(res, -1.0,
               tensor_divergence(s.r_u[static_cast<std::size_t>(j)]));
    return mean_lp_norm(leray_project(res), 2.0);
}

double magnetic_weak_residual(const State& s, int j, ProductMode mode) {
    check_slice_range(s, j, 1, "magnetic residual needs an interior slice");
    const VectorField& u = s.u[static_cast<std::size_t>(j)];
    const VectorField& b = s.b[static_cast<std::size_t>(j)];
    VectorField res = d2_slice(s.b, j, s.dt) +
                      tensor_divergence(exchange_flux(u, b, mode));
    add_scaled(res, -1.0,
               tensor_divergence(s.r_b[static_cast<std::size_t>(j)]));
    return mean_lp_norm(res, 2.0);
}

double velocity_time_error_estimate(const State& s, int j) {
    check_slice_range(s, j, 2, "time error estimate needs a five-point stencil");
    VectorField diff = d2_slice(s.u, j, s.dt);
    add_scaled(diff, -1.0, d4_slice(s.u, j, s.dt));
    const double base = mean_lp_norm(leray_project(diff), 2.0);
    return base +
           kEstimateFloor *
               (1.0 + mean_lp_norm(s.u[static_cast<std::size_t>(j)], 2.0));
}

double magnetic_time_error_estimate(const State& s, int j) {
    check_slice_range(s, j, 2, "time error estimate needs a five-point stencil");
    VectorField diff = d2_slice(s.b, j, s.dt);
    add_scaled(diff, -1.0, d4_slice(s.b, j, s.dt));
    const double base = mean_lp_norm(diff, 2.0);
    return base +
           kEstimateFloor *
               (1.0 + mean_lp_norm(s.b[static_cast<std::size_t>(j)], 2.0));
}

int slice_index_at(const State& s, double t) {
    check_internal(s.dt > 0.0 && s.slices() > 0, "empty state");
    const int j = static_cast<int>(std::lround((t - s.t0) / s.dt));
    check_internal(j >= 0 && j < s.slices(), "requested time outside the state");
    check_internal(std::abs(s.time_at(j) - t) <= 1e-9 * std::max(1.0, std::abs(t)),
                   "requested time does not lie on the slice grid");
    return j;
}

DiagnosticsReport diagnose(const State& s, ProductMode mode) {
    DiagnosticsReport rep;
    rep.q = s.q;
    rep.n = s.n;
    rep.dt = s.dt;
    const int slices = s.slices();
    const std::array<double, 3> finite_ps{1.0, 2.0, 3.0};
    for (int j = 0; j < slices; ++j) {
        SliceDiagnostics row;
        row.j = j;
        row.t = s.time_at(j);
        const std::size_t sj = static_cast<std::size_t>(j);
        row.energy = energy(s.u[sj], s.b[sj]);
        row.cross_helicity = cross_helicity(s.u[sj], s.b[sj]);
        row.magnetic_helicity = magnetic_helicity(s.b[sj]);
        for (std::size_t pi = 0; pi < finite_ps.size(); ++pi) {
            row.u_lp[pi] = mean_lp_norm(s.u[sj], finite_ps[pi]);
            row.b_lp[pi] = mean_lp_norm(s.b[sj], finite_ps[pi]);
            row.ru_lp[pi] = mean_lp_norm(s.r_u[sj], finite_ps[pi]);
            row.rb_lp[pi] = mean_lp_norm(s.r_b[sj], finite_ps[pi]);
        }
        row.u_lp[3] = linf_norm(s.u[sj]);
        row.b_lp[3] = linf_norm(s.b[sj]);
        row.ru_lp[3] = linf_norm(s.r_u[sj]);
        row.rb_lp[3] = linf_norm(s.r_b[sj]);

        row.u_c1 = row.u_lp[3] + sup_spectral_gradient(s.u[sj]);
        row.b_c1 = row.b_lp[3] + sup_spectral_gradient(s.b[sj]);
        row.interior = (j >= 1 && j <= slices - 2);
        if (row.interior) {
            row.u_c1 += linf_norm(d2_slice(s.u, j, s.dt));
            row.b_c1 += linf_norm(d2_slice(s.b, j, s.dt));
            row.residual_u = velocity_weak_residual(s, j, mode);
            row.residual_b = magnetic_weak_residual(s, j, mode);
            rep.max_residual_u = std::max(rep.max_residual_u, row.residual_u);
            rep.max_residual_b = std::max(rep.max_residual_b, row.residual_b);
        }
        row.est_valid = (j >= 2 && j <= slices - 3);
        if (row.est_valid) {
            row.est_u = velocity_time_error_estimate(s, j);
            row.est_b = magnetic_time_error_estimate(s, j);
            rep.max_est_u = std::max(rep.max_est_u, row.est_u);
            rep.max_est_b = std::max(rep.max_est_b, row.est_b);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

HelicityGrowthReport helicity_growth_report(const State& prev,
                                            const State& next) {
    check_internal(prev.n == next.n, "helicity report needs matching grids");
    check_internal(prev.dt > 0.0 && std::abs(prev.dt - next.dt) <= 1e-12 * prev.dt,
                   "helicity report needs matching time steps");
    HelicityGrowthReport rep;
    for (int j = 0; j < next.slices(); ++j) {
        const double t = next.time_at(j);
        const double pos = (t - prev.t0) / prev.dt;
        const int jp = static_cast<int>(std::lround(pos));
        if (jp < 0 || jp >= prev.slices()) continue;
        if (std::abs(prev.time_at(jp) - t) > 1e-9 * std::max(1.0, std::abs(t)))
            continue;
        const std::size_t sj = static_cast<std::size_t>(j);
        const std::size_t sp = static_cast<std::size_t>(jp);
        const VectorField a_prev = vector_potential(prev.b[sp]);
        const VectorField a_next = vector_potential(next.b[sj]);
        HelicityGrowthRow row;
        row.t = t;
        row.h_prev = inner_l2(a_prev, prev.b[sp]);
        row.h_next = inner_l2(a_next, next.b[sj]);
        row.deviation = std::abs(row.h_next - row.h_prev);
        row.da_l2 = integral_lp_norm(a_next - a_prev, 2.0);
        row.b_next_l2 = integral_lp_norm(next.b[sj], 2.0);
        row.a_prev_l2 = integral_lp_norm(a_prev, 2.0);
        row.db_l2 = integral_lp_norm(next.b[sj] - prev.b[sp], 2.0);
        row.bound = row.da_l2 * row.b_next_l2 + row.a_prev_l2 * row.db_l2;
        row.within_bound = row.deviation <= row.bound * (1.0 + 1e-10) + 1e-12;
        rep.rows.push_back(row);
    }
    return rep;
}

DecorrelationReport decorrelation_sweep(const std::vector<int>& fasts, double r,
                                        int samples) {
    DecorrelationReport rep;
    rep.r = r;
    rep.samples = samples;
    std::vector<double> a(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        a[static_cast<std::size_t>(i)] =
            std::sin(2.0 * M_PI * static_cast<double>(i) / samples);
    }
    for (int fast : fasts) {
        DecorrelationRow row;
        row.fast = fast;
        row.ratio = modulation_ratio(a, comb_table(fast, r, samples));
        rep.rows.push_back(row);
    }
    return rep;
}

double decorrelation_ratio_constant(int fast, double r, int samples) {
    std::vector<double> a(static_cast<std::size_t>(samples), 2.0);
    return modulation_ratio(a, comb_table(fast, r, samples));
}

CommutatorGainReport commutator_gain_sweep(int n, const std::vector<int>& kappas,
                                           bool modulated) {
    CommutatorGainReport rep;
    rep.modulated = modulated;
    std::vector<double> log_kappa, log_gain;
    for (int kappa : kappas) {
        check_internal(kappa >= 2 && kappa + 1 < n / 2,
                       "gain sweep frequency not resolvable");
        ScalarField f(n), prod(n);
        std::vector<double> ftab(static_cast<std::size_t>(n)),
            atab(static_cast<std::size_t>(n));
        for (int ix = 0; ix < n; ++ix) {
            const double x = grid_coord(n, ix);
            ftab[static_cast<std::size_t>(ix)] = std::sin(kappa * x);
            atab[static_cast<std::size_t>(ix)] = modulated ? std::sin(x) : 1.0;
        }
        std::size_t idx = 0;
        for (int ix = 0; ix < n; ++ix) {
            const double fv = ftab[static_cast<std::size_t>(ix)];
            const double pv = atab[static_cast<std::size_t>(ix)] * fv;
            for (int iy = 0; iy < n; ++iy) {
                for (int iz = 0; iz < n; ++iz, ++idx) {
                    f.v[idx] = fv;
                    prod.v[idx] = pv;
                }
            }
        }
        CommutatorGainRow row;
        row.kappa = kappa;
        row.gain = mean_lp_norm(inv_modulus(prod), 2.0);
        row.reference = mean_lp_norm(f, 2.0) / kappa;
        row.ratio = row.gain / row.reference;
        rep.rows.push_back(row);
        log_kappa.push_back(std::log2(static_cast<double>(kappa)));
        log_gain.push_back(std::log2(row.gain));
    }
    if (rep.rows.size() >= 2) rep.slope = lstsq_slope(log_kappa, log_gain);
    return rep;
}

}  // namespace mhdci
