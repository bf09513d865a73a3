#include "mhdci/iteration.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <utility>

#include "mhdci/amplitudes.hpp"
#include "mhdci/geometry.hpp"
#include "mhdci/invdiv.hpp"

namespace mhdci {

namespace {

// a (x) b + b (x) a from a single product tensor; entry (j,i) reuses the
// bitwise-identical products of entry (i,j), so the result is symmetric to
// the last bit in either product mode.
TensorField sym_pair(const VectorField& a, const VectorField& b, ProductMode mode) {
    TensorField p = outer_product(a, b, mode);
    TensorField s(p.n);
    const std::size_t total = grid_size(p.n);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto& pij = p.c[static_cast<std::size_t>(3 * i + j)];
            const auto& pji = p.c[static_cast<std::size_t>(3 * j + i)];
            auto& out = s.c[static_cast<std::size_t>(3 * i + j)];
            for (std::size_t m = 0; m < total; ++m) out[m] = pij[m] + pji[m];
        }
    return s;
}

// a (x) b - b (x) a, skew to the last bit for the same reason.
TensorField wedge_pair(const VectorField& a, const VectorField& b, ProductMode mode) {
    TensorField p = outer_product(a, b, mode);
    TensorField s(p.n);
    const std::size_t total = grid_size(p.n);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto& pij = p.c[static_cast<std::size_t>(3 * i + j)];
            const auto& pji = p.c[static_cast<std::size_t>(3 * j + i)];
            auto& out = s.c[static_cast<std::size_t>(3 * i + j)];
            for (std::size_t m = 0; m < total; ++m) out[m] = pij[m] - pji[m];
        }
    return s;
}

// Symmetrize, then rebuild the diagonal so that the left-associated trace
// c00 + c11 + c22 is exactly zero.
void enforce_sym_traceless_inplace(TensorField& t) {
    const std::size_t total = grid_size(t.n);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            auto& hi = t.c[static_cast<std::size_t>(3 * i + j)];
            auto& lo = t.c[static_cast<std::size_t>(3 * j + i)];
            for (std::size_t m = 0; m < total; ++m) {
                const double v = 0.5 * (hi[m] + lo[m]);
                hi[m] = v;
                lo[m] = v;
            }
        }
    auto& d0 = t.c[0];
    auto& d1 = t.c[4];
    auto& d2 = t.c[8];
    for (std::size_t m = 0; m < total; ++m) {
        const double tr = (d0[m] + d1[m]) + d2[m];
        const double adj = tr / 3.0;
        d0[m] -= adj;
        d1[m] -= adj;
        d2[m] = -(d0[m] + d1[m]);
    }
}

void enforce_skew_inplace(TensorField& t) {
    const std::size_t total = grid_size(t.n);
    t.c[0].assign(total, 0.0);
    t.c[4].assign(total, 0.0);
    t.c[8].assign(total, 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            auto& hi = t.c[static_cast<std::size_t>(3 * i + j)];
            auto& lo = t.c[static_cast<std::size_t>(3 * j + i)];
            for (std::size_t m = 0; m < total; ++m) {
                const double v = 0.5 * (hi[m] - lo[m]);
                hi[m] = v;
                lo[m] = -v;
            }
        }
}

// Fourth-order centered first derivative of a slice ring.
ScalarField d4_stencil(const ScalarField& m2, const ScalarField& m1,
                       const ScalarField& p1, const ScalarField& p2, double dt) {
    ScalarField out(m1.n);
    const std::size_t total = grid_size(m1.n);
    const double c = 1.0 / (12.0 * dt);
    for (std::size_t m = 0; m < total; ++m)
        out.v[m] = (8.0 * (p1.v[m] - m1.v[m]) - (p2.v[m] - m2.v[m])) * c;
    return out;
}

// Spatially mollified raw pieces of one input slice, including the mollified
// quadratic products the commutator stresses need.
struct SpSlice {
    VectorField u, b;
    ScalarField p;
    TensorField r_u, r_b;
    TensorField pu;  // moll(u (x) u - b (x) b), symmetric bitwise
    TensorField pb;  // moll(u (x) b - b (x) u), skew bitwise
};

SpSlice make_sp_slice(const State& s, int i, const SpaceMollifier& sm,
                      ProductMode mode) {
    const std::size_t ii = static_cast<std::size_t>(i);
    SpSlice out;
    out.u = apply(sm, s.u[ii]);
    out.b = apply(sm, s.b[ii]);
    out.p = apply(sm, s.p[ii]);
    out.r_u = apply(sm, s.r_u[ii]);
    out.r_b = apply(sm, s.r_b[ii]);
    TensorField quad = outer_product(s.u[ii], s.u[ii], mode) -
                       outer_product(s.b[ii], s.b[ii], mode);
    out.pu = apply(sm, quad);
    out.pb = apply(sm, wedge_pair(s.u[ii], s.b[ii], mode));
    return out;
}

struct MollSlice {
    VectorField u, b;
    ScalarField p;
    TensorField r_u, r_b;
};

MollSlice compose_moll(const std::deque<SpSlice>& ring, const TimeMollifier& tm,
                       ProductMode mode) {
    const int n = ring.front().u.n;
    VectorField u(n), b(n);
    ScalarField p(n);
    TensorField r_u(n), r_b(n), pu(n), pb(n);
    for (std::size_t k = 0; k < ring.size(); ++k) {
        const double w = tm.w[k];
        add_scaled(u, w, ring[k].u);
        add_scaled(b, w, ring[k].b);
        add_scaled(p, w, ring[k].p);
        add_scaled(r_u, w, ring[k].r_u);
        add_scaled(r_b, w, ring[k].r_b);
        add_scaled(pu, w, ring[k].pu);
        add_scaled(pb, w, ring[k].pb);
    }

    MollSlice out;
    // Velocity commutator: (u_l (x) u_l - b_l (x) b_l)° - moll(u(x)u - b(x)b)°.
    TensorField g = outer_product(u, u, mode) - outer_product(b, b, mode);
    out.r_u = r_u + traceless_part(g) - traceless_part(pu);
    out.p = p;
    add_scaled(out.p, -1.0 / 3.0, trace_field(g));
    add_scaled(out.p, 1.0 / 3.0, trace_field(pu));
    // Magnetic commutator: (u_l (x) b_l - b_l (x) u_l) - moll(u(x)b - b(x)u).
    out.r_b = r_b + wedge_pair(u, b, mode) - pb;
    out.u = std::move(u);
    out.b = std::move(b);
    return out;
}

double max_component_mean(const VectorField& v) {
    double worst = 0.0;
    const std::size_t total = grid_size(v.n);
    for (const auto& comp : v.c) {
        double s = 0.0;
        for (std::size_t m = 0; m < total; ++m) s += comp[m];
        worst = std::max(worst, std::abs(s / static_cast<double>(total)));
    }
    return worst;
}

Mat3 tensor_mean(const TensorField& t) {
    Mat3 out = mat3_zero();
    const std::size_t total = grid_size(t.n);
    for (int c = 0; c < 9; ++c) {
        double s = 0.0;
        for (std::size_t m = 0; m < total; ++m) s += t.c[static_cast<std::size_t>(c)][m];
        out[c] = s / static_cast<double>(total);
    }
    return out;
}

double field_mean(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s / static_cast<double>(f.v.size());
}

// sup of |grad f| over all components of a vector field.
double sup_gradient(const VectorField& v) {
    double worst = 0.0;
    for (int comp = 0; comp < 3; ++comp) {
        ScalarField f(v.n);
        f.v.assign(v.c[static_cast<std::size_t>(comp)].begin(),
                   v.c[static_cast<std::size_t>(comp)].end());
        for (int axis = 0; axis < 3; ++axis)
            worst = std::max(worst, linf_norm(derivative(f, axis)));
    }
    return worst;
}

}  // namespace

MollifiedState mollify_state(const State& s, double ell, ProductMode mode) {
    if (s.slices() < 1) throw std::invalid_argument("empty state");
    const SpaceMollifier sm = make_space_mollifier(s.n, ell);
    const TimeMollifier tm = make_time_mollifier(ell, s.dt);
    const int h = tm.halfwidth;
    if (s.slices() < 2 * h + 1)
        throw std::invalid_argument("state too short for the time kernel");

    MollifiedState out;
    out.n = s.n;
    out.ell = ell;
    out.halfwidth = h;
    out.offset = h;
    out.degenerate_time_kernel = (h == 0);

    std::deque<SpSlice> ring;
    for (int i = 0; i < s.slices(); ++i) {
        ring.push_back(make_sp_slice(s, i, sm, mode));
        if (static_cast<int>(ring.size()) > 2 * h + 1) ring.pop_front();
        if (static_cast<int>(ring.size()) == 2 * h + 1) {
            MollSlice m = compose_moll(ring, tm, mode);
            out.u.push_back(std::move(m.u));
            out.b.push_back(std::move(m.b));
            out.p.push_back(std::move(m.p));
            out.r_u.push_back(std::move(m.r_u));
            out.r_b.push_back(std::move(m.r_b));
        }
    }
    return out;
}

int step_time_padding(const ParamSet& params, int q, double dt) {
    const ScaleSet sc = derive_scales(params, q);
    return make_time_mollifier(sc.ell, dt).halfwidth + 2;
}

StepResult perform_step(const State& s, const StepConfig& cfg) {
    const int n = s.n;
    const ScaleSet sc = derive_scales(cfg.params, s.q);
    if (!sc.r_lambda_in_u64 || !sc.lambda_q1_in_u64)
        throw std::invalid_argument(
            "step scales are not exactly representable; adjust a, b or q");

    const SpaceMollifier sm = make_space_mollifier(n, sc.ell);
    const TimeMollifier tm = make_time_mollifier(sc.ell, s.dt);
    const int h = tm.halfwidth;
    const int off = h + 2;
    const int slices_in = s.slices();
    const int out_count = slices_in - 2 * off;
    if (out_count < 1)
        throw std::invalid_argument("input slab too short: need slices > 2*(halfwidth+2)");

    const BlockSet blocks = make_block_set(sc, n);
    const double inv_f2 = 1.0 / (blocks.fast * blocks.fast);
    const double delta = sc.delta_q1;

    // Constant per-block dyads.
    std::array<Mat3, 6> dyad_u{};
    std::array<Vec3, 6> pol_u{};
    for (int k = 0; k < 6; ++k) {
        const Frame& fr = blocks.vel[static_cast<std::size_t>(k)].frame;
        dyad_u[static_cast<std::size_t>(k)] = outer(fr.k1, fr.k1);
        pol_u[static_cast<std::size_t>(k)] = fr.k1;
    }
    std::array<Mat3, 5> dyad_b{}, wedge_b{};
    std::array<Vec3, 5> pol_b1{}, pol_b2{};
    for (int k = 0; k < 5; ++k) {
        const Frame& fr = blocks.mag[static_cast<std::size_t>(k)].frame;
        dyad_b[static_cast<std::size_t>(k)] =
            outer(fr.k1, fr.k1) - outer(fr.k2, fr.k2);
        wedge_b[static_cast<std::size_t>(k)] = wedge(fr.k1, fr.k2);
        pol_b1[static_cast<std::size_t>(k)] = fr.k1;
        pol_b2[static_cast<std::size_t>(k)] = fr.k2;
    }

    StepResult res;
    StepReport& rep = res.report;
    rep.q_from = s.q;
    rep.q_to = s.q + 1;
    rep.n = n;
    rep.dt = s.dt;
    rep.t0_out = s.t0 + off * s.dt;
    rep.slices_in = slices_in;
    rep.slices_out = out_count;
    rep.regime = validate_regime(cfg.params, s.q);
    rep.resolution = check_resolution(sc.lambda_q1, n, 1e-3);
    rep.ell = sc.ell;
    rep.r = sc.r;
    rep.r_lambda = static_cast<long long>(sc.r_lambda_int);
    rep.mollifier_halfwidth = h;
    rep.time_mollifier_degenerate = (h == 0);

    State& out = res.next;
    out.q = s.q + 1;
    out.n = n;
    out.dt = s.dt;
    out.t0 = rep.t0_out;

    // Margin accumulators.
    double sup_u_l2 = 0.0, sup_b_l2 = 0.0, sup_u_inf = 0.0, sup_b_inf = 0.0;
    double sup_grad_u = 0.0, sup_grad_b = 0.0;
    double sup_ru_l1 = 0.0, sup_rb_l1 = 0.0;
    double sup_inc_u = 0.0, sup_inc_b = 0.0;

    std::deque<MollSlice> mollring;         // last 3 mollified slices
    std::deque<AmplitudeBundle> ampring;    // last 5 amplitude bundles
    std::deque<SpSlice> spring;             // last 2h+1 spatial slices

    const std::size_t total = grid_size(n);

    for (int i = 0; i < slices_in; ++i) {
        spring.push_back(make_sp_slice(s, i, sm, cfg.products));
        if (static_cast<int>(spring.size()) > 2 * h + 1) spring.pop_front();
        if (static_cast<int>(spring.size()) < 2 * h + 1) continue;

        const int c = i - h;  // input index of the newly mollified slice
        mollring.push_back(compose_moll(spring, tm, cfg.products));
        const MollSlice& newest = mollring.back();
        ampring.push_back(build_amplitudes(newest.r_u, newest.r_b, delta,
                                           cfg.params.c_u, cfg.params.c_b));
        rep.chi_max_arg_b = std::max(
            rep.chi_max_arg_b, linf_norm(newest.r_b) / (cfg.params.c_b * delta));
        {
            TensorField arg = newest.r_u + ampring.back().g_b;
            rep.chi_max_arg_u = std::max(
                rep.chi_max_arg_u, linf_norm(arg) / (cfg.params.c_u * delta));
        }
        if (static_cast<int>(mollring.size()) > 3) mollring.pop_front();
        if (static_cast<int>(ampring.size()) > 5) ampring.pop_front();
        if (static_cast<int>(ampring.size()) < 5) continue;

        // Assemble output for the ring center: input index cc = c - 2.
        const int cc = c - 2;
        const MollSlice& ml = mollring.front();
        const AmplitudeBundle& am = ampring[2];

        // ---- perturbation synthesis ---------------------------------
        VectorField w_p(n), d_p(n), pw(n), pd(n), pw_dt(n), pd_dt(n);
        auto accumulate = [&](const ScalarField& amp, const ScalarField& amp_dt,
                              const Block& blk, const Vec3& dir, VectorField& prin,
                              VectorField& pot, VectorField& pot_dt) {
            for (int comp = 0; comp < 3; ++comp) {
                const double dv = dir[static_cast<std::size_t>(comp)];
                if (dv == 0.0) continue;
                auto& pr = prin.c[static_cast<std::size_t>(comp)];
                auto& po = pot.c[static_cast<std::size_t>(comp)];
                auto& pt = pot_dt.c[static_cast<std::size_t>(comp)];
                const auto& phi = blk.phi.v;
                const auto& potv = blk.pot.v;
                const double dpot = dv * inv_f2;
                for (std::size_t m = 0; m < total; ++m) {
                    pr[m] += amp.v[m] * phi[m] * dv;
                    po[m] += amp.v[m] * potv[m] * dpot;
                    pt[m] += amp_dt.v[m] * potv[m] * dpot;
                }
            }
        };

        for (int k = 0; k < 6; ++k) {
            const ScalarField a_dt =
                d4_stencil(ampring[0].a_u[static_cast<std::size_t>(k)],
                           ampring[1].a_u[static_cast<std::size_t>(k)],
                           ampring[3].a_u[static_cast<std::size_t>(k)],
                           ampring[4].a_u[static_cast<std::size_t>(k)], s.dt);
            accumulate(am.a_u[static_cast<std::size_t>(k)], a_dt,
                       blocks.vel[static_cast<std::size_t>(k)],
                       pol_u[static_cast<std::size_t>(k)], w_p, pw, pw_dt);
        }
        for (int k = 0; k < 5; ++k) {
            const ScalarField a_dt =
                d4_stencil(ampring[0].a_b[static_cast<std::size_t>(k)],
                           ampring[1].a_b[static_cast<std::size_t>(k)],
                           ampring[3].a_b[static_cast<std::size_t>(k)],
                           ampring[4].a_b[static_cast<std::size_t>(k)], s.dt);
            const Block& blk = blocks.mag[static_cast<std::size_t>(k)];
            accumulate(am.a_b[static_cast<std::size_t>(k)], a_dt, blk,
                       pol_b1[static_cast<std::size_t>(k)], w_p, pw, pw_dt);
            accumulate(am.a_b[static_cast<std::size_t>(k)], a_dt, blk,
                       pol_b2[static_cast<std::size_t>(k)], d_p, pd, pd_dt);
        }

        VectorField w = curl_curl(pw);
        VectorField d = curl_curl(pd);
        VectorField dtw = curl_curl(pw_dt);
        VectorField dtd = curl_curl(pd_dt);
        VectorField w_c = w - w_p;
        VectorField d_c = d - d_p;
        VectorField u1 = ml.u + w;
        VectorField b1 = ml.b + d;

        // ---- low-frequency carried tensors and oscillation remainders
        TensorField s_low = am.g_b;  // magnetic counter-flux, exact reuse
        TensorField a_low(n), m_diag_u(n), m_diag_b(n);
        for (int k = 0; k < 6; ++k) {
            const auto& a = am.a_u[static_cast<std::size_t>(k)].v;
            const auto& phi = blocks.vel[static_cast<std::size_t>(k)].phi.v;
            const Mat3& dy = dyad_u[static_cast<std::size_t>(k)];
            for (int cmp = 0; cmp < 9; ++cmp) {
                if (dy[static_cast<std::size_t>(cmp)] == 0.0) continue;
                const double dv = dy[static_cast<std::size_t>(cmp)];
                auto& sl = s_low.c[static_cast<std::size_t>(cmp)];
                auto& md = m_diag_u.c[static_cast<std::size_t>(cmp)];
                for (std::size_t m = 0; m < total; ++m) {
                    const double a2 = a[m] * a[m];
                    sl[m] += a2 * dv;
                    md[m] += a2 * (phi[m] * phi[m] - 1.0) * dv;
                }
            }
        }
        for (int k = 0; k < 5; ++k) {
            const auto& a = am.a_b[static_cast<std::size_t>(k)].v;
            const auto& phi = blocks.mag[static_cast<std::size_t>(k)].phi.v;
            const Mat3& dy = dyad_b[static_cast<std::size_t>(k)];
            const Mat3& we = wedge_b[static_cast<std::size_t>(k)];
            for (int cmp = 0; cmp < 9; ++cmp) {
                const double dv = dy[static_cast<std::size_t>(cmp)];
                const double wv = we[static_cast<std::size_t>(cmp)];
                if (dv == 0.0 && wv == 0.0) continue;
                auto& md = m_diag_u.c[static_cast<std::size_t>(cmp)];
                auto& al = a_low.c[static_cast<std::size_t>(cmp)];
                auto& mb = m_diag_b.c[static_cast<std::size_t>(cmp)];
                for (std::size_t m = 0; m < total; ++m) {
                    const double a2 = a[m] * a[m];
                    const double osc = phi[m] * phi[m] - 1.0;
                    if (dv != 0.0) md[m] += a2 * osc * dv;
                    if (wv != 0.0) {
                        al[m] += a2 * wv;
                        mb[m] += a2 * osc * wv;
                    }
                }
            }
        }

        TensorField quad = outer_product(w_p, w_p, cfg.products) -
                           outer_product(d_p, d_p, cfg.products);
        TensorField t_cross = quad - s_low - m_diag_u;
        TensorField quad_b = wedge_pair(w_p, d_p, cfg.products);
        TensorField t_cross_b = quad_b - a_low - m_diag_b;

        // ---- zero-mode oscillation audit ----------------------------
        {
            const Mat3 mb = tensor_mean(a_low + ml.r_b);
            rep.zero_mode_audit_b = std::max(rep.zero_mode_audit_b, frobenius(mb));
            Mat3 mu = tensor_mean(s_low + ml.r_u);
            const double rho_mean = field_mean(am.rho_u);
            mu[0] -= rho_mean;
            mu[4] -= rho_mean;
            mu[8] -= rho_mean;
            rep.zero_mode_audit_u = std::max(rep.zero_mode_audit_u, frobenius(mu));
        }

        // ---- stress assembly ----------------------------------------
        TensorField lin = sym_pair(ml.u, w, cfg.products) -
                          sym_pair(ml.b, d, cfg.products);
        TensorField lin_b = wedge_pair(ml.u, d, cfg.products) +
                            wedge_pair(w, ml.b, cfg.products);
        TensorField corr = outer_product(w, w_c, cfg.products) +
                           outer_product(w_c, w_p, cfg.products) -
                           outer_product(d, d_c, cfg.products) -
                           outer_product(d_c, d_p, cfg.products);
        TensorField corr_b = outer_product(w, d_c, cfg.products) +
                             outer_product(w_c, d_p, cfg.products) -
                             outer_product(d, w_c, cfg.products) -
                             outer_product(d_c, w_p, cfg.products);
        TensorField carried_u = s_low + ml.r_u;

        ScalarField p1 = ml.p;
        add_scaled(p1, -1.0 / 3.0, trace_field(lin));
        add_scaled(p1, -1.0 / 3.0, trace_field(t_cross));
        add_scaled(p1, -1.0 / 3.0, trace_field(corr));
        add_scaled(p1, -1.0 / 3.0, trace_field(carried_u));

        TensorField r1u = inv_divergence_sym(dtw);
        add_scaled(r1u, 1.0, inv_divergence_sym(tensor_divergence(m_diag_u)));
        add_scaled(r1u, 1.0, traceless_part(lin));
        add_scaled(r1u, 1.0, traceless_part(t_cross));
        add_scaled(r1u, 1.0, traceless_part(corr));
        add_scaled(r1u, 1.0, traceless_part(carried_u));

        TensorField r1b = inv_divergence_skew(dtd);
        add_scaled(r1b, 1.0, inv_divergence_skew(tensor_divergence(m_diag_b)));
        add_scaled(r1b, 1.0, lin_b);
        add_scaled(r1b, 1.0, t_cross_b);
        add_scaled(r1b, 1.0, corr_b);
        add_scaled(r1b, 1.0, a_low + ml.r_b);

        // ---- structure enforcement and audits -----------------------
        rep.pre_sym_defect_ru = std::max(rep.pre_sym_defect_ru, max_asymmetry(r1u));
        rep.pre_trace_ru = std::max(rep.pre_trace_ru, max_trace(r1u));
        enforce_sym_traceless_inplace(r1u);
        rep.post_sym_defect_ru = std::max(rep.post_sym_defect_ru, max_asymmetry(r1u));
        rep.post_trace_ru = std::max(rep.post_trace_ru, max_trace(r1u));

        rep.pre_skew_defect_rb = std::max(rep.pre_skew_defect_rb, max_symmetry(r1b));
        enforce_skew_inplace(r1b);
        rep.post_skew_defect_rb = std::max(rep.post_skew_defect_rb, max_symmetry(r1b));

        rep.max_mean_u = std::max(rep.max_mean_u, max_component_mean(u1));
        rep.max_mean_b = std::max(rep.max_mean_b, max_component_mean(b1));
        remove_mean_inplace(u1);
        remove_mean_inplace(b1);
        remove_mean_inplace(p1);

        rep.max_div_u = std::max(rep.max_div_u, linf_norm(divergence(u1)));
        rep.max_div_b = std::max(rep.max_div_b, linf_norm(divergence(b1)));

        // ---- pressure cross-check -----------------------------------
        {
            TensorField m = r1u - outer_product(u1, u1, cfg.products) +
                            outer_product(b1, b1, cfg.products);
            ScalarField rhs = divergence(tensor_divergence(m));
            ScalarField lap = divergence(gradient(p1));
            const double num = mean_lp_norm(lap - rhs, 2.0);
            const double den = 1.0 + mean_lp_norm(rhs, 2.0);
            rep.pressure_poisson_residual =
                std::max(rep.pressure_poisson_residual, num / den);
        }

        // ---- margins ------------------------------------------------
        sup_u_l2 = std::max(sup_u_l2, mean_lp_norm(u1, 2.0));
        sup_b_l2 = std::max(sup_b_l2, mean_lp_norm(b1, 2.0));
        sup_u_inf = std::max(sup_u_inf, linf_norm(u1));
        sup_b_inf = std::max(sup_b_inf, linf_norm(b1));
        sup_grad_u = std::max(sup_grad_u, sup_gradient(u1));
        sup_grad_b = std::max(sup_grad_b, sup_gradient(b1));
        sup_ru_l1 = std::max(sup_ru_l1, mean_lp_norm(r1u, 1.0));
        sup_rb_l1 = std::max(sup_rb_l1, mean_lp_norm(r1b, 1.0));
        sup_inc_u = std::max(
            sup_inc_u, mean_lp_norm(u1 - s.u[static_cast<std::size_t>(cc)], 2.0));
        sup_inc_b = std::max(
            sup_inc_b, mean_lp_norm(b1 - s.b[static_cast<std::size_t>(cc)], 2.0));
        rep.w_l2 = std::max(rep.w_l2, mean_lp_norm(w, 2.0));
        rep.d_l2 = std::max(rep.d_l2, mean_lp_norm(d, 2.0));
        rep.w_sup = std::max(rep.w_sup, linf_norm(w));
        rep.d_sup = std::max(rep.d_sup, linf_norm(d));

        if (cfg.keep_details) {
            StepDetail det;
            det.t = s.time_at(cc);
            det.w = w;
            det.d = d;
            det.w_p = w_p;
            det.d_p = d_p;
            det.s_low = s_low;
            det.a_low = a_low;
            det.rho_u = am.rho_u;
            det.rho_b = am.rho_b;
            res.details.push_back(std::move(det));
        }

        out.u.push_back(std::move(u1));
        out.b.push_back(std::move(b1));
        out.p.push_back(std::move(p1));
        out.r_u.push_back(std::move(r1u));
        out.r_b.push_back(std::move(r1b));
    }

    check_internal(out.slices() == out_count, "output slice bookkeeping broke");

    // Time-derivative sup for the C^1 budgets (centered differences over the
    // output slab interior; 0 when the slab is too short to measure).
    double sup_dt_u = 0.0, sup_dt_b = 0.0;
    for (int j = 1; j + 1 < out_count; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        VectorField du = scale(1.0 / (2.0 * s.dt), out.u[ju + 1] - out.u[ju - 1]);
        VectorField db = scale(1.0 / (2.0 * s.dt), out.b[ju + 1] - out.b[ju - 1]);
        sup_dt_u = std::max(sup_dt_u, linf_norm(du));
        sup_dt_b = std::max(sup_dt_b, linf_norm(db));
    }

    const double lam2 = sc.lambda_q1 * sc.lambda_q1;
    const double half = std::sqrt(sc.delta_q1);
    auto add_margin = [&](const char* name, double value, double budget) {
        rep.margins.push_back(MarginRow{name, value, budget, value <= budget});
    };
    add_margin("velocity_l2_budget", sup_u_l2, 1.0 - half);
    add_margin("magnetic_l2_budget", sup_b_l2, 1.0 - half);
    add_margin("velocity_c1_budget", sup_u_inf + sup_grad_u + sup_dt_u, lam2);
    add_margin("magnetic_c1_budget", sup_b_inf + sup_grad_b + sup_dt_b, lam2);
    add_margin("velocity_stress_l1", sup_ru_l1, cfg.params.c_u * sc.delta_q2);
    add_margin("magnetic_stress_l1", sup_rb_l1, cfg.params.c_b * sc.delta_q2);
    add_margin("velocity_increment_l2", sup_inc_u, half);
    add_margin("magnetic_increment_l2", sup_inc_b, half);

    return res;
}

}  // namespace mhdci
