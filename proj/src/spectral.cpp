#include "mhdci/spectral.hpp"

#include <cmath>
#include <functional>

namespace mhdci {

namespace {

// Applies a multiplier g(kx, ky, kz) given as separate real and imaginary
// parts evaluated at signed frequencies.  odd == true zeroes the Nyquist
// planes (required for operators odd in k).
template <typename G>
Spectrum mapped(const Spectrum& s, bool odd, G g) {
    Spectrum out(s.n);
    const int n = s.n;
    const int half = n / 2;
    for (int ix = 0; ix < n; ++ix) {
        const int kx = signed_freq(n, ix);
        for (int iy = 0; iy < n; ++iy) {
            const int ky = signed_freq(n, iy);
            for (int iz = 0; iz <= half; ++iz) {
                const int kz = iz;
                const std::size_t id = s.idx(ix, iy, iz);
                if (odd && (std::abs(kx) == half || std::abs(ky) == half || kz == half)) {
                    out.m[id] = 0.0;
                    continue;
                }
                out.m[id] = g(kx, ky, kz) * s.m[id];
            }
        }
    }
    return out;
}

ScalarField apply_scalar_multiplier(const ScalarField& f, bool odd,
                                    const std::function<std::complex<double>(int, int, int)>& g) {
    return inverse_fft(mapped(forward_fft(f), odd, g));
}

}  // namespace

ScalarField derivative(const ScalarField& f, int axis) {
    check_internal(axis >= 0 && axis < 3, "derivative axis out of range");
    return apply_scalar_multiplier(f, true, [axis](int kx, int ky, int kz) {
        const int k[3] = {kx, ky, kz};
        return std::complex<double>(0.0, static_cast<double>(k[axis]));
    });
}

VectorField gradient(const ScalarField& f) {
    VectorField g(f.n);
    Spectrum s = forward_fft(f);
    for (int axis = 0; axis < 3; ++axis) {
        Spectrum d = mapped(s, true, [axis](int kx, int ky, int kz) {
            const int k[3] = {kx, ky, kz};
            return std::complex<double>(0.0, static_cast<double>(k[axis]));
        });
        g.c[axis] = inverse_fft(d).v;
    }
    return g;
}

ScalarField divergence(const VectorField& v) {
    ScalarField out(v.n);
    for (int axis = 0; axis < 3; ++axis) {
        ScalarField comp;
        comp.n = v.n;
        comp.v = v.c[axis];
        ScalarField d = derivative(comp, axis);
        for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += d.v[i];
    }
    return out;
}

VectorField curl(const VectorField& v) {
    const int n = v.n;
    std::array<Spectrum, 3> s;
    for (int c = 0; c < 3; ++c) {
        ScalarField comp;
        comp.n = n;
        comp.v = v.c[c];
        s[c] = forward_fft(comp);
    }
    VectorField out(n);
    const int half = n / 2;
    std::array<Spectrum, 3> o{Spectrum(n), Spectrum(n), Spectrum(n)};
    for (int ix = 0; ix < n; ++ix) {
        const int kx = signed_freq(n, ix);
        for (int iy = 0; iy < n; ++iy) {
            const int ky = signed_freq(n, iy);
            for (int iz = 0; iz <= half; ++iz) {
                const std::size_t id = s[0].idx(ix, iy, iz);
                if (std::abs(kx) == half || std::abs(ky) == half || iz == half) continue;
                const std::complex<double> I(0.0, 1.0);
                const double kxf = kx, kyf = ky, kzf = iz;
                o[0].m[id] = I * (kyf * s[2].m[id] - kzf * s[1].m[id]);
                o[1].m[id] = I * (kzf * s[0].m[id] - kxf * s[2].m[id]);
                o[2].m[id] = I * (kxf * s[1].m[id] - kyf * s[0].m[id]);
            }
        }
    }
    for (int c = 0; c < 3; ++c) out.c[c] = inverse_fft(o[c]).v;
    return out;
}

VectorField curl_curl(const VectorField& v) {
    const int n = v.n;
    std::array<Spectrum, 3> s;
    for (int c = 0; c < 3; ++c) {
        ScalarField comp;
        comp.n = n;
        comp.v = v.c[c];
        s[c] = forward_fft(comp);
    }
    const int half = n / 2;
    std::array<Spectrum, 3> o{Spectrum(n), Spectrum(n), Spectrum(n)};
    for (int ix = 0; ix < n; ++ix) {
        const int kx = signed_freq(n, ix);
        for (int iy = 0; iy < n; ++iy) {
            const int ky = signed_freq(n, iy);
            for (int iz = 0; iz <= half; ++iz) {
                const std::size_t id = s[0].idx(ix, iy, iz);
                if (std::abs(kx) == half || std::abs(ky) == half || iz == half) continue;
                const double k[3] = {static_cast<double>(kx), static_cast<double>(ky),
                                     static_cast<double>(iz)};
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                const std::complex<double> kv =
                    k[0] * s[0].m[id] + k[1] * s[1].m[id] + k[2] * s[2].m[id];
                for (int c = 0; c < 3; ++c) o[c].m[id] = k2 * s[c].m[id] - k[c] * kv;
            }
        }
    }
    VectorField out(n);
    for (int c = 0; c < 3; ++c) out.c[c] = inverse_fft(o[c]).v;
    return out;
}

VectorField tensor_divergence(const TensorField& t) {
    VectorField out(t.n);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            ScalarField comp;
            comp.n = t.n;
            comp.v = t.c[3 * i + j];
            ScalarField d = derivative(comp, j);
            for (std::size_t k = 0; k < d.v.size(); ++k) out.c[i][k] += d.v[k];
        }
    }
    return out;
}

ScalarField inv_neg_laplacian(const ScalarField& f) {
    return apply_scalar_multiplier(f, false, [](int kx, int ky, int kz) {
        const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                          static_cast<double>(kz) * kz;
        return std::complex<double>(k2 > 0 ? 1.0 / k2 : 0.0, 0.0);
    });
}

VectorField inv_neg_laplacian(const VectorField& f) {
    VectorField out(f.n);
    for (int c = 0; c < 3; ++c) {
        ScalarField comp;
        comp.n = f.n;
        comp.v = f.c[c];
        out.c[c] = inv_neg_laplacian(comp).v;
    }
    return out;
}

ScalarField inv_modulus(const ScalarField& f) {
    return apply_scalar_multiplier(f, false, [](int kx, int ky, int kz) {
        const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                          static_cast<double>(kz) * kz;
        return std::complex<double>(k2 > 0 ? 1.0 / std::sqrt(k2) : 0.0, 0.0);
    });
}

ScalarField highpass(const ScalarField& f, double kappa) {
    const double k2min = kappa * kappa;
    return apply_scalar_multiplier(f, false, [k2min](int kx, int ky, int kz) {
        const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                          static_cast<double>(kz) * kz;
        return std::complex<double>(k2 >= k2min ? 1.0 : 0.0, 0.0);
    });
}

VectorField leray_project(const VectorField& v) {
    const int n = v.n;
    std::array<Spectrum, 3> s;
    for (int c = 0; c < 3; ++c) {
        ScalarField comp;
        comp.n = n;
        comp.v = v.c[c];
        s[c] = forward_fft(comp);
    }
    const int half = n / 2;
    for (int ix = 0; ix < n; ++ix) {
        const int kx = signed_freq(n, ix);
        for (int iy = 0; iy < n; ++iy) {
            const int ky = signed_freq(n, iy);
            for (int iz = 0; iz <= half; ++iz) {
                const std::size_t id = s[0].idx(ix, iy, iz);
                const double k[3] = {static_cast<double>(kx), static_cast<double>(ky),
                                     static_cast<double>(iz)};
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 0.0) continue;
                const std::complex<double> kv =
                    (k[0] * s[0].m[id] + k[1] * s[1].m[id] + k[2] * s[2].m[id]) / k2;
                for (int c = 0; c < 3; ++c) s[c].m[id] -= k[c] * kv;
            }
        }
    }
    VectorField out(n);
    for (int c = 0; c < 3; ++c) out.c[c] = inverse_fft(s[c]).v;
    return out;
}

void remove_mean_inplace(ScalarField& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    s /= static_cast<double>(f.v.size());
    for (double& x : f.v) x -= s;
}

void remove_mean_inplace(VectorField& f) {
    for (auto& comp : f.c) {
        double s = 0.0;
        for (double x : comp) s += x;
        s /= static_cast<double>(comp.size());
        for (double& x : comp) x -= s;
    }
}

void remove_mean_inplace(TensorField& f) {
    for (auto& comp : f.c) {
        double s = 0.0;
        for (double x : comp) s += x;
        s /= static_cast<double>(comp.size());
        for (double& x : comp) x -= s;
    }
}

ScalarField roll_nodes(const ScalarField& f, int sx, int sy, int sz) {
    const int n = f.n;
    auto wrap = [n](int i) {
        int r = i % n;
        return r < 0 ? r + n : r;
    };
    ScalarField out(n);
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz)
                out.at(ix, iy, iz) = f.at(wrap(ix - sx), wrap(iy - sy), wrap(iz - sz));
    return out;
}

ScalarField resample(const ScalarField& f, int m) {
    check_internal(m > 0 && m % 2 == 0, "resample target must be even");
    const int n = f.n;
    if (m == n) return f;
    Spectrum src = forward_fft(f);
    Spectrum dst(m);
    const int keep = std::min(n, m) / 2 - 1;  // drop Nyquist planes of both grids
    const double scalef = static_cast<double>(grid_size(m)) / static_cast<double>(grid_size(n));
    for (int kx = -keep; kx <= keep; ++kx) {
        const int sx = kx >= 0 ? kx : kx + n;
        const int dx = kx >= 0 ? kx : kx + m;
        for (int ky = -keep; ky <= keep; ++ky) {
            const int sy = ky >= 0 ? ky : ky + n;
            const int dy = ky >= 0 ? ky : ky + m;
            for (int kz = 0; kz <= keep; ++kz) {
                dst.m[dst.idx(dx, dy, kz)] = scalef * src.m[src.idx(sx, sy, kz)];
            }
        }
    }
    return inverse_fft(dst);
}

ScalarField multiply(const ScalarField& a, const ScalarField& b, ProductMode mode) {
    require_same_grid(a.n, b.n, "multiply");
    if (mode == ProductMode::pointwise) return multiply(a, b);
    const int m = 3 * a.n / 2 + (3 * a.n / 2) % 2;
    ScalarField pa = resample(a, m);
    ScalarField pb = resample(b, m);
    return resample(multiply(pa, pb), a.n);
}

TensorField outer_product(const VectorField& a, const VectorField& b, ProductMode mode) {
    require_same_grid(a.n, b.n, "outer_product");
    if (mode == ProductMode::pointwise) return outer_product(a, b);
    const int m = 3 * a.n / 2 + (3 * a.n / 2) % 2;
    VectorField pa(m), pb(m);
    for (int c = 0; c < 3; ++c) {
        ScalarField ca, cb;
        ca.n = cb.n = a.n;
        ca.v = a.c[c];
        cb.v = b.c[c];
        pa.c[c] = resample(ca, m).v;
        pb.c[c] = resample(cb, m).v;
    }
    TensorField big = outer_product(pa, pb);
    TensorField out(a.n);
    for (int c = 0; c < 9; ++c) {
        ScalarField comp;
        comp.n = m;
        comp.v = big.c[c];
        out.c[c] = resample(comp, a.n).v;
    }
    return out;
}

// ---- mollifiers ---------------------------------------------------------

namespace {

double bump(double s) {
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s2));
}

}  // namespace

SpaceMollifier make_space_mollifier(int n, double ell) {
    check_internal(ell > 0.0, "mollifier width must be positive");
    SpaceMollifier m;
    m.n = n;
    m.ell = ell;
    m.gain.assign(n / 2 + 1, 0.0);
    // Midpoint quadrature over (0, ell); the bump is even so cosine moments
    // suffice.  The zero-frequency gain is the quadrature mass over itself,
    // exactly 1, so means are preserved to round-off.
    const int quad = 4096;
    std::vector<double> snode(quad), wnode(quad);
    double mass = 0.0;
    for (int i = 0; i < quad; ++i) {
        snode[i] = (i + 0.5) * ell / quad;
        wnode[i] = bump(snode[i] / ell);
        mass += wnode[i];
    }
    for (int j = 0; j <= n / 2; ++j) {
        double acc = 0.0;
        for (int i = 0; i < quad; ++i) acc += wnode[i] * std::cos(j * snode[i]);
        m.gain[j] = acc / mass;
    }
    return m;
}

ScalarField apply(const SpaceMollifier& m, const ScalarField& f) {
    require_same_grid(m.n, f.n, "space mollifier");
    const auto& gain = m.gain;
    return apply_scalar_multiplier(f, false, [&gain](int kx, int ky, int kz) {
        return std::complex<double>(
            gain[std::abs(kx)] * gain[std::abs(ky)] * gain[std::abs(kz)], 0.0);
    });
}

VectorField apply(const SpaceMollifier& m, const VectorField& f) {
    VectorField out(f.n);
    for (int c = 0; c < 3; ++c) {
        ScalarField comp;
        comp.n = f.n;
        comp.v = f.c[c];
        out.c[c] = apply(m, comp).v;
    }
    return out;
}

TensorField apply(const SpaceMollifier& m, const TensorField& f) {
    TensorField out(f.n);
    for (int c = 0; c < 9; ++c) {
        ScalarField comp;
        comp.n = f.n;
        comp.v = f.c[c];
        out.c[c] = apply(m, comp).v;
    }
    return out;
}

TimeMollifier make_time_mollifier(double ell, double dt) {
    check_internal(ell > 0.0 && dt > 0.0, "time mollifier parameters must be positive");
    TimeMollifier t;
    t.ell = ell;
    t.dt = dt;
    int h = static_cast<int>(std::ceil(ell / dt)) - 1;
    if (h < 0) h = 0;
    t.halfwidth = h;
    t.w.assign(2 * h + 1, 0.0);
    if (h == 0) {
        t.w[0] = 1.0;
        return t;
    }
    double mass = 0.0;
    for (int j = -h; j <= h; ++j) {
        const double val = bump(j * dt / ell);
        t.w[j + h] = val;
        mass += val;
    }
    check_internal(mass > 0.0, "time mollifier weights degenerate");
    for (double& x : t.w) x /= mass;
    return t;
}

}  // namespace mhdci
