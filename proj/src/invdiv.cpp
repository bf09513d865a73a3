#include "mhdci/invdiv.hpp"

#include <cmath>
#include <stdexcept>

#include "mhdci/fft.hpp"

namespace mhdci {

namespace {

void require_mean_free(const VectorField& v, const char* what) {
    for (int c = 0; c < 3; ++c) {
        double s = 0.0, amp = 0.0;
        for (double x : v.c[c]) {
            s += x;
            amp = std::max(amp, std::abs(x));
        }
        s /= static_cast<double>(v.c[c].size());
        if (std::abs(s) > 1e-10 * (amp + 1.0))
            throw std::invalid_argument(std::string(what) + ": input must be mean-free");
    }
}

std::array<Spectrum, 3> forward3(const VectorField& v) {
    std::array<Spectrum, 3> s;
    for (int c = 0; c < 3; ++c) {
        ScalarField comp;
        comp.n = v.n;
        comp.v = v.c[c];
        s[c] = forward_fft(comp);
    }
    return s;
}

}  // namespace

TensorField inv_divergence_sym(const VectorField& v) {
    require_mean_free(v, "inv_divergence_sym");
    const int n = v.n;
    auto s = forward3(v);
    // Independent components: (0,0),(1,1),(2,2),(0,1),(0,2),(1,2).
    std::array<Spectrum, 6> o{Spectrum(n), Spectrum(n), Spectrum(n),
                              Spectrum(n), Spectrum(n), Spectrum(n)};
    const int half = n / 2;
    const std::complex<double> mi(0.0, -1.0);
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
                if (k2 == 0.0) continue;
                const std::complex<double> kv =
                    (k[0] * s[0].m[id] + k[1] * s[1].m[id] + k[2] * s[2].m[id]) / k2;
                int slot = 0;
                for (int a = 0; a < 3; ++a)
                    for (int b = a; b < 3; ++b) {
                        const std::complex<double> entry =
                            (k[a] * s[b].m[id] + k[b] * s[a].m[id]) / k2 -
                            0.5 * ((a == b ? 1.0 : 0.0) + k[a] * k[b] / k2) * kv;
                        o[slot].m[id] = mi * entry;
                        ++slot;
                    }
            }
        }
    }
    TensorField t(n);
    int slot = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            ScalarField comp = inverse_fft(o[slot]);
            t.c[3 * a + b] = comp.v;
            if (a != b) t.c[3 * b + a] = std::move(comp.v);
            ++slot;
        }
    return t;
}

TensorField inv_divergence_skew(const VectorField& f) {
    require_mean_free(f, "inv_divergence_skew");
    const int n = f.n;
    auto s = forward3(f);
    // g = (-Lap)^{-1} curl f, assembled spectrally.
    std::array<Spectrum, 3> g{Spectrum(n), Spectrum(n), Spectrum(n)};
    const int half = n / 2;
    const std::complex<double> I(0.0, 1.0);
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
                if (k2 == 0.0) continue;
                g[0].m[id] = I * (k[1] * s[2].m[id] - k[2] * s[1].m[id]) / k2;
                g[1].m[id] = I * (k[2] * s[0].m[id] - k[0] * s[2].m[id]) / k2;
                g[2].m[id] = I * (k[0] * s[1].m[id] - k[1] * s[0].m[id]) / k2;
            }
        }
    }
    ScalarField g0 = inverse_fft(g[0]);
    ScalarField g1 = inverse_fft(g[1]);
    ScalarField g2 = inverse_fft(g[2]);
    TensorField t(n);
    const std::size_t m = g0.v.size();
    for (std::size_t i = 0; i < m; ++i) {
        t.c[1][i] = g2.v[i];   // (0,1) =  g3
        t.c[2][i] = -g1.v[i];  // (0,2) = -g2
        t.c[5][i] = g0.v[i];   // (1,2) =  g1
        t.c[3][i] = -g2.v[i];
        t.c[6][i] = g1.v[i];
        t.c[7][i] = -g0.v[i];
    }
    return t;
}

}  // namespace mhdci
