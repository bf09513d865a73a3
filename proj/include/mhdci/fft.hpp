#pragma once

#include <complex>
#include <vector>

#include "mhdci/fields.hpp"

namespace mhdci {

// Half-complex spectrum of a real scalar field.  Layout n x n x (n/2+1)
// with flat index (kx*n + ky)*(n/2+1) + kz; the z frequency is the halved
// axis.  The forward transform is the unnormalized sum over nodes; the
// inverse divides by n^3, so inverse(forward(f)) == f up to round-off.
struct Spectrum {
    int n = 0;
    std::vector<std::complex<double>> m;

    Spectrum() = default;
    explicit Spectrum(int n_)
        : n(n_),
          m(static_cast<std::size_t>(n_) * n_ * (n_ / 2 + 1),
            std::complex<double>(0.0, 0.0)) {}

    int nz() const { return n / 2 + 1; }
    std::size_t idx(int kx, int ky, int kz) const {
        return (static_cast<std::size_t>(kx) * n + ky) * nz() + kz;
    }
};

// Signed frequency of DFT index i on an n-point axis: 0..n/2, then negative.
inline int signed_freq(int n, int i) { return (i <= n / 2) ? i : i - n; }

Spectrum forward_fft(const ScalarField& f);
ScalarField inverse_fft(const Spectrum& s);

}  // namespace mhdci
