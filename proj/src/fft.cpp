#include "mhdci/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace mhdci {

namespace {

// One cached FFTW plan pair per grid size, executed through dedicated
// aligned buffers.  FFTW_ESTIMATE keeps planning deterministic (no runtime
// measurement), which matters for bit-reproducible outputs.
struct PlanSet {
    int n = 0;
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit PlanSet(int n_) : n(n_) {
        const std::size_t nr = grid_size(n);
        const std::size_t nc = static_cast<std::size_t>(n) * n * (n / 2 + 1);
        real = fftw_alloc_real(nr);
        cplx = fftw_alloc_complex(nc);
        check_internal(real != nullptr && cplx != nullptr, "fftw allocation failed");
        fwd = fftw_plan_dft_r2c_3d(n, n, n, real, cplx, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_3d(n, n, n, cplx, real, FFTW_ESTIMATE);
        check_internal(fwd != nullptr && bwd != nullptr, "fftw planning failed");
    }
    ~PlanSet() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (real) fftw_free(real);
        if (cplx) fftw_free(cplx);
    }
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;
};

std::mutex g_fft_mutex;

PlanSet& plan_for(int n) {
    static std::map<int, PlanSet*> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, new PlanSet(n)).first;
    return *it->second;
}

}  // namespace

Spectrum forward_fft(const ScalarField& f) {
    check_internal(f.n > 0 && f.n % 2 == 0, "fft grid must be even and positive");
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    PlanSet& p = plan_for(f.n);
    std::memcpy(p.real, f.v.data(), f.v.size() * sizeof(double));
    fftw_execute(p.fwd);
    Spectrum s(f.n);
    std::memcpy(reinterpret_cast<double*>(s.m.data()), p.cplx,
                s.m.size() * sizeof(fftw_complex));
    return s;
}

ScalarField inverse_fft(const Spectrum& s) {
    check_internal(s.n > 0 && s.n % 2 == 0, "fft grid must be even and positive");
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    PlanSet& p = plan_for(s.n);
    std::memcpy(p.cplx, reinterpret_cast<const double*>(s.m.data()),
                s.m.size() * sizeof(fftw_complex));
    fftw_execute(p.bwd);
    ScalarField f(s.n);
    const double inv = 1.0 / static_cast<double>(grid_size(s.n));
    for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] = p.real[i] * inv;
    return f;
}

}  // namespace mhdci
