#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "mhdci/fields.hpp"
#include "mhdci/invdiv.hpp"
#include "mhdci/spectral.hpp"

using namespace mhdci;

namespace {

VectorField random_mean_free(int n, unsigned seed, int kmax, int modes) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ki(-kmax, kmax);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    VectorField f(n);
    for (int comp = 0; comp < 3; ++comp) {
        for (int m = 0; m < modes; ++m) {
            int kx = ki(rng), ky = ki(rng), kz = ki(rng);
            if (kx == 0 && ky == 0 && kz == 0) kx = 1;
            const double amp = unif(rng), ph = M_PI * unif(rng);
            std::size_t idx = 0;
            for (int ix = 0; ix < n; ++ix) {
                const double x = grid_coord(n, ix);
                for (int iy = 0; iy < n; ++iy) {
                    const double y = grid_coord(n, iy);
                    for (int iz = 0; iz < n; ++iz, ++idx) {
                        f.c[comp][idx] += amp * std::cos(kx * x + ky * y + kz * grid_coord(n, iz) + ph);
                    }
                }
            }
        }
    }
    remove_mean_inplace(f);
    return f;
}

double rel_l2(const VectorField& a, const VectorField& b) {
    VectorField d = a - b;
    return mean_lp_norm(d, 2.0) / (1e-300 + mean_lp_norm(b, 2.0));
}

}  // namespace

TEST_CASE("symmetric right inverse") {
    const int n = 24;
    for (unsigned seed = 0; seed < 10; ++seed) {
        const VectorField v = random_mean_free(n, 100 + seed, 7, 6);
        const TensorField t = inv_divergence_sym(v);
        CAPTURE(seed);
        CHECK(rel_l2(tensor_divergence(t), v) < 1e-12);
        // Exactly symmetric and traceless: both defects are identically zero
        // because the multiplier enforces them per mode.
        CHECK(max_asymmetry(t) < 1e-14);
        CHECK(max_trace(t) < 1e-13);
        double mean_entry = 0.0;
        for (const auto& comp : t.c) {
            double acc = 0.0;
            for (double x : comp) acc += x;
            mean_entry = std::max(mean_entry, std::abs(acc) / comp.size());
        }
        CHECK(mean_entry < 1e-14);
    }
}

TEST_CASE("skew right inverse on solenoidal inputs") {
    const int n = 24;
    for (unsigned seed = 0; seed < 10; ++seed) {
        const VectorField f = leray_project(random_mean_free(n, 300 + seed, 7, 6));
        const TensorField t = inv_divergence_skew(f);
        CAPTURE(seed);
        CHECK(rel_l2(tensor_divergence(t), f) < 1e-12);
        CHECK(max_symmetry(t) < 1e-14);  // exactly skew
        for (int d : {0, 4, 8}) {
            double diag = 0.0;
            for (double x : t.c[d]) diag = std::max(diag, std::abs(x));
            CHECK(diag < 1e-14);  // skew matrices have zero diagonal
        }
    }
}

TEST_CASE("single-mode closed form") {
    // v = (0, cos(k x), 0), k = 3: the symmetric inverse must reproduce a
    // divergence whose only surviving derivative is d/dx of the xy-entry
    // pair, so T_xy = T_yx = sin(3x)/3 and the compensating terms vanish.
    const int n = 16;
    VectorField v(n);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x = grid_coord(n, ix);
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++idx) v.c[1][idx] = std::cos(3 * x);
    }
    const TensorField t = inv_divergence_sym(v);
    idx = 0;
    double worst = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const double want = std::sin(3 * grid_coord(n, ix)) / 3.0;
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++idx) {
                worst = std::max(worst, std::abs(t.c[1][idx] - want));
                worst = std::max(worst, std::abs(t.c[3][idx] - want));
                worst = std::max(worst, std::abs(t.c[0][idx]));
                worst = std::max(worst, std::abs(t.c[8][idx]));
            }
    }
    CHECK(worst < 1e-13);

    // Same mode through the skew inverse (it is solenoidal: d_y cos(3x) = 0):
    // T_xy = -T_yx = sin(3x)/3 up to the skew convention, i.e. the
    // off-diagonal pair carries the whole divergence with opposite signs.
    const TensorField s = inv_divergence_skew(v);
    idx = 0;
    worst = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++idx) {
                worst = std::max(worst, std::abs(s.c[1][idx] + s.c[3][idx]));
                worst = std::max(worst, std::abs(s.c[2][idx]));
                worst = std::max(worst, std::abs(s.c[5][idx]));
            }
    }
    CHECK(worst < 1e-13);
    CHECK(rel_l2(tensor_divergence(s), v) < 1e-12);
}

TEST_CASE("linearity and mean-mode behaviour") {
    const int n = 16;
    const VectorField v = random_mean_free(n, 9u, 5, 4);
    const VectorField w = random_mean_free(n, 10u, 5, 4);
    VectorField mix(n);
    for (int i = 0; i < 3; ++i)
        for (std::size_t m = 0; m < mix.c[i].size(); ++m)
            mix.c[i][m] = 2.5 * v.c[i][m] - 0.75 * w.c[i][m];
    const TensorField tv = inv_divergence_sym(v);
    const TensorField tw = inv_divergence_sym(w);
    const TensorField tm = inv_divergence_sym(mix);
    double worst = 0.0;
    for (int c = 0; c < 9; ++c)
        for (std::size_t m = 0; m < tm.c[c].size(); ++m)
            worst = std::max(worst,
                             std::abs(tm.c[c][m] - (2.5 * tv.c[c][m] - 0.75 * tw.c[c][m])));
    CHECK(worst < 1e-11);

    // Inputs with a nonzero mean violate the precondition and are rejected.
    VectorField constant(n);
    for (int i = 0; i < 3; ++i)
        for (double& x : constant.c[i]) x = 1.5 - i;
    CHECK_THROWS_AS(inv_divergence_sym(constant), std::invalid_argument);
    CHECK_THROWS_AS(inv_divergence_skew(constant), std::invalid_argument);
}
