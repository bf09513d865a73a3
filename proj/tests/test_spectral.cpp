#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "mhdci/fields.hpp"
#include "mhdci/spectral.hpp"

using namespace mhdci;

namespace {

ScalarField sample(int n, double (*f)(double, double, double)) {
    ScalarField out(n);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x = grid_coord(n, ix);
        for (int iy = 0; iy < n; ++iy) {
            const double y = grid_coord(n, iy);
            for (int iz = 0; iz < n; ++iz, ++idx) {
                out.v[idx] = f(x, y, grid_coord(n, iz));
            }
        }
    }
    return out;
}

VectorField random_vector(int n, unsigned seed, int kmax) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ki(-kmax, kmax);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    VectorField f(n);
    for (int comp = 0; comp < 3; ++comp) {
        for (int m = 0; m < 5; ++m) {
            int kx = ki(rng), ky = ki(rng), kz = ki(rng);
            if (kx == 0 && ky == 0 && kz == 0) kx = 1;
            const double amp = unif(rng), ph = M_PI * unif(rng);
            std::size_t idx = 0;
            for (int ix = 0; ix < n; ++ix) {
                const double x = grid_coord(n, ix);
                for (int iy = 0; iy < n; ++iy) {
                    const double y = grid_coord(n, iy);
                    for (int iz = 0; iz < n; ++iz, ++idx) {
                        const double z = grid_coord(n, iz);
                        f.c[comp][idx] += amp * std::cos(kx * x + ky * y + kz * z + ph);
                    }
                }
            }
        }
    }
    return f;
}

}  // namespace

TEST_CASE("first derivatives are spectrally exact on band-limited data") {
    const int n = 32;
    const ScalarField f =
        sample(n, [](double x, double y, double z) { return std::sin(3 * x + 2 * y) * std::cos(z); });
    const ScalarField fx =
        sample(n, [](double x, double y, double z) { return 3 * std::cos(3 * x + 2 * y) * std::cos(z); });
    const ScalarField fz =
        sample(n, [](double x, double y, double z) { return -std::sin(3 * x + 2 * y) * std::sin(z); });
    CHECK(linf_norm(derivative(f, 0) - fx) < 1e-12);
    CHECK(linf_norm(derivative(f, 2) - fz) < 1e-12);
}

TEST_CASE("vector calculus identities on random fields") {
    const int n = 32;
    const VectorField v = random_vector(n, 7u, 5);

    SUBCASE("div curl = 0") {
        CHECK(linf_norm(divergence(curl(v))) < 1e-11);
    }
    SUBCASE("curl_curl equals curl of curl") {
        const VectorField a = curl_curl(v);
        const VectorField b = curl(curl(v));
        CHECK(linf_norm(a - b) < 1e-10);
    }
    SUBCASE("div curl_curl = 0") {
        CHECK(linf_norm(divergence(curl_curl(v))) < 1e-9);
    }
    SUBCASE("tensor divergence contracts the second index") {
        // T_ij = a_i b_j  =>  (div T)_i = a_i div b + (b . grad) a_i.
        // With |k| <= 4 factors on a 32-grid every product stays inside the
        // band, so pointwise evaluation is exact and the two sides must
        // agree to round-off.
        const VectorField a = random_vector(n, 8u, 4);
        const VectorField b = random_vector(n, 9u, 4);
        const TensorField t = outer_product(a, b, ProductMode::pointwise);
        const VectorField lhs = tensor_divergence(t);
        ScalarField divb = divergence(b);
        VectorField rhs(n);
        for (int i = 0; i < 3; ++i) {
            ScalarField ai;
            ai.n = n;
            ai.v = a.c[i];
            ScalarField acc(n);
            for (int axis = 0; axis < 3; ++axis) {
                ScalarField d = derivative(ai, axis);
                for (std::size_t m = 0; m < acc.v.size(); ++m)
                    acc.v[m] += b.c[axis][m] * d.v[m];
            }
            for (std::size_t m = 0; m < acc.v.size(); ++m)
                rhs.c[i][m] = a.c[i][m] * divb.v[m] + acc.v[m];
        }
        CHECK(linf_norm(lhs - rhs) < 1e-9 * (1.0 + linf_norm(rhs)));
    }
}

TEST_CASE("Leray projection") {
    const int n = 32;
    const VectorField v = random_vector(n, 17u, 5);
    const VectorField pv = leray_project(v);

    SUBCASE("output is solenoidal") {
        CHECK(linf_norm(divergence(pv)) < 1e-10 * (1.0 + linf_norm(v)));
    }
    SUBCASE("idempotent") {
        CHECK(linf_norm(leray_project(pv) - pv) < 1e-11);
    }
    SUBCASE("kills gradients") {
        const ScalarField p =
            sample(n, [](double x, double y, double z) { return std::sin(2 * x) * std::cos(3 * y) + std::sin(z); });
        CHECK(linf_norm(leray_project(gradient(p))) < 1e-11);
    }
    SUBCASE("fixes curls") {
        const VectorField w = curl(v);
        CHECK(linf_norm(leray_project(w) - w) < 1e-10);
    }
}

TEST_CASE("inverse operators") {
    const int n = 32;
    SUBCASE("inv_neg_laplacian inverts -lap on mean-free data") {
        ScalarField f =
            sample(n, [](double x, double y, double z) { return std::cos(2 * x + y) * std::sin(3 * z); });
        remove_mean_inplace(f);
        const ScalarField u = inv_neg_laplacian(f);
        // -lap u = f: check via spectral second derivatives.
        ScalarField lap(n);
        for (int axis = 0; axis < 3; ++axis) {
            const ScalarField d2 = derivative(derivative(u, axis), axis);
            for (std::size_t i = 0; i < lap.v.size(); ++i) lap.v[i] += d2.v[i];
        }
        for (std::size_t i = 0; i < lap.v.size(); ++i) lap.v[i] = -lap.v[i];
        CHECK(linf_norm(lap - f) < 1e-10);
    }
    SUBCASE("inv_modulus divides single modes by |k|") {
        const ScalarField f = sample(n, [](double x, double, double) { return std::sin(5 * x); });
        const ScalarField g = inv_modulus(f);
        CHECK(linf_norm(g - scale(1.0 / 5.0, f)) < 1e-13);
    }
    SUBCASE("highpass keeps only the requested band") {
        const ScalarField lo = sample(n, [](double x, double, double) { return std::cos(2 * x); });
        const ScalarField hi = sample(n, [](double, double y, double) { return std::sin(7 * y); });
        const ScalarField g = highpass(lo + hi, 5.0);
        CHECK(linf_norm(g - hi) < 1e-12);
    }
}

TEST_CASE("node rolls and resampling") {
    const int n = 16;
    const ScalarField f =
        sample(n, [](double x, double y, double z) { return std::sin(x) + std::cos(2 * y) * std::sin(z); });
    SUBCASE("roll is an exact permutation") {
        const ScalarField r = roll_nodes(f, 3, 0, 5);
        CHECK(r.at(3, 0, 5) == f.at(0, 0, 0));
        CHECK(r.at(2, 1, 4) == f.at((2 - 3 + n) % n, 1, (4 - 5 + n) % n));
        const ScalarField back = roll_nodes(r, -3, 0, -5);
        double diff = 0.0;
        for (std::size_t i = 0; i < f.v.size(); ++i)
            diff = std::max(diff, std::abs(back.v[i] - f.v[i]));
        CHECK(diff == 0.0);
    }
    SUBCASE("upsample then subsample recovers band-limited data") {
        const ScalarField up = resample(f, 24);
        CHECK(up.n == 24);
        const ScalarField down = resample(up, n);
        CHECK(linf_norm(down - f) < 1e-13);
    }
}

TEST_CASE("products and dealiasing") {
    const int n = 32;
    const ScalarField a = sample(n, [](double x, double, double) { return std::sin(4 * x); });
    const ScalarField b = sample(n, [](double x, double, double) { return std::sin(5 * x); });

    SUBCASE("in-band products agree in both modes") {
        // 4 + 5 = 9 < n/2: the pointwise product is already exact.
        const ScalarField p1 = multiply(a, b, ProductMode::pointwise);
        const ScalarField p2 = multiply(a, b, ProductMode::dealiased);
        CHECK(linf_norm(p1 - p2) < 1e-12);
    }
    SUBCASE("dealiased products drop the unrepresentable band") {
        // sin(12x) sin(13x) = (cos x - cos 25x)/2; mode 25 exceeds the
        // useful band, so the dealiased product keeps only cos(x)/2.
        const ScalarField c = sample(n, [](double x, double, double) { return std::sin(12 * x); });
        const ScalarField d = sample(n, [](double x, double, double) { return std::sin(13 * x); });
        const ScalarField p = multiply(c, d, ProductMode::dealiased);
        const ScalarField want =
            sample(n, [](double x, double, double) { return 0.5 * std::cos(x); });
        CHECK(linf_norm(p - want) < 1e-12);
        // ... while the pointwise product aliases mode 25 onto mode 7.
        const ScalarField q = multiply(c, d, ProductMode::pointwise);
        CHECK(linf_norm(q - want) > 0.4);
    }
}

TEST_CASE("space mollifier") {
    const int n = 32;
    const SpaceMollifier sm = make_space_mollifier(n, 0.3);
    REQUIRE(static_cast<int>(sm.gain.size()) == n / 2 + 1);
    CHECK(sm.gain[0] == 1.0);  // exact mean preservation
    for (std::size_t j = 1; j < sm.gain.size(); ++j) {
        CHECK(sm.gain[j] <= sm.gain[j - 1] + 1e-12);  // monotone attenuation
        CHECK(sm.gain[j] >= 0.0);
        CHECK(sm.gain[j] <= 1.0);
    }
    SUBCASE("constants are fixed points") {
        ScalarField c(n);
        for (double& v : c.v) v = 2.75;
        CHECK(linf_norm(apply(sm, c) - c) < 1e-13);
    }
    SUBCASE("means are preserved") {
        const ScalarField f =
            sample(n, [](double x, double y, double) { return 0.3 + std::sin(x) * std::cos(y); });
        CHECK(mean(apply(sm, f)) == doctest::Approx(mean(f)).epsilon(1e-13));
    }
    SUBCASE("tiny ell is near-identity on low modes") {
        const SpaceMollifier tiny = make_space_mollifier(n, 1e-4);
        const ScalarField f = sample(n, [](double x, double, double) { return std::sin(3 * x); });
        CHECK(linf_norm(apply(tiny, f) - f) < 1e-6);
    }
}

TEST_CASE("time mollifier") {
    SUBCASE("degenerates to a point mass when ell < dt") {
        const TimeMollifier tm = make_time_mollifier(1e-4, 0.125);
        CHECK(tm.halfwidth == 0);
        REQUIRE(tm.w.size() == 1);
        CHECK(tm.w[0] == 1.0);
    }
    SUBCASE("wide kernels are symmetric and normalized") {
        const TimeMollifier tm = make_time_mollifier(0.3, 0.1);
        CHECK(tm.halfwidth >= 2);
        REQUIRE(static_cast<int>(tm.w.size()) == 2 * tm.halfwidth + 1);
        double sum = 0.0;
        for (double w : tm.w) sum += w;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
        for (int k = 0; k <= tm.halfwidth; ++k) {
            CHECK(tm.w[static_cast<std::size_t>(tm.halfwidth - k)] ==
                  tm.w[static_cast<std::size_t>(tm.halfwidth + k)]);
        }
    }
}
