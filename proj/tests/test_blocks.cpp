#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mhdci/blocks.hpp"
#include "mhdci/fields.hpp"
#include "mhdci/profile.hpp"
#include "mhdci/spectral.hpp"

using namespace mhdci;

namespace {

// Grid mean of phi^power computed the expensive way, over the full 3D field.
double full_grid_mean(const ScalarField& f, int power) {
    double acc = 0.0;
    for (double v : f.v) {
        double t = 1.0;
        for (int i = 0; i < power; ++i) t *= v;
        acc += t;
    }
    return acc / static_cast<double>(f.v.size());
}

VectorField times_const_vec(const ScalarField& f, const Vec3& v) {
    VectorField out(f.n);
    for (int i = 0; i < 3; ++i)
        for (std::size_t m = 0; m < f.v.size(); ++m) out.c[i][m] = f.v[m] * v[i];
    return out;
}

}  // namespace

TEST_CASE("grid renormalization is exact for every sampling regime") {
    struct Config {
        double lambda, r;
        std::uint64_t rl;
        int n;
    };
    // Fine 1D sampling (gcd 1, 101 samples), coarse aliased sampling
    // (desk-scale wavevector folded to gcd 2 on 18 nodes), and a mid case.
    const Config configs[] = {{16.0, 0.3, 1, 101}, {65536.0, std::pow(65536.0, -0.75), 16, 18},
                              {256.0, 0.0625, 4, 54}};
    for (const Config& cfg : configs) {
        for (int family = 0; family < 2; ++family) {
            const Frame& fr = family ? magnetic_frames()[3] : velocity_frames()[0];
            const Block b = make_block(fr, family, 0, cfg.lambda, cfg.r, cfg.rl, cfg.n);
            CAPTURE(cfg.n);
            CAPTURE(family);
            CHECK(std::abs(block_grid_mean(b, 1)) < 1e-13);
            CHECK(block_grid_mean(b, 2) == doctest::Approx(1.0).epsilon(1e-13));
            // The 1D subgroup reduction must agree with the full 3D mean.
            CHECK(std::abs(full_grid_mean(b.phi, 1) - block_grid_mean(b, 1)) < 1e-12);
            CHECK(std::abs(full_grid_mean(b.phi, 2) - block_grid_mean(b, 2)) < 1e-10);
        }
    }
}

TEST_CASE("3D field is the table composed with the lattice phase") {
    const Block b = make_block(magnetic_frames()[3], 1, 0, 16.0, 0.3, 1, 27);
    const int n = b.n;
    for (int ix = 0; ix < n; ix += 5) {
        for (int iy = 0; iy < n; iy += 7) {
            for (int iz = 0; iz < n; iz += 3) {
                long long t = 0;
                for (int axis = 0; axis < 3; ++axis) {
                    const long long idx = (axis == 0) ? ix : (axis == 1 ? iy : iz);
                    t += ((b.wavevector[axis] % n) + n) % n * idx;
                }
                t %= n;
                CHECK(b.phi.at(ix, iy, iz) == b.phi_table[static_cast<std::size_t>(t)]);
                CHECK(b.pot.at(ix, iy, iz) == b.pot_table[static_cast<std::size_t>(t)]);
            }
        }
    }
}

TEST_CASE("wavevectors, parity and subgroup at desk scale") {
    const ScaleSet s = derive_scales(ParamSet{}, 0);
    const BlockSet set = make_block_set(s, 18);
    REQUIRE(set.vel.size() == 6);
    REQUIRE(set.mag.size() == 5);
    CHECK(set.fast == 1040.0);
    CHECK(set.mag[0].wavevector == std::array<long long, 3>{1040, 0, 0});
    CHECK(set.mag[3].wavevector == std::array<long long, 3>{624, 832, 0});
    CHECK(set.vel[0].wavevector == std::array<long long, 3>{960, 400, 0});
    for (const Block& b : set.vel) {
        CHECK(b.subgroup_gcd == 2);
        CHECK(b.parity == 0);
    }
    for (const Block& b : set.mag) CHECK(b.subgroup_gcd == 2);
    // Normalization survives even this heavily folded configuration.
    for (const Block& b : set.mag) {
        CHECK(block_grid_mean(b, 2) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("support fraction tracks the concentration parameter") {
    // gcd-1 configuration: the 1D table sees all 101 phases, so the hit
    // fraction approximates 2 r y* / (2 pi) to about one node spacing.
    const double r = 0.3;
    const Block b = make_block(velocity_frames()[2], 0, 0, 16.0, r, 1, 101);
    const double frac = block_support_fraction(b, 1e-3);
    const double want = support_volume_oracle(r, 1e-3) / std::pow(2.0 * M_PI, 3);
    CHECK(frac == doctest::Approx(want).epsilon(0.15));
    CHECK(frac > 0.02);
    CHECK(frac < 0.2);
}

TEST_CASE("wave blocks satisfy the potential and corrector identities") {
    // All frame wavevectors have entries up to 65, so a 132-grid resolves
    // scale-1 mode-1 wave blocks exactly (Nyquist 66).
    const int n = 132;
    const Frame* frames[] = {&magnetic_frames()[0], &magnetic_frames()[3],
                             &velocity_frames()[0]};
    for (const Frame* fr : frames) {
        const Block b = make_wave_block(*fr, 0, 0, 1, 1, n);
        CHECK(b.synthetic);
        CHECK(b.fast == 65.0);
        const double f2 = b.fast * b.fast;

        // -Lap pot == fast^2 phi, spectrally on the grid.
        ScalarField lap(n);
        for (int axis = 0; axis < 3; ++axis) {
            const ScalarField d2 = derivative(derivative(b.pot, axis), axis);
            for (std::size_t m = 0; m < lap.v.size(); ++m) lap.v[m] += d2.v[m];
        }
        double worst = 0.0;
        for (std::size_t m = 0; m < lap.v.size(); ++m)
            worst = std::max(worst, std::abs(-lap.v[m] - f2 * b.phi.v[m]));
        CHECK(worst < 1e-8 * f2);

        // curl curl (pot k1) / fast^2 == phi k1: with a constant amplitude
        // the corrector vanishes identically because k1 is orthogonal to the
        // direction of oscillation.
        const VectorField w = curl_curl(times_const_vec(b.pot, fr->k1));
        VectorField want = times_const_vec(b.phi, fr->k1);
        double diff = 0.0;
        for (int i = 0; i < 3; ++i)
            for (std::size_t m = 0; m < want.c[i].size(); ++m)
                diff = std::max(diff, std::abs(w.c[i][m] / f2 - want.c[i][m]));
        CHECK(diff < 1e-8);
        CHECK(linf_norm(divergence(want)) < 1e-8);  // k1 perp m kills div
        CHECK(linf_norm(divergence(w)) < 1e-6);     // div curl curl == 0
    }
}

TEST_CASE("resolution check compares profile bandwidth against Nyquist") {
    const ResolutionCheck fine = check_resolution(2.0, 8192, 1e-3);
    const ResolutionCheck desk = check_resolution(65536.0, 256, 1e-3);
    CHECK(fine.bandwidth_factor == desk.bandwidth_factor);
    CHECK(fine.bandwidth_factor > 1.0);
    CHECK(desk.nyquist == 127.0);
    CHECK_FALSE(desk.resolved);
    CHECK(desk.max_frequency > 1e6);
    // Looser tolerance can only shrink the bandwidth factor.
    CHECK(check_resolution(2.0, 64, 1e-2).bandwidth_factor <=
          check_resolution(2.0, 64, 1e-4).bandwidth_factor);
}

TEST_CASE("closed-form norms scale as advertised") {
    const int N = direction_scale();
    const double lam = 64.0, r = 0.0625;
    for (int M = 0; M <= 2; ++M) {
        for (double p : {1.0, 2.0, 3.0}) {
            // Frequency factor: norm multiplies by 2^M when lambda doubles.
            const double lam_ratio =
                block_norm_oracle(M, p, 2 * lam, r, N) / block_norm_oracle(M, p, lam, r, N);
            CHECK(lam_ratio == doctest::Approx(std::pow(2.0, M)).epsilon(1e-12));
            // Concentration factor: at fixed lambda, halving r multiplies the
            // norm by (1/2)^(1/p - 1/2).
            const double r_ratio =
                block_norm_oracle(M, p, lam, r / 2, N) / block_norm_oracle(M, p, lam, r, N);
            CHECK(r_ratio == doctest::Approx(std::pow(0.5, 1.0 / p - 0.5)).epsilon(1e-12));
        }
        const double sup_ratio = block_sup_oracle(M, 2 * lam, r, N) / block_sup_oracle(M, lam, r, N);
        CHECK(sup_ratio == doctest::Approx(std::pow(2.0, M)).epsilon(1e-12));
    }
    // Product supports factorize: the two transverse directions decorrelate,
    // so the joint volume is the product of fractions.
    const double single = support_volume_oracle(r, 1e-3);
    const double joint = product_support_volume_oracle(r, r, 1e-3);
    CHECK(joint == doctest::Approx(single * single / std::pow(2.0 * M_PI, 3)).epsilon(1e-12));
}

TEST_CASE("direct quadrature agrees with the closed forms") {
    const auto rows = block_scaling_sweep({64.0}, {0.0625, 0.03125}, {0, 1}, {2.0}, 1e-3);
    REQUIRE(rows.size() == 4);
    for (const BlockScalingRow& row : rows) {
        CAPTURE(row.M);
        CAPTURE(row.r);
        CHECK(row.norm_direct == doctest::Approx(row.norm_oracle).epsilon(1e-5));
        CHECK(row.sup_direct == doctest::Approx(row.sup_oracle).epsilon(1e-5));
        // The profile is flat where it crosses the support threshold, so the
        // crossing point from 4e5 samples carries a few-1e-4 uncertainty.
        CHECK(row.support_direct == doctest::Approx(row.support_oracle).epsilon(1e-3));
        CHECK(row.psupport_direct == doctest::Approx(row.psupport_oracle).epsilon(2e-3));
    }
}
