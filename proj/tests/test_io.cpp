#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "mhdci/diagnostics.hpp"
#include "mhdci/io.hpp"
#include "mhdci/state.hpp"

using namespace mhdci;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("mhdci_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

ScalarField random_scalar(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ScalarField f(n);
    for (double& v : f.v) v = unif(rng);
    return f;
}

}  // namespace

TEST_CASE("config canonical form round-trips exactly") {
    RunConfig cfg;
    cfg.params.a = 25.0;
    cfg.params.b = 8;
    cfg.params.beta = 0.123456789012345;
    cfg.params.eta = 1.1;
    cfg.q_max = 2;
    cfg.grid_n = 36;
    cfg.time_n = 17;
    cfg.t_pad = 3;
    cfg.strict_regime = true;
    cfg.dump_fields = true;
    cfg.seed_profile = "exponential";
    cfg.residual_tol = 3.5e-7;
    cfg.output_dir = "special/dir";

    const std::string text = format_config(cfg);
    const RunConfig back = parse_config_text(text);
    CHECK(format_config(back) == text);
    CHECK(config_hash(back) == config_hash(cfg));
    CHECK(back.params.a == cfg.params.a);
    CHECK(back.params.beta == cfg.params.beta);
    CHECK(back.t_pad == 3);
    CHECK(back.strict_regime);
    CHECK(back.seed_profile == "exponential");
    CHECK(back.residual_tol == cfg.residual_tol);
    CHECK(back.output_dir == "special/dir");
}

TEST_CASE("config parser accepts comments and rejects junk") {
    CHECK_NOTHROW(parse_config_text("# a comment\n a = 16 \n\nb=4\n"));
    CHECK_THROWS_AS(parse_config_text("unknown_key = 3\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text("a = banana\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text("a = 0.5\n"), std::runtime_error);     // a > 1
    CHECK_THROWS_AS(parse_config_text("time_n = 3\n"), std::runtime_error);  // >= 5
    CHECK_THROWS_AS(parse_config_text("grid_n = 4\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text("seed_profile = cubic\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text("residual_tol = -1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text("eta = 2.5\n"), std::runtime_error);
    const RunConfig defaults = parse_config_text("");
    CHECK(defaults.grid_n == 54);
    CHECK(defaults.time_n == 9);
    CHECK(defaults.q_max == 1);
}

TEST_CASE("config hash separates configurations") {
    RunConfig a, b;
    b.grid_n = 55;
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.params.beta = std::nextafter(a.params.beta, 1.0);
    CHECK(config_hash(a) != config_hash(b));
    CHECK(hash_hex(config_hash(a)).size() == 16);
    CHECK(hash_hex(0) == "0000000000000000");
    CHECK(hash_hex(0xdeadbeefULL) == "00000000deadbeef");
}

TEST_CASE("seed profile names") {
    CHECK(parse_seed_profile("linear") == SeedProfile::linear);
    CHECK(parse_seed_profile("exponential") == SeedProfile::exponential);
    CHECK_THROWS(parse_seed_profile("quadratic"));
}

TEST_CASE("field files are bitwise round trips") {
    TempDir tmp;
    const int n = 10;
    const std::uint64_t h = 0x123456789abcdef0ULL;

    SUBCASE("scalar") {
        const ScalarField f = random_scalar(n, 1u);
        write_field(tmp.file("s.fld"), f, h);
        const ScalarField g = read_scalar_field(tmp.file("s.fld"));
        CHECK(g.n == n);
        CHECK(g.v == f.v);
    }
    SUBCASE("vector") {
        VectorField f(n);
        for (int i = 0; i < 3; ++i) f.c[i] = random_scalar(n, 2u + i).v;
        write_field(tmp.file("v.fld"), f, h);
        const VectorField g = read_vector_field(tmp.file("v.fld"));
        CHECK(g.n == n);
        for (int i = 0; i < 3; ++i) CHECK(g.c[i] == f.c[i]);
    }
    SUBCASE("tensor") {
        TensorField f(n);
        for (int i = 0; i < 9; ++i) f.c[i] = random_scalar(n, 10u + i).v;
        write_field(tmp.file("t.fld"), f, h);
        const TensorField g = read_tensor_field(tmp.file("t.fld"));
        CHECK(g.n == n);
        for (int i = 0; i < 9; ++i) CHECK(g.c[i] == f.c[i]);
    }
    SUBCASE("kind mismatches are rejected") {
        const ScalarField f = random_scalar(n, 5u);
        write_field(tmp.file("s.fld"), f, h);
        CHECK_THROWS(read_vector_field(tmp.file("s.fld")));
        CHECK_THROWS(read_tensor_field(tmp.file("s.fld")));
        write_file_bytes(tmp.file("bad.fld"), "NOTAFIELD\n");
        CHECK_THROWS(read_scalar_field(tmp.file("bad.fld")));
        CHECK_THROWS(read_scalar_field(tmp.file("missing.fld")));
    }
    SUBCASE("special values survive") {
        ScalarField f(n);
        f.v[0] = 0.0;
        f.v[1] = -0.0;
        f.v[2] = 1e-308;
        f.v[3] = -1.7976931348623157e308;
        f.v[4] = 3.141592653589793;
        write_field(tmp.file("sp.fld"), f, h);
        const ScalarField g = read_scalar_field(tmp.file("sp.fld"));
        CHECK(g.v == f.v);
        CHECK(std::signbit(g.v[1]));
    }
}

TEST_CASE("checkpoints carry the full state") {
    TempDir tmp;
    const ParamSet params;
    const State s = initial_state(params, 12, -0.25, 0.125, 5, SeedProfile::exponential);
    const std::uint64_t h = 0xfeedfaceULL;

    SUBCASE("with fields") {
        const std::string dir = tmp.file("ck");
        write_checkpoint(dir, s, params, h, true);
        const CheckpointInfo info = read_checkpoint_info(dir);
        CHECK(info.q == s.q);
        CHECK(info.n == 12);
        CHECK(info.slices == 5);
        CHECK(info.t0 == s.t0);
        CHECK(info.dt == s.dt);
        CHECK(info.cfg_hash == h);
        CHECK(info.has_fields);
        CHECK(info.params.a == params.a);
        CHECK(info.params.beta == params.beta);

        const State back = read_checkpoint_state(dir);
        CHECK(back.q == s.q);
        CHECK(back.t0 == s.t0);
        CHECK(back.dt == s.dt);
        REQUIRE(back.slices() == 5);
        for (int j = 0; j < 5; ++j) {
            for (int i = 0; i < 3; ++i) {
                CHECK(back.u[j].c[i] == s.u[j].c[i]);
                CHECK(back.b[j].c[i] == s.b[j].c[i]);
            }
            CHECK(back.p[j].v == s.p[j].v);
            for (int c = 0; c < 9; ++c) {
                CHECK(back.r_u[j].c[c] == s.r_u[j].c[c]);
                CHECK(back.r_b[j].c[c] == s.r_b[j].c[c]);
            }
        }
    }
    SUBCASE("manifest only") {
        const std::string dir = tmp.file("ck2");
        write_checkpoint(dir, s, params, h, false);
        const CheckpointInfo info = read_checkpoint_info(dir);
        CHECK_FALSE(info.has_fields);
        CHECK_THROWS(read_checkpoint_state(dir));
    }
    SUBCASE("rewriting is byte-identical") {
        const std::string d1 = tmp.file("ck3");
        const std::string d2 = tmp.file("ck4");
        write_checkpoint(d1, s, params, h, true);
        write_checkpoint(d2, s, params, h, true);
        CHECK(read_file_bytes(d1 + "/manifest.txt") == read_file_bytes(d2 + "/manifest.txt"));
        CHECK(read_file_bytes(d1 + "/u_0002.fld") == read_file_bytes(d2 + "/u_0002.fld"));
        CHECK(read_file_bytes(d1 + "/rb_0004.fld") == read_file_bytes(d2 + "/rb_0004.fld"));
    }
}

TEST_CASE("CSV artifacts are deterministic and tagged") {
    TempDir tmp;
    const ParamSet params;
    const State s = initial_state(params, 12, 0.0, 0.25, 5, SeedProfile::linear);
    const DiagnosticsReport rep = diagnose(s, ProductMode::pointwise);
    const std::uint64_t h = 0xabcdULL;

    write_diagnostics_csv(tmp.file("d1.csv"), rep, h);
    write_diagnostics_csv(tmp.file("d2.csv"), rep, h);
    const std::string bytes = read_file_bytes(tmp.file("d1.csv"));
    CHECK(bytes == read_file_bytes(tmp.file("d2.csv")));
    CHECK(bytes.rfind("# MHDDIAG v1 config=000000000000abcd", 0) == 0);
    // One line per slice plus preamble and header.
    int lines = 0;
    for (char c : bytes)
        if (c == '\n') ++lines;
    CHECK(lines == 2 + 5);
}

TEST_CASE("VTK files have a legacy structured-points header") {
    TempDir tmp;
    const ScalarField f = random_scalar(6, 9u);
    write_vtk_scalar(tmp.file("f.vtk"), "density", f);
    const std::string bytes = read_file_bytes(tmp.file("f.vtk"));
    CHECK(bytes.rfind("# vtk DataFile Version 3.0", 0) == 0);
    CHECK(bytes.find("DATASET STRUCTURED_POINTS") != std::string::npos);
    CHECK(bytes.find("DIMENSIONS 6 6 6") != std::string::npos);
    CHECK(bytes.find("SCALARS density double") != std::string::npos);
    CHECK(bytes.find("POINT_DATA 216") != std::string::npos);
}

TEST_CASE("double formatting survives a text round trip") {
    for (double v : {0.0, 1.0 / 3.0, 0.1, 2.2250738585072014e-308, 65536.0,
                     0.13584185781575728, -1.9999999999999998}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}
