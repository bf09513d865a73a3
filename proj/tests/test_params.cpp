#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mhdci/params.hpp"

using namespace mhdci;

namespace {

const RegimeCheck* find_check(const RegimeReport& rep, const std::string& name) {
    for (const RegimeCheck& c : rep.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("scale ladder at the desk point") {
    ParamSet p;  // a=16, b=4, beta=0.09, eta=0.9
    const ScaleSet s = derive_scales(p, 0);

    CHECK(s.lambda_q == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(s.lambda_q1 == doctest::Approx(65536.0).epsilon(1e-15));
    CHECK(s.lambda_q_in_u64);
    CHECK(s.lambda_q1_in_u64);
    CHECK(s.lambda_q_int == 16);
    CHECK(s.lambda_q1_int == 65536);

    // Frozen ladder values: delta_q = lambda_q^(-2 beta).
    CHECK(s.delta_q == doctest::Approx(std::pow(16.0, -0.18)).epsilon(1e-15));
    CHECK(s.delta_q1 == doctest::Approx(0.13584185781575728).epsilon(1e-14));
    CHECK(s.delta_q2 == doctest::Approx(0.00034051359041757954).epsilon(1e-14));

    // Auxiliary scales of the step 0 -> 1.
    CHECK(s.ell == doctest::Approx(std::pow(65536.0, -0.9)).epsilon(1e-14));
    CHECK(s.r == doctest::Approx(std::pow(65536.0, -0.75)).epsilon(1e-14));
    CHECK(s.r_lambda == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(s.r_lambda_integral);
    CHECK(s.r_lambda_in_u64);
    CHECK(s.r_lambda_int == 16);
}

TEST_CASE("scale ladder growth and overflow flags") {
    ParamSet p;
    const ScaleSet s1 = derive_scales(p, 1);
    CHECK(s1.lambda_q_in_u64);        // 16^4
    CHECK_FALSE(s1.lambda_q1_in_u64);  // 16^16 == 2^64 exceeds the type by one bit
    const ScaleSet s2 = derive_scales(p, 2);
    CHECK_FALSE(s2.lambda_q1_in_u64);  // 16^64 is far beyond 64 bits
    // Logs stay finite and exact: log lambda_q = b^q log a.
    CHECK(s2.log_lambda_q1 ==
          doctest::Approx(std::pow(4.0, 3) * std::log(16.0)).epsilon(1e-15));
    // The ladder ratio delta_{q+1}/delta_q is lambda-independent in logs.
    CHECK(std::log(s1.delta_q1 / s1.delta_q) ==
          doctest::Approx(-2.0 * p.beta * (s1.log_lambda_q1 - s1.log_lambda_q))
              .epsilon(1e-12));
}

TEST_CASE("regime validation at the desk point") {
    ParamSet p;
    const RegimeReport rep = validate_regime(p, 0);
    CHECK(rep.hard_ok);
    CHECK_FALSE(rep.all_ok);  // asymptotic conditions fail by design here

    const RegimeCheck* square = find_check(rep, "a_perfect_square");
    REQUIRE(square != nullptr);
    CHECK(square->satisfied);
    CHECK(square->hard);

    const RegimeCheck* halving = find_check(rep, "delta_halving");
    REQUIRE(halving != nullptr);
    CHECK(halving->satisfied);
    CHECK(halving->lhs == doctest::Approx(2.0 * 0.36856730432277535).epsilon(1e-12));

    const RegimeCheck* sep = find_check(rep, "mollifier_vs_block_separation");
    REQUIRE(sep != nullptr);
    CHECK_FALSE(sep->satisfied);
    CHECK_FALSE(sep->hard);
}

TEST_CASE("hard violations are flagged") {
    SUBCASE("a not a perfect square") {
        ParamSet p;
        p.a = 15.0;
        const RegimeReport rep = validate_regime(p, 0);
        CHECK_FALSE(rep.hard_ok);
        const RegimeCheck* c = find_check(rep, "a_perfect_square");
        REQUIRE(c != nullptr);
        CHECK_FALSE(c->satisfied);
    }
    SUBCASE("b not divisible by four") {
        ParamSet p;
        p.b = 3;
        const RegimeReport rep = validate_regime(p, 0);
        CHECK_FALSE(rep.hard_ok);
        const RegimeCheck* c = find_check(rep, "b_divisible_by_4");
        REQUIRE(c != nullptr);
        CHECK_FALSE(c->satisfied);
    }
    SUBCASE("non-integer a") {
        ParamSet p;
        p.a = 16.5;
        const RegimeReport rep = validate_regime(p, 0);
        CHECK_FALSE(rep.hard_ok);
    }
}

TEST_CASE("soft violation: amplitude ladder decays too slowly") {
    ParamSet p;
    p.beta = 0.01;  // 2 delta_1^(1/2) > delta_0^(1/2) at a=16, b=4
    const RegimeReport rep = validate_regime(p, 0);
    CHECK(rep.hard_ok);
    const RegimeCheck* halving = find_check(rep, "delta_halving");
    REQUIRE(halving != nullptr);
    CHECK_FALSE(halving->satisfied);
    CHECK_FALSE(rep.all_ok);
}

TEST_CASE("report formatting is total") {
    ParamSet p;
    const std::string text = format_regime_report(validate_regime(p, 0));
    CHECK(text.find("delta_halving") != std::string::npos);
    CHECK(text.find("hard checks") != std::string::npos);
}
