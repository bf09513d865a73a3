#include "mhdci/params.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mhdci/fields.hpp"

namespace mhdci {

namespace {

bool near_integer(double x, long long& out) {
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-9 && std::abs(r) < 9.0e18) {
        out = static_cast<long long>(r);
        return true;
    }
    return false;
}

// a^e for integer a >= 2, e >= 0, with overflow detection against 2^64.
bool pow_u64(std::uint64_t a, std::uint64_t e, std::uint64_t& out) {
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (acc > UINT64_MAX / a) return false;
        acc *= a;
    }
    out = acc;
    return true;
}

}  // namespace

ScaleSet derive_scales(const ParamSet& p, int q) {
    check_internal(q >= 0, "scale level must be nonnegative");
    check_internal(p.a > 1.0 && p.b >= 2, "frequency ladder needs a > 1, b >= 2");
    ScaleSet s;
    s.q = q;
    const double la = std::log(p.a);
    const double bq = std::pow(static_cast<double>(p.b), q);
    s.log_lambda_q = bq * la;
    s.log_lambda_q1 = bq * static_cast<double>(p.b) * la;
    s.lambda_q = std::exp(s.log_lambda_q);
    s.lambda_q1 = std::exp(s.log_lambda_q1);
    s.delta_q = std::exp(-2.0 * p.beta * s.log_lambda_q);
    s.delta_q1 = std::exp(-2.0 * p.beta * s.log_lambda_q1);
    s.delta_q2 = std::exp(-2.0 * p.beta * s.log_lambda_q1 * static_cast<double>(p.b));
    s.ell = std::exp(-p.eta * s.log_lambda_q1);
    s.r = std::exp(-0.75 * s.log_lambda_q1);
    s.r_lambda = std::exp(0.25 * s.log_lambda_q1);

    long long ai = 0;
    const bool a_int = near_integer(p.a, ai) && ai >= 2;
    if (a_int) {
        // lambda_q = a^(b^q) as an exact integer when it fits.
        std::uint64_t e = 1;
        bool e_ok = true;
        for (int i = 0; i < q && e_ok; ++i) {
            if (e > UINT64_MAX / static_cast<std::uint64_t>(p.b)) e_ok = false;
            else e *= static_cast<std::uint64_t>(p.b);
        }
        if (e_ok) {
            s.lambda_q_in_u64 = pow_u64(static_cast<std::uint64_t>(ai), e, s.lambda_q_int);
            std::uint64_t e1 = 0;
            if (e <= UINT64_MAX / static_cast<std::uint64_t>(p.b)) {
                e1 = e * static_cast<std::uint64_t>(p.b);
                s.lambda_q1_in_u64 = pow_u64(static_cast<std::uint64_t>(ai), e1, s.lambda_q1_int);
                if (p.b % 4 == 0) {
                    s.r_lambda_integral = true;
                    s.r_lambda_in_u64 =
                        pow_u64(static_cast<std::uint64_t>(ai), e1 / 4, s.r_lambda_int);
                }
            }
        }
        if (s.lambda_q_in_u64) s.lambda_q = static_cast<double>(s.lambda_q_int);
        if (s.lambda_q1_in_u64) s.lambda_q1 = static_cast<double>(s.lambda_q1_int);
        if (s.r_lambda_in_u64) s.r_lambda = static_cast<double>(s.r_lambda_int);
    }
    return s;
}

RegimeReport validate_regime(const ParamSet& p, int q) {
    RegimeReport rep;
    rep.q = q;
    auto add = [&rep](std::string name, double lhs, double rhs, bool ok, bool hard,
                      std::string note) {
        rep.checks.push_back({std::move(name), lhs, rhs, ok, hard, std::move(note)});
        if (!ok) {
            rep.all_ok = false;
            if (rep.checks.back().hard) rep.hard_ok = false;
        }
    };

    long long ai = 0;
    const bool a_int = near_integer(p.a, ai);
    add("a_integer_ge_2", p.a, 2.0, a_int && ai >= 2, true,
        "base frequency must be an integer >= 2");
    add("b_integer_ge_2", static_cast<double>(p.b), 2.0, p.b >= 2, true,
        "ladder exponent must be an integer >= 2");
    add("b_divisible_by_4", static_cast<double>(p.b % 4), 0.0, p.b % 4 == 0, true,
        "block periodicity count lambda_{q+1}^(1/4) must be an integer");
    bool a_square = false;
    if (a_int && ai >= 2) {
        const long long root = std::llround(std::sqrt(static_cast<double>(ai)));
        a_square = root * root == ai;
    }
    add("a_perfect_square", p.a, 0.0, a_square, true,
        "the seed fields oscillate at frequency lambda_0^(1/2), which must be an integer");
    add("beta_positive", p.beta, 0.0, p.beta > 0.0, true, "amplitude ladder must decay");
    add("eta_positive", p.eta, 0.0, p.eta > 0.0, true, "mollification scale must shrink");

    ScaleSet s = derive_scales(p, q);

    // 2 delta_{q+1}^(1/2) <= delta_q^(1/2): consecutive increments must at
    // least halve, so the ladder of amplitudes is summable with room.
    {
        const double lhs = 2.0 * std::sqrt(s.delta_q1);
        const double rhs = std::sqrt(s.delta_q);
        add("delta_halving", lhs, rhs, lhs <= rhs, false,
            "2 delta_{q+1}^(1/2) <= delta_q^(1/2)");
    }
    // eta b > 2 + beta b^2: mollification must beat both the C^1 growth of
    // the iterate and the amplitude ladder in the commutator estimates.
    {
        const double lhs = p.eta * static_cast<double>(p.b);
        const double rhs = 2.0 + p.beta * static_cast<double>(p.b) * p.b;
        add("eta_commutator_bound", lhs, rhs, lhs > rhs, false, "eta b > 2 + beta b^2");
    }
    // ell^(-65) <= r lambda_{q+1} = lambda_{q+1}^(1/4): the slow scales
    // raised to the highest power appearing in the error estimates must stay
    // below the block separation frequency.  In exponents: 65 eta <= 1/4.
    {
        const double lhs = 65.0 * p.eta;
        const double rhs = 0.25;
        add("mollifier_vs_block_separation", lhs, rhs, lhs <= rhs, false,
            "65 eta <= 1/4 (exponents of lambda_{q+1})");
    }
    // The next two levels must stay representable in double precision to run
    // the step numerically (log lambda below ~700).
    {
        const double lhs = s.log_lambda_q1 * static_cast<double>(p.b);
        add("double_representable", lhs, 700.0, lhs < 700.0, true,
            "log lambda_{q+2} must stay below exp overflow");
    }
    return rep;
}

std::string format_regime_report(const RegimeReport& r) {
    std::ostringstream os;
    os << "regime report for step q=" << r.q << " -> q=" << r.q + 1 << "\n";
    for (const auto& c : r.checks) {
        char line[256];
        std::snprintf(line, sizeof(line), "  [%s] %-32s lhs=%-12.6g rhs=%-12.6g %s\n",
                      c.satisfied ? "ok " : (c.hard ? "ERR" : "off"), c.name.c_str(), c.lhs,
                      c.rhs, c.note.c_str());
        os << line;
    }
    os << (r.hard_ok ? "  hard checks: all satisfied\n" : "  hard checks: FAILED\n");
    if (!r.all_ok && r.hard_ok)
        os << "  note: soft (asymptotic) conditions are out of range at this scale; "
              "quantities are reported rather than asserted\n";
    return os.str();
}

}  // namespace mhdci
