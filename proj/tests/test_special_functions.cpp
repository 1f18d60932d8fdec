#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cri/special_functions.hpp"

using namespace cri;

namespace {

// Independent oracle for integer shapes: Gamma(n, x) = (n-1)! e^{-x} sum x^k/k!
// with the rational coefficients written out exactly (no shared loop with the
// implementation's fast path).
double gamma3_oracle(double x) { return 2.0 * std::exp(-x) * (1.0 + x + x * x / 2.0); }
double gamma2_oracle(double x) { return std::exp(-x) * (1.0 + x); }

// Convergent-series oracle for E1; independent of the continued-fraction path
// the implementation uses for x >= 1. Accurate to ~1e-12 relative for x <= 5.
double e1_series_oracle(double x) {
    double sum = -euler_gamma - std::log(x);
    double power = 1.0;
    for (int k = 1; k <= 120; ++k) {
        power *= x / k;
        sum += (k % 2 == 1 ? power : -power) / k;
        if (power / k < 1e-20) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("upper incomplete gamma against exact finite sums") {
    CHECK_THAT(upper_incomplete_gamma(1.0, 0.5),
               Catch::Matchers::WithinRel(0.6065306597126334236, 1e-13));
    CHECK_THAT(upper_incomplete_gamma(3.0, 2.0), Catch::Matchers::WithinRel(gamma3_oracle(2.0), 1e-13));
    CHECK_THAT(upper_incomplete_gamma(3.0, 2.0),
               Catch::Matchers::WithinRel(1.3533528323661269189, 1e-12));
    CHECK(upper_incomplete_gamma(2.0, 0.0) == 1.0);
    for (double x : {0.1, 0.9, 2.7, 8.0, 25.0})
        CHECK_THAT(upper_incomplete_gamma(2.0, x), Catch::Matchers::WithinRel(gamma2_oracle(x), 1e-12));
}

TEST_CASE("upper incomplete gamma on non-integer and large arguments") {
    // frozen 20-digit reference values
    CHECK_THAT(upper_incomplete_gamma(2.5, 3.7),
               Catch::Matchers::WithinRel(0.25596506745382489864, 1e-12));
    CHECK_THAT(upper_incomplete_gamma(7.5, 2.0),
               Catch::Matchers::WithinRel(1867.0203013013955922, 1e-12));
    CHECK_THAT(upper_incomplete_gamma(0.5, 0.25),
               Catch::Matchers::WithinRel(0.84989183807993112979, 1e-12));
    CHECK_THAT(upper_incomplete_gamma(12.5, 80.0),
               Catch::Matchers::WithinRel(1.6156487454622462932e-13, 1e-12));
    CHECK_THAT(upper_incomplete_gamma(50.0, 700.0),
               Catch::Matchers::WithinRel(2.7235392253598656383e-165, 1e-12));
    // integer shape above the fast-path cap goes through the general paths
    CHECK_THAT(upper_incomplete_gamma(31.0, 31.5),
               Catch::Matchers::WithinRel(1.1690069607915210771e+32, 1e-12));
    // hardest spots of a 224-point reference sweep: tiny shapes and the
    // series/fraction switchover at x = a + 1
    CHECK_THAT(upper_incomplete_gamma(0.01, 1.009),
               Catch::Matchers::WithinRel(0.21708445240937390059, 1e-12));
    CHECK_THAT(upper_incomplete_gamma(0.05, 0.5),
               Catch::Matchers::WithinRel(0.55845322882719786979, 1e-12));
    CHECK_THAT(upper_incomplete_gamma(49.5, 50.499),
               Catch::Matchers::WithinRel(3.6862754367926941998e+61, 1e-12));
    CHECK_THAT(upper_incomplete_gamma(50.0, 49.999),
               Catch::Matchers::WithinRel(2.927344366447991258e+62, 1e-12));
}

TEST_CASE("upper incomplete gamma recurrence") {
    // Gamma(a+1, x) = a Gamma(a, x) + x^a e^{-x}
    for (double a : {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 0.5, 2.5, 7.3, 19.7}) {
        for (double x = 0.01; x <= 50.0; x *= 1.45) {
            const double lhs = upper_incomplete_gamma(a + 1.0, x);
            const double rhs = a * upper_incomplete_gamma(a, x) + std::pow(x, a) * std::exp(-x);
            REQUIRE_THAT(lhs, Catch::Matchers::WithinRel(rhs, 1e-10));
        }
    }
}

TEST_CASE("upper incomplete gamma domain and underflow behavior") {
    CHECK_THROWS_AS(upper_incomplete_gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma(1.0, -0.1), std::domain_error);
    // far past the underflow point the value is an honest zero
    CHECK(upper_incomplete_gamma(5.0, 800.0) == 0.0);
    // outputs stay finite and nonnegative across the supported domain
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> shape(1e-3, 50.0), arg(0.0, 700.0);
    for (int i = 0; i < 2000; ++i) {
        const double v = upper_incomplete_gamma(shape(gen), arg(gen));
        REQUIRE(std::isfinite(v));
        REQUIRE(v >= 0.0);
    }
}

TEST_CASE("exponential integral E1 against series oracle and references") {
    for (double x : {0.02, 0.1, 0.25, 0.5, 0.9, 1.0, 1.5, 2.5, 4.0})
        CHECK_THAT(exp_integral_e1(x), Catch::Matchers::WithinRel(e1_series_oracle(x), 1e-11));
    CHECK_THAT(exp_integral_e1(1.0), Catch::Matchers::WithinRel(0.21938393439552027368, 1e-12));
    CHECK_THAT(exp_integral_e1(0.25), Catch::Matchers::WithinRel(1.0442826344437381945, 1e-12));
    CHECK_THAT(exp_integral_e1(0.01), Catch::Matchers::WithinRel(4.0379295765381138318, 1e-12));
    CHECK_THAT(exp_integral_e1(5.0), Catch::Matchers::WithinRel(0.0011482955912753257973, 1e-12));
    CHECK_THAT(exp_integral_e1(10.0), Catch::Matchers::WithinRel(4.1569689296853242774e-6, 1e-12));
    CHECK_THAT(exp_integral_e1(30.0), Catch::Matchers::WithinRel(3.0215520106888125448e-15, 1e-12));
    CHECK_THAT(exp_integral_e1(100.0), Catch::Matchers::WithinRel(3.6835977616820321802e-46, 1e-12));
    // the top of the supported range grazes the subnormal floor
    CHECK_THAT(exp_integral_e1(700.0), Catch::Matchers::WithinRel(1.4065187662340329228e-307, 1e-11));
    CHECK_THROWS_AS(exp_integral_e1(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_e1(-2.0), std::domain_error);
}

TEST_CASE("exponential integral two-sided envelope") {
    // e^{-x} ln(1 + 1/x) >= E1(x) >= (1/2) e^{-x} ln(1 + 2/x)
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::exp(u(gen) * 10.0 - 4.0);  // log-spread over (0.018, 400)
        const double e1 = exp_integral_e1(x);
        REQUIRE(e1 <= std::exp(-x) * std::log1p(1.0 / x) * (1.0 + 1e-12));
        REQUIRE(e1 >= 0.5 * std::exp(-x) * std::log1p(2.0 / x) * (1.0 - 1e-12));
    }
}

TEST_CASE("E1 equals the continued fraction's shape-zero limit") {
    for (double x = 1.0; x <= 60.0; x *= 1.3)
        REQUIRE_THAT(exp_integral_e1(x),
                     Catch::Matchers::WithinRel(cri::detail::upper_gamma_cf(0.0, x), 1e-10));
}

TEST_CASE("regularized upper gamma") {
    for (int n : {1, 2, 3, 7, 30})
        CHECK(regularized_upper_gamma(n, 0.0) == 1.0);
    for (double x : {0.1, 0.7, 3.0, 12.0})
        CHECK_THAT(regularized_upper_gamma(1, x), Catch::Matchers::WithinRel(std::exp(-x), 1e-13));
    CHECK_THAT(regularized_upper_gamma(3, 2.0),
               Catch::Matchers::WithinRel(0.67667641618306345947, 1e-12));
    CHECK_THAT(regularized_upper_gamma(2, 0.5),
               Catch::Matchers::WithinRel(0.90979598956895013541, 1e-12));
    CHECK_THROWS_AS(regularized_upper_gamma(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(regularized_upper_gamma(2, -1.0), std::domain_error);
}

TEST_CASE("regularized upper gamma stays in [0,1] and decreases in x") {
    for (int n : {1, 2, 3, 5, 12}) {
        double prev = 1.0;
        for (int i = 0; i <= 400; ++i) {
            const double x = 50.0 * i / 400.0;
            const double v = regularized_upper_gamma(n, x);
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
            REQUIRE(v <= prev);
            prev = v;
        }
    }
}
