#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cri/analytic.hpp"
#include "cri/quadrature.hpp"

using namespace cri;

TEST_CASE("integrate handles analytic antiderivatives") {
    const auto exp_decay = integrate([](double x) { return std::exp(-x); }, 0.0, 50.0, 1e-12);
    REQUIRE(exp_decay.converged);
    CHECK_THAT(exp_decay.value, Catch::Matchers::WithinAbs(1.0 - std::exp(-50.0), 1e-12));
    CHECK(exp_decay.evaluations > 0);
    CHECK(exp_decay.abs_error >= 0.0);

    const auto ramp = integrate([](double x) { return x * std::exp(-x); }, 0.0, 60.0, 1e-11);
    REQUIRE(ramp.converged);
    CHECK_THAT(ramp.value, Catch::Matchers::WithinAbs(1.0, 1e-10));
}

TEST_CASE("integrate is exact on polynomials up to the rule's degree") {
    // Kronrod-15 integrates degree <= 22 exactly; only roundoff remains.
    const auto cubicish = integrate([](double x) { return 3.0 * x * x * x * x * x - 2.0 * x * x + 1.0; },
                                    -1.0, 2.0, 1e-12);
    REQUIRE(cubicish.converged);
    // antiderivative: x^6/2 - 2x^3/3 + x
    const double exact = (32.0 - 16.0 / 3.0 + 2.0) - (0.5 + 2.0 / 3.0 - 1.0);
    CHECK_THAT(cubicish.value, Catch::Matchers::WithinRel(exact, 1e-14));

    const auto deg22 = integrate([](double x) { return std::pow(x, 22); }, 0.0, 1.0, 1e-12);
    REQUIRE(deg22.converged);
    CHECK_THAT(deg22.value, Catch::Matchers::WithinRel(1.0 / 23.0, 1e-13));
}

TEST_CASE("integrate reports failure instead of a silent bad value") {
    // integrable singularity at 0 starves a tiny evaluation budget
    const auto r = integrate([](double x) { return std::pow(x, -0.9); }, 0.0, 1.0, 1e-12, 600);
    CHECK_FALSE(r.converged);
    // a non-finite integrand can never converge
    const auto s = integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10, 5000);
    CHECK_FALSE(s.converged);
}

TEST_CASE("integrate validates its arguments") {
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, 0.0), std::invalid_argument);
    const auto empty = integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-10);
    CHECK(empty.converged);
    CHECK(empty.value == 0.0);
}

TEST_CASE("semi-infinite integration with certified truncation") {
    const auto total = integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, 1e-11,
                                               {1.0, 1.0});
    REQUIRE(total.converged);
    CHECK_THAT(total.value, Catch::Matchers::WithinAbs(1.0, 1e-10));

    const auto mean = integrate_semi_infinite([](double x) { return x * std::exp(-x); }, 0.0,
                                              1e-10, {1.0, 1.0});
    REQUIRE(mean.converged);
    CHECK_THAT(mean.value, Catch::Matchers::WithinAbs(1.0, 1e-9));

    // shifted lower limit: int_2^inf e^{-x} = e^{-2}
    const auto shifted = integrate_semi_infinite([](double x) { return std::exp(-x); }, 2.0, 1e-11,
                                                 {1.0, 1.0});
    REQUIRE(shifted.converged);
    CHECK_THAT(shifted.value, Catch::Matchers::WithinAbs(std::exp(-2.0), 1e-10));

    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, 0.0, 1e-10, {0.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("functional_mean weights") {
    const RealFn exp_pdf = [](double z) { return std::exp(-z); };
    const ExpDecayHint hint{1.0, 1.0};
    CHECK_THAT(functional_mean(exp_pdf, MeanWeight::unit, hint, 1e-10).value,
               Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK_THAT(functional_mean(exp_pdf, MeanWeight::identity, hint, 1e-10).value,
               Catch::Matchers::WithinAbs(1.0, 1e-9));
    // E[log(1+Z)] for Exp(1) is e * E1(1)
    CHECK_THAT(functional_mean(exp_pdf, MeanWeight::log1p, hint, 1e-10).value,
               Catch::Matchers::WithinAbs(std::exp(1.0) * 0.21938393439552027368, 1e-9));
    // a density squeezed against zero has vanishing log-moment
    const double rate = 1e6;
    const RealFn squeezed = [rate](double z) { return rate * std::exp(-rate * z); };
    CHECK_THAT(functional_mean(squeezed, MeanWeight::log1p, {rate, rate}, 1e-12).value,
               Catch::Matchers::WithinAbs(0.0, 2e-6));
}

TEST_CASE("tabulated cdf tracks a closed-form cdf") {
    const TabulatedCdf table([](double z) { return std::exp(-z); }, 0.0, 40.0, 8000);
    CHECK(table.abs_error() < 1e-8);
    // knot values carry only the quadrature error
    for (double x : {0.005, 0.5, 1.0, 2.5, 10.0, 25.0})
        CHECK_THAT(table(x), Catch::Matchers::WithinAbs(1.0 - std::exp(-x), 1e-9));
    // between knots, linear interpolation adds O(step^2 |f'|)
    const double step = 40.0 / 8000.0;
    const double interp_bound = step * step / 8.0 + 1e-9;
    for (double x : {0.0131, 0.5017, 2.7003, 9.9049})
        CHECK_THAT(table(x), Catch::Matchers::WithinAbs(1.0 - std::exp(-x), interp_bound));
    CHECK(table(-1.0) == 0.0);
    CHECK(table(0.0) == 0.0);
    CHECK_THAT(table(1000.0), Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK_THROWS_AS(TabulatedCdf([](double) { return 0.0; }, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("ratio density at z = 0 equals (rate/p) E[Y]") {
    // with z = 0 the numerator pdf is flat and the integral collapses to the
    // mean of the mixed law
    ScenarioParams sc;
    sc.peak_power = 4.0;
    sc.interference_temp = 2.0;
    const auto law = ni_law_single(sc);
    CHECK_THAT(ratio_density(1.0, 4.0, law, 0.0),
               Catch::Matchers::WithinAbs(0.6434693402873665764, 1e-10));

    ScenarioParams swapped = sc;
    swapped.peak_power = 2.0;
    swapped.interference_temp = 4.0;
    CHECK_THAT(ratio_density(1.0, 2.0, ni_law_single(swapped), 0.0),
               Catch::Matchers::WithinAbs(1.3646647167633873081, 1e-10));
}

TEST_CASE("ratio density integrates to one in z") {
    ScenarioParams sc;
    sc.peak_power = 4.0;
    sc.interference_temp = 2.0;
    sc.su_count = 2;
    const auto law = ni_law_multi(sc);
    const auto as_density = [&](double z) { return ratio_density(1.0, sc.peak_power, law, z, 1e-11); };
    const auto norm = integrate_semi_infinite(as_density, 0.0, 1e-9, sinr_density_envelope(sc));
    REQUIRE(norm.converged);
    CHECK_THAT(norm.value, Catch::Matchers::WithinAbs(1.0, 1e-8));
    CHECK(as_density(0.7) >= 0.0);
    CHECK_THROWS_AS(ratio_density(1.0, 4.0, law, -0.5), std::domain_error);
}

TEST_CASE("splitting at atoms reconstructs cdf differences") {
    ScenarioParams sc;
    sc.peak_power = 4.0;
    sc.interference_temp = 2.0;
    const auto law = ni_law_single(sc);
    // integrate the continuous density across the cap and add the atom: must
    // equal the cdf increment over the same window
    const double a = 2.0, b = 3.5;
    const auto left = integrate([&](double x) { return law.continuous_pdf(x); }, a, 3.0, 1e-12);
    const auto right = integrate([&](double x) { return law.continuous_pdf(x); }, 3.0, b, 1e-12);
    REQUIRE(left.converged);
    REQUIRE(right.converged);
    const double reconstructed = left.value + right.value + law.atom_mass_at(3.0);
    CHECK_THAT(reconstructed, Catch::Matchers::WithinAbs(law.cdf(b) - law.cdf(a), 1e-10));
}
