#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cri/analytic.hpp"
#include "cri/montecarlo.hpp"

using namespace cri;

namespace {

ScenarioParams unit(double p, double q, int n = 1) {
    ScenarioParams sc;
    sc.peak_power = p;
    sc.interference_temp = q;
    sc.su_count = n;
    return sc;
}

}  // namespace

TEST_CASE("exponential quantile") {
    CHECK_THAT(exponential_quantile(0.5, 1.0),
               Catch::Matchers::WithinAbs(0.69314718055994530942, 1e-15));
    CHECK(exponential_quantile(0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(exponential_quantile(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(exponential_quantile(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(exponential_quantile(0.5, 0.0), std::domain_error);
    // scaling a rate-lambda variate by p is the same as sampling at rate lambda/p
    for (double u : {0.123, 0.5, 0.987})
        CHECK_THAT(4.0 * exponential_quantile(u, 2.0),
                   Catch::Matchers::WithinRel(exponential_quantile(u, 0.5), 1e-14));
}

TEST_CASE("channel gain sample mean obeys the law of large numbers") {
    ChunkRng rng(987654321, 0);
    const std::size_t n = 1'000'000;
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) sum += draw_channel_gain(2.0, rng);
    const double mean = static_cast<double>(sum / n);
    // Exp(2): mean 0.5, sd 0.5; allow 3 standard errors
    CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.5, 3.0 * 0.5 / 1000.0));
}

TEST_CASE("noise-plus-interference simulation") {
    const auto sc = unit(4.0, 2.0);
    SimConfig cfg{1'000'000, 42, 2, 200};
    const auto emp = simulate_ni(sc, cfg);

    SECTION("samples live in the capped window") {
        CHECK(emp.sorted_samples().front() >= 1.0);
        CHECK(emp.sorted_samples().back() <= 3.0);
        CHECK(emp.size() == cfg.samples);
    }

    SECTION("cap-hit frequency matches the atom mass") {
        const double mass = std::exp(-0.5);
        const double sigma = std::sqrt(mass * (1.0 - mass) / 1e6);
        CHECK_THAT(emp.atom_frequency(), Catch::Matchers::WithinAbs(mass, 3.0 * sigma));
    }

    SECTION("histogram accounting: bins, atom hits, and tail cover every sample") {
        std::uint64_t binned = 0;
        for (auto c : emp.bin_counts()) binned += c;
        CHECK(binned + emp.atom_count() + emp.outside_count() == emp.size());
        // the window stops at the 99.9th percentile of the continuous part
        CHECK(emp.outside_count() <= emp.size() / 500);
        const auto& edges = emp.bin_edges();
        for (std::size_t i = 1; i < edges.size(); ++i) CHECK(edges[i] > edges[i - 1]);
    }

    SECTION("ecdf agrees with the law") {
        const auto law = ni_law_multi(sc);
        const double ks = ks_statistic(emp, [&law](double x) { return law.cdf(x); });
        CHECK(ks <= 0.005);
    }

    SECTION("ecdf is itself a valid cdf") {
        CHECK(emp.ecdf(emp.sorted_samples().front() - 1.0) == 0.0);
        CHECK(emp.ecdf(emp.sorted_samples().back()) == 1.0);
        double prev = 0.0;
        for (double x = 0.5; x <= 3.5; x += 0.01) {
            const double v = emp.ecdf(x);
            REQUIRE(v >= prev);
            prev = v;
        }
    }

    SECTION("histogram density tracks the continuous pdf") {
        const auto law = ni_law_single(sc);
        const auto& edges = emp.bin_edges();
        std::size_t bin = 0;
        while (bin + 2 < edges.size() && edges[bin + 1] < 2.0) ++bin;  // bin containing x = 2
        const double mid = 0.5 * (edges[bin] + edges[bin + 1]);
        CHECK_THAT(emp.bin_density(bin), Catch::Matchers::WithinAbs(law.continuous_pdf(mid), 0.02));
    }
}

TEST_CASE("simulation is a pure function of seed and samples, not workers") {
    const auto sc = unit(2.0, 4.0, 2);
    SimConfig base{300'000, 20240901, 1, 64};
    const auto one = simulate_ni(sc, base);
    for (unsigned workers : {2u, 4u, 16u}) {
        SimConfig cfg = base;
        cfg.workers = workers;
        const auto other = simulate_ni(sc, cfg);
        REQUIRE(other.sorted_samples() == one.sorted_samples());  // bit-identical
        REQUIRE(other.bin_counts() == one.bin_counts());
    }
    SimConfig reseeded = base;
    reseeded.seed = 7;
    CHECK(simulate_ni(sc, reseeded).sorted_samples() != one.sorted_samples());
}

TEST_CASE("SINR simulation agrees with the closed-form law") {
    const auto sc = unit(4.0, 2.0);
    SimConfig cfg{1'000'000, 271828, 4, 200};
    const auto emp = simulate_sinr(sc, cfg);

    CHECK(emp.sorted_samples().front() > 0.0);

    const double ks = ks_statistic(
        emp, [&sc](double z) { return z <= 0.0 ? 0.0 : outage_probability(sc, z); });
    CHECK(ks <= 0.005);

    CHECK_THAT(emp.mean(),
               Catch::Matchers::WithinAbs(mean_sinr(sc), 3.0 * emp.standard_error()));

    SECTION("outage estimate") {
        CHECK(outage_estimate(emp, emp.sorted_samples().front() * 0.5) == 0.0);
        CHECK_THAT(outage_estimate(emp, 1.0),
                   Catch::Matchers::WithinAbs(0.46734721003420251571, 0.003));
    }

    SECTION("capacity transform") {
        const auto cap = capacity_transform(emp);
        CHECK(cap.size() == emp.size());
        CHECK_THAT(cap.mean(), Catch::Matchers::WithinAbs(0.82300892377934509905,
                                                          3.0 * cap.standard_error()));
        // transform preserves order, so the extremes map through log1p
        CHECK_THAT(cap.sorted_samples().back(),
                   Catch::Matchers::WithinAbs(std::log1p(emp.sorted_samples().back()), 1e-12));
    }
}

TEST_CASE("multi-user numeric metrics agree with simulation") {
    const auto sc = unit(4.0, 2.0, 2);
    const auto emp = simulate_sinr(sc, {1'000'000, 5550123, 4, 200});
    CHECK_THAT(emp.mean(),
               Catch::Matchers::WithinAbs(mean_sinr_numeric(sc), 3.0 * emp.standard_error()));
    CHECK_THAT(outage_estimate(emp, 1.0),
               Catch::Matchers::WithinAbs(outage_numeric(sc, 1.0), 0.003));
    const auto cap = capacity_transform(emp);
    CHECK_THAT(cap.mean(), Catch::Matchers::WithinAbs(mean_capacity_numeric(sc),
                                                      3.0 * cap.standard_error()));
}

TEST_CASE("ks statistic literals") {
    // an ECDF compared against itself as a step function is at distance zero
    const auto emp = EmpiricalDistribution::from_samples({0.5, 1.0, 1.0, 2.5}, 4);
    const auto self = [&emp](double x) { return emp.ecdf(x); };
    CHECK(ks_statistic(emp, self) == 0.0);

    // a wrong constant cdf is maximally distinguished
    CHECK_THAT(ks_statistic(emp, [](double) { return 0.0; }), Catch::Matchers::WithinAbs(1.0, 1e-15));
}

TEST_CASE("ks statistic of exponential samples sits inside the dkw band") {
    SimConfig cfg{1'000'000, 123456789, 2, 100};
    ScenarioParams sc = unit(1.0, 1e9);  // effectively uncapped: NI - 1 is Exp(1)
    const auto emp = simulate_ni(sc, cfg);
    const double ks =
        ks_statistic(emp, [](double x) { return x <= 1.0 ? 0.0 : 1.0 - std::exp(-(x - 1.0)); });
    CHECK(ks <= 0.0017);  // 99.9% Kolmogorov band at n = 1e6
}

TEST_CASE("empirical distribution input validation") {
    CHECK_THROWS_AS(EmpiricalDistribution::from_samples({}, 10), std::invalid_argument);
    CHECK_THROWS_AS(EmpiricalDistribution::from_samples({1.0}, 0), std::invalid_argument);
    const auto emp = EmpiricalDistribution::from_samples({1.0, 2.0}, 4);
    CHECK(outage_estimate(emp, -1.0) == 0.0);  // threshold below every sample
    CHECK(outage_estimate(emp, 3.0) == 1.0);
    CHECK(emp.quantile(0.0) == 1.0);
    CHECK(emp.quantile(1.0) == 2.0);
    CHECK_THROWS_AS(emp.quantile(1.5), std::domain_error);
}

TEST_CASE("simulation config validation") {
    const auto sc = unit(4.0, 2.0);
    SimConfig cfg;
    cfg.samples = 0;
    CHECK_THROWS_AS(simulate_ni(sc, cfg), std::invalid_argument);
    cfg = SimConfig{};
    cfg.workers = 0;
    CHECK_THROWS_AS(simulate_sinr(sc, cfg), std::invalid_argument);
}
