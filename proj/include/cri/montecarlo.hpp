#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "cri/mixed_distribution.hpp"
#include "cri/scenario.hpp"

namespace cri {

/// Governs one deterministic simulation run. Results depend on (samples,
/// seed, scenario) only; the worker count changes nothing but wall time.
struct SimConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 123456789;
    unsigned workers = 1;
    unsigned bins = 200;  // histogram resolution

    void validate() const {
        if (samples < 1) throw std::invalid_argument("SimConfig: samples must be at least 1");
        if (workers < 1) throw std::invalid_argument("SimConfig: workers must be at least 1");
        if (bins < 1) throw std::invalid_argument("SimConfig: bins must be at least 1");
    }
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Samples are generated in fixed-size chunks, each with its own counter
/// derived stream, so a chunk's output is a pure function of (seed, chunk
/// index) and independent of which worker runs it.
inline constexpr std::uint64_t sim_chunk_size = 1ull << 16;

class ChunkRng {
public:
    ChunkRng(std::uint64_t master_seed, std::uint64_t chunk_index)
        : state_(detail::mix64(detail::mix64(master_seed) ^
                               (0x9E3779B97F4A7C15ULL * (chunk_index + 1)))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform variate strictly inside (0, 1).
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

private:
    std::uint64_t state_;
};

/// Inverse CDF of the exponential distribution, -log(1-u)/rate.
inline double exponential_quantile(double u, double rate) {
    if (!(rate > 0.0)) throw std::domain_error("exponential_quantile: rate must be positive");
    if (!(u >= 0.0) || !(u < 1.0))
        throw std::domain_error("exponential_quantile: u must be in [0, 1)");
    return -std::log1p(-u) / rate;
}

/// One exponential channel power gain (Rayleigh fading) by inversion.
inline double draw_channel_gain(double rate, ChunkRng& rng) {
    return exponential_quantile(rng.next_uniform(), rate);
}

namespace detail {

template <class SampleFn>
inline std::vector<double> run_chunked(const SimConfig& cfg, SampleFn&& sample_one) {
    std::vector<double> out(cfg.samples);
    const std::uint64_t chunks = (cfg.samples + sim_chunk_size - 1) / sim_chunk_size;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, std::max<std::uint64_t>(chunks, 1)));
    auto work = [&](unsigned worker) {
        for (std::uint64_t c = worker; c < chunks; c += workers) {
            ChunkRng rng(cfg.seed, c);
            const std::uint64_t begin = c * sim_chunk_size;
            const std::uint64_t end = std::min<std::uint64_t>(cfg.samples, begin + sim_chunk_size);
            for (std::uint64_t i = begin; i < end; ++i) out[i] = sample_one(rng);
        }
    };
    if (workers <= 1) {
        work(0);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace detail

/// Sorted sample set with an equal-width histogram. Samples that hit a
/// declared atom location exactly are counted separately and never binned,
/// so the histogram estimates only the continuous density.
class EmpiricalDistribution {
public:
    static EmpiricalDistribution from_samples(std::vector<double> samples, unsigned bins,
                                              std::optional<double> atom_location = std::nullopt,
                                              std::optional<double> range_lo = std::nullopt) {
        if (samples.empty())
            throw std::invalid_argument("EmpiricalDistribution: empty sample set");
        if (bins < 1) throw std::invalid_argument("EmpiricalDistribution: bins must be at least 1");
        EmpiricalDistribution emp;
        emp.sorted_ = std::move(samples);
        std::sort(emp.sorted_.begin(), emp.sorted_.end());
        emp.atom_location_ = atom_location;

        long double sum = 0.0L;
        for (double v : emp.sorted_) sum += v;
        const auto n = static_cast<double>(emp.sorted_.size());
        emp.mean_ = static_cast<double>(sum / emp.sorted_.size());
        long double sq = 0.0L;
        for (double v : emp.sorted_) sq += (v - emp.mean_) * (v - emp.mean_);
        emp.se_ = emp.sorted_.size() > 1
                      ? std::sqrt(static_cast<double>(sq) / (n - 1.0)) / std::sqrt(n)
                      : 0.0;

        std::vector<double> continuous;
        continuous.reserve(emp.sorted_.size());
        if (atom_location) {
            for (double v : emp.sorted_) {
                if (v == *atom_location)
                    ++emp.atom_count_;
                else
                    continuous.push_back(v);
            }
        } else {
            continuous = emp.sorted_;
        }
        emp.build_histogram(continuous, bins, range_lo);
        return emp;
    }

    const std::vector<double>& sorted_samples() const noexcept { return sorted_; }
    std::uint64_t size() const noexcept { return sorted_.size(); }

    /// Fraction of samples <= x.
    double ecdf(double x) const {
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
    }

    /// Fraction of samples strictly below x.
    double ecdf_below(double x) const {
        const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
        return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
    }

    double quantile(double prob) const {
        if (!(prob >= 0.0 && prob <= 1.0))
            throw std::domain_error("EmpiricalDistribution: quantile probability out of range");
        const auto rank = static_cast<std::size_t>(prob * static_cast<double>(sorted_.size() - 1));
        return sorted_[std::min(rank, sorted_.size() - 1)];
    }

    double mean() const noexcept { return mean_; }
    double standard_error() const noexcept { return se_; }

    std::optional<double> atom_location() const noexcept { return atom_location_; }
    std::uint64_t atom_count() const noexcept { return atom_count_; }
    double atom_frequency() const noexcept {
        return static_cast<double>(atom_count_) / static_cast<double>(sorted_.size());
    }

    const std::vector<double>& bin_edges() const noexcept { return edges_; }
    const std::vector<std::uint64_t>& bin_counts() const noexcept { return counts_; }

    /// Continuous samples beyond the histogram window (the window stops at
    /// the 99.9th percentile so the tail cannot smear the bins). Always:
    /// sum(bin_counts) + atom_count + outside_count == size().
    std::uint64_t outside_count() const noexcept { return outside_count_; }

    /// Continuous-part density estimate of bin i, count / (n * width),
    /// normalized against the full law (atoms included in n).
    double bin_density(std::size_t i) const {
        const double width = edges_[i + 1] - edges_[i];
        return static_cast<double>(counts_[i]) /
               (static_cast<double>(sorted_.size()) * width);
    }

private:
    void build_histogram(const std::vector<double>& continuous, unsigned bins,
                         std::optional<double> range_lo) {
        double lo = range_lo.value_or(continuous.empty() ? 0.0 : continuous.front());
        double hi = lo + 1.0;
        if (!continuous.empty()) {
            lo = std::min(lo, continuous.front());
            const auto rank =
                static_cast<std::size_t>(0.999 * static_cast<double>(continuous.size() - 1));
            hi = continuous[rank];
            const double span_guard = 1e-12 * std::max(1.0, std::fabs(lo));
            if (!(hi > lo + span_guard)) hi = std::max(continuous.back(), lo + span_guard);
            if (!(hi > lo)) hi = lo + 1.0;
        }
        edges_.resize(bins + 1);
        counts_.assign(bins, 0);
        const double width = (hi - lo) / static_cast<double>(bins);
        for (unsigned i = 0; i <= bins; ++i) edges_[i] = lo + width * static_cast<double>(i);
        edges_.back() = hi;
        for (double v : continuous) {
            if (v < lo || v > hi) {
                ++outside_count_;
                continue;
            }
            auto idx = static_cast<std::size_t>((v - lo) / width);
            if (idx >= counts_.size()) idx = counts_.size() - 1;
            ++counts_[idx];
        }
    }

    std::vector<double> sorted_;
    std::vector<double> edges_;
    std::vector<std::uint64_t> counts_;
    std::optional<double> atom_location_;
    std::uint64_t atom_count_ = 0;
    std::uint64_t outside_count_ = 0;
    double mean_ = 0.0;
    double se_ = 0.0;
};

/// Noise-plus-interference samples sigma^2 + min(p sum_i alpha_i, q); the
/// alpha_i are i.i.d. exponential with rate lambda_2. Each sample consumes
/// exactly n uniforms, so the stream layout is a pure function of the
/// scenario.
inline EmpiricalDistribution simulate_ni(const ScenarioParams& params, const SimConfig& cfg) {
    params.validate();
    cfg.validate();
    const double p = params.peak_power;
    const double q = params.interference_temp;
    const double s2 = params.noise_power;
    const double l2 = params.su_rate;
    const int n = params.su_count;
    auto one = [p, q, s2, l2, n](ChunkRng& rng) {
        double gain_sum = 0.0;
        for (int j = 0; j < n; ++j) gain_sum += draw_channel_gain(l2, rng);
        return s2 + std::min(p * gain_sum, q);
    };
    return EmpiricalDistribution::from_samples(detail::run_chunked(cfg, one), cfg.bins,
                                               params.cap_location(), s2);
}

/// SINR samples gamma p / (sigma^2 + I). Per sample the n interferer gains
/// are drawn first, then the PU gain.
inline EmpiricalDistribution simulate_sinr(const ScenarioParams& params, const SimConfig& cfg) {
    params.validate();
    cfg.validate();
    const double p = params.peak_power;
    const double q = params.interference_temp;
    const double s2 = params.noise_power;
    const double l1 = params.pu_rate;
    const double l2 = params.su_rate;
    const int n = params.su_count;
    auto one = [p, q, s2, l1, l2, n](ChunkRng& rng) {
        double gain_sum = 0.0;
        for (int j = 0; j < n; ++j) gain_sum += draw_channel_gain(l2, rng);
        const double pu_gain = draw_channel_gain(l1, rng);
        return pu_gain * p / (s2 + std::min(p * gain_sum, q));
    };
    return EmpiricalDistribution::from_samples(detail::run_chunked(cfg, one), cfg.bins,
                                               std::nullopt, 0.0);
}

/// Fraction of samples whose SINR drops below the threshold.
inline double outage_estimate(const EmpiricalDistribution& emp, double threshold) {
    if (emp.size() == 0) throw std::invalid_argument("outage_estimate: empty sample set");
    return emp.ecdf_below(threshold);
}

/// Samples mapped through ln(1 + z) for capacity statistics.
inline EmpiricalDistribution capacity_transform(const EmpiricalDistribution& emp,
                                                unsigned bins = 200) {
    if (emp.size() == 0) throw std::invalid_argument("capacity_transform: empty sample set");
    std::vector<double> mapped;
    mapped.reserve(emp.size());
    for (double v : emp.sorted_samples()) mapped.push_back(std::log1p(v));
    return EmpiricalDistribution::from_samples(std::move(mapped), bins, std::nullopt, 0.0);
}

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF and a
/// right-continuous theory CDF. Both sides of every distinct sample value
/// are compared (the just-below evaluation uses the previous representable
/// double), which keeps point masses in either distribution honest.
inline double ks_statistic(const EmpiricalDistribution& emp, const RealFn& theory_cdf) {
    const auto& s = emp.sorted_samples();
    if (s.empty()) throw std::invalid_argument("ks_statistic: empty sample set");
    const auto n = static_cast<double>(s.size());
    double dist = 0.0;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        const double v = s[i];
        const double at = theory_cdf(v);
        const double below = theory_cdf(std::nextafter(v, -std::numeric_limits<double>::infinity()));
        dist = std::max(dist, std::fabs(at - static_cast<double>(j) / n));
        dist = std::max(dist, std::fabs(below - static_cast<double>(i) / n));
        i = j;
    }
    return dist;
}

}  // namespace cri
