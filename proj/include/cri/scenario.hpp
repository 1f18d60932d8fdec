#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace cri {

/// Model constants for one underlay scenario, linear scale throughout.
/// Single source of truth for every formula; the scaled rates used by the
/// multi-user expressions are derived on demand, never stored.
struct ScenarioParams {
    double peak_power = 4.0;         // p: SU peak transmit power
    double interference_temp = 2.0;  // q: interference cap at the primary receiver
    double noise_power = 1.0;        // sigma^2: AWGN variance
    double pu_rate = 1.0;            // lambda_1: PU -> PBS channel power gain rate
    double su_rate = 1.0;            // lambda_2: SU -> PBS channel power gain rate
    int su_count = 1;                // n: number of secondary users

    void validate() const {
        if (!(peak_power > 0.0))
            throw std::invalid_argument("ScenarioParams: peak_power must be positive");
        if (!(interference_temp > 0.0))
            throw std::invalid_argument("ScenarioParams: interference_temp must be positive");
        if (!(noise_power > 0.0))
            throw std::invalid_argument("ScenarioParams: noise_power must be positive");
        if (!(pu_rate > 0.0)) throw std::invalid_argument("ScenarioParams: pu_rate must be positive");
        if (!(su_rate > 0.0)) throw std::invalid_argument("ScenarioParams: su_rate must be positive");
        if (su_count < 1) throw std::invalid_argument("ScenarioParams: su_count must be at least 1");
    }

    /// True when the simplified closed forms apply (unit rates, unit noise).
    bool unit_rate() const noexcept {
        return pu_rate == 1.0 && su_rate == 1.0 && noise_power == 1.0;
    }

    double su_rate_scaled() const noexcept { return su_rate / peak_power; }
    double pu_rate_scaled() const noexcept { return pu_rate / peak_power; }

    /// Location of the interference-cap point mass, sigma^2 + q.
    double cap_location() const noexcept { return noise_power + interference_temp; }

    std::string id() const {
        char buf[128];
        std::snprintf(buf, sizeof buf, "p=%g q=%g s2=%g l1=%g l2=%g n=%d", peak_power,
                      interference_temp, noise_power, pu_rate, su_rate, su_count);
        return buf;
    }
};

}  // namespace cri
