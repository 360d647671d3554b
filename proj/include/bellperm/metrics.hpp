#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

// Noise model and figure-of-merit containers shared by the Monte Carlo and
// exact engines.

namespace bellperm {

// Error model for one simulation run.  Raw pairs are Werner states: A with
// probability f_in, each other code with probability (1 - f_in) / 3.  A
// two-pair gate acts correctly with probability p2 and otherwise replaces
// both pairs' codes with a uniform sample over the 16 joint codes, which is
// the same as XORing a uniformly random 4-bit mask (identity included); a
// custom 16-entry mask distribution can replace that channel.  Measurement
// verdicts are reported correctly with probability eta, which defaults to
// p2 when unset.
struct NoiseConfig {
    double f_in = 1.0;
    double p2 = 1.0;
    std::optional<double> eta;

    // Replaces the p2 depolarizing channel when set; index = mask_a << 2 | mask_b.
    std::optional<std::array<double, 16>> gate_channel;
    // Verdict flip probability used verbatim when set, overriding eta.
    std::optional<double> measure_flip;
    // When true (and measure_flip is unset), each party's local outcome
    // flips independently with probability 1 - eta, so the joint verdict
    // flips with probability 2 * eta * (1 - eta).
    bool independent_local_flips = false;
    // Optional single-pair mask channel applied after every PairPermute;
    // single-pair gate noise is off by default.
    std::optional<std::array<double, 4>> local_channel;

    double eta_value() const { return eta.value_or(p2); }

    double verdict_flip_probability() const {
        if (measure_flip) return *measure_flip;
        const double e = eta_value();
        return independent_local_flips ? 2.0 * e * (1.0 - e) : 1.0 - e;
    }

    // Empty when the config is usable; otherwise one message per problem.
    std::vector<std::string> validate() const;

    bool operator==(const NoiseConfig&) const = default;
};

// Point estimate with a standard error; exact-mode reports use se = 0.
struct Estimate {
    double value = 0.0;
    double se = 0.0;

    bool operator==(const Estimate&) const = default;
};

// Figures of merit from one run.  Monte Carlo fills standard errors from
// integer trajectory tallies; exact mode reports zero standard errors and
// sets `exact`.  All output-pair metrics are conditional on acceptance, so
// they are only meaningful when `metrics_available` is set (at least one
// accepted sample, or exact mode with nonzero pass mass).
struct MetricsReport {
    Estimate p_success;
    Estimate f_out;  // output-pair average marginal fidelity
    Estimate f_a;    // probability that every output pair is A

    // Teleportation survival under a stabilizer code; set when a code with
    // matching n_phys was supplied.  `f_l` counts by-product patterns of
    // weight within the code's correctable threshold; `f_l_decoder` counts
    // patterns whose minimum-weight decode leaves no logical error.
    std::optional<Estimate> f_l;
    std::optional<Estimate> f_l_decoder;

    // Sum of pairwise mutual information over output pairs (bits); needs at
    // least two output pairs and enough accepted samples.
    std::optional<Estimate> mutual_info;

    // Distribution of the number of non-A output pairs among accepted
    // samples: counts in Monte Carlo mode (sums to accepted_count),
    // conditional probabilities in exact mode (sums to 1).
    std::vector<double> weight_histogram;

    uint64_t sample_count = 0;    // trajectories requested (0 in exact mode)
    uint64_t accepted_count = 0;  // trajectories surviving every verdict
    bool exact = false;
    bool metrics_available = false;

    bool operator==(const MetricsReport&) const = default;
};

nlohmann::json metrics_to_json(const MetricsReport& r);

// One-row CSV form; the header line enumerates the stable column order.
// Unset optional metrics serialize as empty fields.
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& r);

}  // namespace bellperm
