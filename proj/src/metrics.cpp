#include "bellperm/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace bellperm {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

template <size_t N>
void check_channel(const std::array<double, N>& ch, const char* name,
                   std::vector<std::string>& problems) {
    double sum = 0.0;
    for (double p : ch) {
        if (!std::isfinite(p) || p < 0.0) {
            problems.push_back(std::string(name) + " has a negative or non-finite entry");
            return;
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        problems.push_back(std::string(name) + " entries sum to " + std::to_string(sum) +
                           ", not 1");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<std::string> NoiseConfig::validate() const {
    std::vector<std::string> problems;
    if (!is_probability(f_in)) problems.push_back("f_in must be in [0, 1]");
    if (!is_probability(p2)) problems.push_back("p2 must be in [0, 1]");
    if (eta && !is_probability(*eta)) problems.push_back("eta must be in [0, 1]");
    if (measure_flip && !is_probability(*measure_flip))
        problems.push_back("measure_flip must be in [0, 1]");
    if (gate_channel) check_channel(*gate_channel, "gate_channel", problems);
    if (local_channel) check_channel(*local_channel, "local_channel", problems);
    return problems;
}

namespace {

nlohmann::json estimate_to_json(const Estimate& e) {
    return {{"value", e.value}, {"se", e.se}};
}

}  // namespace

nlohmann::json metrics_to_json(const MetricsReport& r) {
    nlohmann::json doc{
        {"p_success", estimate_to_json(r.p_success)},
        {"f_out", estimate_to_json(r.f_out)},
        {"f_a", estimate_to_json(r.f_a)},
        {"weight_histogram", r.weight_histogram},
        {"samples", r.sample_count},
        {"accepted", r.accepted_count},
        {"exact", r.exact},
        {"metrics_available", r.metrics_available},
    };
    if (r.f_l) doc["f_l"] = estimate_to_json(*r.f_l);
    if (r.f_l_decoder) doc["f_l_decoder"] = estimate_to_json(*r.f_l_decoder);
    if (r.mutual_info) doc["mutual_info"] = estimate_to_json(*r.mutual_info);
    return doc;
}

std::string metrics_csv_header() {
    return "p_success,p_success_se,f_out,f_out_se,f_a,f_a_se,"
           "f_l,f_l_se,f_l_decoder,f_l_decoder_se,mutual_info,mutual_info_se,"
           "samples,accepted,exact,metrics_available";
}

std::string metrics_csv_row(const MetricsReport& r) {
    std::ostringstream row;
    const auto put = [&](const Estimate& e) { row << fmt(e.value) << ',' << fmt(e.se); };
    const auto put_opt = [&](const std::optional<Estimate>& e) {
        if (e) put(*e);
        else row << ',';
    };
    put(r.p_success);
    row << ',';
    put(r.f_out);
    row << ',';
    put(r.f_a);
    row << ',';
    put_opt(r.f_l);
    row << ',';
    put_opt(r.f_l_decoder);
    row << ',';
    put_opt(r.mutual_info);
    row << ',' << r.sample_count << ',' << r.accepted_count << ','
        << (r.exact ? 1 : 0) << ',' << (r.metrics_available ? 1 : 0);
    return row.str();
}

}  // namespace bellperm
