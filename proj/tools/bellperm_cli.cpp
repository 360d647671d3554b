// Command-line front end: derives the gate-table artifact, simulates
// circuits under noise, runs the genetic search, benchmarks the backends,
// and sweeps noise grids into long-format CSV.  Every output file embeds or
// references a manifest describing the exact configuration that produced
// it; nothing in the manifest depends on the clock, so reruns are
// byte-identical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellperm/bench.hpp"
#include "bellperm/circuit.hpp"
#include "bellperm/circuit_json.hpp"
#include "bellperm/fnv.hpp"
#include "bellperm/gate_tables.hpp"
#include "bellperm/metrics.hpp"
#include "bellperm/optimizer.hpp"
#include "bellperm/sim.hpp"
#include "bellperm/stabilizer_code.hpp"

namespace {

using namespace bellperm;

constexpr const char* kToolName = "bellperm";
constexpr const char* kToolVersion = "1.0.0";

int usage_error(const std::string& msg) {
    std::cerr << "usage error: " << msg << "\n";
    return 2;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

uint64_t code_fingerprint(const StabilizerCode& code) {
    Fnv1a64 h;
    h.update(code.name().data(), code.name().size());
    h.update_u64(static_cast<uint64_t>(code.n_phys()));
    h.update_u64(static_cast<uint64_t>(code.distance()));
    for (const PauliOperator& g : code.generators()) {
        const std::string letters = g.to_letters();
        h.update(letters.data(), letters.size());
    }
    return h.digest();
}

// Run description recorded into every output; key order is alphabetical
// (nlohmann serializes sorted), values cover command, options, seeds and
// the fingerprints of the tables/codes/circuits involved.
class Manifest {
  public:
    Manifest(const std::string& command, uint64_t table_hash) {
        doc_["tool"] = kToolName;
        doc_["version"] = kToolVersion;
        doc_["command"] = command;
        doc_["gate_tables_hash"] = hash_to_hex(table_hash);
        doc_["options"] = nlohmann::json::object();
        doc_["code_hashes"] = nlohmann::json::object();
    }

    template <typename T>
    void option(const std::string& name, const T& value) {
        doc_["options"][name] = value;
    }

    void option(const std::string& name, const std::optional<double>& value) {
        if (value) {
            doc_["options"][name] = *value;
        } else {
            doc_["options"][name] = nullptr;
        }
    }

    void code(const StabilizerCode& c) {
        doc_["code_hashes"][c.name()] = hash_to_hex(code_fingerprint(c));
    }

    const nlohmann::json& json() const { return doc_; }
    std::string csv_comment() const { return "# manifest: " + doc_.dump() + "\n"; }

  private:
    nlohmann::json doc_;
};

// ---- shared flag bundles -------------------------------------------------

struct NoiseFlags {
    double f_in = 1.0;
    double p2 = 1.0;
    std::optional<double> eta;
};

void add_noise_flags(CLI::App* cmd, NoiseFlags& n) {
    cmd->add_option("--f-in", n.f_in, "Raw-pair Werner fidelity")->capture_default_str();
    cmd->add_option("--p2", n.p2, "Two-pair gate reliability")->capture_default_str();
    cmd->add_option("--eta", n.eta, "Measurement reliability (defaults to p2)");
}

NoiseConfig to_noise(const NoiseFlags& n) {
    NoiseConfig cfg;
    cfg.f_in = n.f_in;
    cfg.p2 = n.p2;
    cfg.eta = n.eta;
    return cfg;
}

void manifest_noise(Manifest& m, const NoiseFlags& n) {
    m.option("f_in", n.f_in);
    m.option("p2", n.p2);
    m.option("eta", n.eta);
}

std::optional<StabilizerCode> resolve_code(const std::string& spec) {
    if (spec.empty()) return std::nullopt;
    if (spec == "five_qubit") return StabilizerCode::five_qubit();
    if (spec == "eleven_qubit") return StabilizerCode::eleven_qubit();
    return StabilizerCode::from_file(spec);
}

// A circuit argument is either a builtin name or a .bpcirc.json path.
const char* kCircuitSpecHelp =
    "circuit file (.bpcirc.json) or builtin: single_selection[_x|_y], "
    "double_selection[_xz], five_to_two, passthrough_<k>, pumping_<k>, "
    "hashing_<n>_<k>";

bool parse_suffix_ints(const std::string& s, const std::string& prefix,
                       std::vector<uint32_t>& out) {
    if (s.rfind(prefix, 0) != 0) return false;
    std::istringstream rest(s.substr(prefix.size()));
    std::string part;
    while (std::getline(rest, part, '_')) {
        try {
            const unsigned long v = std::stoul(part);
            out.push_back(static_cast<uint32_t>(v));
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse number in circuit name: " + s);
        }
    }
    return true;
}

Circuit resolve_circuit(const std::string& spec, const GateTables& t) {
    if (spec == "single_selection") return build_single_selection(MeasureBasis::kZ, t);
    if (spec == "single_selection_x") return build_single_selection(MeasureBasis::kX, t);
    if (spec == "single_selection_y") return build_single_selection(MeasureBasis::kY, t);
    if (spec == "double_selection") return build_double_selection(DoubleSelectionVariant::kZX, t);
    if (spec == "double_selection_xz")
        return build_double_selection(DoubleSelectionVariant::kXZ, t);
    if (spec == "five_to_two") return build_five_to_two(t);
    std::vector<uint32_t> nums;
    if (parse_suffix_ints(spec, "passthrough_", nums)) {
        if (nums.size() != 1) throw std::invalid_argument("expected passthrough_<k>: " + spec);
        return build_passthrough(nums[0]);
    }
    if (parse_suffix_ints(spec, "pumping_", nums)) {
        if (nums.size() != 1) throw std::invalid_argument("expected pumping_<k>: " + spec);
        return build_blockwise_pumping(nums[0], t);
    }
    if (parse_suffix_ints(spec, "hashing_", nums)) {
        if (nums.size() != 2) throw std::invalid_argument("expected hashing_<n>_<k>: " + spec);
        return build_truncated_hashing(nums[0], nums[1], t);
    }
    try {
        return read_circuit_file(spec, t);
    } catch (const std::runtime_error& e) {
        // A bad path or malformed document is an input problem, not an
        // internal inconsistency.
        throw std::invalid_argument(e.what());
    }
}

uint64_t circuit_fingerprint(const Circuit& c, const GateTables& t) {
    const std::string bytes = circuit_to_json(c, t).dump();
    return Fnv1a64().update(bytes.data(), bytes.size()).digest();
}

struct CostFlags {
    std::string kind = "f_out";
    std::string code_spec;
    double mi_weight = 1.0;
};

void add_cost_flags(CLI::App* cmd, CostFlags& f) {
    cmd->add_option("--cost", f.kind, "Figure of merit to maximize")
        ->check(CLI::IsMember({"f_out", "f_a", "f_l", "f_l_minus_i"}))
        ->capture_default_str();
    cmd->add_option("--code", f.code_spec,
                    "Stabilizer code: five_qubit, eleven_qubit, or a .stab file");
    cmd->add_option("--mi-weight", f.mi_weight,
                    "Weight on pairwise mutual information (f_l_minus_i only)")
        ->capture_default_str();
}

CostKind parse_cost_kind(const std::string& kind) {
    if (kind == "f_out") return CostKind::kFOut;
    if (kind == "f_a") return CostKind::kFA;
    if (kind == "f_l") return CostKind::kFL;
    return CostKind::kFLMinusI;
}

// ---- derive ---------------------------------------------------------------

struct DeriveArgs {
    std::string out = "gate_tables.json";
};

int run_derive(const DeriveArgs& args) {
    const GateTables tables = GateTables::derive();
    tables.write_json_file(args.out);

    // Paranoia: the artifact must read back as the same object.
    const GateTables reread = GateTables::from_json_file(args.out);
    if (!(reread == tables) || reread.hash() != tables.hash()) {
        throw std::runtime_error("table artifact failed its read-back check");
    }

    Manifest manifest("derive", tables.hash());
    manifest.option("out", args.out);

    nlohmann::json report;
    report["manifest"] = manifest.json();
    report["single_qubit_classes"] = kNumLocalClasses;
    report["single_pair_permutations"] = 24;
    report["two_qubit_classes"] = kNumTwoQubitClasses;
    report["cosets"] = kNumCosets;
    report["two_pair_gates"] = kNumTwoPairGates;
    report["hash"] = hash_to_hex(tables.hash());
    std::cout << report.dump(2) << "\n";
    return 0;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string circuit;
    NoiseFlags noise;
    uint64_t samples = 100000;
    uint64_t seed = 0;
    bool exact = false;
    std::string code_spec;
    int threads = 0;
    std::string out;  // JSON; stdout when empty
    std::string csv;  // optional CSV copy
};

int run_simulate(const SimulateArgs& args) {
    if (!args.exact && args.samples == 0) {
        return usage_error("--samples must be positive unless --exact is set");
    }
    const GateTables& t = GateTables::instance();
    const Circuit circuit = resolve_circuit(args.circuit, t);
    const NoiseConfig noise = to_noise(args.noise);
    const std::optional<StabilizerCode> code = resolve_code(args.code_spec);

    SimOptions opt;
    opt.threads = args.threads;
    opt.tables = &t;
    if (code) opt.code = &*code;

    Manifest manifest("simulate", t.hash());
    manifest.option("circuit", args.circuit);
    manifest.option("circuit_hash", hash_to_hex(circuit_fingerprint(circuit, t)));
    manifest_noise(manifest, args.noise);
    manifest.option("samples", args.samples);
    manifest.option("seed", args.seed);
    manifest.option("exact", args.exact);
    manifest.option("threads", args.threads);
    manifest.option("code", args.code_spec);
    if (code) manifest.code(*code);

    nlohmann::json doc;
    doc["manifest"] = manifest.json();
    MetricsReport report;
    if (args.exact) {
        const ExactResult exact = run_exact(circuit, noise, opt);
        report = exact.report;
        doc["rejected_mass"] = exact.rejected_mass;
        doc["output_distribution"] = exact.output_distribution;
    } else {
        report = run_monte_carlo(circuit, noise, args.samples, args.seed, opt);
    }
    doc["metrics"] = metrics_to_json(report);

    const std::string body = doc.dump(2) + "\n";
    if (args.out.empty()) {
        std::cout << body;
    } else {
        write_text_file(args.out, body);
        std::cout << "wrote " << args.out << " (p_success=" << fmt(report.p_success.value)
                  << ", f_out=" << fmt(report.f_out.value) << ")\n";
    }
    if (!args.csv.empty()) {
        write_text_file(args.csv,
                        manifest.csv_comment() + metrics_csv_header() + "\n" +
                            metrics_csv_row(report) + "\n");
    }
    return 0;
}

// ---- optimize ---------------------------------------------------------------

struct OptimizeArgs {
    CostFlags cost;
    NoiseFlags noise;
    SearchConfig cfg;
    bool full_gates = false;
    std::string out = "best.bpcirc.json";
    std::string log = "search_log.csv";
};

int run_optimize(const OptimizeArgs& args) {
    const CostKind kind = parse_cost_kind(args.cost.kind);
    const bool needs_code = kind == CostKind::kFL || kind == CostKind::kFLMinusI;
    if (needs_code && args.cost.code_spec.empty()) {
        return usage_error("--cost " + args.cost.kind + " needs --code");
    }
    const GateTables& t = GateTables::instance();
    const std::optional<StabilizerCode> code = resolve_code(args.cost.code_spec);

    SearchConfig cfg = args.cfg;
    cfg.good_gates_only = !args.full_gates;
    CostFunction cost;
    cost.kind = kind;
    cost.mi_weight = args.cost.mi_weight;
    if (code) cost.code = &*code;
    const NoiseConfig noise = to_noise(args.noise);

    const SearchResult result = optimize(cfg, noise, cost, t);

    Manifest manifest("optimize", t.hash());
    manifest.option("cost", args.cost.kind);
    manifest.option("mi_weight", args.cost.mi_weight);
    manifest.option("code", args.cost.code_spec);
    if (code) manifest.code(*code);
    manifest_noise(manifest, args.noise);
    manifest.option("population", cfg.population_size);
    manifest.option("generations", cfg.max_generations);
    manifest.option("patience", cfg.convergence_patience);
    manifest.option("crossover_rate", cfg.crossover_rate);
    manifest.option("eval_samples", cfg.eval_samples);
    manifest.option("final_eval_samples", cfg.final_eval_samples);
    manifest.option("seed", cfg.seed);
    manifest.option("good_gates_only", cfg.good_gates_only);
    manifest.option("all_measurements", cfg.all_measurements);
    manifest.option("r_max", cfg.max_registers);
    manifest.option("n_max", cfg.max_raw_pairs);
    manifest.option("len_max", cfg.max_gates);
    manifest.option("k", cfg.output_pairs);
    manifest.option("threads", cfg.threads);
    manifest.option("out", args.out);
    manifest.option("log", args.log);

    nlohmann::json circuit_doc = circuit_to_json(result.best, t);
    circuit_doc["manifest"] = manifest.json();
    write_text_file(args.out, circuit_doc.dump(2) + "\n");
    write_text_file(args.log, manifest.csv_comment() + search_log_csv(result.log));

    nlohmann::json summary;
    summary["best_recorded_cost"] = result.best_recorded_cost;
    summary["generations"] = result.log.empty() ? 0 : result.log.back().generation;
    summary["final_metrics"] = metrics_to_json(result.final_report);
    summary["circuit_file"] = args.out;
    summary["log_file"] = args.log;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

// ---- benchmark ---------------------------------------------------------------

struct BenchmarkArgs {
    std::vector<uint32_t> sizes = {100, 10000, 1000000};
    uint32_t reps = 3;
    double min_seconds = 0.2;
    uint64_t seed = 0;
    uint32_t tableau_cap = 1u << 21;
    std::string out;  // stdout when empty
    std::string engine_out;
    uint64_t engine_samples = 200000;
    std::vector<int> engine_threads = {1, 2};
};

int run_benchmark(const BenchmarkArgs& args) {
    if (args.sizes.size() < 2) return usage_error("--sizes needs at least two entries");
    if (args.reps == 0) return usage_error("--reps must be positive");

    Manifest manifest("benchmark", GateTables::instance().hash());
    manifest.option("sizes", args.sizes);
    manifest.option("reps", args.reps);
    manifest.option("min_seconds", args.min_seconds);
    manifest.option("seed", args.seed);
    manifest.option("tableau_cap", args.tableau_cap);

    // reps independent runs per size; the CSV reports the per-point median.
    std::map<std::pair<std::string, uint32_t>, std::vector<double>> samples;
    for (uint32_t rep = 0; rep < args.reps; ++rep) {
        for (const BenchPoint& p :
             run_scaling_benchmark(args.sizes, args.min_seconds, args.seed + rep,
                                   args.tableau_cap)) {
            samples[{p.backend, p.n_pairs}].push_back(p.ns_per_gate);
        }
    }
    std::ostringstream csv;
    csv << manifest.csv_comment() << "backend,n_pairs,median_ns_per_gate,reps\n";
    for (const char* backend : {"diagonal", "tableau"}) {
        for (uint32_t size : args.sizes) {
            auto it = samples.find({backend, size});
            if (it == samples.end()) continue;  // tableau skipped above its cap
            std::vector<double>& v = it->second;
            std::sort(v.begin(), v.end());
            const double median = (v.size() % 2 == 1)
                                      ? v[v.size() / 2]
                                      : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
            csv << backend << ',' << size << ',' << fmt(median) << ',' << v.size() << '\n';
        }
    }
    if (args.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(args.out, csv.str());
        std::cout << "wrote " << args.out << "\n";
    }

    if (!args.engine_out.empty()) {
        const std::vector<EnginePoint> points =
            run_engine_benchmark(args.engine_samples, args.seed, args.engine_threads);
        write_text_file(args.engine_out, manifest.csv_comment() + engine_csv(points));
        std::cout << "wrote " << args.engine_out << "\n";
    }
    return 0;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
    std::vector<std::string> circuits;
    bool optimize_mode = false;
    CostFlags cost;
    SearchConfig cfg;  // bounds for --optimize
    bool full_gates = false;
    std::vector<double> f_in_grid = {1.0};
    std::vector<double> p2_grid = {1.0};
    std::vector<double> eta_grid;  // empty = leave eta unset
    uint64_t samples = 100000;
    uint64_t seed = 0;
    bool exact = false;
    std::string code_spec;
    int threads = 0;
    std::string out;  // stdout when empty
};

void append_metric_rows(std::ostringstream& csv, const std::string& label,
                        const std::string& point, const MetricsReport& r) {
    const auto row = [&](const char* metric, const Estimate& e) {
        csv << label << ',' << point << ',' << metric << ',' << fmt(e.value) << ','
            << fmt(e.se) << ",\n";
    };
    row("p_success", r.p_success);
    if (r.metrics_available) {
        row("f_out", r.f_out);
        row("f_a", r.f_a);
        if (r.f_l) row("f_l", *r.f_l);
        if (r.f_l_decoder) row("f_l_decoder", *r.f_l_decoder);
        if (r.mutual_info) row("mutual_info", *r.mutual_info);
    }
}

int run_sweep(const SweepArgs& args) {
    if (args.circuits.empty() && !args.optimize_mode) {
        return usage_error("need at least one --circuit or --optimize");
    }
    if (args.f_in_grid.empty() || args.p2_grid.empty()) {
        return usage_error("noise grids must not be empty");
    }
    if (!args.exact && args.samples == 0) {
        return usage_error("--samples must be positive unless --exact is set");
    }
    const CostKind kind = parse_cost_kind(args.cost.kind);
    const bool needs_code = kind == CostKind::kFL || kind == CostKind::kFLMinusI;
    if (args.optimize_mode && needs_code && args.cost.code_spec.empty()) {
        return usage_error("--cost " + args.cost.kind + " needs --code");
    }

    const GateTables& t = GateTables::instance();
    // --code doubles as the metrics code for plain circuit sweeps.
    const std::string code_spec =
        args.code_spec.empty() ? args.cost.code_spec : args.code_spec;
    const std::optional<StabilizerCode> code = resolve_code(code_spec);

    Manifest manifest("sweep", t.hash());
    manifest.option("circuits", args.circuits);
    manifest.option("optimize", args.optimize_mode);
    manifest.option("cost", args.cost.kind);
    manifest.option("f_in_grid", args.f_in_grid);
    manifest.option("p2_grid", args.p2_grid);
    manifest.option("eta_grid", args.eta_grid);
    manifest.option("samples", args.samples);
    manifest.option("seed", args.seed);
    manifest.option("exact", args.exact);
    manifest.option("code", code_spec);
    manifest.option("threads", args.threads);
    if (code) manifest.code(*code);

    SimOptions opt;
    opt.threads = args.threads;
    opt.tables = &t;
    if (code) opt.code = &*code;

    std::ostringstream csv;
    csv << manifest.csv_comment()
        << "circuit,f_in,p2,eta,mode,samples,seed,metric,value,se,error\n";
    const std::string mode = args.exact ? "exact" : "mc";

    std::vector<std::optional<double>> etas;
    if (args.eta_grid.empty()) {
        etas.push_back(std::nullopt);
    } else {
        for (double e : args.eta_grid) etas.push_back(e);
    }

    uint64_t point_counter = 0;
    const auto point_label = [&](const NoiseConfig& noise, uint64_t point_seed) {
        std::ostringstream p;
        p << fmt(noise.f_in) << ',' << fmt(noise.p2) << ','
          << (noise.eta ? fmt(*noise.eta) : std::string()) << ',' << mode << ','
          << (args.exact ? std::string() : std::to_string(args.samples)) << ','
          << (args.exact ? std::string() : std::to_string(point_seed));
        return p.str();
    };

    // Plain circuit rows.
    for (const std::string& spec : args.circuits) {
        Circuit circuit;
        try {
            circuit = resolve_circuit(spec, t);
        } catch (const std::exception& e) {
            std::string what = e.what();
            std::replace(what.begin(), what.end(), ',', ';');
            std::replace(what.begin(), what.end(), '\n', ' ');
            csv << spec << ",,,,,,,,,," << what << '\n';
            continue;
        }
        for (double f_in : args.f_in_grid) {
            for (double p2 : args.p2_grid) {
                for (const std::optional<double>& eta : etas) {
                    NoiseConfig noise;
                    noise.f_in = f_in;
                    noise.p2 = p2;
                    noise.eta = eta;
                    const uint64_t point_seed = args.seed + point_counter++;
                    const std::string point = point_label(noise, point_seed);
                    try {
                        const MetricsReport report =
                            args.exact
                                ? run_exact(circuit, noise, opt).report
                                : run_monte_carlo(circuit, noise, args.samples, point_seed,
                                                  opt);
                        append_metric_rows(csv, spec, point, report);
                    } catch (const std::exception& e) {
                        std::string what = e.what();
                        std::replace(what.begin(), what.end(), ',', ';');
                        std::replace(what.begin(), what.end(), '\n', ' ');
                        csv << spec << ',' << point << ",,,," << what << '\n';
                    }
                }
            }
        }
    }

    // Optimizer rows: one search per grid point, metrics from the winner's
    // final evaluation.
    if (args.optimize_mode) {
        SearchConfig cfg = args.cfg;
        cfg.good_gates_only = !args.full_gates;
        cfg.threads = args.threads;
        CostFunction cost;
        cost.kind = kind;
        cost.mi_weight = args.cost.mi_weight;
        if (code) cost.code = &*code;
        const std::string label = "optimized_" + args.cost.kind;
        for (double f_in : args.f_in_grid) {
            for (double p2 : args.p2_grid) {
                for (const std::optional<double>& eta : etas) {
                    NoiseConfig noise;
                    noise.f_in = f_in;
                    noise.p2 = p2;
                    noise.eta = eta;
                    cfg.seed = args.seed + point_counter;
                    ++point_counter;
                    // Winner metrics come from its Monte Carlo re-evaluation,
                    // regardless of how the sweep scores plain circuits.
                    std::ostringstream p;
                    p << fmt(noise.f_in) << ',' << fmt(noise.p2) << ','
                      << (noise.eta ? fmt(*noise.eta) : std::string()) << ",mc,"
                      << cfg.final_eval_samples << ',' << cfg.seed;
                    const std::string point = p.str();
                    try {
                        const SearchResult result = optimize(cfg, noise, cost, t);
                        append_metric_rows(csv, label, point, result.final_report);
                    } catch (const std::exception& e) {
                        std::string what = e.what();
                        std::replace(what.begin(), what.end(), ',', ';');
                        std::replace(what.begin(), what.end(), '\n', ' ');
                        csv << label << ',' << point << ",,,," << what << '\n';
                    }
                }
            }
        }
    }

    if (args.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(args.out, csv.str());
        std::cout << "wrote " << args.out << "\n";
    }
    return 0;
}

void add_search_bound_flags(CLI::App* cmd, SearchConfig& cfg, bool& full_gates) {
    cmd->add_option("--k", cfg.output_pairs, "Output pairs to keep")->capture_default_str();
    cmd->add_option("--r-max", cfg.max_registers, "Register count")->capture_default_str();
    cmd->add_option("--n-max", cfg.max_raw_pairs, "Raw-pair budget")->capture_default_str();
    cmd->add_option("--len-max", cfg.max_gates, "Two-pair gate budget")->capture_default_str();
    cmd->add_option("--population", cfg.population_size, "Population size")
        ->capture_default_str();
    cmd->add_option("--generations", cfg.max_generations, "Generation cap")
        ->capture_default_str();
    cmd->add_option("--patience", cfg.convergence_patience,
                    "Stop after this many generations without improvement")
        ->capture_default_str();
    cmd->add_option("--crossover-rate", cfg.crossover_rate, "Crossover probability")
        ->capture_default_str();
    cmd->add_option("--eval-samples", cfg.eval_samples, "Search-time MC budget per candidate")
        ->capture_default_str();
    cmd->add_option("--final-samples", cfg.final_eval_samples,
                    "MC budget for the winner's final evaluation")
        ->capture_default_str();
    cmd->add_option("--exact-eval-registers", cfg.exact_eval_registers,
                    "Use the exact engine for candidates up to this many registers")
        ->capture_default_str();
    cmd->add_flag("--full-gates", full_gates,
                  "Search over all 11520 gates instead of the good-gate subset");
    cmd->add_flag("--all-measurements", cfg.all_measurements,
                  "Allow all six basis/mode verdicts");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-diagonal purification circuits: tables, simulation, search"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    std::string tables_path;
    app.add_option("--tables", tables_path,
                   "Gate-table artifact to load (otherwise $BELLPERM_TABLES or a fresh "
                   "derivation)")
        ->envname("BELLPERM_TABLES");

    DeriveArgs derive_args;
    CLI::App* derive = app.add_subcommand(
        "derive", "Derive the gate-table artifact and write it with its hash");
    derive->add_option("--out", derive_args.out, "Output path")->capture_default_str();

    SimulateArgs sim_args;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Run one circuit under noise and report metrics");
    simulate->add_option("circuit", sim_args.circuit, kCircuitSpecHelp)->required();
    add_noise_flags(simulate, sim_args.noise);
    simulate->add_option("--samples", sim_args.samples, "Monte Carlo trajectories")
        ->capture_default_str();
    simulate->add_option("--seed", sim_args.seed, "Monte Carlo seed")->capture_default_str();
    simulate->add_flag("--exact", sim_args.exact, "Exact distribution propagation");
    simulate->add_option("--code", sim_args.code_spec,
                         "Stabilizer code for the f_l metrics: five_qubit, eleven_qubit, "
                         "or a .stab file");
    simulate->add_option("--threads", sim_args.threads, "Monte Carlo worker threads (0 = auto)")
        ->capture_default_str();
    simulate->add_option("--out", sim_args.out, "Metrics JSON path (stdout when omitted)");
    simulate->add_option("--csv", sim_args.csv, "Also write a one-row metrics CSV here");

    OptimizeArgs opt_args;
    CLI::App* optimize_cmd =
        app.add_subcommand("optimize", "Genetic search for a purification circuit");
    add_cost_flags(optimize_cmd, opt_args.cost);
    add_noise_flags(optimize_cmd, opt_args.noise);
    add_search_bound_flags(optimize_cmd, opt_args.cfg, opt_args.full_gates);
    optimize_cmd->add_option("--seed", opt_args.cfg.seed, "Search seed")->capture_default_str();
    optimize_cmd->add_option("--threads", opt_args.cfg.threads, "Evaluation threads (0 = auto)")
        ->capture_default_str();
    optimize_cmd->add_option("--out", opt_args.out, "Best-circuit output path")
        ->capture_default_str();
    optimize_cmd->add_option("--log", opt_args.log, "Per-generation search log CSV")
        ->capture_default_str();

    BenchmarkArgs bench_args;
    CLI::App* benchmark = app.add_subcommand(
        "benchmark", "Time the diagonal and tableau backends across state sizes");
    benchmark->add_option("--sizes", bench_args.sizes, "Pair counts to time")
        ->delimiter(',')
        ->capture_default_str();
    benchmark->add_option("--reps", bench_args.reps, "Repetitions per point (median reported)")
        ->capture_default_str();
    benchmark->add_option("--min-seconds", bench_args.min_seconds, "Minimum time per point")
        ->capture_default_str();
    benchmark->add_option("--seed", bench_args.seed, "Gate-sequence seed")
        ->capture_default_str();
    benchmark->add_option("--tableau-cap", bench_args.tableau_cap,
                          "Skip the tableau backend above this many pairs")
        ->capture_default_str();
    benchmark->add_option("--out", bench_args.out, "Scaling CSV path (stdout when omitted)");
    benchmark->add_option("--engine-out", bench_args.engine_out,
                          "Also time the serial vs parallel trajectory engines into this CSV");
    benchmark->add_option("--engine-samples", bench_args.engine_samples,
                          "Trajectories per engine timing")
        ->capture_default_str();
    benchmark->add_option("--engine-threads", bench_args.engine_threads,
                          "Thread counts for the parallel engine timing")
        ->delimiter(',')
        ->capture_default_str();

    SweepArgs sweep_args;
    CLI::App* sweep =
        app.add_subcommand("sweep", "Evaluate circuits (or searches) over a noise grid");
    sweep->add_option("--circuit", sweep_args.circuits, kCircuitSpecHelp);
    sweep->add_flag("--optimize", sweep_args.optimize_mode,
                    "Run the genetic search at every grid point");
    add_cost_flags(sweep, sweep_args.cost);
    add_search_bound_flags(sweep, sweep_args.cfg, sweep_args.full_gates);
    sweep->add_option("--f-in-grid", sweep_args.f_in_grid, "Werner fidelity grid")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--p2-grid", sweep_args.p2_grid, "Gate reliability grid")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--eta-grid", sweep_args.eta_grid,
                      "Measurement reliability grid (omitted = track p2)")
        ->delimiter(',');
    sweep->add_option("--samples", sweep_args.samples, "Monte Carlo trajectories per point")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "Base seed; points use seed, seed+1, ...")
        ->capture_default_str();
    sweep->add_flag("--exact", sweep_args.exact, "Exact distribution propagation");
    sweep->add_option("--metrics-code", sweep_args.code_spec,
                      "Stabilizer code for the f_l metrics (defaults to --code)");
    sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = auto)")
        ->capture_default_str();
    sweep->add_option("--out", sweep_args.out, "Sweep CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!tables_path.empty()) GateTables::use_file(tables_path);
        if (derive->parsed()) return run_derive(derive_args);
        if (simulate->parsed()) return run_simulate(sim_args);
        if (optimize_cmd->parsed()) return run_optimize(opt_args);
        if (benchmark->parsed()) return run_benchmark(bench_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
