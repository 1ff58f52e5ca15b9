#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "piecut/instance.hpp"
#include "piecut/partition.hpp"
#include "piecut/score.hpp"

namespace piecut {

struct ExperimentConfig {
    std::vector<int> ns = {256};
    std::vector<uint64_t> seeds = {1};
    GModel g_model = GModel::TwoRandomRegular;
    int g_degree = 8;
    HModel h_model = HModel::ErdosRenyi;
    std::vector<double> h_avg_degrees = {4.0};
    double h_q = 0.5;
    int h_pa_m = 2;
    AlgoParams algo;
    bool blind = false;
    bool baselines = true;
    std::string out_dir = "bench_out";
    int workers = 0;  // 0 = hardware concurrency
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig read_experiment_config_file(const std::string& path);

struct BenchRow {
    uint64_t seed = 0;
    int n = 0;
    double d = 0.0;
    std::string h_model;
    double h_avg_degree = 0.0;
    long long cut_cost = 0;
    long long crossing_noise = 0;
    double ratio = 0.0;
    double balance = 0.0;
    long long spectral_cost = -1;
    long long random_cost = -1;
    double runtime_ms = 0.0;
    bool degraded = false;
    bool sdp_trace_monotone = true;
    int failed_invariants = 0;
};

struct BenchOutput {
    std::vector<BenchRow> rows;
    std::string csv;  // summary.csv content
};

// Runs the full grid (ns x h_avg_degrees x seeds): generate -> cut -> score.
// Each run is independent; rows come back in deterministic order. When
// out_dir is nonempty, writes summary.csv plus one report.json per run.
BenchOutput run_bench(const ExperimentConfig& config);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

struct InvariantAuditReport {
    std::vector<InvariantCheck> checks;
    bool all_pass = true;
    PartitionResult result;
};

// Full pipeline with every assertion recorded instead of thrown.
InvariantAuditReport audit(const Graph& f, const AlgoParams& params, double d);

nlohmann::json result_to_json(const PartitionResult& res, const AlgoParams& params);
nlohmann::json score_to_json(const ScoreReport& rep);
nlohmann::json audit_to_json(const InvariantAuditReport& rep);

// True when consecutive sdp_cost trace entries never increase by more than
// eps * |E| of the graph at that iteration (edge counts shrink over the run,
// so the original edge count is a safe upper bound for the slack).
bool sdp_trace_monotone(const PartitionResult& res, double eps, long long m0);

// Soft decay diagnostic: max over iterations of sdp_cost / (eta_t * d * n).
// Bounded behavior here indicates the per-iteration cost is halving on
// schedule; it is reported, never asserted.
double sdp_decay_ratio_max(const PartitionResult& res, double d, int n);

}  // namespace piecut
