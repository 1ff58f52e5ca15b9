#include "piecut/bench.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "piecut/rng.hpp"

namespace piecut {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<uint64_t> parse_seed_list(const std::string& s) {
    // "1..10" or "1,2,3"
    auto dots = s.find("..");
    std::vector<uint64_t> out;
    if (dots != std::string::npos) {
        uint64_t lo = std::stoull(s.substr(0, dots));
        uint64_t hi = std::stoull(s.substr(dots + 2));
        for (uint64_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
        for (const auto& tok : split_list(s)) out.push_back(std::stoull(tok));
    }
    return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            auto last = s.find_last_not_of(" \t\r");
            s.erase(last == std::string::npos ? 0 : last + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "n") {
            cfg.ns.clear();
            for (const auto& tok : split_list(val)) cfg.ns.push_back(std::stoi(tok));
        } else if (key == "seeds") {
            cfg.seeds = parse_seed_list(val);
        } else if (key == "g_model") cfg.g_model = g_model_from_string(val);
        else if (key == "g_degree") cfg.g_degree = std::stoi(val);
        else if (key == "h_model") cfg.h_model = h_model_from_string(val);
        else if (key == "h_avg_degree") {
            cfg.h_avg_degrees.clear();
            for (const auto& tok : split_list(val)) cfg.h_avg_degrees.push_back(std::stod(tok));
        } else if (key == "h_q") cfg.h_q = std::stod(val);
        else if (key == "h_pa_m") cfg.h_pa_m = std::stoi(val);
        else if (key == "K") cfg.algo.K = std::stod(val);
        else if (key == "C") cfg.algo.C = std::stod(val);
        else if (key == "T") cfg.algo.T = std::stoi(val);
        else if (key == "c_arv") cfg.algo.c_arv = std::stod(val);
        else if (key == "eps") cfg.algo.sdp.eps = std::stod(val);
        else if (key == "blind") cfg.blind = val == "1" || val == "true";
        else if (key == "baselines") cfg.baselines = val == "1" || val == "true";
        else if (key == "out") cfg.out_dir = val;
        else if (key == "workers") cfg.workers = std::stoi(val);
        else throw std::invalid_argument("unknown bench key: " + key);
    }
    if (cfg.seeds.empty()) throw std::invalid_argument("bench config: empty seed list");
    return cfg;
}

ExperimentConfig read_experiment_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

std::string bench_csv_header() {
    return "seed,n,d,h_model,h_avg_degree,cut_cost,crossing_noise,ratio,balance,"
           "spectral_cost,random_cost,runtime_ms,degraded,sdp_trace_monotone\n";
}

std::string bench_csv_row(const BenchRow& r) {
    std::ostringstream os;
    os << r.seed << ',' << r.n << ',' << r.d << ',' << r.h_model << ',' << r.h_avg_degree
       << ',' << r.cut_cost << ',' << r.crossing_noise << ',' << r.ratio << ',' << r.balance
       << ',' << r.spectral_cost << ',' << r.random_cost << ',' << r.runtime_ms << ','
       << (r.degraded ? 1 : 0) << ',' << (r.sdp_trace_monotone ? 1 : 0) << '\n';
    return os.str();
}

double sdp_decay_ratio_max(const PartitionResult& res, double d, int n) {
    double worst = 0.0;
    for (const auto& row : res.trace) {
        if (row.active_n == 0 && row.sdp_cost == 0.0) continue;
        double eta = std::ldexp(1.0, -row.t);
        worst = std::max(worst, row.sdp_cost / (eta * d * static_cast<double>(n)));
    }
    return worst;
}

bool sdp_trace_monotone(const PartitionResult& res, double eps, long long m0) {
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& row : res.trace) {
        if (row.active_n == 0 && row.sdp_cost == 0.0) continue;
        if (row.sdp_cost > prev + eps * static_cast<double>(m0)) return false;
        prev = row.sdp_cost;
    }
    return true;
}

BenchOutput run_bench(const ExperimentConfig& config) {
    struct Task {
        int n;
        double h_avg;
        uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int n : config.ns)
        for (double h : config.h_avg_degrees)
            for (uint64_t s : config.seeds) tasks.push_back({n, h, s});

    std::vector<BenchRow> rows(tasks.size());
    std::vector<json> reports(tasks.size());
    std::atomic<size_t> next{0};

    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const Task& task = tasks[i];

            GeneratorSpec gspec;
            gspec.n = task.n;
            gspec.g_model = config.g_model;
            gspec.g_degree = config.g_degree;
            gspec.h_model = config.h_model;
            gspec.h_avg_degree = task.h_avg;
            gspec.h_q = config.h_q;
            gspec.h_pa_m = config.h_pa_m;
            gspec.seed = task.seed;
            PlantedInstance inst = generate(gspec);

            AlgoParams params = config.algo;
            params.seed = task.seed;
            params.strict = false;  // violations are reported, not thrown

            PartitionResult pr;
            double d = 0.0;
            if (config.blind) {
                pr = run_blind(inst.f, params);
                d = pr.blind_chosen_d;
            } else {
                d = compute_d(static_cast<long long>(inst.noise_image.size()), task.n,
                              params.C);
                pr = run(inst.f, params, d);
            }

            ScoreOptions sopts;
            sopts.run_baselines = config.baselines;
            sopts.alpha = params.alpha();
            sopts.beta = params.beta();
            sopts.d = d;
            sopts.seed = task.seed;
            ScoreReport rep = evaluate(pr, inst, sopts);

            BenchRow row;
            row.seed = task.seed;
            row.n = task.n;
            row.d = d;
            row.h_model = to_string(config.h_model);
            row.h_avg_degree = task.h_avg;
            row.cut_cost = rep.cut_cost;
            row.crossing_noise = rep.crossing_noise;
            row.ratio = rep.ratio;
            row.balance = rep.balance;
            row.spectral_cost = rep.spectral_cost;
            row.random_cost = rep.random_cost;
            row.runtime_ms = rep.runtime_ms;
            row.degraded = rep.degraded;
            row.sdp_trace_monotone =
                sdp_trace_monotone(pr, params.sdp.eps, inst.f.edge_count());
            row.failed_invariants = rep.failed_invariants;
            rows[i] = row;

            json report;
            report["result"] = result_to_json(pr, params);
            report["score"] = score_to_json(rep);
            report["sdp_trace_monotone"] = row.sdp_trace_monotone;
            report["sdp_decay_ratio_max"] = sdp_decay_ratio_max(pr, d, task.n);
            reports[i] = std::move(report);
        }
    };

    int workers = config.workers > 0
                      ? config.workers
                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<int>(workers, static_cast<int>(tasks.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    BenchOutput out;
    out.rows = rows;
    std::ostringstream csv;
    csv << bench_csv_header();
    for (const auto& r : rows) csv << bench_csv_row(r);
    out.csv = csv.str();

    if (!config.out_dir.empty()) {
        fs::create_directories(config.out_dir);
        std::ofstream csv_file(fs::path(config.out_dir) / "summary.csv");
        csv_file << out.csv;
        for (size_t i = 0; i < tasks.size(); ++i) {
            std::ostringstream name;
            name << "report_n" << tasks[i].n << "_h" << tasks[i].h_avg << "_s"
                 << tasks[i].seed << ".json";
            std::ofstream rf(fs::path(config.out_dir) / name.str());
            rf << reports[i].dump(2) << '\n';
        }
    }
    return out;
}

InvariantAuditReport audit(const Graph& f, const AlgoParams& params, double d) {
    AlgoParams p = params;
    p.strict = false;
    InvariantAuditReport rep;
    rep.result = run(f, p, d);
    rep.checks = rep.result.checks;
    for (const auto& c : rep.checks)
        if (!c.pass) rep.all_pass = false;
    return rep;
}

json result_to_json(const PartitionResult& res, const AlgoParams& params) {
    json j;
    j["cut_cost"] = res.cut_cost;
    size_t min_side = std::min(res.final_cut.side_a.size(), res.final_cut.side_b.size());
    size_t total = res.final_cut.side_a.size() + res.final_cut.side_b.size();
    j["balance"] = total ? static_cast<double>(min_side) / static_cast<double>(total) : 0.0;
    j["pieces"] = res.pieces;
    json iters = json::array();
    for (const auto& row : res.trace) {
        iters.push_back({{"t", row.t},
                         {"sdp_cost", row.sdp_cost},
                         {"long_cut", row.long_cut},
                         {"heavy_components", row.heavy_components},
                         {"heavy_cut", row.heavy_cut},
                         {"damage_y_size", row.damage_y_size},
                         {"damage_cut", row.damage_cut},
                         {"total_budget", row.total_budget},
                         {"active_n", row.active_n}});
    }
    j["iterations"] = iters;
    j["params"] = {{"K", params.K},
                   {"C", params.C},
                   {"beta", params.beta()},
                   {"alpha", params.alpha()},
                   {"delta", params.delta},
                   {"c_arv", params.c_arv},
                   {"T", params.T},
                   {"eps", params.sdp.eps},
                   {"seed", params.seed},
                   {"d", res.d_used}};
    j["degraded"] = res.degraded;
    j["used_fallback"] = res.used_fallback;
    j["runtime_ms"] = res.runtime_ms;
    if (res.d_used > 0 && !res.trace.empty()) {
        int n = static_cast<int>(res.final_cut.side_a.size() + res.final_cut.side_b.size());
        if (n > 0) j["sdp_decay_ratio_max"] = sdp_decay_ratio_max(res, res.d_used, n);
    }
    j["final_cut"] = {{"side_a", res.final_cut.side_a}, {"side_b", res.final_cut.side_b}};
    if (!res.blind_grid.empty()) {
        j["blind_grid"] = res.blind_grid;
        j["blind_chosen_d"] = res.blind_chosen_d;
    }
    json failed = json::array();
    for (const auto& name : res.failed_checks()) failed.push_back(name);
    j["failed_invariants"] = failed;
    return j;
}

json score_to_json(const ScoreReport& rep) {
    return json{{"cut_cost", rep.cut_cost},
                {"reported_cut_cost", rep.reported_cut_cost},
                {"cost_check_ok", rep.cost_check_ok},
                {"noise_budget", rep.noise_budget},
                {"crossing_noise", rep.crossing_noise},
                {"ratio", rep.ratio},
                {"balance", rep.balance},
                {"spectral_cost", rep.spectral_cost},
                {"random_cost", rep.random_cost},
                {"property3", rep.property3},
                {"property4", rep.property4},
                {"failed_invariants", rep.failed_invariants},
                {"degraded", rep.degraded},
                {"used_fallback", rep.used_fallback},
                {"runtime_ms", rep.runtime_ms}};
}

json audit_to_json(const InvariantAuditReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"t", c.t},
                          {"step", c.step},
                          {"pass", c.pass},
                          {"detail", c.detail}});
    return json{{"all_pass", rep.all_pass},
                {"checks", checks},
                {"cut_cost", rep.result.cut_cost},
                {"runtime_ms", rep.result.runtime_ms}};
}

}  // namespace piecut
