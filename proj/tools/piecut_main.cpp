#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "piecut/baselines.hpp"
#include "piecut/bench.hpp"
#include "piecut/defaults.hpp"
#include "piecut/graph.hpp"
#include "piecut/instance.hpp"
#include "piecut/partition.hpp"
#include "piecut/score.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace piecut;

namespace {

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

AlgoParams make_params(double K, double C, int T, uint64_t seed, double eps) {
    AlgoParams p;
    p.K = K;
    p.C = C;
    p.T = T;
    p.seed = seed;
    p.sdp.eps = eps;
    p.sdp.seed = seed;
    p.strict = false;
    return p;
}

PartitionResult load_result(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j = json::parse(in);
    PartitionResult res;
    res.cut_cost = j["cut_cost"].get<long long>();
    res.pieces = j["pieces"].get<std::vector<std::vector<int>>>();
    res.final_cut.side_a = j["final_cut"]["side_a"].get<std::vector<int>>();
    res.final_cut.side_b = j["final_cut"]["side_b"].get<std::vector<int>>();
    res.degraded = j["degraded"].get<bool>();
    res.used_fallback = j.value("used_fallback", false);
    res.runtime_ms = j.value("runtime_ms", 0.0);
    res.d_used = j["params"].value("d", 0.0);
    (void)n;
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planted balanced-cut experiments"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a planted instance bundle");
    std::string gen_spec, gen_out;
    uint64_t gen_seed = 1;
    gen->add_option("--spec", gen_spec, "generator spec file (key=value)")->required();
    gen->add_option("--seed", gen_seed, "seed override");
    gen->add_option("--out", gen_out, "output directory")->required();

    // cut
    auto* cut = app.add_subcommand("cut", "partition a graph");
    std::string cut_graph, cut_out = "result.json";
    double cut_d = 0.0;
    bool cut_blind = false;
    double cut_K = defaults::K_eff, cut_C = defaults::C_eff, cut_eps = defaults::solver_eps;
    int cut_T = 0;
    uint64_t cut_seed = 1;
    cut->add_option("--graph", cut_graph, "edge-list file")->required();
    cut->add_option("--d", cut_d, "degree scale d (omit with --blind)");
    cut->add_flag("--blind", cut_blind, "search d over a geometric grid");
    cut->add_option("--K", cut_K, "master constant K");
    cut->add_option("--C", cut_C, "constant C in d = max(2m_H/n, C log^3 n)");
    cut->add_option("--T", cut_T, "iteration count (0 = auto)");
    cut->add_option("--seed", cut_seed, "seed");
    cut->add_option("--eps", cut_eps, "solver tolerance");
    cut->add_option("--out", cut_out, "result JSON path");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "score a result against ground truth");
    std::string eval_instance, eval_result, eval_out = "report.json";
    uint64_t eval_seed = 1;
    eval_cmd->add_option("--instance", eval_instance, "instance bundle directory")->required();
    eval_cmd->add_option("--result", eval_result, "result JSON from `cut`")->required();
    eval_cmd->add_option("--seed", eval_seed, "baseline seed");
    eval_cmd->add_option("--out", eval_out, "report JSON path");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run an experiment grid");
    std::string bench_config;
    bench_cmd->add_option("--config", bench_config, "key=value experiment config")->required();

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "run with every invariant recorded");
    std::string audit_graph, audit_out = "audit.json";
    double audit_d = 0.0;
    double audit_K = defaults::K_eff, audit_C = defaults::C_eff;
    int audit_T = 0;
    uint64_t audit_seed = 1;
    audit_cmd->add_option("--graph", audit_graph, "edge-list file")->required();
    audit_cmd->add_option("--d", audit_d, "degree scale d (0 = C log^3 n)");
    audit_cmd->add_option("--K", audit_K, "master constant K");
    audit_cmd->add_option("--C", audit_C, "constant C");
    audit_cmd->add_option("--T", audit_T, "iteration count (0 = auto)");
    audit_cmd->add_option("--seed", audit_seed, "seed");
    audit_cmd->add_option("--out", audit_out, "audit JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            GeneratorSpec spec = read_generator_spec_file(gen_spec);
            if (gen->count("--seed")) spec.seed = gen_seed;
            PlantedInstance inst = generate(spec);
            write_instance_bundle(inst, gen_out);
            std::cout << "wrote " << gen_out << " (n=" << inst.f.n_total()
                      << ", m=" << inst.f.edge_count() << ", noise=" << inst.noise_image.size()
                      << ", overlap=" << inst.overlap_count << ")\n";
        } else if (cut->parsed()) {
            Graph f = read_edge_list_file(cut_graph);
            AlgoParams params = make_params(cut_K, cut_C, cut_T, cut_seed, cut_eps);
            PartitionResult res;
            if (cut_blind) {
                res = run_blind(f, params);
            } else {
                if (cut_d <= 0.0)
                    throw std::runtime_error("cut: provide --d or --blind");
                res = run(f, params, cut_d);
            }
            write_json(result_to_json(res, params), cut_out);
            std::cout << "cut_cost=" << res.cut_cost << " balance="
                      << static_cast<double>(std::min(res.final_cut.side_a.size(),
                                                      res.final_cut.side_b.size())) /
                             std::max<size_t>(1, f.n_total())
                      << (res.degraded ? " (degraded)" : "") << " -> " << cut_out << '\n';
        } else if (eval_cmd->parsed()) {
            PlantedInstance inst = read_instance_bundle(eval_instance);
            PartitionResult res = load_result(eval_result, inst.f.n_total());
            ScoreOptions opts;
            opts.seed = eval_seed;
            AlgoParams defaults_params;
            opts.alpha = defaults_params.alpha();
            opts.beta = defaults_params.beta();
            opts.d = res.d_used > 0 ? res.d_used
                                    : compute_d(static_cast<long long>(inst.noise_image.size()),
                                                inst.f.n_total(), defaults_params.C);
            ScoreReport rep = evaluate(res, inst, opts);
            write_json(score_to_json(rep), eval_out);
            std::cout << "ratio=" << rep.ratio << " balance=" << rep.balance
                      << " cost_check=" << (rep.cost_check_ok ? "ok" : "MISMATCH") << " -> "
                      << eval_out << '\n';
        } else if (bench_cmd->parsed()) {
            ExperimentConfig cfg = read_experiment_config_file(bench_config);
            BenchOutput out = run_bench(cfg);
            std::cout << out.csv;
            if (!cfg.out_dir.empty())
                std::cout << "wrote " << (fs::path(cfg.out_dir) / "summary.csv").string() << '\n';
        } else if (audit_cmd->parsed()) {
            Graph f = read_edge_list_file(audit_graph);
            AlgoParams params = make_params(audit_K, audit_C, audit_T, audit_seed,
                                            defaults::solver_eps);
            double d = audit_d > 0 ? audit_d : compute_d(0, f.n_total(), params.C);
            InvariantAuditReport rep = audit(f, params, d);
            write_json(audit_to_json(rep), audit_out);
            int failed = 0;
            for (const auto& c : rep.checks)
                if (!c.pass) ++failed;
            std::cout << (rep.all_pass ? "all invariants pass" : "INVARIANT FAILURES") << " ("
                      << rep.checks.size() << " checks, " << failed << " failed) -> "
                      << audit_out << '\n';
            return rep.all_pass ? 0 : 2;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
