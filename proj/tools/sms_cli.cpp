// Command-line front end: run experiment grids, inspect benchmark instances,
// and compare two samples of final values.

#include "sms/benchmarks.hpp"
#include "sms/harness.hpp"
#include "sms/stats.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int cmd_run(const std::string& config_path, bool traces, int threads, bool serial,
            const std::string& output) {
    using namespace sms::harness;
    ExperimentConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const sms::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    }
    if (traces)
        cfg.traces = true;
    if (threads > 0)
        cfg.threads = threads;
    if (!output.empty())
        cfg.output_dir = output;
    if (cfg.output_dir.empty())
        cfg.output_dir = "results";

    ExperimentReport report;
    try {
        report = run_experiment(cfg, serial ? Execution::serial : Execution::parallel);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    for (const auto& c : report.cells) {
        std::cout << c.benchmark << '\t' << c.optimizer;
        if (c.summary)
            std::cout << "\tAB=" << format_value(c.summary->mean)
                      << "\tMB=" << format_value(c.summary->median)
                      << "\tSD=" << format_value(c.summary->sd);
        else
            std::cout << "\t(all runs failed)";
        std::cout << '\n';
    }
    for (const auto& cmp : report.comparisons)
        std::cout << cmp.benchmark << '\t' << cmp.reference << " vs " << cmp.baseline
                  << "\tp=" << format_value(cmp.result.p_two_sided)
                  << (cmp.result.p_two_sided < 0.05 ? "\tsignificant" : "") << '\n';
    std::cout << "outputs written to " << cfg.output_dir.string() << '\n';

    if (report.failed_runs > 0) {
        std::cerr << report.failed_runs << " run(s) failed; see report.json\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_bench(const std::string& id_text, std::size_t n, std::uint64_t seed,
              const std::string& dump_path) {
    using namespace sms::bench;
    BenchmarkInstance inst;
    try {
        const int id = parse_id(id_text);
        inst = generate_instance(id, n ? n : default_dimension(id), seed);
    } catch (const sms::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    }
    const auto box = bounds_for(inst.id, inst.n);
    std::cout << "id\t" << id_name(inst.id) << "\nn\t" << inst.n << "\ninstance_seed\t"
              << inst.instance_seed << "\nbounds\t[" << box.low()[0] << ", " << box.high()[0]
              << "]^" << inst.n << '\n';
    const auto spec = to_objective(std::make_shared<const BenchmarkInstance>(inst));
    if (spec.f_opt)
        std::cout << "f_opt\t" << sms::harness::format_value(*spec.f_opt) << '\n';
    if (spec.x_opt) {
        sms::RandomStream rng(seed);
        const double v = evaluate_instance(inst, *spec.x_opt, rng);
        std::cout << "f(x_opt)\t" << sms::harness::format_value(v) << '\n';
        if (spec.f_opt)
            std::cout << "optimum_gap\t" << sms::harness::format_value(std::abs(v - *spec.f_opt))
                      << '\n';
    } else {
        std::cout << "x_opt\tnot analytically known\n";
    }
    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) {
            std::cerr << "cannot write " << dump_path << '\n';
            return kExitRuntime;
        }
        dump_instance(inst, out);
        std::cout << "dumped to " << dump_path << '\n';
    }
    return kExitOk;
}

int cmd_stats(const std::string& file_a, const std::string& file_b) {
    using namespace sms;
    std::vector<double> a, b;
    try {
        a = harness::read_column(file_a);
        b = harness::read_column(file_b);
        const auto res = stats::wilcoxon_rank_sum(a, b);
        const auto sa = stats::summarize(a);
        const auto sb = stats::summarize(b);
        std::cout << "sample\tcount\tAB\tMB\tSD\n";
        std::cout << "a\t" << sa.count << '\t' << harness::format_value(sa.mean) << '\t'
                  << harness::format_value(sa.median) << '\t' << harness::format_value(sa.sd)
                  << '\n';
        std::cout << "b\t" << sb.count << '\t' << harness::format_value(sb.mean) << '\t'
                  << harness::format_value(sb.median) << '\t' << harness::format_value(sb.sd)
                  << '\n';
        std::cout << "rank_sum\t" << harness::format_value(res.rank_sum) << '\n';
        std::cout << "p_two_sided\t" << harness::format_value(res.p_two_sided) << '\n';
        std::cout << "method\t"
                  << (res.method == stats::PMethod::exact ? "exact" : "normal-approximation")
                  << '\n';
        std::cout << "lower\t"
                  << (res.direction == stats::Direction::a_lower   ? "a"
                      : res.direction == stats::Direction::b_lower ? "b"
                                                                   : "none")
                  << '\n';
        std::cout << "significant_5pct\t" << (res.p_two_sided < 0.05 ? "yes" : "no") << '\n';
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"States of Matter Search experiments"};
    app.require_subcommand(1);

    std::string config_path, output;
    bool traces = false, serial = false;
    int threads = 0;
    auto* run = app.add_subcommand("run", "Execute an experiment config");
    run->add_option("config", config_path, "JSON experiment config")->required();
    run->add_flag("--traces", traces, "Export mean/median convergence traces");
    run->add_option("--threads", threads, "Worker threads (0 = runtime default)");
    run->add_flag("--serial", serial, "Run the grid on one thread");
    run->add_option("-o,--output", output, "Output directory (overrides config)");

    std::string bench_id, dump_path;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    auto* bench = app.add_subcommand("bench", "Show one benchmark instance and its optimum check");
    bench->add_option("id", bench_id, "Benchmark id, f1..f24")->required();
    bench->add_option("--n", n, "Dimension (default from the function table)");
    bench->add_option("--seed", seed, "Instance seed");
    bench->add_option("--dump", dump_path, "Write the instance data to this file");

    std::string file_a, file_b;
    auto* st = app.add_subcommand("stats", "Wilcoxon rank-sum test between two column files");
    st->add_option("a", file_a, "First sample (one value per line)")->required();
    st->add_option("b", file_b, "Second sample")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*run)
        return cmd_run(config_path, traces, threads, serial, output);
    if (*bench)
        return cmd_bench(bench_id, n, seed, dump_path);
    return cmd_stats(file_a, file_b);
}
