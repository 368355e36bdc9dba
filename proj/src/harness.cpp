#include "sms/harness.hpp"

#include "sms/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sms::harness {

using nlohmann::json;

namespace {

// Reads typed fields from one JSON object, collecting every problem instead
// of stopping at the first.
class FieldReader {
public:
    FieldReader(const json& obj, std::string where, std::vector<std::string>& errors)
        : obj_(obj), where_(std::move(where)), errors_(errors) {
        if (!obj_.is_object())
            error("expected an object");
    }

    ~FieldReader() {
        if (!obj_.is_object())
            return;
        for (const auto& [key, value] : obj_.items()) {
            if (!seen_.count(key))
                error("unknown key '" + key + "'");
        }
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return obj_.is_object() && obj_.contains(key);
    }

    template <typename T>
    void read(const std::string& key, T& out) {
        if (!has(key))
            return;
        const json& v = obj_.at(key);
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean())
                return error("'" + key + "' must be true or false");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string())
                return error("'" + key + "' must be a string");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.get<long long>() < 0))
                return error("'" + key + "' must be a non-negative integer");
        } else {
            if (!v.is_number())
                return error("'" + key + "' must be a number");
        }
        out = v.get<T>();
    }

    template <typename T>
    void read(const std::string& key, std::optional<T>& out) {
        if (!has(key))
            return;
        T tmp{};
        const std::size_t before = errors_.size();
        read(key, tmp);
        if (errors_.size() == before)
            out = tmp;
    }

    const json* child(const std::string& key) {
        if (!has(key))
            return nullptr;
        return &obj_.at(key);
    }

    void error(const std::string& msg) { errors_.push_back(where_ + ": " + msg); }
    const std::string& where() const { return where_; }

private:
    const json& obj_;
    std::string where_;
    std::vector<std::string>& errors_;
    std::set<std::string> seen_;
};

void read_state(const json& doc, const std::string& where, StateConfig& cfg,
                std::vector<std::string>& errors) {
    FieldReader r(doc, where, errors);
    r.read("rho_lo", cfg.rho_lo);
    r.read("rho_hi", cfg.rho_hi);
    r.read("beta", cfg.beta);
    r.read("alpha", cfg.alpha);
    r.read("H", cfg.H);
}

void check(std::vector<std::string>& errors, const std::string& where, auto&& validate) {
    try {
        validate();
    } catch (const ConfigError& e) {
        errors.push_back(where + ": " + e.what());
    }
}

OptimizerEntry parse_optimizer(const json& doc, const std::string& where,
                               std::vector<std::string>& errors) {
    OptimizerEntry o;
    std::string name;
    json params = json::object();
    if (doc.is_string()) {
        name = doc.get<std::string>();
    } else {
        FieldReader r(doc, where, errors);
        r.read("name", name);
        r.read("label", o.label);
        if (const json* p = r.child("params"))
            params = *p;
    }

    if (name == "sms")
        o.algorithm = Algorithm::sms;
    else if (name == "pso")
        o.algorithm = Algorithm::pso;
    else if (name == "de")
        o.algorithm = Algorithm::de;
    else {
        errors.push_back(where + ": unknown optimizer '" + name + "' (expected sms, pso or de)");
        return o;
    }
    if (o.label.empty())
        o.label = name;

    const std::string pwhere = where + ".params";
    FieldReader r(params, pwhere, errors);
    r.read("np", o.np);
    r.read("gen", o.gen);
    switch (o.algorithm) {
    case Algorithm::sms: {
        auto& s = o.sms;
        r.read("gas_frac", s.schedule.gas_frac);
        r.read("liquid_frac", s.schedule.liquid_frac);
        r.read("solid_frac", s.schedule.solid_frac);
        if (const json* g = r.child("gas"))
            read_state(*g, pwhere + ".gas", s.schedule.gas, errors);
        if (const json* l = r.child("liquid"))
            read_state(*l, pwhere + ".liquid", s.schedule.liquid, errors);
        if (const json* sd = r.child("solid"))
            read_state(*sd, pwhere + ".solid", s.schedule.solid, errors);
        std::string rho;
        r.read("rho_sampling", rho);
        if (rho == "per_molecule")
            s.rho_sampling = RhoSampling::per_molecule;
        else if (!rho.empty() && rho != "per_dimension")
            r.error("rho_sampling must be per_dimension or per_molecule");
        check(errors, pwhere, [&] { s.schedule.validate(); });
        break;
    }
    case Algorithm::pso:
        r.read("c1", o.pso.c1);
        r.read("c2", o.pso.c2);
        r.read("w_start", o.pso.w_start);
        r.read("w_end", o.pso.w_end);
        break;
    case Algorithm::de:
        r.read("cr", o.de.cr);
        r.read("f", o.de.f);
        break;
    }
    return o;
}

BenchmarkEntry parse_benchmark(const json& doc, const std::string& where,
                               std::vector<std::string>& errors) {
    BenchmarkEntry b;
    std::string id;
    std::optional<std::size_t> n;
    if (doc.is_string()) {
        id = doc.get<std::string>();
    } else {
        FieldReader r(doc, where, errors);
        r.read("id", id);
        r.read("n", n);
        r.read("instance_seed", b.instance_seed);
        r.read("gen", b.gen);
    }
    try {
        b.id = bench::parse_id(id);
    } catch (const ConfigError& e) {
        errors.push_back(where + ": " + e.what());
        return b;
    }
    b.n = n.value_or(bench::default_dimension(b.id));
    if (b.id >= 12 && b.id <= 14 && b.n != bench::default_dimension(b.id))
        errors.push_back(where + ": " + id + " requires n = " +
                         std::to_string(bench::default_dimension(b.id)));
    if (b.n < 2)
        errors.push_back(where + ": n must be at least 2");
    return b;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

json optional_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json summary_json(const std::optional<stats::SummaryStats>& s) {
    if (!s)
        return nullptr;
    return {{"AB", s->mean}, {"MB", s->median}, {"SD", s->sd}, {"count", s->count}};
}

std::string method_name(stats::PMethod m) {
    return m == stats::PMethod::exact ? "exact" : "normal-approximation";
}

std::string direction_name(stats::Direction d) {
    switch (d) {
    case stats::Direction::a_lower:
        return "reference-lower";
    case stats::Direction::b_lower:
        return "baseline-lower";
    default:
        return "none";
    }
}

struct RunOutcome {
    double final_value = 0.0;
    std::uint64_t evaluations = 0;
    bool failed = false;
    std::string error;
    Vector trace;
};

RunOutcome execute_run(const OptimizerEntry& o, const ObjectiveSpec& spec, std::size_t np,
                       std::size_t gen, std::uint64_t seed) {
    RunOutcome out;
    try {
        RunResult r;
        switch (o.algorithm) {
        case Algorithm::sms: {
            SmsParams p = o.sms;
            p.np = np;
            p.gen = gen;
            r = run_sms(spec, p, seed);
            break;
        }
        case Algorithm::pso: {
            PsoParams p = o.pso;
            p.np = np;
            p.gen = gen;
            r = run_pso(spec, p, seed);
            break;
        }
        case Algorithm::de: {
            DeParams p = o.de;
            p.np = np;
            p.gen = gen;
            r = run_de(spec, p, seed);
            break;
        }
        }
        out.final_value = r.best.value;
        out.evaluations = r.evaluations;
        out.trace = std::move(r.trace);
        if (r.non_finite || !std::isfinite(r.best.value)) {
            out.failed = true;
            out.error = "objective returned a non-finite value";
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
        out.final_value = nan();
    }
    return out;
}

} // namespace

std::string algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::sms:
        return "sms";
    case Algorithm::pso:
        return "pso";
    case Algorithm::de:
        return "de";
    }
    return "?";
}

std::size_t default_gen(int benchmark_id) {
    return benchmark_id >= 12 && benchmark_id <= 14 ? 500 : 1000;
}

std::size_t resolve_gen(const ExperimentConfig& cfg, const BenchmarkEntry& b,
                        const OptimizerEntry& o) {
    if (o.gen)
        return *o.gen;
    if (b.gen)
        return *b.gen;
    if (cfg.gen)
        return *cfg.gen;
    return default_gen(b.id);
}

std::size_t resolve_np(const ExperimentConfig& cfg, const OptimizerEntry& o) {
    return o.np.value_or(cfg.np);
}

ExperimentConfig parse_config(const json& doc) {
    std::vector<std::string> errors;
    ExperimentConfig cfg;
    {
        FieldReader r(doc, "config", errors);
        r.read("runs", cfg.runs);
        r.read("gen", cfg.gen);
        r.read("np", cfg.np);
        r.read("base_seed", cfg.base_seed);
        std::string out;
        r.read("output_dir", out);
        cfg.output_dir = out;
        r.read("traces", cfg.traces);
        r.read("shared_instance", cfg.shared_instance);
        r.read("threads", cfg.threads);

        if (const json* list = r.child("benchmarks")) {
            if (!list->is_array())
                r.error("'benchmarks' must be a list");
            else
                for (std::size_t i = 0; i < list->size(); ++i)
                    cfg.benchmarks.push_back(parse_benchmark(
                        (*list)[i], "benchmarks[" + std::to_string(i) + "]", errors));
        }
        if (const json* list = r.child("optimizers")) {
            if (!list->is_array())
                r.error("'optimizers' must be a list");
            else
                for (std::size_t i = 0; i < list->size(); ++i)
                    cfg.optimizers.push_back(parse_optimizer(
                        (*list)[i], "optimizers[" + std::to_string(i) + "]", errors));
        }
    }

    if (cfg.runs < 1)
        errors.push_back("config: runs must be at least 1");
    if (cfg.gen && *cfg.gen < 1)
        errors.push_back("config: gen must be at least 1");
    if (cfg.benchmarks.empty())
        errors.push_back("config: at least one benchmark is required");
    if (cfg.optimizers.empty())
        errors.push_back("config: at least one optimizer is required");

    std::set<std::string> labels;
    for (const auto& o : cfg.optimizers) {
        if (!labels.insert(o.label).second)
            errors.push_back("config: duplicate optimizer label '" + o.label + "'");
        const std::size_t np = resolve_np(cfg, o);
        if (np < 2 || (o.algorithm == Algorithm::de && np < 4))
            errors.push_back("config: optimizer '" + o.label + "' has too small a population (" +
                             std::to_string(np) + ")");
        if (o.gen && *o.gen < 1)
            errors.push_back("config: optimizer '" + o.label + "' needs gen >= 1");
        if (o.algorithm == Algorithm::pso)
            check(errors, "optimizer '" + o.label + "'", [&] {
                PsoParams p = o.pso;
                p.np = std::max<std::size_t>(np, 2);
                p.validate();
            });
        if (o.algorithm == Algorithm::de)
            check(errors, "optimizer '" + o.label + "'", [&] {
                DeParams p = o.de;
                p.np = std::max<std::size_t>(np, 4);
                p.validate();
            });
    }
    std::set<std::pair<int, std::uint64_t>> seen;
    for (const auto& b : cfg.benchmarks) {
        if (b.gen && *b.gen < 1)
            errors.push_back("config: benchmark " + bench::id_name(b.id) + " needs gen >= 1");
        if (!seen.insert({b.id, b.instance_seed}).second)
            errors.push_back("config: benchmark " + bench::id_name(b.id) +
                             " listed twice with the same instance_seed");
    }

    if (!errors.empty()) {
        std::string msg = "invalid experiment config:";
        for (const auto& e : errors)
            msg += "\n  - " + e;
        throw ConfigError(msg);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

namespace {

json state_json(const StateConfig& s) {
    return {{"rho_lo", s.rho_lo}, {"rho_hi", s.rho_hi}, {"beta", s.beta},
            {"alpha", s.alpha},   {"H", s.H}};
}

} // namespace

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["runs"] = cfg.runs;
    if (cfg.gen)
        j["gen"] = *cfg.gen;
    j["np"] = cfg.np;
    j["base_seed"] = cfg.base_seed;
    j["output_dir"] = cfg.output_dir.string();
    j["traces"] = cfg.traces;
    j["shared_instance"] = cfg.shared_instance;
    j["threads"] = cfg.threads;
    j["benchmarks"] = json::array();
    for (const auto& b : cfg.benchmarks) {
        json e{{"id", bench::id_name(b.id)}, {"n", b.n}, {"instance_seed", b.instance_seed}};
        if (b.gen)
            e["gen"] = *b.gen;
        j["benchmarks"].push_back(e);
    }
    j["optimizers"] = json::array();
    for (const auto& o : cfg.optimizers) {
        json p = json::object();
        if (o.np)
            p["np"] = *o.np;
        if (o.gen)
            p["gen"] = *o.gen;
        switch (o.algorithm) {
        case Algorithm::sms:
            p["gas_frac"] = o.sms.schedule.gas_frac;
            p["liquid_frac"] = o.sms.schedule.liquid_frac;
            p["solid_frac"] = o.sms.schedule.solid_frac;
            p["gas"] = state_json(o.sms.schedule.gas);
            p["liquid"] = state_json(o.sms.schedule.liquid);
            p["solid"] = state_json(o.sms.schedule.solid);
            p["rho_sampling"] = o.sms.rho_sampling == RhoSampling::per_molecule
                                    ? "per_molecule"
                                    : "per_dimension";
            break;
        case Algorithm::pso:
            p["c1"] = o.pso.c1;
            p["c2"] = o.pso.c2;
            p["w_start"] = o.pso.w_start;
            p["w_end"] = o.pso.w_end;
            break;
        case Algorithm::de:
            p["cr"] = o.de.cr;
            p["f"] = o.de.f;
            break;
        }
        j["optimizers"].push_back(
            {{"name", algorithm_name(o.algorithm)}, {"label", o.label}, {"params", p}});
    }
    return j;
}

std::vector<double> CellReport::successful_finals() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < finals.size(); ++i) {
        if (!failed[i])
            out.push_back(finals[i]);
    }
    return out;
}

const CellReport* ExperimentReport::find(const std::string& optimizer,
                                         const std::string& benchmark) const {
    for (const auto& c : cells) {
        if (c.optimizer == optimizer && c.benchmark == benchmark)
            return &c;
    }
    return nullptr;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, Execution execution) {
    ExperimentReport report;
    report.config = cfg;

    const std::size_t nb = cfg.benchmarks.size();
    const std::size_t no = cfg.optimizers.size();
    const std::size_t runs = cfg.runs;

    // Problem instances: one per benchmark, or one per (benchmark, run).
    const std::size_t per_bench = cfg.shared_instance ? 1 : runs;
    std::vector<ObjectiveSpec> instances;
    instances.reserve(nb * per_bench);
    for (const auto& b : cfg.benchmarks) {
        for (std::size_t r = 0; r < per_bench; ++r)
            instances.push_back(cfg.problem_factory
                                    ? cfg.problem_factory(b, b.instance_seed + r)
                                    : bench::make_instance(b.id, b.n, b.instance_seed + r));
    }

    report.cells.resize(nb * no);
    for (std::size_t bi = 0; bi < nb; ++bi) {
        for (std::size_t oi = 0; oi < no; ++oi) {
            auto& cell = report.cells[bi * no + oi];
            cell.optimizer = cfg.optimizers[oi].label;
            cell.benchmark = bench::id_name(cfg.benchmarks[bi].id);
            cell.gen = resolve_gen(cfg, cfg.benchmarks[bi], cfg.optimizers[oi]);
        }
    }

    const std::size_t tasks = nb * no * runs;
    std::vector<RunOutcome> outcomes(tasks);

    auto run_task = [&](std::size_t t) {
        const std::size_t r = t % runs;
        const std::size_t oi = (t / runs) % no;
        const std::size_t bi = t / (runs * no);
        const auto& b = cfg.benchmarks[bi];
        const auto& o = cfg.optimizers[oi];
        const ObjectiveSpec& spec = instances[bi * per_bench + (cfg.shared_instance ? 0 : r)];
        outcomes[t] = execute_run(o, spec, resolve_np(cfg, o), resolve_gen(cfg, b, o),
                                  run_seed(cfg, r));
    };

    if (execution == Execution::parallel) {
#ifdef _OPENMP
        const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::size_t t = 0; t < tasks; ++t)
            run_task(t);
#else
        for (std::size_t t = 0; t < tasks; ++t)
            run_task(t);
#endif
    } else {
        for (std::size_t t = 0; t < tasks; ++t)
            run_task(t);
    }

    // Single-threaded reduction.
    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        auto& cell = report.cells[c];
        std::vector<const Vector*> traces;
        for (std::size_t r = 0; r < runs; ++r) {
            RunOutcome& out = outcomes[c * runs + r];
            cell.finals.push_back(out.final_value);
            cell.seeds.push_back(run_seed(cfg, r));
            cell.evaluations.push_back(out.evaluations);
            cell.failed.push_back(out.failed);
            cell.errors.push_back(out.error);
            if (out.failed)
                ++report.failed_runs;
            else
                traces.push_back(&out.trace);
        }
        const auto ok = cell.successful_finals();
        if (!ok.empty())
            cell.summary = stats::summarize(ok);

        if (cfg.traces && !traces.empty()) {
            cell.trace_mean.resize(cell.gen);
            cell.trace_median.resize(cell.gen);
            std::vector<double> column(traces.size());
            for (std::size_t k = 0; k < cell.gen; ++k) {
                for (std::size_t i = 0; i < traces.size(); ++i)
                    column[i] = (*traces[i])[k];
                const auto s = stats::summarize(column);
                cell.trace_mean[k] = s.mean;
                cell.trace_median[k] = s.median;
            }
        }
    }

    // Reference (first sms column) against every other optimizer, per benchmark.
    const auto ref = std::find_if(cfg.optimizers.begin(), cfg.optimizers.end(),
                                  [](const auto& o) { return o.algorithm == Algorithm::sms; });
    if (ref != cfg.optimizers.end()) {
        for (const auto& b : cfg.benchmarks) {
            const std::string name = bench::id_name(b.id);
            const CellReport* rc = report.find(ref->label, name);
            for (const auto& o : cfg.optimizers) {
                if (o.label == ref->label)
                    continue;
                const CellReport* oc = report.find(o.label, name);
                const auto a = rc->successful_finals();
                const auto bb = oc->successful_finals();
                if (a.empty() || bb.empty())
                    continue;
                report.comparisons.push_back(
                    {name, ref->label, o.label, stats::wilcoxon_rank_sum(a, bb)});
            }
        }
    }

    if (!cfg.output_dir.empty())
        write_outputs(report, cfg.output_dir);
    return report;
}

json report_to_json(const ExperimentReport& report) {
    json j;
    j["provenance"] = {{"library_version", kVersion},
                       {"config", config_to_json(report.config)},
                       {"seed_policy", "run seed = base_seed + run_index, shared by optimizers"}};
    j["failed_runs"] = report.failed_runs;
    j["cells"] = json::array();
    for (const auto& c : report.cells) {
        json finals = json::array();
        for (double v : c.finals)
            finals.push_back(optional_number(v));
        json runs = json::array();
        for (std::size_t r = 0; r < c.finals.size(); ++r) {
            json run{{"seed", c.seeds[r]},
                     {"evaluations", c.evaluations[r]},
                     {"failed", static_cast<bool>(c.failed[r])}};
            if (c.failed[r])
                run["error"] = c.errors[r];
            runs.push_back(run);
        }
        j["cells"].push_back({{"optimizer", c.optimizer},
                              {"benchmark", c.benchmark},
                              {"gen", c.gen},
                              {"summary", summary_json(c.summary)},
                              {"finals", finals},
                              {"runs", runs}});
    }
    j["comparisons"] = json::array();
    for (const auto& cmp : report.comparisons) {
        j["comparisons"].push_back({{"benchmark", cmp.benchmark},
                                    {"reference", cmp.reference},
                                    {"baseline", cmp.baseline},
                                    {"rank_sum", cmp.result.rank_sum},
                                    {"p_two_sided", cmp.result.p_two_sided},
                                    {"method", method_name(cmp.result.method)},
                                    {"direction", direction_name(cmp.result.direction)},
                                    {"significant_5pct", cmp.result.p_two_sided < 0.05}});
    }
    return j;
}

std::string format_value(double v) {
    if (std::isnan(v))
        return "nan";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

namespace {

std::ofstream open_output(const std::filesystem::path& file) {
    std::error_code ec;
    if (file.has_parent_path())
        std::filesystem::create_directories(file.parent_path(), ec);
    std::ofstream out(file);
    if (!out)
        throw std::runtime_error("cannot write " + file.string());
    return out;
}

} // namespace

void export_summary(const ExperimentReport& report, const std::filesystem::path& file) {
    const auto& cfg = report.config;
    auto out = open_output(file);
    out << "benchmark,stat";
    for (const auto& o : cfg.optimizers)
        out << ',' << o.label;
    out << ",best\n";

    for (const auto& b : cfg.benchmarks) {
        const std::string name = bench::id_name(b.id);
        for (int stat = 0; stat < 3; ++stat) {
            static constexpr const char* kStat[] = {"AB", "MB", "SD"};
            out << name << ',' << kStat[stat];
            std::string best;
            double best_value = std::numeric_limits<double>::infinity();
            for (const auto& o : cfg.optimizers) {
                const CellReport* c = report.find(o.label, name);
                double v = nan();
                if (c && c->summary)
                    v = stat == 0 ? c->summary->mean
                                  : stat == 1 ? c->summary->median : c->summary->sd;
                out << ',' << format_value(v);
                if (v < best_value) {
                    best_value = v;
                    best = o.label;
                }
            }
            out << ',' << best << '\n';
        }
    }
    if (!out)
        throw std::runtime_error("failed while writing " + file.string());
}

void export_traces(const ExperimentReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& c : report.cells) {
        if (c.trace_mean.empty())
            continue;
        auto out = open_output(dir / ("trace_" + c.optimizer + "_" + c.benchmark + ".csv"));
        out << "k,mean,median\n";
        for (std::size_t k = 0; k < c.trace_mean.size(); ++k)
            out << k + 1 << ',' << format_value(c.trace_mean[k]) << ','
                << format_value(c.trace_median[k]) << '\n';
        if (!out)
            throw std::runtime_error("failed while writing trace for " + c.optimizer);
    }
}

void write_outputs(const ExperimentReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_output(dir / "report.json");
        out << report_to_json(report).dump(2) << '\n';
    }
    export_summary(report, dir / "summary.csv");
    if (report.config.traces)
        export_traces(report, dir / "traces");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace

SummaryTable read_summary(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot read " + file.string());
    SummaryTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(file.string() + " is empty");
    auto header = split_csv(line);
    if (header.size() < 3 || header[0] != "benchmark" || header[1] != "stat" ||
        header.back() != "best")
        throw std::runtime_error(file.string() + " has an unexpected header");
    table.optimizers.assign(header.begin() + 2, header.end() - 1);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw std::runtime_error(file.string() + ": malformed row '" + line + "'");
        SummaryTable::Row row;
        row.benchmark = fields[0];
        row.stat = fields[1];
        row.cells.assign(fields.begin() + 2, fields.end() - 1);
        row.best = fields.back();
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<double> read_column(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot read " + file.string());
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line.substr(first));
        std::string tok;
        fields >> tok;
        if (const auto comma = tok.find(','); comma != std::string::npos)
            tok.resize(comma);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::runtime_error(file.string() + ": not a number: '" + tok + "'");
        }
    }
    return out;
}

} // namespace sms::harness
