// Command line front end for the simulator: run a scenario file, sweep the
// amortization curve, fuzz schedules, or summarize a trace dump.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "avss/scenario_json.hpp"

using namespace avss;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

json metrics_json(const Metrics& m) {
    json j;
    j["messages"] = m.messages;
    j["total_bytes"] = m.total_bytes;
    j["waste_bytes"] = m.waste_bytes;
    j["dropped_bytes"] = m.dropped_bytes;
    j["self_messages"] = m.self_messages;
    j["steps"] = m.steps;
    j["bytes_per_secret"] = m.bytes_per_secret;
    j["bytes_by_kind"] = m.bytes_by_kind;
    j["bytes_by_phase"] = m.bytes_by_phase;
    j["backend"] = m.backend_name;
    j["hash"] = m.hash_name;
    return j;
}

json trial_json(uint64_t seed, const RunResult& r) {
    json j;
    j["seed"] = seed;
    j["quiescent"] = r.quiescent;
    j["steps"] = r.steps;
    j["all_pass"] = r.all_pass;
    j["trace_hash"] = to_hex(r.trace_hash);
    j["metrics"] = metrics_json(r.metrics);
    json vs = json::array();
    for (const auto& v : r.verdicts) vs.push_back(json{{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    j["verdicts"] = vs;
    int outputs = 0, recovered = 0;
    for (const auto& [p, outs] : r.outputs) {
        (void)p;
        for (const auto& o : outs) {
            ++outputs;
            if (o.via_recovery) ++recovered;
        }
    }
    j["outputs"] = outputs;
    j["outputs_via_recovery"] = recovered;
    return j;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace) {
    std::ostringstream out;
    out << "step,kind,sender,receiver,instance,bytes\n";
    for (const auto& r : trace)
        out << r.step << "," << msg_kind_name(r.kind) << "," << r.from << "," << r.to << "," << r.session << ","
            << r.bytes << "\n";
    write_file(path, out.str());
}

void apply_overrides(Scenario& sc, const std::string& seed_s, const std::string& sched_s,
                     const std::string& backend_s) {
    if (!seed_s.empty()) sc.seed = std::stoull(seed_s);
    if (!sched_s.empty()) {
        if (sched_s == "fifo")
            sc.scheduler = SchedulerKind::Fifo;
        else if (sched_s == "random")
            sc.scheduler = SchedulerKind::Random;
        else if (sched_s == "adversarial_delay")
            sc.scheduler = SchedulerKind::AdversarialDelay;
        else
            throw ScenarioParseError("unknown scheduler '" + sched_s + "'");
    }
    if (!backend_s.empty()) {
        if (backend_s == "pairing")
            sc.backend = BackendKind::Pairing;
        else if (backend_s == "dl")
            sc.backend = BackendKind::DiscreteLog;
        else
            throw ScenarioParseError("unknown backend '" + backend_s + "'");
    }
}

int cmd_run(const std::string& file, const std::string& seed_s, const std::string& sched_s,
            const std::string& backend_s, const std::string& out_path, const std::string& trace_path) {
    Scenario sc = parse_scenario(read_file(file));
    apply_overrides(sc, seed_s, sched_s, backend_s);

    json out;
    out["scenario"] = json::parse(scenario_to_json(sc));
    json trials = json::array();
    bool all_pass = true;
    for (int i = 0; i < sc.trials; ++i) {
        Scenario one = sc;
        one.seed = sc.trials == 1 ? sc.seed : derive_seed(sc.seed, uint64_t(i));
        RunResult r = run(one);
        all_pass = all_pass && r.all_pass;
        trials.push_back(trial_json(one.seed, r));
        if (i == 0 && !trace_path.empty()) write_trace_csv(trace_path, r.trace);
    }
    out["trials"] = trials;
    out["all_pass"] = all_pass;
    const std::string text = out.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return all_pass ? kExitOk : kExitViolation;
}

int cmd_sweep(const std::string& out_path, uint64_t seed, int trials, const std::string& backend_s) {
    BackendKind backend = backend_s == "dl" ? BackendKind::DiscreteLog : BackendKind::Pairing;
    std::ostringstream csv;
    csv << "mode,n,t,batch,backend,total_bytes,bytes_per_secret,per_party,waste_bytes,messages,steps,all_pass\n";
    bool all_pass = true;
    struct Row {
        std::string mode;
        int n;
        double per_party;
        double bps;
    };
    std::vector<Row> rows;
    for (const char* mode : {"honest", "worst"}) {
        for (int n : {4, 7, 10, 13, 16}) {
            const int t = (n - 1) / 3;
            double bps_sum = 0, total_sum = 0, waste_sum = 0, msg_sum = 0, step_sum = 0;
            bool pass = true;
            for (int i = 0; i < trials; ++i) {
                Scenario sc;
                sc.n = n;
                sc.t = t;
                sc.batch = n;
                sc.seed = trials == 1 ? seed : derive_seed(seed, uint64_t(i));
                sc.backend = backend;
                sc.scheduler = SchedulerKind::Random;
                if (std::string(mode) == "worst") {
                    sc.dealer_fault = DealerFault::GarbleCiphertexts;
                    for (int v = 1; v <= t; ++v) sc.dealer_targets.push_back(PartyId(v));
                }
                RunResult r = run(sc);
                pass = pass && r.all_pass;
                bps_sum += r.metrics.bytes_per_secret;
                total_sum += double(r.metrics.total_bytes);
                waste_sum += double(r.metrics.waste_bytes);
                msg_sum += double(r.metrics.messages);
                step_sum += double(r.steps);
            }
            const double bps = bps_sum / trials;
            all_pass = all_pass && pass;
            rows.push_back(Row{mode, n, bps / n, bps});
            csv << mode << "," << n << "," << t << "," << n << "," << (backend == BackendKind::Pairing ? "pairing" : "dl")
                << "," << uint64_t(total_sum / trials) << "," << bps << "," << bps / n << ","
                << uint64_t(waste_sum / trials) << "," << uint64_t(msg_sum / trials) << ","
                << uint64_t(step_sum / trials) << "," << (pass ? 1 : 0) << "\n";
        }
    }
    for (const char* mode : {"honest", "worst"}) {
        double lo = 0, hi = 0;
        for (const auto& r : rows) {
            if (r.mode != mode) continue;
            if (lo == 0 || r.per_party < lo) lo = r.per_party;
            if (r.per_party > hi) hi = r.per_party;
        }
        csv << "# " << mode << ": per-party cost " << lo << ".." << hi << " (spread " << (lo > 0 ? hi / lo : 0)
            << "x)\n";
    }
    const std::string text = csv.str();
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return all_pass ? kExitOk : kExitViolation;
}

int cmd_fuzz(const std::string& file, int trials, const std::string& seed_s) {
    Scenario sc = parse_scenario(read_file(file));
    if (!seed_s.empty()) sc.seed = std::stoull(seed_s);
    const int count = trials > 0 ? trials : std::max(sc.trials, 1);
    FuzzResult fr = schedule_fuzz(sc, count);
    std::cout << "fuzz: " << fr.trials << " trials, " << fr.failures.size() << " failures\n";
    for (const auto& f : fr.failures)
        std::cout << "  seed=" << f.seed << " failed=" << f.failed << " (replay with --seed " << f.seed << ")\n";
    return fr.failures.empty() ? kExitOk : kExitViolation;
}

int cmd_explain(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open '" << path << "'\n";
        return kExitUsage;
    }
    std::string line;
    if (!std::getline(in, line) || line != "step,kind,sender,receiver,instance,bytes") {
        std::cerr << "not a trace file (bad header)\n";
        return kExitUsage;
    }
    struct KindAgg {
        uint64_t count = 0, bytes = 0;
        uint64_t first_step = 0;
    };
    std::map<std::string, KindAgg> kinds;
    std::map<std::string, uint64_t> channels;
    uint64_t steps = 0, messages = 0, bytes = 0, self_msgs = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string f[6];
        for (int i = 0; i < 6; ++i)
            if (!std::getline(ss, f[i], ',')) {
                std::cerr << "malformed trace line: " << line << "\n";
                return kExitUsage;
            }
        const uint64_t step = std::stoull(f[0]);
        const uint64_t sz = std::stoull(f[5]);
        const uint32_t session = uint32_t(std::stoul(f[4]));
        steps = std::max(steps, step);
        ++messages;
        bytes += sz;
        if (sz == 0) ++self_msgs;
        auto& k = kinds[f[1]];
        if (k.count == 0) k.first_step = step;
        ++k.count;
        k.bytes += sz;
        std::string chan;
        if (session == kSessionRbcCommits)
            chan = "commitment broadcast";
        else if (session == kSessionRbcRoots)
            chan = "dispersal root broadcast";
        else if (session == kSessionAvid)
            chan = "dispersal fragments";
        else
            chan = "instance " + f[4];
        channels[chan] += sz;
    }
    std::cout << "trace: " << messages << " deliveries over " << steps << " steps, " << bytes
              << " bytes on the wire (" << self_msgs << " self deliveries)\n\n";
    std::cout << "by message kind (first step, count, bytes):\n";
    for (const auto& [name, agg] : kinds)
        std::cout << "  " << name << ": first at step " << agg.first_step << ", " << agg.count << " msgs, "
                  << agg.bytes << " bytes\n";
    std::cout << "\nby channel:\n";
    for (const auto& [name, b] : channels) std::cout << "  " << name << ": " << b << " bytes\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hbAVSS protocol simulator"};
    app.require_subcommand(1);

    std::string file, seed_s, sched_s, backend_s, out_path, trace_path;
    int trials = 0;
    uint64_t sweep_seed = 1;
    int sweep_trials = 1;

    CLI::App* c_run = app.add_subcommand("run", "run one scenario file and judge it");
    c_run->add_option("scenario", file, "scenario JSON file")->required();
    c_run->add_option("--seed", seed_s, "override the scenario seed");
    c_run->add_option("--scheduler", sched_s, "override the scheduler (fifo|random|adversarial_delay)");
    c_run->add_option("--backend", backend_s, "override the commitment backend (pairing|dl)");
    c_run->add_option("--out", out_path, "write the JSON report here instead of stdout");
    c_run->add_option("--trace", trace_path, "write the first trial's trace CSV here");

    CLI::App* c_sweep = app.add_subcommand("sweep", "amortization sweep: n in {4,7,10,13,16}, batch = n");
    c_sweep->add_option("--out", out_path, "write the CSV here instead of stdout");
    c_sweep->add_option("--seed", sweep_seed, "base seed");
    c_sweep->add_option("--trials", sweep_trials, "trials per cell (averaged)");
    c_sweep->add_option("--backend", backend_s, "commitment backend (pairing|dl)");

    CLI::App* c_fuzz = app.add_subcommand("fuzz", "run a scenario under many derived seeds");
    c_fuzz->add_option("scenario", file, "scenario JSON file")->required();
    c_fuzz->add_option("--trials", trials, "number of derived seeds (default: scenario trials)");
    c_fuzz->add_option("--seed", seed_s, "override the base seed");

    CLI::App* c_explain = app.add_subcommand("explain-trace", "summarize a trace CSV written by run --trace");
    c_explain->add_option("trace", file, "trace CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_run->parsed()) return cmd_run(file, seed_s, sched_s, backend_s, out_path, trace_path);
        if (c_sweep->parsed()) return cmd_sweep(out_path, sweep_seed, sweep_trials, backend_s);
        if (c_fuzz->parsed()) return cmd_fuzz(file, trials, seed_s);
        if (c_explain->parsed()) return cmd_explain(file);
    } catch (const ScenarioParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
