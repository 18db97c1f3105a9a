// Copyright 2026 The parity-anneal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "parity_anneal/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "parity_anneal/analysis.hpp"
#include "parity_anneal/chimera.hpp"
#include "parity_anneal/decoders.hpp"
#include "parity_anneal/errors.hpp"
#include "parity_anneal/instance_io.hpp"
#include "parity_anneal/lhz.hpp"
#include "parity_anneal/random.hpp"
#include "parity_anneal/samples.hpp"

namespace parity_anneal {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::vector<Deci> default_penalty_grid() {
    std::vector<Deci> grid;
    for (Deci p = 2; p <= 40; p += 2) grid.push_back(p);
    return grid;
}

namespace {

const std::set<std::string> kSchemes{"me", "lhz"};
const std::set<std::string> kEngines{"sqa", "pt"};
const std::set<std::string> kDecoders{"mvd", "mvd-trees", "mwd-exact", "mwd-sa", "bp"};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string pad(long long v, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*lld", width, v);
    return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text, const fs::path& base_dir) {
    ExperimentConfig c;
    try {
        auto j = json::parse(text);
        if (j.contains("ensemble")) {
            const auto& e = j["ensemble"];
            c.ensemble.n = e.value("n", c.ensemble.n);
            c.ensemble.count = e.value("count", c.ensemble.count);
            c.ensemble.master_seed = e.value("master_seed", c.ensemble.master_seed);
        }
        if (j.contains("schemes")) c.schemes = j["schemes"].get<std::vector<std::string>>();
        if (j.contains("engines")) c.engines = j["engines"].get<std::vector<std::string>>();
        if (j.contains("penalty_grid")) c.penalty_grid = j["penalty_grid"].get<std::vector<Deci>>();
        if (j.contains("sqa")) {
            const auto& s = j["sqa"];
            c.sqa.beta = s.value("beta", c.sqa.beta);
            c.sqa.n_tau = s.value("n_tau", c.sqa.n_tau);
            c.sqa.sweeps = s.value("sweeps", c.sqa.sweeps);
            c.sqa.reads = s.value("reads", c.sqa.reads);
            if (s.contains("schedule_csv")) {
                c.schedule = AnnealSchedule::from_csv(s["schedule_csv"].get<std::string>());
            } else if (s.contains("schedule")) {
                fs::path p = s["schedule"].get<std::string>();
                if (p.is_relative()) p = base_dir / p;
                c.schedule = AnnealSchedule::from_csv(read_text_file(p));
            }
        }
        if (j.contains("pt")) {
            const auto& p = j["pt"];
            c.pt.n_replicas = p.value("n_replicas", c.pt.n_replicas);
            c.pt.beta_max = p.value("beta_max", c.pt.beta_max);
            c.pt.beta_min = p.value("beta_min", c.pt.beta_min);
            c.pt.sweeps_per_swap = p.value("sweeps_per_swap", c.pt.sweeps_per_swap);
            c.pt.total_swaps = p.value("total_swaps", c.pt.total_swaps);
            c.pt.measure_beta = p.value("measure_beta", c.pt.measure_beta);
            c.pt.samples_to_record = p.value("samples_to_record", c.pt.samples_to_record);
        }
        if (j.contains("decoders")) {
            c.decoders.clear();
            for (const auto& d : j["decoders"]) {
                DecoderSpec spec;
                if (d.is_string()) {
                    spec.name = d.get<std::string>();
                } else {
                    spec.name = d.at("name").get<std::string>();
                    spec.trees = d.value("trees", spec.trees);
                    spec.perr = d.value("perr", spec.perr);
                    spec.iters = d.value("iters", spec.iters);
                }
                c.decoders.push_back(spec);
            }
        }
        if (j.contains("output_dir")) {
            fs::path out = j["output_dir"].get<std::string>();
            c.output_dir = out.is_relative() && !base_dir.empty() ? base_dir / out : out;
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    } catch (const NotFound& e) {
        throw ConfigError(e.what());
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    c.validate();
    return c;
}

const AnnealSchedule& ExperimentConfig::anneal_schedule() const {
    static const AnnealSchedule fallback = default_schedule();
    return schedule ? *schedule : fallback;
}

std::string ExperimentConfig::to_json() const {
    ordered_json j;
    j["ensemble"] = {{"n", ensemble.n}, {"count", ensemble.count}, {"master_seed", ensemble.master_seed}};
    j["schemes"] = schemes;
    j["engines"] = engines;
    j["penalty_grid"] = penalty_grid;
    j["sqa"] = {{"beta", sqa.beta},
                {"n_tau", sqa.n_tau},
                {"sweeps", sqa.sweeps},
                {"reads", sqa.reads},
                {"schedule_csv", anneal_schedule().to_csv()}};
    j["pt"] = {{"n_replicas", pt.n_replicas},           {"beta_max", pt.beta_max},
               {"beta_min", pt.beta_min},               {"sweeps_per_swap", pt.sweeps_per_swap},
               {"total_swaps", pt.total_swaps},         {"measure_beta", pt.measure_beta},
               {"samples_to_record", pt.samples_to_record}};
    auto decs = ordered_json::array();
    for (const auto& d : decoders)
        decs.push_back({{"name", d.name}, {"trees", d.trees}, {"perr", d.perr}, {"iters", d.iters}});
    j["decoders"] = std::move(decs);
    return j.dump(2) + "\n";
}

std::string ExperimentConfig::digest() const { return digest_hex(to_json()); }

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (ensemble.n < 3) fail("ensemble.n must be >= 3");
    if (ensemble.count < 1) fail("ensemble.count must be >= 1");
    if (schemes.empty() || engines.empty() || decoders.empty()) fail("schemes, engines and decoders must be nonempty");
    for (const auto& s : schemes)
        if (!kSchemes.count(s)) fail("unknown scheme '" + s + "'");
    for (const auto& e : engines)
        if (!kEngines.count(e)) fail("unknown engine '" + e + "'");
    for (const auto& d : decoders) {
        if (!kDecoders.count(d.name)) fail("unknown decoder '" + d.name + "'");
        if (d.trees < 0) fail("decoder trees must be >= 0");
        if (d.name == "bp" && !(d.perr > 0.0 && d.perr < 0.5)) fail("bp perr must be in (0, 0.5)");
        if (d.name == "bp" && d.iters < 0) fail("bp iters must be >= 0");
    }
    if (std::count(schemes.begin(), schemes.end(), "me") && ensemble.n % 4 != 0)
        fail("scheme 'me' needs ensemble.n a multiple of 4");
    if (penalty_grid.empty()) fail("penalty_grid must be nonempty");
    for (std::size_t i = 0; i < penalty_grid.size(); ++i) {
        if (penalty_grid[i] < 0) fail("penalties must be non-negative");
        if (i > 0 && penalty_grid[i] <= penalty_grid[i - 1]) fail("penalty_grid must be strictly increasing");
    }
    if (!(sqa.beta > 0.0) || sqa.n_tau < 2 || sqa.n_tau > kMaxTrotterSlices || sqa.sweeps < 1 || sqa.reads < 1)
        fail("invalid sqa parameters");
    if (pt.n_replicas < 2 || !(pt.beta_max > pt.beta_min) || !(pt.beta_min > 0.0) || pt.sweeps_per_swap < 1 ||
        pt.total_swaps < 2 || pt.samples_to_record < 1 || pt.samples_to_record > pt.total_swaps - pt.total_swaps / 2)
        fail("invalid pt parameters");
}

std::size_t RunManifest::done() const {
    return static_cast<std::size_t>(
        std::count_if(tasks.begin(), tasks.end(), [](const auto& t) { return t.second.status == "done"; }));
}

std::size_t RunManifest::failed() const {
    return static_cast<std::size_t>(
        std::count_if(tasks.begin(), tasks.end(), [](const auto& t) { return t.second.status == "failed"; }));
}

std::string RunManifest::to_json() const {
    ordered_json j;
    j["tool_version"] = tool_version;
    j["config_digest"] = config_digest;
    j["total_tasks"] = total_tasks;
    ordered_json t = ordered_json::object();
    for (const auto& [key, s] : tasks) {
        ordered_json e;
        e["seed"] = s.seed;
        e["status"] = s.status;
        if (!s.error.empty()) e["error"] = s.error;
        e["samples"] = s.samples_file;
        e["results"] = s.results_file;
        t[key] = std::move(e);
    }
    j["tasks"] = std::move(t);
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    RunManifest m;
    try {
        auto j = json::parse(text);
        m.tool_version = j.at("tool_version").get<std::string>();
        m.config_digest = j.at("config_digest").get<std::string>();
        m.total_tasks = j.value("total_tasks", std::size_t{0});
        for (const auto& [key, e] : j.at("tasks").items()) {
            TaskStatus s;
            s.seed = e.at("seed").get<std::uint64_t>();
            s.status = e.at("status").get<std::string>();
            s.error = e.value("error", std::string{});
            s.samples_file = e.value("samples", std::string{});
            s.results_file = e.value("results", std::string{});
            m.tasks[key] = s;
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("manifest JSON: ") + e.what());
    }
    return m;
}

int default_worker_count() {
    if (const char* env = std::getenv("PARITY_ANNEAL_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

LogicalInstance ensemble_instance(const EnsembleSpec& ensemble, int k) {
    auto inst = gen_instance(ensemble.n, mix_seed(ensemble.master_seed, static_cast<std::uint64_t>(k)));
    inst.instance_id = "K" + std::to_string(ensemble.n) + "-" + pad(k, 3);
    return inst;
}

std::string result_row_csv(const ResultRow& r) {
    std::string out = r.instance_id + "," + r.scheme + "," + r.engine + "," + r.decoder + "," +
                      std::to_string(r.penalty) + "," + fmt("%.6g", r.beta) + "," + std::to_string(r.sweeps) + "," +
                      std::to_string(r.reads) + "," + fmt("%.6f", r.success()) + "," + std::to_string(r.successes) +
                      "," + std::to_string(r.samples);
    return out;
}

std::vector<ResultRow> parse_results_csv(const std::string& text) {
    std::vector<ResultRow> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("instance_id,", 0) == 0) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 11) throw std::invalid_argument("bad results row: " + line);
        ResultRow r;
        r.instance_id = f[0];
        r.scheme = f[1];
        r.engine = f[2];
        r.decoder = f[3];
        r.penalty = std::stoll(f[4]);
        r.beta = std::stod(f[5]);
        r.sweeps = std::stoll(f[6]);
        r.reads = std::stoll(f[7]);
        r.successes = std::stoull(f[9]);
        r.samples = std::stoull(f[10]);
        rows.push_back(r);
    }
    return rows;
}

namespace {

auto row_key(const ResultRow& r) { return std::tie(r.instance_id, r.scheme, r.engine, r.decoder, r.penalty); }

struct Task {
    std::string key;
    int instance = 0;
    std::string scheme;
    std::string engine;
    Deci penalty = 0;
    std::uint64_t seed = 0;
    std::string samples_file;
    std::string results_file;
    std::string swaps_file;
};

/// Decoders that apply to a scheme, with their output tags.
std::vector<std::pair<std::string, DecoderSpec>> decoders_for(const ExperimentConfig& config, const std::string& scheme) {
    std::vector<std::pair<std::string, DecoderSpec>> out;
    std::set<std::string> seen;
    for (const auto& d : config.decoders) {
        std::string tag = d.name == "mvd-trees" ? "mvd" : d.name;
        if (scheme == "me" && tag != "mvd") continue;
        if (seen.insert(tag).second) out.emplace_back(tag, d);
    }
    return out;
}

int auto_trees(int n) { return (n + 3) / 4 + 1; }

struct Embedded {
    PhysicalHamiltonian ham;
    std::optional<MinorEmbedding> me;
    std::optional<LhzLayout> lhz;
};

Embedded embed(const LogicalInstance& inst, const std::string& scheme) {
    Embedded e;
    if (scheme == "me") {
        e.me = build_chimera_clique_embedding(inst.n);
        e.ham = embed_me(inst, *e.me);
    } else {
        e.lhz = build_lhz_layout(lhz_logical_size(inst));
        e.ham = embed_lhz(inst, *e.lhz);
    }
    return e;
}

std::vector<ResultRow> run_task(const ExperimentConfig& config, const Task& task, const LogicalInstance& inst,
                                const GroundSolution& ground, const fs::path& out_dir) {
    auto emb = embed(inst, task.scheme);
    SampleSet samples;
    ResultRow base;
    base.instance_id = inst.instance_id;
    base.scheme = task.scheme;
    base.engine = task.engine;
    base.penalty = task.penalty;
    if (task.engine == "sqa") {
        SqaParams p = config.sqa;
        p.seed = task.seed;
        samples = run_sqa(emb.ham, config.anneal_schedule(), p, task.penalty);
        base.beta = p.beta;
        base.sweeps = p.sweeps;
        base.reads = p.reads;
    } else {
        PtParams p = config.pt;
        p.seed = task.seed;
        auto res = run_pt(emb.ham, p, task.penalty);
        samples = std::move(res.samples);
        base.beta = res.measured_beta;
        base.sweeps = static_cast<long long>(p.total_swaps) * p.sweeps_per_swap;
        base.reads = p.samples_to_record;
        std::string swaps = "pair,rate\n";
        for (std::size_t i = 0; i < res.swap_acceptance.size(); ++i)
            swaps += std::to_string(i + 1) + "," + fmt("%.6f", res.swap_acceptance[i]) + "\n";
        write_text_file(out_dir / task.swaps_file, swaps);
    }
    samples.context.instance_id = inst.instance_id;
    samples.context.scheme = task.scheme;
    write_samples_file(out_dir / task.samples_file, samples);

    std::vector<ResultRow> rows;
    for (const auto& [tag, spec] : decoders_for(config, task.scheme)) {
        const auto stream = mix_seed(task.seed, hash_string(tag));
        std::vector<SpinConfiguration> decoded;
        decoded.reserve(samples.size());
        std::optional<MwdDecoder> mwd;
        if (tag == "mwd-exact" || tag == "mwd-sa") mwd.emplace(*emb.lhz);
        for (const auto& rec : samples.records) {
            const auto seed = mix_seed(stream, static_cast<std::uint64_t>(rec.read));
            if (task.scheme == "me") {
                decoded.push_back(decode_me_mvd(*emb.me, rec.config, {seed}));
            } else if (tag == "mvd") {
                int trees = spec.trees > 0 ? spec.trees : auto_trees(inst.n);
                decoded.push_back(mvd_trees(*emb.lhz, rec.config, trees, seed));
            } else if (mwd) {
                auto mode = tag == "mwd-exact" ? InnerMode::exact : InnerMode::sa;
                decoded.push_back(mwd->decode(rec.config, mode, seed).logical_state);
            } else {
                decoded.push_back(bp_decode(*emb.lhz, rec.config, {spec.perr, spec.iters, seed}).logical_state);
            }
        }
        if (inst.has_fields()) {
            // fold the ancilla back: s_i = s_0 * s_{i+1}
            for (auto& s : decoded) {
                SpinConfiguration t(static_cast<std::size_t>(inst.n));
                for (int i = 0; i < inst.n; ++i) t.set(i, static_cast<std::int8_t>(s[0] * s[i + 1]));
                s = std::move(t);
            }
        }
        ResultRow row = base;
        row.decoder = tag;
        row.samples = decoded.size();
        row.successes = count_successes(decoded, ground, inst);
        rows.push_back(row);
    }
    return rows;
}

std::string rows_csv(std::vector<ResultRow> rows, bool header) {
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return row_key(a) < row_key(b); });
    std::string out = header ? std::string(kResultsHeader) + "\n" : std::string();
    for (const auto& r : rows) out += result_row_csv(r) + "\n";
    return out;
}

bool task_outputs_ok(const fs::path& dir, const TaskStatus& s) {
    try {
        if (!fs::exists(dir / s.samples_file) || !fs::exists(dir / s.results_file)) return false;
        samples_from_jsonl(read_text_file(dir / s.samples_file));
        parse_results_csv(read_text_file(dir / s.results_file));
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

RunManifest run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const fs::path dir = config.output_dir;
    fs::create_directories(dir);
    const auto digest = config.digest();

    RunManifest manifest;
    const auto manifest_path = dir / "manifest.json";
    if (fs::exists(manifest_path)) {
        manifest = RunManifest::from_json(read_text_file(manifest_path));
        if (manifest.config_digest != digest)
            throw ConfigError("output directory " + dir.string() + " holds a run with a different configuration");
    }
    manifest.config_digest = digest;
    manifest.tool_version = kToolVersion;
    write_text_file(dir / "config.json", config.to_json());

    std::vector<LogicalInstance> instances;
    std::vector<GroundSolution> grounds;
    for (int k = 0; k < config.ensemble.count; ++k) {
        instances.push_back(ensemble_instance(config.ensemble, k));
        write_instance_file(dir / "instances" / (instances.back().instance_id + ".json"), instances.back());
        grounds.push_back(exact_ground(instances.back()));
    }

    std::vector<Task> tasks;
    for (int k = 0; k < config.ensemble.count; ++k) {
        const auto& id = instances[k].instance_id;
        for (const auto& scheme : config.schemes)
            for (const auto& engine : config.engines)
                for (Deci pen : config.penalty_grid) {
                    Task t;
                    t.instance = k;
                    t.scheme = scheme;
                    t.engine = engine;
                    t.penalty = pen;
                    const std::string stem = scheme + "-" + engine + "-p" + pad(pen, 4);
                    t.key = id + "/" + stem;
                    t.seed = mix_seed(config.ensemble.master_seed,
                                      {hash_string(id), hash_string(scheme), hash_string(engine),
                                       static_cast<std::uint64_t>(pen)});
                    t.samples_file = "samples/" + id + "/" + stem + ".jsonl";
                    t.results_file = "tasks/" + id + "/" + stem + ".csv";
                    t.swaps_file = "swaps/" + id + "/" + stem + ".csv";
                    tasks.push_back(std::move(t));
                }
    }
    manifest.total_tasks = tasks.size();

    std::vector<const Task*> pending;
    for (const auto& t : tasks) {
        auto it = manifest.tasks.find(t.key);
        if (it != manifest.tasks.end() && it->second.status == "done" && task_outputs_ok(dir, it->second)) continue;
        pending.push_back(&t);
    }
    const std::size_t budget = std::min(pending.size(), options.max_tasks);

    std::mutex mu;
    std::atomic<std::size_t> next{0};
    std::size_t finished = 0;
    auto save_manifest = [&] { write_text_file(manifest_path, manifest.to_json()); };
    save_manifest();

    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= budget) return;
            const Task& t = *pending[i];
            TaskStatus status;
            status.seed = t.seed;
            status.samples_file = t.samples_file;
            status.results_file = t.results_file;
            try {
                auto rows = run_task(config, t, instances[t.instance], grounds[t.instance], dir);
                write_text_file(dir / t.results_file, rows_csv(rows, false));
                status.status = "done";
            } catch (const std::exception& e) {
                status.status = "failed";
                status.error = e.what();
            }
            std::lock_guard lock(mu);
            manifest.tasks[t.key] = status;
            save_manifest();
            ++finished;
            if (options.progress)
                options.progress("[" + std::to_string(finished) + "/" + std::to_string(budget) + "] " + t.key + " " +
                                 status.status);
        }
    };
    int workers = options.workers > 0 ? options.workers : default_worker_count();
    workers = static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(workers, budget)));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<ResultRow> all;
    for (const auto& t : tasks) {
        auto it = manifest.tasks.find(t.key);
        if (it == manifest.tasks.end() || it->second.status != "done") continue;
        auto rows = parse_results_csv(read_text_file(dir / t.results_file));
        all.insert(all.end(), rows.begin(), rows.end());
    }
    write_text_file(dir / "results.csv", rows_csv(all, true));
    return manifest;
}

namespace {

using GroupKey = std::tuple<std::string, std::string, std::string, std::string>;  // instance, scheme, engine, decoder

std::map<GroupKey, SuccessCurve> curves_by_group(const std::vector<ResultRow>& rows) {
    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return row_key(a) < row_key(b); });
    std::map<GroupKey, SuccessCurve> out;
    for (const auto& r : sorted) out[{r.instance_id, r.scheme, r.engine, r.decoder}].add(r.penalty, r.successes, r.samples);
    return out;
}

std::vector<ResultRow> load_results(const fs::path& dir) {
    const auto path = dir / "results.csv";
    if (!fs::exists(path)) throw NotFound("missing inputs: " + path.string());
    return parse_results_csv(read_text_file(path));
}

std::string penalty_text(std::optional<double> p) { return p ? fmt("%.4f", *p) : std::string("NA"); }

}  // namespace

void analyze(const fs::path& dir) {
    auto rows = load_results(dir);
    const auto cfg_path = dir / "config.json";
    if (!fs::exists(cfg_path)) throw NotFound("missing inputs: " + cfg_path.string());
    auto config = ExperimentConfig::from_json(read_text_file(cfg_path));
    auto curves = curves_by_group(rows);

    std::string optimal = "instance_id,scheme,engine,decoder,optimal_penalty_deci,success\n";
    std::string critical = "instance_id,scheme,engine,decoder,critical_penalty_deci\n";
    for (const auto& [key, curve] : curves) {
        const auto& [id, scheme, engine, decoder] = key;
        auto best = optimal_penalty(curve);
        optimal += id + "," + scheme + "," + engine + "," + decoder + "," + std::to_string(best.penalty) + "," +
                   fmt("%.6f", best.probability) + "\n";
        critical += id + "," + scheme + "," + engine + "," + decoder + "," + penalty_text(critical_penalty(curve)) + "\n";
    }
    write_text_file(dir / "optimal.csv", optimal);
    write_text_file(dir / "critical.csv", critical);

    std::string errors = "instance_id,scheme,engine,penalty_deci,error_rate\n";
    std::string profiles = "instance_id,engine,penalty_deci,d,layer_size,rate\n";
    std::string coefs = "instance_id,engine,penalty_deci,threshold,c0,c1,c2,c3,c4,c5,c6\n";
    std::vector<CornerProfile> all_profiles;
    std::vector<std::string> missing;
    for (int k = 0; k < config.ensemble.count; ++k) {
        auto inst = ensemble_instance(config.ensemble, k);
        auto ground = exact_ground(inst);
        for (const auto& scheme : config.schemes) {
            Embedded emb = embed(inst, scheme);
            std::vector<SpinConfiguration> reps;
            if (scheme == "me") {
                std::set<SpinConfiguration> set;
                for (const auto& s : ground.ground_states) set.insert(encode_chains(*emb.me, s));
                reps.assign(set.begin(), set.end());
            } else if (!inst.has_fields()) {
                reps = lhz_ground_reps(*emb.lhz, ground);
            } else {
                continue;
            }
            for (const auto& engine : config.engines) {
                for (Deci pen : config.penalty_grid) {
                    const auto path = dir / "samples" / inst.instance_id /
                                      (scheme + "-" + engine + "-p" + pad(pen, 4) + ".jsonl");
                    if (!fs::exists(path)) {
                        missing.push_back(path.string());
                        continue;
                    }
                    auto samples = read_samples_file(path);
                    errors += inst.instance_id + "," + scheme + "," + engine + "," + std::to_string(pen) + "," +
                              fmt("%.6f", avg_error_rate(samples, reps)) + "\n";
                }
                if (scheme != "lhz") continue;
                auto it = curves.find({inst.instance_id, scheme, engine, "mvd"});
                if (it == curves.end()) continue;
                Deci pen = optimal_penalty(it->second).penalty;
                const auto path = dir / "samples" / inst.instance_id / ("lhz-" + engine + "-p" + pad(pen, 4) + ".jsonl");
                if (!fs::exists(path)) continue;
                auto prof = corner_profile(*emb.lhz, read_samples_file(path), reps,
                                           {1000, mix_seed(config.ensemble.master_seed, hash_string(inst.instance_id))});
                for (std::size_t d = 0; d < prof.rate.size(); ++d)
                    profiles += inst.instance_id + "," + engine + "," + std::to_string(pen) + "," + std::to_string(d) +
                                "," + std::to_string(prof.layer_size[d]) + "," + fmt("%.6f", prof.rate[d]) + "\n";
                coefs += inst.instance_id + "," + engine + "," + std::to_string(pen) + "," + fmt("%.6g", prof.threshold);
                for (double c : prof.coefficients) coefs += "," + fmt("%.6g", c);
                coefs += "\n";
                all_profiles.push_back(std::move(prof));
            }
        }
    }
    if (!missing.empty()) {
        std::string msg = "missing inputs:";
        for (const auto& m : missing) msg += " " + m;
        throw NotFound(msg);
    }
    write_text_file(dir / "error_rates.csv", errors);
    write_text_file(dir / "profiles.csv", profiles);
    write_text_file(dir / "coefficients.csv", coefs);
    std::string hist = "degree,count\n";
    auto counts = polyfit_coefficient_histogram(all_profiles);
    for (std::size_t d = 0; d < counts.size(); ++d) hist += std::to_string(d) + "," + std::to_string(counts[d]) + "\n";
    write_text_file(dir / "coefficient_histogram.csv", hist);
}

Comparison parse_comparison(const std::string& name) {
    if (name == "scheme-vs-scheme") return Comparison::scheme_vs_scheme;
    if (name == "decoder-vs-decoder") return Comparison::decoder_vs_decoder;
    if (name == "sqa-vs-pt") return Comparison::sqa_vs_pt;
    throw std::invalid_argument("unknown comparison '" + name + "'");
}

std::string comparison_name(Comparison c) {
    switch (c) {
        case Comparison::scheme_vs_scheme: return "scheme-vs-scheme";
        case Comparison::decoder_vs_decoder: return "decoder-vs-decoder";
        case Comparison::sqa_vs_pt: return "sqa-vs-pt";
    }
    return "?";
}

namespace {

void tally(Tally& t, double a, double b) {
    if (a > b)
        ++t.wins;
    else if (a < b)
        ++t.losses;
    else
        ++t.ties;
}

/// Every instance in a (scheme, engine, decoder) group must share the grid and
/// run parameters, and compared groups must match each other.
void check_grids(const std::vector<ResultRow>& rows, const std::vector<std::pair<std::string, std::string>>& compared) {
    using Sig = std::tuple<std::vector<Deci>, long long, long long>;
    std::map<std::tuple<std::string, std::string, std::string>, std::map<std::string, Sig>> sigs;
    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return row_key(a) < row_key(b); });
    for (const auto& r : sorted) {
        auto& s = sigs[{r.scheme, r.engine, r.decoder}][r.instance_id];
        std::get<0>(s).push_back(r.penalty);
        std::get<1>(s) = r.sweeps;
        std::get<2>(s) = r.reads;
    }
    std::map<std::pair<std::string, std::string>, std::vector<Deci>> grid_of;
    for (const auto& [group, per_inst] : sigs) {
        const Sig* first = nullptr;
        for (const auto& [id, sig] : per_inst) {
            if (!first) first = &sig;
            if (sig != *first)
                throw std::invalid_argument("mismatched grids: " + std::get<0>(group) + "/" + std::get<1>(group) + "/" +
                                            std::get<2>(group) + " differs across instances");
        }
        grid_of[{std::get<0>(group), std::get<1>(group)}] = std::get<0>(*first);
    }
    for (const auto& [a, b] : compared) {
        std::vector<Deci> ga, gb;
        for (const auto& [k, g] : grid_of) {
            if (k.first == a || k.second == a) ga = g;
            if (k.first == b || k.second == b) gb = g;
        }
        if (!ga.empty() && !gb.empty() && ga != gb)
            throw std::invalid_argument("mismatched grids: " + a + " and " + b + " use different penalty grids");
    }
}

}  // namespace

ReportOutput report(const fs::path& dir, Comparison comparison) {
    auto rows = load_results(dir);
    auto curves = curves_by_group(rows);
    ReportOutput out;
    std::set<std::string> ids;
    for (const auto& r : rows) ids.insert(r.instance_id);
    auto find = [&](const std::string& id, const std::string& scheme, const std::string& engine,
                    const std::string& decoder) -> const SuccessCurve* {
        auto it = curves.find({id, scheme, engine, decoder});
        return it == curves.end() ? nullptr : &it->second;
    };
    std::vector<std::string> missing;

    if (comparison == Comparison::scheme_vs_scheme) {
        check_grids(rows, {{"me", "lhz"}});
        out.table_csv = "instance_id,engine,me_optimal_penalty_deci,me_success,lhz_optimal_penalty_deci,lhz_success,"
                        "me_critical_penalty_deci,lhz_critical_penalty_deci\n";
        for (const auto& engine : {"sqa", "pt"}) {
            for (const auto& id : ids) {
                auto me = find(id, "me", engine, "mvd");
                auto lhz = find(id, "lhz", engine, "mvd");
                if (!me && !lhz) continue;
                if (!me || !lhz) {
                    missing.push_back(id + "/" + (me ? "lhz" : "me") + "/" + engine + "/mvd");
                    continue;
                }
                auto a = optimal_penalty(*me), b = optimal_penalty(*lhz);
                out.table_csv += id + "," + engine + "," + std::to_string(a.penalty) + "," + fmt("%.6f", a.probability) +
                                 "," + std::to_string(b.penalty) + "," + fmt("%.6f", b.probability) + "," +
                                 penalty_text(critical_penalty(*me)) + "," + penalty_text(critical_penalty(*lhz)) + "\n";
                tally(out.tallies[std::string("me>lhz/") + engine], a.probability, b.probability);
            }
        }
    } else if (comparison == Comparison::decoder_vs_decoder) {
        check_grids(rows, {});
        out.table_csv = "instance_id,engine,decoder,decoder_optimal_penalty_deci,decoder_success,mvd_optimal_penalty_deci,"
                        "mvd_success\n";
        std::set<std::string> decoders;
        for (const auto& r : rows)
            if (r.scheme == "lhz" && r.decoder != "mvd") decoders.insert(r.decoder);
        for (const auto& engine : {"sqa", "pt"})
            for (const auto& dec : decoders)
                for (const auto& id : ids) {
                    auto d = find(id, "lhz", engine, dec);
                    auto m = find(id, "lhz", engine, "mvd");
                    if (!d && !m) continue;
                    if (!d || !m) {
                        missing.push_back(id + "/lhz/" + engine + "/" + (d ? "mvd" : dec));
                        continue;
                    }
                    auto a = optimal_penalty(*d), b = optimal_penalty(*m);
                    out.table_csv += id + "," + engine + "," + dec + "," + std::to_string(a.penalty) + "," +
                                     fmt("%.6f", a.probability) + "," + std::to_string(b.penalty) + "," +
                                     fmt("%.6f", b.probability) + "\n";
                    tally(out.tallies[dec + ">mvd/" + engine], a.probability, b.probability);
                }
        if (decoders.empty()) missing.push_back("lhz results for any decoder other than mvd");
    } else {
        check_grids(rows, {{"sqa", "pt"}});
        out.table_csv = "instance_id,scheme,penalty_deci,tv_distance\n";
        std::string summary;
        for (const auto& id : ids)
            for (const auto& scheme : {"me", "lhz"}) {
                auto s = find(id, scheme, "sqa", "mvd");
                auto p = find(id, scheme, "pt", "mvd");
                if (!s && !p) continue;
                if (!s || !p) {
                    missing.push_back(id + "/" + scheme + "/" + (s ? "pt" : "sqa"));
                    continue;
                }
                for (const auto& pt : s->points) {
                    auto sqa_path = dir / "samples" / id / (std::string(scheme) + "-sqa-p" + pad(pt.penalty, 4) + ".jsonl");
                    auto pt_path = dir / "samples" / id / (std::string(scheme) + "-pt-p" + pad(pt.penalty, 4) + ".jsonl");
                    if (!fs::exists(sqa_path) || !fs::exists(pt_path)) {
                        missing.push_back((fs::exists(sqa_path) ? pt_path : sqa_path).string());
                        continue;
                    }
                    double tv = tv_distance(energy_histogram(read_samples_file(sqa_path)),
                                            energy_histogram(read_samples_file(pt_path)));
                    out.table_csv += id + "," + scheme + "," + std::to_string(pt.penalty) + "," + fmt("%.6f", tv) + "\n";
                }
                tally(out.tallies[std::string("sqa>pt/") + scheme], optimal_penalty(*s).probability,
                      optimal_penalty(*p).probability);
            }
    }
    if (!missing.empty()) {
        std::string msg = "missing inputs:";
        for (const auto& m : missing) msg += " " + m;
        throw NotFound(msg);
    }
    const auto name = comparison_name(comparison);
    write_text_file(dir / ("report-" + name + ".csv"), out.table_csv);
    std::string t = "comparison,wins,losses,ties\n";
    for (const auto& [k, v] : out.tallies)
        t += k + "," + std::to_string(v.wins) + "," + std::to_string(v.losses) + "," + std::to_string(v.ties) + "\n";
    write_text_file(dir / ("report-" + name + "-tally.csv"), t);
    return out;
}

namespace {

std::map<std::string, std::string> snapshot(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file()) files[fs::relative(entry.path(), root).generic_string()] = read_text_file(entry.path());
    return files;
}

}  // namespace

SmokeResult run_smoke(const fs::path& work_dir, const std::function<void(const std::string&)>& progress) {
    const auto start = std::chrono::steady_clock::now();
    SmokeResult result;
    auto note = [&](const std::string& m) {
        result.messages.push_back(m);
        if (progress) progress(m);
    };
    ExperimentConfig config;
    config.ensemble = {4, 2, 20260101};
    config.schemes = {"me", "lhz"};
    config.engines = {"sqa", "pt"};
    config.penalty_grid = {10, 20, 30};
    config.sqa.n_tau = 16;
    config.sqa.sweeps = 500;
    config.sqa.reads = 100;
    config.pt.n_replicas = 8;
    config.pt.beta_min = 0.1;
    config.pt.beta_max = 5.0;
    config.pt.total_swaps = 200;
    config.pt.sweeps_per_swap = 2;
    config.pt.samples_to_record = 100;
    config.decoders = {{"mvd"}, {"mwd-exact"}, {"bp"}};

    fs::remove_all(work_dir);
    struct Variant {
        std::string name;
        int workers;
        bool interrupt;
    };
    const std::vector<Variant> variants{{"serial", 1, false}, {"parallel", 4, false}, {"resumed", 3, true}};
    std::vector<std::map<std::string, std::string>> trees;
    bool ok = true;
    for (const auto& v : variants) {
        auto c = config;
        c.output_dir = work_dir / v.name;
        RunOptions opt;
        opt.workers = v.workers;
        if (v.interrupt) {
            opt.max_tasks = 7;
            auto partial = run_experiment(c, opt);
            note(v.name + ": interrupted after " + std::to_string(partial.done()) + "/" +
                 std::to_string(partial.total_tasks) + " tasks");
            opt.max_tasks = std::numeric_limits<std::size_t>::max();
        }
        auto m = run_experiment(c, opt);
        if (!m.complete()) {
            ok = false;
            note(v.name + ": manifest incomplete (" + std::to_string(m.done()) + "/" + std::to_string(m.total_tasks) + ")");
        }
        analyze(c.output_dir);
        for (auto cmp : {Comparison::scheme_vs_scheme, Comparison::decoder_vs_decoder, Comparison::sqa_vs_pt})
            report(c.output_dir, cmp);
        trees.push_back(snapshot(c.output_dir));
        note(v.name + ": " + std::to_string(trees.back().size()) + " files, workers=" + std::to_string(v.workers));
    }
    for (std::size_t i = 1; i < trees.size(); ++i) {
        if (trees[i] == trees[0]) continue;
        ok = false;
        for (const auto& [name, body] : trees[0]) {
            auto it = trees[i].find(name);
            if (it == trees[i].end())
                note(variants[i].name + ": missing " + name);
            else if (it->second != body)
                note(variants[i].name + ": differs in " + name);
        }
        for (const auto& [name, body] : trees[i])
            if (!trees[0].count(name)) note(variants[i].name + ": extra " + name);
    }
    result.passed = ok;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    note(std::string(ok ? "smoke passed" : "smoke FAILED") + " in " + fmt("%.1f", result.seconds) + " s");
    return result;
}

}  // namespace parity_anneal
