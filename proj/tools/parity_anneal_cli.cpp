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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "parity_anneal/analysis.hpp"
#include "parity_anneal/chimera.hpp"
#include "parity_anneal/decoders.hpp"
#include "parity_anneal/errors.hpp"
#include "parity_anneal/experiment.hpp"
#include "parity_anneal/instance_io.hpp"
#include "parity_anneal/lhz.hpp"
#include "parity_anneal/pt.hpp"
#include "parity_anneal/random.hpp"
#include "parity_anneal/samples.hpp"
#include "parity_anneal/sqa.hpp"

namespace fs = std::filesystem;
using namespace parity_anneal;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        write_text_file(out_path, text);
}

PhysicalHamiltonian embed_for(const LogicalInstance& inst, const std::string& scheme) {
    if (scheme == "me") return embed_me(inst, build_chimera_clique_embedding(inst.n));
    return embed_lhz(inst, build_lhz_layout(lhz_logical_size(inst)));
}

void progress_line(const std::string& line) { std::cerr << line << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Embedding-scheme comparison for simulated quantum annealing and parallel tempering"};
    app.require_subcommand(1);

    // gen-instances
    auto* gen = app.add_subcommand("gen-instances", "Generate a random complete-graph instance ensemble");
    int gen_n = 8, gen_count = 10;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "instances";
    gen->add_option("--n", gen_n, "Logical spins")->check(CLI::Range(2, 1000));
    gen->add_option("--count", gen_count, "Instances")->check(CLI::PositiveNumber);
    gen->add_option("--master-seed", gen_seed, "Ensemble seed");
    gen->add_option("--out", gen_out, "Output directory");

    // embed
    auto* emb = app.add_subcommand("embed", "Dump an embedding (me) or parity layout (lhz)");
    std::string emb_scheme, emb_instance, emb_out;
    int emb_n = 0;
    emb->add_option("--scheme", emb_scheme)->required()->check(CLI::IsMember({"me", "lhz"}));
    emb->add_option("--n", emb_n, "Logical spins");
    emb->add_option("--instance", emb_instance, "Take the size from an instance file");
    emb->add_option("--out", emb_out, "Output file (default stdout)");

    // run-sqa
    auto* sqa = app.add_subcommand("run-sqa", "Simulated quantum annealing on an embedded instance");
    std::string sqa_instance, sqa_scheme, sqa_penalty = "0", sqa_schedule, sqa_out;
    SqaParams sqa_params;
    sqa->add_option("--instance", sqa_instance)->required();
    sqa->add_option("--scheme", sqa_scheme)->required()->check(CLI::IsMember({"me", "lhz"}));
    sqa->add_option("--penalty", sqa_penalty, "Penalty strength in problem units (0.1 grid)");
    sqa->add_option("--sweeps", sqa_params.sweeps)->check(CLI::PositiveNumber);
    sqa->add_option("--beta", sqa_params.beta)->check(CLI::PositiveNumber);
    sqa->add_option("--reads", sqa_params.reads)->check(CLI::PositiveNumber);
    sqa->add_option("--n-tau", sqa_params.n_tau)->check(CLI::Range(2, kMaxTrotterSlices));
    sqa->add_option("--seed", sqa_params.seed);
    sqa->add_option("--schedule", sqa_schedule, "CSV with header s,A,B");
    sqa->add_option("--out", sqa_out, "Samples JSON-lines (default stdout)");

    // run-pt
    auto* pt = app.add_subcommand("run-pt", "Parallel tempering on an embedded instance");
    std::string pt_instance, pt_scheme, pt_penalty = "0", pt_out, pt_swap_out;
    PtParams pt_params;
    pt->add_option("--instance", pt_instance)->required();
    pt->add_option("--scheme", pt_scheme)->required()->check(CLI::IsMember({"me", "lhz"}));
    pt->add_option("--penalty", pt_penalty, "Penalty strength in problem units (0.1 grid)");
    pt->add_option("--swaps", pt_params.total_swaps)->check(CLI::PositiveNumber);
    pt->add_option("--measure-beta", pt_params.measure_beta)->check(CLI::PositiveNumber);
    pt->add_option("--replicas", pt_params.n_replicas)->check(CLI::Range(2, 100000));
    pt->add_option("--sweeps-per-swap", pt_params.sweeps_per_swap)->check(CLI::PositiveNumber);
    pt->add_option("--record", pt_params.samples_to_record)->check(CLI::PositiveNumber);
    pt->add_option("--seed", pt_params.seed);
    pt->add_option("--out", pt_out, "Samples JSON-lines (default stdout)");
    pt->add_option("--swap-out", pt_swap_out, "Swap acceptance CSV");

    // decode
    auto* dec = app.add_subcommand("decode", "Decode physical samples to logical states");
    std::string dec_name, dec_samples, dec_layout, dec_instance, dec_out;
    int dec_trees = 0, dec_iters = 10;
    double dec_perr = 0.2;
    std::uint64_t dec_seed = 0;
    dec->add_option("--decoder", dec_name)
        ->required()
        ->check(CLI::IsMember({"mvd", "mvd-trees", "mwd-exact", "mwd-sa", "bp"}));
    dec->add_option("--samples", dec_samples)->required();
    dec->add_option("--layout", dec_layout, "Embedding or layout dump from 'embed'")->required();
    dec->add_option("--trees", dec_trees, "Spanning trees for mvd-trees (default ceil(N/4)+1)");
    dec->add_option("--perr", dec_perr, "BP channel error rate");
    dec->add_option("--iters", dec_iters, "BP iterations");
    dec->add_option("--seed", dec_seed, "Seed for tie breaks, trees and SA");
    dec->add_option("--instance", dec_instance, "Instance file, to report logical energies");
    dec->add_option("--out", dec_out, "Output JSON-lines (default stdout)");

    // analyze / report / smoke / run
    auto* ana = app.add_subcommand("analyze", "Derive optimal/critical penalties, error rates and corner profiles");
    std::string ana_dir;
    ana->add_option("--dir", ana_dir, "Results directory")->required();

    auto* rep = app.add_subcommand("report", "Comparison tables with win/loss/tie tallies");
    std::string rep_dir, rep_cmp;
    rep->add_option("--dir", rep_dir, "Results directory")->required();
    rep->add_option("--comparison", rep_cmp)
        ->required()
        ->check(CLI::IsMember({"scheme-vs-scheme", "decoder-vs-decoder", "sqa-vs-pt"}));

    auto* smoke = app.add_subcommand("smoke", "End-to-end reproducibility check");
    std::string smoke_dir = (fs::temp_directory_path() / "parity-anneal-smoke").string();
    smoke->add_option("--work-dir", smoke_dir);

    auto* run = app.add_subcommand("run", "Run an experiment grid from a JSON config");
    std::string run_config;
    int run_workers = 0;
    run->add_option("--config", run_config)->required();
    run->add_option("--workers", run_workers, "Worker threads (default PARITY_ANNEAL_WORKERS or all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*gen) {
            EnsembleSpec spec{gen_n, gen_count, gen_seed};
            for (int k = 0; k < gen_count; ++k) {
                auto inst = ensemble_instance(spec, k);
                write_instance_file(fs::path(gen_out) / (inst.instance_id + ".json"), inst);
                std::cout << inst.instance_id << "\n";
            }
        } else if (*emb) {
            int n = emb_n;
            if (!emb_instance.empty()) n = lhz_logical_size(read_instance_file(emb_instance));
            if (n <= 0) throw std::invalid_argument("give --n or --instance");
            emit(emb_out, emb_scheme == "me" ? embedding_to_json(build_chimera_clique_embedding(n))
                                             : layout_to_json(build_lhz_layout(n)));
        } else if (*sqa) {
            auto inst = read_instance_file(sqa_instance);
            auto schedule = sqa_schedule.empty() ? default_schedule() : AnnealSchedule::from_csv(read_text_file(sqa_schedule));
            auto samples = run_sqa(embed_for(inst, sqa_scheme), schedule, sqa_params, parse_deci(sqa_penalty));
            emit(sqa_out, samples_to_jsonl(samples));
        } else if (*pt) {
            auto inst = read_instance_file(pt_instance);
            if (pt_params.samples_to_record > pt_params.total_swaps - pt_params.total_swaps / 2)
                pt_params.samples_to_record = pt_params.total_swaps - pt_params.total_swaps / 2;
            auto res = run_pt(embed_for(inst, pt_scheme), pt_params, parse_deci(pt_penalty));
            std::cerr << "measured beta " << res.measured_beta << " (ladder slot " << res.measure_slot + 1 << ")\n";
            emit(pt_out, samples_to_jsonl(res.samples));
            if (!pt_swap_out.empty()) {
                std::string csv = "pair,rate\n";
                for (std::size_t i = 0; i < res.swap_acceptance.size(); ++i) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%zu,%.6f\n", i + 1, res.swap_acceptance[i]);
                    csv += buf;
                }
                write_text_file(pt_swap_out, csv);
            }
        } else if (*dec) {
            auto samples = read_samples_file(dec_samples);
            auto layout_json = nlohmann::json::parse(read_text_file(dec_layout));
            const auto scheme = layout_json.at("scheme").get<std::string>();
            std::optional<LogicalInstance> inst;
            if (!dec_instance.empty()) inst = read_instance_file(dec_instance);
            std::optional<MinorEmbedding> me;
            std::optional<LhzLayout> lhz;
            std::optional<MwdDecoder> mwd;
            if (scheme == "me") {
                if (dec_name != "mvd") throw std::invalid_argument("only 'mvd' applies to a minor embedding");
                me = embedding_from_json(layout_json.dump());
            } else {
                lhz = layout_from_json(layout_json.dump());
                if (dec_name == "mwd-exact" || dec_name == "mwd-sa") mwd.emplace(*lhz);
            }
            if (inst && (inst->has_fields() || inst->n != (me ? me->n_logical : lhz->n_logical)))
                throw std::invalid_argument("instance does not match the layout");
            std::string out;
            for (const auto& rec : samples.records) {
                const auto seed = mix_seed(dec_seed, static_cast<std::uint64_t>(rec.read));
                DecodeOutcome o;
                if (me) {
                    o.decoder = "mvd";
                    o.logical_state = decode_me_mvd(*me, rec.config, {seed});
                } else if (dec_name == "mvd" || dec_name == "mvd-trees") {
                    int trees = dec_trees > 0 ? dec_trees : (lhz->n_logical + 3) / 4 + 1;
                    o.decoder = "mvd-trees";
                    o.logical_state = mvd_trees(*lhz, rec.config, trees, seed);
                    o.violated_before = o.violated_after = syndrome(*lhz, rec.config).violated_count();
                } else if (mwd) {
                    o = mwd->decode(rec.config, dec_name == "mwd-exact" ? InnerMode::exact : InnerMode::sa, seed);
                } else {
                    o = bp_decode(*lhz, rec.config, {dec_perr, dec_iters, seed});
                }
                nlohmann::ordered_json j;
                j["read"] = rec.read;
                j["decoder"] = o.decoder;
                j["logical"] = o.logical_state.to_string();
                if (inst) j["logical_energy_deci"] = logical_energy(*inst, o.logical_state);
                j["violated_before"] = o.violated_before;
                j["violated_after"] = o.violated_after;
                j["flips"] = o.flips;
                out += j.dump() + "\n";
            }
            emit(dec_out, out);
        } else if (*ana) {
            analyze(ana_dir);
        } else if (*rep) {
            auto r = report(rep_dir, parse_comparison(rep_cmp));
            std::cout << r.table_csv;
            for (const auto& [k, t] : r.tallies)
                std::cout << "# " << k << ": wins " << t.wins << ", losses " << t.losses << ", ties " << t.ties << "\n";
        } else if (*smoke) {
            auto r = run_smoke(smoke_dir, progress_line);
            return r.passed ? 0 : kExitPartial;
        } else if (*run) {
            auto config = ExperimentConfig::from_json(read_text_file(run_config), fs::path(run_config).parent_path());
            RunOptions opt;
            opt.workers = run_workers;
            opt.progress = progress_line;
            auto m = run_experiment(config, opt);
            std::cerr << m.done() << "/" << m.total_tasks << " tasks done, " << m.failed() << " failed\n";
            return m.complete() ? 0 : kExitPartial;
        }
    } catch (const NotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
