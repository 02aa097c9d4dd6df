// qwalk: run two-coin walk teleportation protocols, audit the built-in
// scenario's printed claims, and check shift graphs for permutation
// completeness.
//
// Exit codes: 0 success; 2 graph-check found deficiencies; any other nonzero
// value is a usage or runtime error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwalk/sampling.hpp"
#include "qwalk/serialize.hpp"

namespace {

using namespace qwalk;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + out_path + "'");
    }
    file << text;
    if (!file) {
        throw std::runtime_error("failed writing output file '" + out_path + "'");
    }
}

json load_json_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return json::parse(file);  // parse errors carry the byte position
}

std::vector<cx> parse_amplitudes(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("--input: '" + item + "' is not a number");
        }
        if (used != item.size()) {
            throw std::invalid_argument("--input: '" + item + "' is not a number");
        }
        values.push_back(v);
    }
    std::vector<cx> amps;
    if (values.size() == 3) {
        for (double v : values) amps.emplace_back(v, 0.0);
    } else if (values.size() == 6) {
        for (std::size_t i = 0; i < 6; i += 2) amps.emplace_back(values[i], values[i + 1]);
    } else {
        throw std::invalid_argument(
            "--input: expected 3 reals or 6 re,im values, got " + std::to_string(values.size()));
    }
    return amps;
}

int cmd_verify_paper(const std::string& variant, std::uint64_t seed, const std::string& format,
                     const std::string& out_path) {
    const ClaimReport report = audit_paper(variant_from_name(variant), seed);
    if (format == "json") {
        emit(claim_report_to_json(report).dump(2) + "\n", out_path);
    } else {
        emit(render_claim_report(report), out_path);
    }
    return 0;
}

json run_to_json(const ProtocolSpec& spec, const std::vector<cx>& amps,
                 const std::vector<OutcomeRecord>& records) {
    json input = json::array();
    for (const cx& a : amps) input.push_back(complex_to_json(a));
    json outcomes = json::array();
    for (const OutcomeRecord& rec : records) outcomes.push_back(outcome_to_json(rec));
    return json{{"protocol", spec.name},
                {"variant", spec.variant_label},
                {"input", input},
                {"outcomes", outcomes}};
}

std::string run_to_text(const std::vector<OutcomeRecord>& records) {
    std::string out;
    for (const OutcomeRecord& rec : records) out += render_outcome(rec) + "\n";
    return out;
}

int cmd_run(const std::string& protocol_name, const std::string& protocol_file,
            const std::string& variant, bool variant_given, const std::string& input, int count,
            std::uint64_t seed, const std::string& outcome_sel, const std::string& format,
            const std::string& out_path) {
    if (variant_given && (!protocol_file.empty() || protocol_name != "paper")) {
        throw std::invalid_argument("--variant applies only to the builtin paper protocol");
    }
    ProtocolSpec spec = protocol_file.empty()
                            ? builtin_protocol(protocol_name, variant_from_name(variant))
                            : protocol_from_json(load_json_file(protocol_file));
    const ProtocolEngine engine(std::move(spec));

    std::optional<std::pair<int, int>> selected;
    if (!outcome_sel.empty()) {
        int p = 0;
        int j = 0;
        if (std::sscanf(outcome_sel.c_str(), "%d,%d", &p, &j) != 2) {
            throw std::invalid_argument("--outcome: expected POSITION,COIN1 integers");
        }
        selected = {p, j};
    }

    auto run_one = [&](const std::vector<cx>& amps) {
        std::vector<OutcomeRecord> records;
        if (selected) {
            records.push_back(engine.run_outcome(amps, selected->first, selected->second));
        } else {
            records = engine.run_all_outcomes(amps);
        }
        return records;
    };

    if (input != "random") {
        const std::vector<cx> amps = parse_amplitudes(input);
        const std::vector<OutcomeRecord> records = run_one(amps);
        if (format == "json") {
            emit(run_to_json(engine.spec(), amps, records).dump(2) + "\n", out_path);
        } else {
            std::string text = "protocol run: " + engine.spec().name + " (variant " +
                               engine.spec().variant_label + ")\n";
            text += run_to_text(records);
            emit(text, out_path);
        }
        return 0;
    }

    // seeded random sweep with per-outcome aggregates
    if (count < 1) {
        throw std::invalid_argument("--count must be >= 1");
    }
    Sampler sampler(seed);
    const int d1 = engine.spec().shape.dim(1);

    struct Aggregate {
        double prob_sum = 0.0;
        double fid_sum = 0.0;
        double fid_min = 1.0;
        int fid_count = 0;
    };
    std::map<std::pair<int, int>, Aggregate> aggregates;

    json runs = json::array();
    std::string text;
    for (int i = 0; i < count; ++i) {
        const std::vector<cx> amps = sampler.random_amplitudes(d1);
        const std::vector<OutcomeRecord> records = run_one(amps);
        for (const OutcomeRecord& rec : records) {
            Aggregate& agg = aggregates[{rec.position_outcome, rec.coin1_outcome}];
            agg.prob_sum += rec.probability;
            if (rec.fidelity_vs_input) {
                agg.fid_sum += *rec.fidelity_vs_input;
                agg.fid_min = std::min(agg.fid_min, *rec.fidelity_vs_input);
                ++agg.fid_count;
            }
        }
        if (format == "json") {
            runs.push_back(run_to_json(engine.spec(), amps, records));
        } else {
            text += "run " + std::to_string(i) + ":\n" + run_to_text(records);
        }
    }

    json agg_json = json::array();
    std::string agg_text;
    for (const auto& [key, agg] : aggregates) {
        json entry{{"position", key.first},
                   {"coin1_outcome", key.second},
                   {"mean_probability", agg.prob_sum / count}};
        entry["mean_fidelity"] =
            agg.fid_count > 0 ? json(agg.fid_sum / agg.fid_count) : json(nullptr);
        entry["min_fidelity"] = agg.fid_count > 0 ? json(agg.fid_min) : json(nullptr);
        entry["fidelity_count"] = agg.fid_count;
        agg_json.push_back(entry);

        char line[160];
        if (agg.fid_count > 0) {
            std::snprintf(line, sizeof line,
                          "aggregate (p=%d, f=%d): mean_probability=%.6f mean_fidelity=%.6f "
                          "min_fidelity=%.6f (%d runs)\n",
                          key.first, key.second, agg.prob_sum / count,
                          agg.fid_sum / agg.fid_count, agg.fid_min, agg.fid_count);
        } else {
            std::snprintf(line, sizeof line,
                          "aggregate (p=%d, f=%d): mean_probability=%.6f fidelity=n/a\n",
                          key.first, key.second, agg.prob_sum / count);
        }
        agg_text += line;
    }

    if (format == "json") {
        const json doc{{"protocol", engine.spec().name},
                       {"variant", engine.spec().variant_label},
                       {"input_mode", json{{"random", true}, {"count", count}, {"seed", seed}}},
                       {"runs", runs},
                       {"aggregate", agg_json}};
        emit(doc.dump(2) + "\n", out_path);
    } else {
        std::string header = "protocol sweep: " + engine.spec().name + " (variant " +
                             engine.spec().variant_label + ", " + std::to_string(count) +
                             " random inputs, seed " + std::to_string(seed) + ")\n";
        emit(header + text + agg_text, out_path);
    }
    return 0;
}

int cmd_graph_check(const std::string& target, const std::string& format,
                    const std::string& out_path) {
    const EdgeLabeledGraph graph = target.find(':') != std::string::npos
                                       ? builtin_graph(target)
                                       : graph_from_json(load_json_file(target));
    const ShiftAudit audit = audit_shift(graph);
    if (format == "json") {
        const json doc{{"graph", target}, {"audit", audit_to_json(audit)}};
        emit(doc.dump(2) + "\n", out_path);
    } else {
        emit(render_audit(target, graph, audit), out_path);
    }
    return audit.is_permutation ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"state-vector simulator and claim auditor for two-coin discrete-time "
                 "quantum walks on edge-labeled graphs"};
    app.require_subcommand(1);

    std::string vp_variant = "rearranged";
    std::uint64_t vp_seed = kDefaultSeed;
    std::string vp_format = "text";
    std::string vp_out;
    CLI::App* vp = app.add_subcommand("verify-paper",
                                      "audit the built-in scenario against its printed values");
    vp->add_option("--variant", vp_variant, "shift listing to audit")
        ->check(CLI::IsMember({"original", "rearranged", "completed"}));
    vp->add_option("--seed", vp_seed, "seed for the random-input checks");
    vp->add_option("--format", vp_format)->check(CLI::IsMember({"text", "json"}));
    vp->add_option("--out", vp_out, "write the report to a file instead of stdout");

    std::string run_protocol = "paper";
    std::string run_file;
    std::string run_variant = "rearranged";
    std::string run_input = "1,0,0";
    int run_count = 100;
    std::uint64_t run_seed = kDefaultSeed;
    std::string run_outcome;
    std::string run_format = "text";
    std::string run_out;
    CLI::App* run = app.add_subcommand("run", "run a protocol and print the outcome ledger");
    run->add_option("--protocol", run_protocol, "builtin protocol: paper or sanity");
    run->add_option("--protocol-file", run_file, "protocol config JSON")
        ->excludes(run->get_option("--protocol"));
    run->add_option("--variant", run_variant, "shift listing (builtin paper protocol only)")
        ->check(CLI::IsMember({"original", "rearranged", "completed"}));
    run->add_option("--input", run_input,
                    "amplitudes 'a0,a1,a2' (reals) or 're0,im0,re1,im1,re2,im2', or 'random'");
    run->add_option("--count", run_count, "number of random inputs (with --input random)");
    run->add_option("--seed", run_seed, "sweep seed (with --input random)");
    run->add_option("--outcome", run_outcome, "restrict to one outcome 'POSITION,COIN1'");
    run->add_option("--format", run_format)->check(CLI::IsMember({"text", "json"}));
    run->add_option("--out", run_out);

    std::string gc_target;
    std::string gc_format = "text";
    std::string gc_out;
    CLI::App* gc = app.add_subcommand(
        "graph-check", "audit a shift graph (exit 0 if permutation-complete, 2 if not)");
    gc->add_option("graph", gc_target,
                   "builtin (paper:original, paper:rearranged, paper:completed, cycle:N, path:N) "
                   "or a graph JSON file")
        ->required();
    gc->add_option("--format", gc_format)->check(CLI::IsMember({"text", "json"}));
    gc->add_option("--out", gc_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (vp->parsed()) {
            return cmd_verify_paper(vp_variant, vp_seed, vp_format, vp_out);
        }
        if (run->parsed()) {
            return cmd_run(run_protocol, run_file, run_variant, run->count("--variant") > 0,
                           run_input, run_count, run_seed, run_outcome, run_format, run_out);
        }
        if (gc->parsed()) {
            return cmd_graph_check(gc_target, gc_format, gc_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
