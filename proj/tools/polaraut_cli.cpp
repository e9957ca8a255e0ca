// Command-line front end: code construction, automorphism group queries,
// SC-invariance checks, equivalence-class counts, ensemble sampling,
// one-shot decoding, and BLER simulation.

#include "polaraut/ae_sim.hpp"
#include "polaraut/automorphism.hpp"
#include "polaraut/gf2.hpp"
#include "polaraut/invariance.hpp"
#include "polaraut/io.hpp"
#include "polaraut/monomial.hpp"
#include "polaraut/sc_decoder.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace polaraut;

constexpr const char* kSchema = "polaraut/1";

struct CodeArgs {
    int m = -1;
    std::vector<std::uint64_t> i_min;
    std::vector<std::uint64_t> info;
    std::string code_file;
    bool a_space = false;
};

void add_code_options(CLI::App* cmd, CodeArgs& args) {
    cmd->add_option("--m", args.m, "code dimension m (length n = 2^m)");
    cmd->add_option("--i-min", args.i_min, "minimal information-set generators (z labels)")->delimiter(',');
    cmd->add_option("--info", args.info, "explicit information set (z labels)")->delimiter(',');
    cmd->add_option("--code-file", args.code_file, "code specification JSON file");
    cmd->add_flag("--a-space", args.a_space, "interpret --i-min/--info values as a-space indices");
}

CodeSpec resolve_code(const CodeArgs& args) {
    const int sources = static_cast<int>(!args.i_min.empty()) + static_cast<int>(!args.info.empty()) +
                        static_cast<int>(!args.code_file.empty());
    if (sources != 1)
        throw std::runtime_error("specify the code with exactly one of --i-min, --info, --code-file");
    if (!args.code_file.empty())
        return load_code_spec(args.code_file);
    if (args.m < 0)
        throw std::runtime_error("--m is required with --i-min/--info");

    auto to_z = [&](std::uint64_t v) {
        return args.a_space ? a_to_z(static_cast<std::uint32_t>(v), args.m) : v;
    };
    CodeSpec spec;
    spec.m = args.m;
    if (!args.i_min.empty()) {
        std::vector<Monomial> gens;
        std::vector<std::uint64_t> zs;
        for (std::uint64_t v : args.i_min) {
            zs.push_back(to_z(v));
            gens.push_back(Monomial{args.m, z_to_a(zs.back(), args.m)});
        }
        spec.info = decreasing_closure(args.m, gens);
        spec.i_min_z = zs;
    } else {
        std::vector<std::uint64_t> zs;
        for (std::uint64_t v : args.info)
            zs.push_back(to_z(v));
        spec.info = InfoSet::from_z_labels(args.m, zs);
    }
    return spec;
}

json structure_json(const BlockStructure& s) {
    return json(s.sizes());
}

json info_json(const CodeSpec& spec) {
    json j{{"m", spec.m},
           {"n", spec.info.n()},
           {"k", spec.info.size()},
           {"info_z", spec.info.z_labels()},
           {"info_a", spec.info.members()}};
    if (spec.i_min_z) {
        j["i_min_z"] = *spec.i_min_z;
        std::vector<std::uint32_t> a;
        for (std::uint64_t z : *spec.i_min_z)
            a.push_back(z_to_a(z, spec.m));
        j["i_min_a"] = a;
    }
    return j;
}

BlockStructure baseline_structure(int m) {
    std::vector<int> sizes;
    if (m >= 2) {
        sizes.push_back(2);
        for (int i = 2; i < m; ++i)
            sizes.push_back(1);
    } else if (m == 1) {
        sizes.push_back(1);
    }
    return BlockStructure(sizes);
}

std::string bits_string(std::span<const std::uint8_t> bits) {
    std::string out(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            out[i] = '1';
    return out;
}

std::vector<double> read_llrs(std::istream& in, std::uint64_t expect) {
    std::vector<double> llr;
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw std::runtime_error("decode: bad LLR token '" + tok + "'");
        llr.push_back(v);
    }
    if (llr.size() != expect)
        throw std::runtime_error("decode: expected " + std::to_string(expect) + " LLR values, got " +
                                 std::to_string(llr.size()));
    return llr;
}

std::vector<AffineAutomorphism> cli_ensemble(const PolarCode& code, std::uint32_t t, const std::string& mode,
                                             std::uint64_t seed) {
    return build_ensemble(code, t, ensemble_mode_from_string(mode), seed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar-code automorphism toolkit"};
    app.require_subcommand(1);

    CodeArgs code_args;
    std::string matrix_file;
    std::uint32_t t = 1;
    std::string mode = "distinct_classes";
    std::vector<double> ebn0;
    std::uint64_t frames = 10000;
    std::uint64_t max_errors = 100;
    std::uint64_t seed = 1;
    std::uint64_t trials = 200;
    bool csv = false;
    std::string config_file;

    auto* construct = app.add_subcommand("construct", "resolve a code specification to its information set");
    add_code_options(construct, code_args);

    auto* autgroup = app.add_subcommand("autgroup", "complete affine automorphism group structure");
    add_code_options(autgroup, code_args);

    auto* invgroup = app.add_subcommand("invgroup", "complete SC-invariant affine automorphism group");
    add_code_options(invgroup, code_args);

    auto* check = app.add_subcommand("check", "decide SC-invariance of a matrix and cross-check with the oracle");
    add_code_options(check, code_args);
    check->add_option("--matrix-file", matrix_file, "matrix in the text format (optional shift line)")->required();
    check->add_option("--trials", trials, "Gaussian oracle trials");
    check->add_option("--seed", seed, "oracle seed");

    auto* count = app.add_subcommand("count-classes", "number of automorphism equivalence classes");
    add_code_options(count, code_args);

    auto* sample = app.add_subcommand("sample", "sample pairwise non-equivalent automorphisms");
    add_code_options(sample, code_args);
    sample->add_option("--t", t, "ensemble size")->required();
    sample->add_option("--seed", seed, "sampler seed");
    sample->add_option("--mode", mode, "distinct_classes | invariant_only | stage_permutations_off");

    auto* decode = app.add_subcommand("decode", "one-shot SC/AE decode of LLRs read from stdin");
    add_code_options(decode, code_args);
    decode->add_option("--t", t, "ensemble size (1 = plain SC)");
    decode->add_option("--mode", mode, "ensemble mode when --t > 1");
    decode->add_option("--seed", seed, "ensemble seed");

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo BLER estimation");
    add_code_options(simulate, code_args);
    simulate->add_option("--config", config_file, "simulation configuration JSON (overrides other flags)");
    simulate->add_option("--t", t, "ensemble size");
    simulate->add_option("--mode", mode, "ensemble mode");
    simulate->add_option("--ebn0", ebn0, "Eb/N0 grid in dB")->delimiter(',');
    simulate->add_option("--frames", frames, "max frames per SNR point");
    simulate->add_option("--max-errors", max_errors, "stop after this many block errors");
    simulate->add_option("--seed", seed, "master seed");
    simulate->add_flag("--csv", csv, "emit CSV instead of JSON");

    auto* oracle = app.add_subcommand("oracle", "randomized falsification of SC-invariance");
    add_code_options(oracle, code_args);
    oracle->add_option("--matrix-file", matrix_file, "matrix in the text format (optional shift line)")->required();
    oracle->add_option("--trials", trials, "Gaussian oracle trials");
    oracle->add_option("--seed", seed, "oracle seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (construct->parsed()) {
            CodeSpec spec = resolve_code(code_args);
            PolarCode code(spec.info);  // validates the decreasing property
            json j = info_json(spec);
            j["schema"] = kSchema;
            j["command"] = "construct";
            j["decreasing"] = code.verified_decreasing();
            std::cout << j.dump(2) << '\n';
        } else if (autgroup->parsed()) {
            CodeSpec spec = resolve_code(code_args);
            const BlockStructure aut = automorphism_group(spec.info);
            json j{{"schema", kSchema}, {"command", "autgroup"}, {"m", spec.m},
                   {"k", spec.info.size()}, {"structure", structure_json(aut)},
                   {"order", blta_order(aut).to_string()}};
            std::cout << j.dump(2) << '\n';
        } else if (invgroup->parsed()) {
            CodeSpec spec = resolve_code(code_args);
            const EquivClassSummary summary = count_classes(spec.info);
            json j{{"schema", kSchema}, {"command", "invgroup"}, {"m", spec.m},
                   {"k", spec.info.size()}, {"structure", structure_json(summary.inv_structure)},
                   {"order", blta_order(summary.inv_structure).to_string()},
                   {"classes", summary.class_count.to_string()}};
            if (spec.m >= 2)
                j["baseline_2_1_order"] = blta_order(baseline_structure(spec.m)).to_string();
            std::cout << j.dump(2) << '\n';
        } else if (check->parsed() || oracle->parsed()) {
            CodeSpec spec = resolve_code(code_args);
            const AffineMap map = parse_affine_file(matrix_file);
            OracleConfig cfg;
            cfg.gaussian_trials = static_cast<int>(trials);
            std::mt19937_64 rng(seed);
            const OracleResult res = commute_oracle(map.matrix, map.shift, spec.info, cfg, rng);
            json j{{"schema", kSchema},
                   {"command", check->parsed() ? "check" : "oracle"},
                   {"m", spec.m},
                   {"oracle", res.commutes ? "commutes" : "counterexample"},
                   {"probes", res.probes},
                   {"skipped", res.skipped}};
            if (res.counterexample)
                j["probe_counterexample"] = *res.counterexample;
            if (check->parsed()) {
                const BlockStructure s = block_structure(map.matrix);
                j["structure"] = structure_json(s);
                j["dec_aut"] = dec_aut(s, spec.info).value;
            }
            std::cout << j.dump(2) << '\n';
        } else if (count->parsed()) {
            CodeSpec spec = resolve_code(code_args);
            const EquivClassSummary summary = count_classes(spec.info);
            json j{{"schema", kSchema},
                   {"command", "count-classes"},
                   {"m", spec.m},
                   {"aut_structure", structure_json(summary.aut_structure)},
                   {"inv_structure", structure_json(summary.inv_structure)},
                   {"classes_factored", summary.class_count.to_string()}};
            if (auto exact = summary.class_count.exact())
                j["classes"] = *exact;
            else
                j["classes"] = summary.class_count.decimal();
            if (spec.m >= 2) {
                const FactoredCount base = class_count_for(summary.aut_structure, baseline_structure(spec.m));
                if (auto exact = base.exact())
                    j["baseline_2_1"] = *exact;
                else
                    j["baseline_2_1"] = base.decimal();
            }
            std::cout << j.dump(2) << '\n';
        } else if (sample->parsed()) {
            CodeSpec spec = resolve_code(code_args);
            PolarCode code(spec.info);
            const auto ensemble = cli_ensemble(code, t, mode, seed);
            json maps = json::array();
            for (const AffineAutomorphism& aut : ensemble) {
                json entry;
                json rows = json::array();
                for (int r = 0; r < aut.map.dim(); ++r) {
                    std::string row(static_cast<std::size_t>(aut.map.dim()), '0');
                    for (int c = 0; c < aut.map.dim(); ++c)
                        if (aut.map.matrix.get(r, c))
                            row[static_cast<std::size_t>(c)] = '1';
                    rows.push_back(row);
                }
                entry["matrix"] = rows;
                std::string shift(static_cast<std::size_t>(aut.map.dim()), '0');
                for (int c = 0; c < aut.map.dim(); ++c)
                    if ((aut.map.shift >> c) & 1u)
                        shift[static_cast<std::size_t>(c)] = '1';
                entry["shift"] = shift;
                entry["perm"] = aut.perm.table();
                maps.push_back(std::move(entry));
            }
            json j{{"schema", kSchema},
                   {"command", "sample"},
                   {"m", spec.m},
                   {"t", t},
                   {"mode", mode},
                   {"maps", maps}};
            std::cout << j.dump(2) << '\n';
        } else if (decode->parsed()) {
            CodeSpec spec = resolve_code(code_args);
            PolarCode code(spec.info);
            const auto llr = read_llrs(std::cin, code.n());
            json j{{"schema", kSchema}, {"command", "decode"}, {"m", spec.m}, {"t", t}};
            std::vector<std::uint8_t> codeword;
            if (t == 1) {
                ScDecoder decoder(code);
                DecodeResult res = decoder.decode(llr);
                codeword = res.codeword;
                j["message"] = bits_string(res.message);
            } else {
                const auto ensemble = cli_ensemble(code, t, mode, seed);
                codeword = ae_decode(code, ensemble, llr);
            }
            j["codeword"] = bits_string(codeword);
            std::cout << j.dump(2) << '\n';
        } else if (simulate->parsed()) {
            SimConfig cfg;
            if (!config_file.empty()) {
                cfg = load_sim_config(config_file);
            } else {
                CodeSpec spec = resolve_code(code_args);
                cfg.code = PolarCode(spec.info);
                cfg.t = t;
                cfg.mode = ensemble_mode_from_string(mode);
                cfg.ebn0_db = ebn0;
                cfg.max_frames = frames;
                cfg.max_errors = max_errors;
                cfg.seed = seed;
            }
            const SimReport report = run_bler(cfg);
            std::cout << (csv ? report_to_csv(report) : report_to_json(report) + "\n");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
