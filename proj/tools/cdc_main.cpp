// Command-line front end: construct designs, verify them, derive duals,
// assemble distributed-computing schemes, run the shuffle simulation, and
// sweep whole families into a comparison table.
//
// Exit codes: 0 success, 2 verification failure (including a search that
// finds nothing), 3 shuffle protocol violation, 4 bad usage or parameters.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cdc/design.hpp"
#include "cdc/io.hpp"
#include "cdc/metrics.hpp"
#include "cdc/scheme.hpp"
#include "cdc/shuffle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitProtocol = 3;
constexpr int kExitUsage = 4;

struct GenOptions {
    std::string family;
    long long p = 0;       // prime order for pg / tgdd
    long long n = 0;       // point count for sts / complete
    int k = 3;             // exponent for sqs
    long long block_size = 0;
    int t = 2;
    long long lambda = 1;
    long long budget = 2'000'000;
    std::string out;
};

struct VerifyOptions {
    std::string in;
    int t = 0;             // 0 = take from file metadata
    long long lambda = 0;  // 0 = take from file metadata
};

struct DualOptions {
    std::string in;
    std::string out;
};

struct SchemeOptions {
    int theorem = 0;
    std::string design_path;
    std::string out;
};

struct SimulateOptions {
    std::string scheme_path;
    unsigned bits = 64;
    std::uint64_t seed = 1;
    std::string mode = "concrete";
    std::string sender = "smallest";
    std::string out_transcript;
    std::string out_report;
};

struct SweepOptions {
    std::string family = "both";
    std::vector<long long> primes = {2, 3, 5, 7};
    std::string out;
};

cdc::BlockDesign generate(const GenOptions& opt) {
    if (opt.family == "pg") {
        if (opt.p < 2) throw std::invalid_argument("pg requires --p >= 2");
        return cdc::projective_plane_sbibd(opt.p);
    }
    if (opt.family == "tgdd") {
        if (opt.p < 2) throw std::invalid_argument("tgdd requires --p >= 2");
        return cdc::transversal_gdd(opt.p);
    }
    if (opt.family == "sts") {
        if (opt.n <= 0) throw std::invalid_argument("sts requires --n");
        return cdc::steiner_triple_bose(opt.n);
    }
    if (opt.family == "sqs") return cdc::boolean_sqs(opt.k);
    if (opt.family == "complete") {
        if (opt.n <= 0 || opt.block_size <= 0) {
            throw std::invalid_argument("complete requires --n and --block-size");
        }
        return cdc::complete_design(opt.n, opt.block_size, opt.t);
    }
    if (opt.family == "search") {
        if (opt.n <= 0 || opt.block_size <= 0) {
            throw std::invalid_argument("search requires --n and --block-size");
        }
        cdc::SearchResult res = cdc::brute_force_design_search(opt.t, opt.n, opt.block_size,
                                                               opt.lambda, opt.budget);
        if (res.status == cdc::SearchStatus::Found) return *res.design;
        std::ostringstream msg;
        msg << "no design found ("
            << (res.status == cdc::SearchStatus::BudgetExhausted ? "budget exhausted"
                                                                 : "search space exhausted")
            << " after " << res.nodes_visited << " nodes)";
        throw cdc::VerificationFailure(msg.str());
    }
    throw std::invalid_argument("unknown family: " + opt.family);
}

int run_gen(const GenOptions& opt, bool as_json) {
    cdc::BlockDesign d = generate(opt);
    if (!opt.out.empty()) cdc::save_design(d, opt.out);
    if (as_json) {
        cdc::Json j;
        j["family"] = d.family;
        j["points"] = d.point_count();
        j["blocks"] = d.block_count();
        j["t"] = d.strength;
        j["lambda"] = d.index;
        if (!opt.out.empty()) j["written"] = opt.out;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "generated " << d.family << ": " << d.point_count() << " points, "
                  << d.block_count() << " blocks";
        if (!opt.out.empty()) std::cout << " -> " << opt.out;
        std::cout << '\n';
    }
    return kExitOk;
}

int run_verify(const VerifyOptions& opt, bool as_json) {
    cdc::BlockDesign d = cdc::load_design(opt.in);
    int t = opt.t > 0 ? opt.t : d.strength;
    long long lambda = opt.lambda > 0 ? opt.lambda : d.index;
    if (t <= 0 || lambda <= 0) {
        throw std::invalid_argument("file carries no t/lambda metadata; pass --t and --lambda");
    }
    cdc::VerificationReport rep = d.groups.has_value() ? cdc::verify_gdd(d, t, lambda)
                                                       : cdc::verify_t_design(d, t, lambda);
    if (as_json) {
        std::cout << cdc::verification_report_to_json(rep).dump(2) << '\n';
    } else if (rep.passed) {
        std::cout << "ok: " << d.block_count() << " blocks, degree " << rep.counted_degree
                  << '\n';
    }
    if (!rep.passed) {
        std::cerr << "verification failed: " << rep.violation << '\n';
        return kExitVerification;
    }
    return kExitOk;
}

int run_dual(const DualOptions& opt, bool as_json) {
    cdc::BlockDesign d = cdc::load_design(opt.in);
    cdc::BlockDesign dual = cdc::dualize(d);
    cdc::save_design(dual, opt.out);
    if (as_json) {
        cdc::Json j;
        j["family"] = dual.family;
        j["points"] = dual.point_count();
        j["blocks"] = dual.block_count();
        j["written"] = opt.out;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "dual: " << dual.point_count() << " points, " << dual.block_count()
                  << " blocks -> " << opt.out << '\n';
    }
    return kExitOk;
}

int run_scheme(const SchemeOptions& opt, bool as_json) {
    cdc::BlockDesign d = cdc::load_design(opt.design_path);
    int t = d.strength;
    long long lambda = d.index;
    if (t <= 0 || lambda <= 0) {
        throw std::invalid_argument("design file carries no t/lambda metadata");
    }
    cdc::CdcScheme s = [&] {
        switch (opt.theorem) {
            case 1: return cdc::scheme_from_t_design(d, t, lambda);
            case 2: return cdc::scheme_from_gdd(d, t, lambda);
            case 3: return cdc::scheme_from_t_design_unequal(d, t, lambda);
            default: throw std::invalid_argument("--theorem must be 1, 2 or 3");
        }
    }();
    cdc::save_scheme(s, opt.out);
    if (as_json) {
        cdc::Json j;
        j["kind"] = cdc::to_string(s.kind);
        j["K"] = s.params.workers;
        j["r"] = s.params.map_replication;
        j["s"] = s.params.reduce_replication;
        j["N"] = s.params.files;
        j["Q"] = s.params.functions;
        j["M"] = s.params.files_per_worker;
        j["written"] = opt.out;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "scheme " << cdc::to_string(s.kind) << ": K=" << s.params.workers
                  << " r=" << s.params.map_replication << " s=" << s.params.reduce_replication
                  << " N=" << s.params.files << " Q=" << s.params.functions
                  << " M=" << s.params.files_per_worker << " -> " << opt.out << '\n';
    }
    return kExitOk;
}

int run_simulate(const SimulateOptions& opt, bool as_json) {
    cdc::CdcScheme s = cdc::load_scheme(opt.scheme_path);
    cdc::SimulationConfig cfg;
    cfg.seed = opt.seed;
    cfg.bits_per_iv = opt.bits;
    if (opt.mode == "concrete") {
        cfg.concrete = true;
    } else if (opt.mode == "symbolic") {
        cfg.concrete = false;
    } else {
        throw std::invalid_argument("--mode must be concrete or symbolic");
    }
    if (opt.sender == "smallest") {
        cfg.sender.rule = cdc::SenderPolicy::Rule::Smallest;
    } else if (opt.sender == "random") {
        cfg.sender.rule = cdc::SenderPolicy::Rule::SeededRandom;
        cfg.sender.seed = opt.seed;
    } else {
        throw std::invalid_argument("--sender must be smallest or random");
    }

    cdc::SimulationResult res = cdc::simulate_end_to_end(s, cfg);
    cdc::LoadReport load = cdc::make_load_report(s, res.transcript);
    if (!opt.out_transcript.empty()) cdc::save_transcript(res.transcript, opt.out_transcript);
    cdc::Json j = cdc::simulation_report_to_json(res.report, load);
    if (!opt.out_report.empty()) {
        cdc::write_text_file(j.dump(2) + "\n", opt.out_report);
    }
    if (as_json) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << (res.report.passed ? "pass" : "FAIL") << ": " << res.report.signal_count
                  << " signals, " << res.report.total_bits << " bits shuffled, load "
                  << cdc::to_fraction_string(load.measured_load) << " (predicted "
                  << cdc::to_fraction_string(load.predicted_load) << "), gain "
                  << cdc::to_fraction_string(load.measured_gain) << " (max " << load.max_gain
                  << ")\n";
    }
    return kExitOk;
}

int run_sweep(const SweepOptions& opt, bool as_json) {
    bool pg = opt.family == "pg" || opt.family == "both";
    bool gdd = opt.family == "tgdd" || opt.family == "both";
    if (!pg && !gdd) throw std::invalid_argument("--family must be pg, tgdd or both");
    cdc::ComparisonReport rep = cdc::compare_report(opt.primes, pg, gdd);
    std::string csv = cdc::comparison_csv(rep);
    if (!opt.out.empty()) cdc::write_text_file(csv, opt.out);
    if (as_json) {
        std::cout << cdc::comparison_report_to_json(rep).dump(2) << '\n';
    } else if (opt.out.empty()) {
        std::cout << csv;
    } else {
        std::cout << rep.rows.size() << " rows -> " << opt.out << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Design-based coded distributed computing toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON on stdout");

    GenOptions gen;
    VerifyOptions verify;
    DualOptions dual;
    SchemeOptions scheme;
    SimulateOptions sim;
    SweepOptions sweep;

    CLI::App* design_cmd = app.add_subcommand("design", "construct and inspect block designs");
    design_cmd->require_subcommand(1);

    CLI::App* gen_cmd = design_cmd->add_subcommand("gen", "generate a design from a family");
    gen_cmd->add_option("--family", gen.family,
                        "pg | tgdd | sts | sqs | complete | search")->required();
    gen_cmd->add_option("--p", gen.p, "prime order (pg, tgdd)");
    gen_cmd->add_option("--n,--points", gen.n, "points (sts, complete, search)");
    gen_cmd->add_option("--k", gen.k, "exponent for sqs (points = 2^k)");
    gen_cmd->add_option("--block-size", gen.block_size, "block size (complete, search)");
    gen_cmd->add_option("--t", gen.t, "strength (complete, search)");
    gen_cmd->add_option("--lambda", gen.lambda, "index (search)");
    gen_cmd->add_option("--budget", gen.budget, "search node budget");
    gen_cmd->add_option("--out", gen.out, "write the design as JSON");

    CLI::App* verify_cmd = design_cmd->add_subcommand("verify", "check a design file");
    verify_cmd->add_option("--in", verify.in, "design JSON file")->required();
    verify_cmd->add_option("--t", verify.t, "strength override");
    verify_cmd->add_option("--lambda", verify.lambda, "index override");

    CLI::App* dual_cmd = design_cmd->add_subcommand("dual", "derive the dual design");
    dual_cmd->add_option("--in", dual.in, "design JSON file")->required();
    dual_cmd->add_option("--out", dual.out, "output path")->required();

    CLI::App* scheme_cmd = app.add_subcommand("scheme", "build a computing scheme");
    scheme_cmd->require_subcommand(1);
    CLI::App* build_cmd = scheme_cmd->add_subcommand("build", "scheme from a design file");
    build_cmd->add_option("--theorem", scheme.theorem,
                          "1 = pair exchange, 2 = grouped, 3 = unequal replication")
        ->required();
    build_cmd->add_option("--design", scheme.design_path, "design JSON file")->required();
    build_cmd->add_option("--out", scheme.out, "output path")->required();

    CLI::App* sim_cmd = app.add_subcommand("simulate", "run map, shuffle and reduce");
    sim_cmd->add_option("--scheme", sim.scheme_path, "scheme JSON file")->required();
    sim_cmd->add_option("--T", sim.bits, "bits per intermediate value (multiple of 8)");
    sim_cmd->add_option("--seed", sim.seed, "payload seed");
    sim_cmd->add_option("--mode", sim.mode, "concrete | symbolic");
    sim_cmd->add_option("--sender", sim.sender, "smallest | random");
    sim_cmd->add_option("--out-transcript", sim.out_transcript, "write the shuffle transcript");
    sim_cmd->add_option("--out-report", sim.out_report, "write the simulation report");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "compare families across prime orders");
    sweep_cmd->add_option("--family", sweep.family, "pg | tgdd | both");
    sweep_cmd->add_option("--p-list", sweep.primes, "prime orders")->delimiter(',');
    sweep_cmd->add_option("--out", sweep.out, "write CSV here");

    try {
        app.parse(argc, argv);
        if (gen_cmd->parsed()) return run_gen(gen, as_json);
        if (verify_cmd->parsed()) return run_verify(verify, as_json);
        if (dual_cmd->parsed()) return run_dual(dual, as_json);
        if (build_cmd->parsed()) return run_scheme(scheme, as_json);
        if (sim_cmd->parsed()) return run_simulate(sim, as_json);
        if (sweep_cmd->parsed()) return run_sweep(sweep, as_json);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const cdc::ProtocolViolation& e) {
        std::cerr << "protocol violation: " << e.what() << '\n';
        return kExitProtocol;
    } catch (const cdc::VerificationFailure& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return kExitVerification;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}
