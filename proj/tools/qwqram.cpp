// qwqram: run quantum-walk qRAM queries, dump traces, verify against the
// dense oracle and benchmark the pipeline.

#include <iostream>

#include <CLI11.hpp>

#include "qwqram/cli.hpp"

int main(int argc, char** argv) {
    using namespace qwqram::cli;

    CLI::App app{"Quantum-walk bucket-brigade qRAM simulator"};
    app.require_subcommand(1);

    RunConfig run;
    std::string format = "dump";
    bool no_normalize = false;
    std::string out_path;
    auto* run_cmd = app.add_subcommand("run", "Query a memory with an address superposition");
    run_cmd->add_option("--n", run.n, "Address width (tree depth)")->required();
    run_cmd->add_option("--m", run.m, "Data width")->required();
    run_cmd->add_option("--memory", run.memory_path, "Memory file (ADDRESS<TAB>DATA)")->required();
    run_cmd->add_option("--addresses", run.addresses_path, "Address file (ADDRESS<TAB>RE[<TAB>IM])")->required();
    run_cmd->add_flag("--trace", run.trace, "Emit every intermediate state");
    run_cmd->add_option("--out", out_path, "Output path (default stdout)");
    run_cmd->add_flag("--no-normalize", no_normalize, "Keep address amplitudes as given");
    run_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"dump", "json"}));
    run_cmd->add_option("--threads", run.threads, "Worker threads per operator application")
        ->check(CLI::Range(1u, 256u));

    VerifyConfig verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check sparse operators against the dense oracle");
    verify_cmd->add_option("--n", verify.n, "Address width")->capture_default_str();
    verify_cmd->add_option("--m", verify.m, "Data width")->capture_default_str();
    verify_cmd->add_option("--trials", verify.trials, "Random states per equivalence check")->capture_default_str();
    verify_cmd->add_option("--seed", verify.seed, "RNG seed")->capture_default_str();
    verify_cmd->add_option("--cap", verify.cap, "Dense dimension cap")->capture_default_str();

    BenchConfig bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time qRAM calls across tree depths");
    bench_cmd->add_option("--n", bench.ns, "Tree depths to sweep")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--m", bench.m, "Data width")->capture_default_str();
    bench_cmd->add_option("--count", bench.address_count, "Addresses in the superposition")->capture_default_str();
    bench_cmd->add_option("--reps", bench.repetitions, "Calls per timing batch")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    if (*run_cmd) {
        run.normalize = !no_normalize;
        run.format = format == "json" ? OutputFormat::Json : OutputFormat::Dump;
        if (!out_path.empty()) run.out_path = out_path;
        return cmd_run(run, std::cout, std::cerr);
    }
    if (*verify_cmd) return cmd_verify(verify, std::cout, std::cerr);
    return cmd_bench(bench, std::cout, std::cerr);
}
