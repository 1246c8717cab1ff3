#include "qwqram/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "qwqram/dense.hpp"
#include "qwqram/io.hpp"
#include "qwqram/pipeline.hpp"
#include "qwqram/sampling.hpp"

namespace qwqram::cli {

namespace {

volatile std::size_t bench_sink = 0;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string render_run(const RunConfig& config) {
    const TreeShape shape(config.n, config.m);
    const MemoryTable memory = parse_memory(read_file(config.memory_path), shape);
    const Normalization normalization = config.normalize ? Normalization::On : Normalization::Off;
    const AddressSuperposition addresses = parse_addresses(read_file(config.addresses_path), shape, normalization);
    const ExecOptions exec{std::max(1u, config.threads)};

    if (config.trace) {
        const TracedRun run = qram_traced(shape, addresses, memory, normalization, exec);
        return config.format == OutputFormat::Json ? trace_to_json(run.trace) : serialize_trace(run.trace);
    }
    const SparseState result = qram(shape, addresses, memory, normalization, exec);
    return config.format == OutputFormat::Json ? state_to_json(result) : serialize_state(result);
}

std::string format_deviation(double value) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(3) << value;
    return s.str();
}

} // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::string rendered;
    try {
        rendered = render_run(config);
    } catch (const ParseError& e) {
        err << "qwqram run: " << e.what() << "\n";
        return kExitParse;
    } catch (const DomainError& e) {
        err << "qwqram run: " << e.what() << "\n";
        return kExitShape;
    }
    if (config.out_path) {
        std::ofstream file(*config.out_path, std::ios::binary);
        if (!file || !(file << rendered)) {
            err << "qwqram run: cannot write '" << *config.out_path << "'\n";
            return kExitParse;
        }
    } else {
        out << rendered;
    }
    return kExitOk;
}

int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const TreeShape shape(config.n, config.m);
        const std::size_t dim = dense_dimension(shape, config.cap);
        Rng rng(config.seed);
        const MemoryTable memory = random_memory(shape, rng);

        bool all_ok = true;
        const auto report = [&](const std::string& check, double deviation) {
            const bool ok = deviation <= config.tolerance;
            all_ok = all_ok && ok;
            out << (ok ? "ok   " : "FAIL ") << check << " max_dev=" << format_deviation(deviation) << "\n";
        };
        const auto report_flag = [&](const std::string& check, bool ok) {
            all_ok = all_ok && ok;
            out << (ok ? "ok   " : "FAIL ") << check << "\n";
        };

        out << "verify n=" << config.n << " m=" << config.m << " dim=" << dim << " trials=" << config.trials
            << " seed=" << config.seed << "\n";
        for (const auto& spec : all_operator_specs(memory)) {
            const DenseMatrix mat = build_dense(spec, config.cap);
            report("unitary " + spec.name(), check_unitary(mat));
            report_flag("permutation " + spec.name(), is_permutation_matrix(mat));
            report("equivalence " + spec.name(),
                   check_equivalence(spec, config.trials, config.seed + 1, config.cap));
            if (spec.kind() == OperatorSpec::Kind::QRam) {
                const DenseMatrix squared = mat * mat;
                double worst = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    for (std::size_t j = 0; j < dim; ++j) {
                        worst = std::max(worst, std::abs(squared(i, j) - (i == j ? Amplitude{1.0} : Amplitude{})));
                    }
                }
                report("involution qram^2", worst);
            }
        }
        for (unsigned level = 0; level < config.n; ++level) {
            report("adjoint step(l=" + std::to_string(level) + ")", check_adjoint(shape, level, config.cap));
        }
        out << (all_ok ? "all checks passed" : "tolerance violated") << "\n";
        return all_ok ? kExitOk : kExitTolerance;
    } catch (const ResourceError& e) {
        err << "qwqram verify: " << e.what() << "\n";
        return kExitShape;
    } catch (const DomainError& e) {
        err << "qwqram verify: " << e.what() << "\n";
        return kExitShape;
    }
}

BenchPoint measure_qram(unsigned n, unsigned m, unsigned address_count, unsigned repetitions, std::uint64_t seed) {
    const TreeShape shape(n, m);
    Rng rng(seed);
    const AddressSuperposition addresses = random_addresses(shape, address_count, rng).canonical();
    MemoryTable memory(shape);
    std::uniform_int_distribution<std::uint64_t> word(0, shape.data_limit() - 1);
    for (const auto& term : addresses.terms()) memory.set(term.address, word(rng));

    BenchPoint point;
    point.n = n;
    const TracedRun traced = qram_traced(shape, addresses, memory);
    point.steps = traced.counts.total();
    point.min_support = std::numeric_limits<std::size_t>::max();
    for (const auto& step : traced.trace.steps) {
        point.max_support = std::max(point.max_support, step.state.size());
        point.min_support = std::min(point.min_support, step.state.size());
    }

    using Clock = std::chrono::steady_clock;
    double best = std::numeric_limits<double>::infinity();
    std::size_t sink = 0;
    for (int batch = 0; batch < 5; ++batch) {
        const auto start = Clock::now();
        for (unsigned r = 0; r < repetitions; ++r) sink += qram(shape, addresses, memory).size();
        const std::chrono::duration<double> elapsed = Clock::now() - start;
        best = std::min(best, elapsed.count() / std::max(1u, repetitions));
    }
    bench_sink = sink;
    point.seconds_per_call = best;
    return point;
}

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double count = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    LinearFit fit;
    const double denom = count * sxx - sx * sx;
    fit.slope = denom != 0.0 ? (count * sxy - sx * sy) / denom : 0.0;
    fit.intercept = (sy - fit.slope * sx) / count;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double predicted = fit.intercept + fit.slope * xs[i];
        if (predicted <= 0.0 || ys[i] <= 0.0) {
            fit.worst_ratio = std::numeric_limits<double>::infinity();
            break;
        }
        fit.worst_ratio = std::max({fit.worst_ratio, ys[i] / predicted, predicted / ys[i]});
    }
    return fit;
}

int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::vector<double> xs;
        std::vector<double> ys;
        out << "n\tsteps\tsupport\tus_per_call\n";
        for (const unsigned n : config.ns) {
            const BenchPoint p = measure_qram(n, config.m, config.address_count, config.repetitions, config.seed);
            out << p.n << "\t" << p.steps << "\t" << p.min_support << ".." << p.max_support << "\t" << std::fixed
                << std::setprecision(3) << p.seconds_per_call * 1e6 << std::defaultfloat << "\n";
            xs.push_back(n);
            ys.push_back(p.seconds_per_call);
        }
        if (xs.size() >= 2) {
            const LinearFit fit = fit_linear(xs, ys);
            out << "linear fit: " << fit.intercept * 1e6 << " + " << fit.slope * 1e6
                << " * n us, worst ratio to fit " << fit.worst_ratio << "\n";
        }
        return kExitOk;
    } catch (const DomainError& e) {
        err << "qwqram bench: " << e.what() << "\n";
        return kExitShape;
    }
}

} // namespace qwqram::cli
