#ifndef GBP_CLI_HPP
#define GBP_CLI_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gbp/approx.hpp"
#include "gbp/error.hpp"
#include "gbp/exact.hpp"
#include "gbp/io.hpp"
#include "gbp/kernel.hpp"
#include "gbp/model.hpp"
#include "gbp/reductions.hpp"

namespace gbp::cli {

/// Exit codes shared by every command.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitInputError = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(ErrorCode::kInvalidArgument, "cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw InputError(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
    }
}

inline Instance load_instance(const std::string& path, std::ostream& err) {
    std::vector<std::string> warnings;
    Instance inst = parse_instance(read_file(path), &warnings);
    for (const auto& w : warnings) {
        err << "warning: " << path << ": " << w << '\n';
    }
    return inst;
}

inline void emit(const ResultReport& report, bool json, std::ostream& out) {
    if (json) {
        out << report_json(report).dump(2) << '\n';
    } else {
        out << format_report(report);
    }
}

inline ResultReport base_report(const std::string& command, const Instance& inst) {
    ResultReport report;
    report.command = command;
    report.variant = inst.variant();
    report.k = inst.k();
    return report;
}

inline std::size_t thread_budget(std::size_t jobs) {
    std::size_t threads = std::max<unsigned>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GBP_THREADS")) {
        try {
            threads = std::max<std::size_t>(1, std::stoul(env));
        } catch (const std::exception&) {
            throw InputError(ErrorCode::kBadNumber, "GBP_THREADS must be a positive integer");
        }
    }
    return std::max<std::size_t>(1, std::min(threads, jobs));
}

struct Options {
    bool json = false;
    std::string instance;
    std::string solution;
    std::string method = "exact";
    bool no_kernel = false;
    std::string emit_path;
    std::string construction;
    std::string source;
    std::size_t d = 2;
    bool single_habitat = false;
    std::string out_path;
    std::uint64_t seed = 0;
    RandomParams random;
    std::string variant = "reach";
    std::string directory;
};

inline int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
    Instance inst = load_instance(opt.instance, err);
    Solution sol = parse_solution(read_file(opt.solution), inst);
    VerifyReport v = verify(inst, sol);
    ResultReport report = base_report("verify", inst);
    report.status = v.feasible ? "yes" : "no";
    report.extra.emplace_back("size", std::to_string(v.size));
    report.extra.emplace_back("budget_ok", v.budget_ok ? "true" : "false");
    for (std::size_t i = 0; i < v.habitats.size(); ++i) {
        const auto& h = v.habitats[i];
        std::string value = h.satisfied ? "ok" : "violated";
        if (h.violation) {
            value += " " + std::to_string(h.violation->first) + "," + std::to_string(h.violation->second);
        }
        report.extra.emplace_back("habitat_" + std::to_string(i), value);
    }
    emit(report, opt.json, out);
    return v.feasible ? kExitYes : kExitNo;
}

inline int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
    Instance inst = load_instance(opt.instance, err);
    SolveResult result;
    if (opt.method == "brute") {
        result = brute_force_oracle(inst);
    } else if (opt.method == "d1") {
        result = solve_d1(inst);
    } else {
        result = solve_exact(inst, ExactOptions{!opt.no_kernel});
    }
    ResultReport report = base_report("solve", inst);
    report.status = std::string(to_string(result.status));
    report.optimum = result.optimum;
    if (result.witness) {
        report.witness = result.witness->edges;
    }
    report.extra.emplace_back("method", opt.method);
    report.nodes = result.stats.nodes;
    report.seconds = result.stats.seconds;
    emit(report, opt.json, out);
    return result.status == Status::kYes ? kExitYes : kExitNo;
}

inline int cmd_approx(const Options& opt, std::ostream& out, std::ostream& err) {
    Instance inst = load_instance(opt.instance, err);
    gbp::detail::Stopwatch clock;
    auto result = approx_reach(inst);
    ResultReport report = base_report("approx", inst);
    report.seconds = clock.seconds();
    if (!result) {
        report.status = "no";
        emit(report, opt.json, out);
        return kExitNo;
    }
    report.status = "yes";
    report.witness = result->edges;
    report.extra.emplace_back("size", std::to_string(result->edges.size()));
    report.extra.emplace_back("within_budget", result->edges.size() <= inst.k() ? "true" : "false");
    emit(report, opt.json, out);
    return kExitYes;
}

inline int cmd_kernelize(const Options& opt, std::ostream& out, std::ostream& err) {
    Instance inst = load_instance(opt.instance, err);
    gbp::detail::Stopwatch clock;
    KernelResult kernel = kernelize(inst);
    ResultReport report = base_report("kernelize", inst);
    report.seconds = clock.seconds();
    report.status = kernel.verdict == Verdict::kTrivialNo ? "no" : "yes";
    report.trace = summarize_trace(kernel.trace);
    report.extra.emplace_back("verdict", std::string(to_string(kernel.verdict)));
    report.extra.emplace_back("forced_edges", std::to_string(kernel.forced_edges.size()));
    if (kernel.instance) {
        report.extra.emplace_back("kernel_n", std::to_string(kernel.instance->graph().n()));
        report.extra.emplace_back("kernel_m", std::to_string(kernel.instance->graph().m()));
        report.extra.emplace_back("kernel_r", std::to_string(kernel.instance->r()));
        report.extra.emplace_back("kernel_k", std::to_string(kernel.instance->k()));
        if (!opt.emit_path.empty()) {
            write_file(opt.emit_path, serialize_instance(*kernel.instance));
        }
    }
    emit(report, opt.json, out);
    return kernel.verdict == Verdict::kTrivialNo ? kExitNo : kExitYes;
}

inline GeneratedInstance generate(const Options& opt, const SourceInstance& src) {
    const auto* vc = std::get_if<VertexCoverSource>(&src);
    const auto* sc = std::get_if<SetCoverSource>(&src);
    const auto* mcc = std::get_if<MulticoloredCliqueSource>(&src);
    auto need = [&](const void* p, const char* kind) {
        if (p == nullptr) {
            throw InputError(ErrorCode::kInvalidSource,
                             "construction '" + opt.construction + "' needs a " + kind + " source");
        }
    };
    const std::string& c = opt.construction;
    if (c == "1reach-vc") {
        need(vc, "vc");
        return gen_1reach_vc(*vc);
    }
    if (c == "1reach-planar-vc") {
        need(vc, "vc");
        return gen_1reach_planar_vc(*vc);
    }
    if (c == "reach-vc") {
        need(vc, "vc");
        return gen_reach_vc(*vc, opt.d, opt.single_habitat);
    }
    if (c == "reach-setcover") {
        need(sc, "sc");
        return gen_reach_setcover(*sc);
    }
    if (c == "reach-mcc") {
        need(mcc, "mcc");
        return gen_reach_mcc(*mcc, opt.d);
    }
    if (c == "closed-mcc") {
        need(mcc, "mcc");
        return gen_closed_mcc(*mcc, opt.d);
    }
    if (c == "closed-vc") {
        need(vc, "vc");
        return gen_closed_vc(*vc);
    }
    if (c == "diam2-vc") {
        need(vc, "vc");
        return gen_diam2_vc(*vc);
    }
    if (c == "diam3-vc") {
        need(vc, "vc");
        return gen_diam3_vc(*vc);
    }
    throw InputError(ErrorCode::kInvalidArgument, "unknown construction '" + c + "'");
}

inline int cmd_gen(const Options& opt, std::ostream& out, std::ostream& /*err*/) {
    std::string text;
    if (opt.construction == "random") {
        RandomParams params = opt.random;
        params.variant = Variant::of(parse_variant_kind(opt.variant), opt.d);
        text = serialize_instance(gen_random_instance(params, opt.seed));
    } else {
        if (opt.source.empty()) {
            throw InputError(ErrorCode::kMissingField, "--source is required for construction '" +
                                                           opt.construction + "'");
        }
        GeneratedInstance gen = generate(opt, parse_source(read_file(opt.source)));
        std::ostringstream doc;
        doc << "# construction " << opt.construction << "\n# k_prime " << gen.expected_k_prime << '\n';
        std::vector<std::pair<Vertex, std::string>> names;
        for (const auto& [name, id] : gen.legend) {
            names.emplace_back(id, name);
        }
        std::sort(names.begin(), names.end());
        for (const auto& [id, name] : names) {
            doc << "# legend " << name << ' ' << id << '\n';
        }
        doc << serialize_instance(gen.instance);
        text = doc.str();
    }
    if (opt.out_path.empty()) {
        out << text;
    } else {
        write_file(opt.out_path, text);
    }
    return kExitYes;
}

inline int cmd_bench(const Options& opt, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(opt.directory)) {
        throw InputError(ErrorCode::kInvalidArgument, "'" + opt.directory + "' is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opt.directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".gbp") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<std::string> lines(files.size());
    std::vector<char> failed(files.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            std::ostringstream line;
            line << "file=" << files[i].filename().string();
            try {
                Instance inst = parse_instance(read_file(files[i].string()));
                SolveResult result = solve_exact(inst);
                line << " status=" << to_string(result.status);
                if (result.optimum) {
                    line << " optimum=" << *result.optimum;
                }
                line << " nodes=" << result.stats.nodes << " seconds=" << result.stats.seconds;
            } catch (const InputError& e) {
                line << " status=infeasible-input error=\"" << e.what() << '"';
                failed[i] = 1;
            }
            lines[i] = line.str();
        }
    };
    std::vector<std::thread> pool;
    const std::size_t threads = thread_budget(files.size());
    for (std::size_t t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& line : lines) {
        out << line << '\n';
    }
    out << "instances=" << files.size() << " threads=" << threads << '\n';
    bool any_failed = std::any_of(failed.begin(), failed.end(), [](char c) { return c != 0; });
    if (any_failed) {
        err << "some instances could not be read\n";
    }
    return any_failed ? kExitInputError : kExitYes;
}

}  // namespace detail

/// Runs the command line `args` (without the program name). Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    detail::Options opt;
    CLI::App app{"Green bridges placement toolkit", "gbp"};
    app.require_subcommand(1);
    app.add_flag("--json", opt.json, "Emit reports as JSON");

    auto* verify_cmd = app.add_subcommand("verify", "Check a solution against an instance");
    verify_cmd->add_option("instance", opt.instance)->required();
    verify_cmd->add_option("solution", opt.solution)->required();

    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance exactly");
    solve_cmd->add_option("instance", opt.instance)->required();
    solve_cmd->add_option("--method", opt.method)->check(CLI::IsMember({"exact", "brute", "d1"}));
    solve_cmd->add_flag("--no-kernel", opt.no_kernel, "Skip kernelization");

    auto* approx_cmd = app.add_subcommand("approx", "Tree-based approximation for reach instances");
    approx_cmd->add_option("instance", opt.instance)->required();

    auto* kernel_cmd = app.add_subcommand("kernelize", "Apply the reduction rules");
    kernel_cmd->add_option("instance", opt.instance)->required();
    kernel_cmd->add_option("--emit", opt.emit_path, "Write the reduced instance here");

    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
    gen_cmd->add_option("construction", opt.construction)
        ->required()
        ->check(CLI::IsMember({"1reach-vc", "1reach-planar-vc", "reach-vc", "reach-setcover", "reach-mcc",
                               "closed-mcc", "closed-vc", "diam2-vc", "diam3-vc", "random"}));
    gen_cmd->add_option("--source", opt.source, "Source instance file");
    gen_cmd->add_option("--d", opt.d, "Distance bound")->check(CLI::PositiveNumber);
    gen_cmd->add_flag("--single-habitat", opt.single_habitat);
    gen_cmd->add_option("--out", opt.out_path, "Write to a file instead of stdout");
    gen_cmd->add_option("--seed", opt.seed);
    gen_cmd->add_option("--n", opt.random.n);
    gen_cmd->add_option("--p", opt.random.edge_probability)->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--edges", opt.random.edge_count);
    gen_cmd->add_option("--r", opt.random.r);
    gen_cmd->add_option("--min-habitat", opt.random.min_habitat);
    gen_cmd->add_option("--max-habitat", opt.random.max_habitat);
    gen_cmd->add_option("--variant", opt.variant)->check(CLI::IsMember({"reach", "closed", "diam", "connect"}));
    gen_cmd->add_option("--k", opt.random.k);

    auto* bench_cmd = app.add_subcommand("bench", "Solve every .gbp file in a directory");
    bench_cmd->add_option("directory", opt.directory)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitYes;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    const std::map<CLI::App*, std::function<int(const detail::Options&, std::ostream&, std::ostream&)>> commands{
        {verify_cmd, detail::cmd_verify}, {solve_cmd, detail::cmd_solve},   {approx_cmd, detail::cmd_approx},
        {kernel_cmd, detail::cmd_kernelize}, {gen_cmd, detail::cmd_gen}, {bench_cmd, detail::cmd_bench},
    };
    try {
        for (const auto& [sub, handler] : commands) {
            if (sub->parsed()) {
                return handler(opt, out, err);
            }
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace gbp::cli

#endif  // GBP_CLI_HPP
