// chromaflux command-line tool.
//
// Subcommands: assign, migrate, bounds, verify, oracle, bench.
// Exit codes: 0 success, 2 invalid input (parse/validation), 3 violated
// internal contract. Every solver output is re-verified by the library
// validators before it is written; a failed re-verification is a bug and
// exits 3.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chromaflux/chromaflux.hpp"

namespace cf = chromaflux;

namespace {

struct LoadedInstance {
    cf::Instance inst;
    std::string name;
};

std::string read_stream(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

LoadedInstance load_from(const std::string& path) {
    if (path.empty() || path == "-")
        return {cf::parse_instance(read_stream(std::cin)), "stdin"};
    return {cf::load_instance(path), stem_of(path)};
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path);
    if (!out) throw cf::InputError("cannot open output file: " + path);
    out << payload;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_summary(const cf::RunReport& r, const std::string& command) {
    std::string lb = std::to_string(r.lower_bound.num);
    if (r.lower_bound.den != 1) lb += "/" + std::to_string(r.lower_bound.den);
    std::cerr << "summary command=" << command << " instance=" << r.instance << " digest="
              << r.digest << " algorithm=" << r.algorithm << " parameters=" << r.parameters
              << " objective=" << r.objective << " lower_bound=" << lb << " flips=" << r.flips
              << " rounds=" << r.rounds << " witnesses=" << r.witnesses << " fallbacks="
              << r.fallbacks << " elapsed_s=" << cf::detail::format_fixed(r.elapsed_seconds, 6)
              << "\n";
}

bool env_strict() {
    const char* v = std::getenv("CHROMAFLUX_STRICT");
    return v != nullptr && std::string(v) == "1";
}

// ---- assign --------------------------------------------------------------

struct AssignOptions {
    std::string algo;
    int k = 0;
    std::uint64_t seed = 0;
    bool check_balanced = false;
    std::string input;
    std::string output;
};

int run_assign(const AssignOptions& opt) {
    auto [inst, name] = load_from(opt.input);
    if (!inst.is_channel()) throw cf::InputError("assign requires a channel instance");

    cf::RunReport rep;
    rep.instance = name;
    rep.digest = cf::instance_digest(inst);
    rep.algorithm = opt.algo;
    rep.parameters = "k=" + std::to_string(opt.k) + ";seed=" + std::to_string(opt.seed);

    auto t0 = std::chrono::steady_clock::now();
    std::vector<int> colors;
    long long rounds = 0;
    if (opt.algo == "greedy") {
        colors = cf::greedy_assign(inst, opt.k);
    } else if (opt.algo == "greedy-derand") {
        colors = cf::derandomized_assign(inst, opt.k);
    } else if (opt.algo == "balanced") {
        colors = cf::balanced_assign(inst, opt.k, &rounds);
    } else if (opt.algo == "clustered") {
        colors = cf::extended_greedy(inst, opt.k);
    } else {
        throw cf::InputError("unknown assignment algorithm: " + opt.algo);
    }
    rep.elapsed_seconds = seconds_since(t0);
    rep.rounds = rounds;

    auto violations = cf::validate_assignment(inst, colors);
    cf::internal_check(violations.empty(), "solver emitted an invalid assignment");
    rep.objective = cf::conflict_report(inst, colors).total;
    cf::set_lower_bound(rep, cf::conflict_lower_bound(inst));

    if (opt.check_balanced) {
        auto audit = cf::balance_audit(inst, opt.k, colors);
        for (int v = 0; v < inst.num_nodes(); ++v)
            std::cerr << "balance " << inst.node(v).id << " m=" << audit[v].m << " alpha="
                      << audit[v].alpha << " strong=" << audit[v].strong_classes << " max_class="
                      << audit[v].max_class << (audit[v].balanced ? " balanced" : " UNBALANCED")
                      << "\n";
    }

    write_output(opt.output, cf::serialize_assignment(inst, colors));
    print_summary(rep, "assign");
    return 0;
}

// ---- migrate ---------------------------------------------------------------

struct MigrateOptions {
    std::string algo;
    bool explain = false;
    bool strict = false;
    std::string trace_path;
    std::string input;
    std::string output;
    std::uint64_t seed = 0;
};

int run_migrate(const MigrateOptions& opt) {
    auto [inst, name] = load_from(opt.input);
    if (inst.is_channel()) throw cf::InputError("migrate requires a migration instance");

    cf::RunReport rep;
    rep.instance = name;
    rep.digest = cf::instance_digest(inst);
    rep.algorithm = opt.algo;
    rep.parameters = "seed=" + std::to_string(opt.seed) +
                     (opt.strict && opt.algo == "general" ? ";strict=1" : "");

    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<int>> rounds;
    cf::GeneralStats stats;
    cf::EvenTrace even_trace;
    if (opt.algo == "even") {
        rounds = cf::schedule_even(inst, opt.explain ? &even_trace : nullptr);
    } else if (opt.algo == "general") {
        rounds = cf::schedule_general(inst, opt.strict, &stats);
        rep.flips = stats.flips;
        rep.witnesses = stats.witnesses_delta + stats.witnesses_gamma;
        rep.fallbacks = stats.fallbacks;
    } else {
        throw cf::InputError("unknown migration algorithm: " + opt.algo);
    }
    rep.elapsed_seconds = seconds_since(t0);
    rep.rounds = static_cast<long long>(rounds.size());
    rep.objective = static_cast<long long>(rounds.size());

    auto violations = cf::validate_schedule(inst, rounds);
    cf::internal_check(violations.empty(), "solver emitted an invalid schedule");
    cf::BoundsReport b = cf::migration_lower_bounds(inst);
    cf::set_lower_bound(rep, cf::Rational(std::max(b.lb1, b.lb2), 1));

    if (opt.algo == "even" && opt.explain) {
        std::cerr << "explain delta'=" << even_trace.padded.delta_prime << " real_edges="
                  << even_trace.padded.real_edges << " dummies=" << even_trace.padded.dummies.size()
                  << "\n";
        for (const auto& [u, v] : even_trace.padded.dummies)
            std::cerr << "explain dummy " << inst.node(u).id << " " << inst.node(v).id << "\n";
        for (const auto& arc : even_trace.oriented.arcs) {
            std::cerr << "explain arc ";
            if (arc.edge < even_trace.padded.real_edges)
                std::cerr << inst.edge(arc.edge).id;
            else
                std::cerr << "dummy" << (arc.edge - even_trace.padded.real_edges + 1);
            std::cerr << " " << inst.node(arc.from).id << " -> " << inst.node(arc.to).id << "\n";
        }
        for (std::size_t r = 0; r < even_trace.matchings.size(); ++r) {
            std::cerr << "explain matching " << (r + 1) << " arcs";
            for (int i : even_trace.matchings[r]) std::cerr << " " << i;
            std::cerr << "\n";
        }
    }
    if (opt.algo == "general" && !opt.trace_path.empty()) {
        std::ofstream trace(opt.trace_path);
        if (!trace) throw cf::InputError("cannot open trace file: " + opt.trace_path);
        for (const auto& line : stats.log) trace << line << "\n";
        trace << "rounds=" << rounds.size() << " palette=" << stats.palette_final << "\n";
    }

    write_output(opt.output, cf::serialize_schedule(inst, rounds));
    print_summary(rep, "migrate");
    return 0;
}

// ---- bounds ----------------------------------------------------------------

int run_bounds(const std::string& input) {
    auto [inst, name] = load_from(input);
    std::ostringstream out;
    out << "instance " << name << " digest " << cf::instance_digest(inst) << "\n";
    if (inst.is_channel()) {
        out << "kind channel\n";
        if (auto k = inst.homogeneous_k()) {
            cf::BoundsReport b = cf::homogeneous_lower_bound(inst, *k);
            out << "homogeneous_lb " << b.homogeneous_lb.num;
            if (b.homogeneous_lb.den != 1) out << "/" << b.homogeneous_lb.den;
            out << "\n";
            out << "balanced_local_lb " << b.balanced_local_lb << "\n";
        } else {
            cf::Rational lb = cf::conflict_lower_bound(inst);
            out << "conflict_lb " << lb.num;
            if (lb.den != 1) out << "/" << lb.den;
            out << "\n";
        }
    } else {
        cf::BoundsReport b = cf::migration_lower_bounds(inst);
        out << "kind migration\n";
        out << "lb1 " << b.lb1 << "\n";
        out << "lb2 " << b.lb2 << (b.lb2_exact ? " exact" : " heuristic") << "\n";
    }
    std::cout << out.str();
    return 0;
}

// ---- verify ----------------------------------------------------------------

bool looks_like_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto toks = cf::detail::tokenize(line);
        if (toks.empty()) continue;
        return toks[0] == "problem";
    }
    return false;
}

int run_verify(const std::string& path_a, const std::string& path_b) {
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        if (!in) throw cf::InputError("cannot open file: " + p);
        return read_stream(in);
    };
    std::string text_a = slurp(path_a);
    std::string text_b = slurp(path_b);
    // Accept the two files in either order; the instance file is the one
    // opening with a 'problem' line.
    bool a_is_inst = looks_like_instance(text_a);
    bool b_is_inst = looks_like_instance(text_b);
    if (a_is_inst == b_is_inst)
        throw cf::InputError("verify needs exactly one instance file and one result file");
    const std::string& inst_text = a_is_inst ? text_a : text_b;
    const std::string& payload_text = a_is_inst ? text_b : text_a;
    cf::Instance inst = cf::parse_instance(inst_text);

    // Detect the payload kind from its first directive.
    std::string kind;
    {
        std::istringstream in(payload_text);
        std::string line;
        while (std::getline(in, line)) {
            auto toks = cf::detail::tokenize(line);
            if (toks.empty()) continue;
            kind = toks[0];
            break;
        }
    }

    std::vector<std::string> violations;
    if (kind == "color") {
        std::istringstream in(payload_text);
        auto by_id = cf::parse_assignment_file(in);
        std::vector<int> colors(inst.num_edges(), 0);
        std::vector<char> present(inst.num_edges(), 0);
        for (const auto& [id, c] : by_id) {
            auto e = inst.edge_index(id);
            if (!e) {
                violations.push_back("unknown edge id: " + id);
                continue;
            }
            colors[*e] = c;
            present[*e] = 1;
        }
        for (int e = 0; e < inst.num_edges(); ++e)
            if (!present[e]) violations.push_back("edge " + inst.edge(e).id + " has no color");
        if (violations.empty()) {
            auto more = cf::validate_assignment(inst, colors);
            violations.insert(violations.end(), more.begin(), more.end());
            if (violations.empty())
                std::cout << "ok CF_G=" << cf::conflict_report(inst, colors).total << "\n";
        }
    } else if (kind == "round") {
        std::istringstream in(payload_text);
        auto by_id = cf::parse_schedule_file(in);
        std::vector<std::vector<int>> rounds;
        for (const auto& round_ids : by_id) {
            rounds.emplace_back();
            for (const auto& id : round_ids) {
                auto e = inst.edge_index(id);
                if (!e)
                    violations.push_back("unknown edge id: " + id);
                else
                    rounds.back().push_back(*e);
            }
        }
        if (violations.empty()) {
            auto more = cf::validate_schedule(inst, rounds);
            violations.insert(violations.end(), more.begin(), more.end());
            if (violations.empty()) std::cout << "ok rounds=" << rounds.size() << "\n";
        }
    } else if (kind.empty()) {
        throw cf::InputError("result file is empty");
    } else {
        throw cf::InputError("unrecognized result directive: " + kind);
    }

    if (!violations.empty()) {
        for (const auto& v : violations) std::cout << "violation " << v << "\n";
        return 2;
    }
    return 0;
}

// ---- oracle ----------------------------------------------------------------

int run_oracle(const std::string& which, const std::string& input, int max_edges) {
    auto [inst, name] = load_from(input);
    cf::OracleLimits limits;
    limits.max_edges = max_edges;
    if (which == "conflicts") {
        if (!inst.is_channel()) throw cf::InputError("oracle conflicts requires a channel instance");
        auto res = cf::min_conflicts_exact(inst, inst.global_channels(), limits);
        if (res.status == cf::OracleStatus::TooLarge) {
            std::cout << "status too-large\n";
            return 2;
        }
        if (res.status == cf::OracleStatus::BudgetExceeded) {
            std::cout << "status budget-exceeded\n";
            return 2;
        }
        std::cout << "optimum " << res.value << "\n" << cf::serialize_assignment(inst, res.witness);
    } else if (which == "rounds") {
        if (inst.is_channel()) throw cf::InputError("oracle rounds requires a migration instance");
        auto res = cf::min_rounds_exact(inst, limits);
        if (res.status == cf::OracleStatus::TooLarge) {
            std::cout << "status too-large\n";
            return 2;
        }
        if (res.status == cf::OracleStatus::BudgetExceeded) {
            std::cout << "status budget-exceeded\n";
            return 2;
        }
        std::cout << "optimum " << res.value << "\n" << cf::serialize_schedule(inst, res.witness);
    } else {
        throw cf::InputError("oracle mode must be 'conflicts' or 'rounds'");
    }
    return 0;
}

// ---- bench -----------------------------------------------------------------

struct BenchOptions {
    std::string corpus_dir;
    std::string output;
    std::uint64_t seed = 0;
    bool with_oracle = false;
    int max_edges = 10;
};

cf::RunReport bench_channel_run(const cf::Instance& inst, const std::string& name,
                                const std::string& algo, int k, std::uint64_t seed) {
    cf::RunReport rep;
    rep.instance = name;
    rep.digest = cf::instance_digest(inst);
    rep.algorithm = algo;
    rep.parameters = "k=" + std::to_string(k) + ";seed=" + std::to_string(seed);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<int> colors;
    long long rounds = 0;
    if (algo == "greedy")
        colors = cf::greedy_assign(inst, k);
    else if (algo == "greedy-derand")
        colors = cf::derandomized_assign(inst, k);
    else if (algo == "balanced")
        colors = cf::balanced_assign(inst, k, &rounds);
    else
        colors = cf::extended_greedy(inst, k);
    rep.elapsed_seconds = seconds_since(t0);
    rep.rounds = rounds;
    cf::internal_check(cf::validate_assignment(inst, colors).empty(),
                       "bench solver emitted an invalid assignment");
    rep.objective = cf::conflict_report(inst, colors).total;
    cf::set_lower_bound(rep, cf::conflict_lower_bound(inst));
    return rep;
}

cf::RunReport bench_migration_run(const cf::Instance& inst, const std::string& name,
                                  const std::string& algo, std::uint64_t seed) {
    cf::RunReport rep;
    rep.instance = name;
    rep.digest = cf::instance_digest(inst);
    rep.algorithm = algo;
    rep.parameters = "seed=" + std::to_string(seed);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<int>> rounds;
    if (algo == "even") {
        rounds = cf::schedule_even(inst);
    } else {
        cf::GeneralStats stats;
        rounds = cf::schedule_general(inst, false, &stats);
        rep.flips = stats.flips;
        rep.witnesses = stats.witnesses_delta + stats.witnesses_gamma;
        rep.fallbacks = stats.fallbacks;
    }
    rep.elapsed_seconds = seconds_since(t0);
    rep.rounds = static_cast<long long>(rounds.size());
    rep.objective = static_cast<long long>(rounds.size());
    cf::internal_check(cf::validate_schedule(inst, rounds).empty(),
                       "bench solver emitted an invalid schedule");
    cf::BoundsReport b = cf::migration_lower_bounds(inst);
    cf::set_lower_bound(rep, cf::Rational(std::max(b.lb1, b.lb2), 1));
    return rep;
}

int run_bench(const BenchOptions& opt) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(opt.corpus_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    std::ostringstream csv;
    csv << cf::csv_header() << "\n";
    for (const auto& path : files) {
        cf::Instance inst = cf::load_instance(path);
        std::string name = stem_of(path);
        std::vector<cf::RunReport> rows;
        if (inst.is_channel()) {
            if (auto k = inst.homogeneous_k()) {
                for (const char* algo : {"greedy", "greedy-derand", "balanced"})
                    rows.push_back(bench_channel_run(inst, name, algo, *k, opt.seed));
            }
            bool two_level = true;
            try {
                cf::find_clusters(inst, inst.global_channels());
            } catch (const cf::InputError&) {
                two_level = false;
            }
            if (two_level && !inst.homogeneous_k())
                rows.push_back(
                    bench_channel_run(inst, name, "clustered", inst.global_channels(), opt.seed));
            if (opt.with_oracle && inst.num_edges() <= opt.max_edges) {
                cf::OracleLimits limits;
                limits.max_edges = opt.max_edges;
                auto res = cf::min_conflicts_exact(inst, inst.global_channels(), limits);
                if (res.status == cf::OracleStatus::Exact)
                    for (auto& r : rows) {
                        r.has_oracle = true;
                        r.oracle_value = res.value;
                    }
            }
        } else {
            bool even = true;
            for (int v = 0; v < inst.num_nodes(); ++v) even &= inst.capacity(v) % 2 == 0;
            if (even) rows.push_back(bench_migration_run(inst, name, "even", opt.seed));
            rows.push_back(bench_migration_run(inst, name, "general", opt.seed));
            if (opt.with_oracle && inst.num_edges() <= opt.max_edges) {
                cf::OracleLimits limits;
                limits.max_edges = opt.max_edges;
                auto res = cf::min_rounds_exact(inst, limits);
                if (res.status == cf::OracleStatus::Exact)
                    for (auto& r : rows) {
                        r.has_oracle = true;
                        r.oracle_value = res.value;
                    }
            }
        }
        for (const auto& r : rows) csv << cf::csv_row(r) << "\n";
    }
    write_output(opt.output, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conflict-aware channel assignment and data-migration scheduling"};
    app.require_subcommand(1);

    AssignOptions assign_opt;
    auto* assign = app.add_subcommand("assign", "color a channel instance");
    assign->add_option("--algo", assign_opt.algo, "greedy|greedy-derand|balanced|clustered")
        ->required();
    assign->add_option("-k,--channels", assign_opt.k, "palette size")->required();
    assign->add_option("--seed", assign_opt.seed, "RNG seed (default 0)");
    assign->add_flag("--check-balanced", assign_opt.check_balanced,
                     "dump the per-vertex balancedness audit to stderr");
    assign->add_option("-o,--out", assign_opt.output, "output file (default stdout)");
    assign->add_option("input", assign_opt.input, "instance file ('-' or absent reads stdin)");

    MigrateOptions migrate_opt;
    auto* migrate = app.add_subcommand("migrate", "schedule a migration instance");
    migrate->add_option("--algo", migrate_opt.algo, "even|general")->required();
    migrate->add_flag("--explain", migrate_opt.explain,
                      "dump padding, Euler orientation, and matchings to stderr (even only)");
    migrate->add_flag("--strict", migrate_opt.strict, "treat fallbacks as fatal (general only)");
    migrate->add_option("--trace", migrate_opt.trace_path, "write the lemma/event trace to a file");
    migrate->add_option("--seed", migrate_opt.seed, "RNG seed (default 0)");
    migrate->add_option("-o,--out", migrate_opt.output, "output file (default stdout)");
    migrate->add_option("input", migrate_opt.input, "instance file ('-' or absent reads stdin)");

    std::string bounds_input;
    auto* bounds = app.add_subcommand("bounds", "print lower bounds for an instance");
    bounds->add_option("input", bounds_input, "instance file ('-' or absent reads stdin)");

    std::string verify_a, verify_b;
    auto* verify = app.add_subcommand("verify", "check a result file against an instance");
    verify->add_option("file-a", verify_a, "instance or result file")->required();
    verify->add_option("file-b", verify_b, "instance or result file")->required();

    std::string oracle_which, oracle_input;
    int oracle_max_edges = 10;
    auto* oracle = app.add_subcommand("oracle", "exact brute-force optimum on tiny instances");
    oracle->add_option("mode", oracle_which, "conflicts|rounds")->required();
    oracle->add_option("input", oracle_input, "instance file ('-' or absent reads stdin)");
    oracle->add_option("--max-edges", oracle_max_edges, "size guard (default 10)");

    BenchOptions bench_opt;
    auto* bench = app.add_subcommand("bench", "run every applicable algorithm over a corpus");
    bench->add_option("corpus", bench_opt.corpus_dir, "directory of instance files")->required();
    bench->add_option("--seed", bench_opt.seed, "RNG seed (default 0)");
    bench->add_flag("--oracle", bench_opt.with_oracle, "add oracle/ratio columns where feasible");
    bench->add_option("--max-edges", bench_opt.max_edges, "oracle size guard (default 10)");
    bench->add_option("-o,--out", bench_opt.output, "CSV output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (env_strict()) migrate_opt.strict = true;
        if (assign->parsed()) return run_assign(assign_opt);
        if (migrate->parsed()) return run_migrate(migrate_opt);
        if (bounds->parsed()) return run_bounds(bounds_input);
        if (verify->parsed()) return run_verify(verify_a, verify_b);
        if (oracle->parsed()) return run_oracle(oracle_which, oracle_input, oracle_max_edges);
        if (bench->parsed()) return run_bench(bench_opt);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const cf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cf::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cf::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
