#include "cli.hpp"

#include "run_config.hpp"

#include "vereval/corpus/manifest.hpp"
#include "vereval/errors.hpp"
#include "vereval/generation/client.hpp"
#include "vereval/generation/mock_provider.hpp"
#include "vereval/generation/profile.hpp"
#include "vereval/harness/evaluator.hpp"
#include "vereval/harness/record_store.hpp"
#include "vereval/harness/sweep.hpp"
#include "vereval/problems/problem.hpp"
#include "vereval/problems/validate.hpp"
#include "vereval/scoring/tables.hpp"
#include "vereval/util/files.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>

namespace vereval::cli {

namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string config;
    std::string problems;
    std::string provider;
    std::string mock_fixture;
    std::string temps;
    std::size_t n = 0;
    std::string details;
    std::string store;
    unsigned parallelism = 0;
    double timeout = 0;
    std::string predicate;
    bool keep_scratch = false;
    std::string toolchain;

    // corpus
    std::vector<std::string> roots;
    std::vector<std::string> books;
    std::string out;
    double threshold = 0;
    std::size_t window = 0;
    std::size_t stride = 0;

    // report
    std::string layout = "functional";
};

RunConfig effective_config(const Flags& f) {
    RunConfig c = f.config.empty() ? default_run_config() : load_run_config(f.config);
    if (!f.problems.empty()) c.problems = f.problems;
    if (!f.temps.empty()) c.temperatures = parse_temperature_list(f.temps);
    if (f.n) c.n = f.n;
    if (!f.details.empty()) c.details = parse_detail_list(f.details);
    if (!f.store.empty()) c.store = f.store;
    if (f.parallelism) c.parallelism = f.parallelism;
    if (f.timeout > 0) c.timeout_seconds = f.timeout;
    if (!f.toolchain.empty()) {
        c.custom_toolchain.reset();
        c.toolchain_name = f.toolchain;
    }
    if (!f.mock_fixture.empty()) {
        nlohmann::json p{{"id", "mock"}, {"kind", "mock"}, {"fixture", fs::absolute(f.mock_fixture).string()}};
        std::erase_if(c.providers, [](const nlohmann::json& q) { return q.at("id") == "mock"; });
        c.providers.push_back(std::move(p));
        if (f.provider.empty()) c.default_provider = "mock";
    }
    if (!f.provider.empty() && f.provider.find(',') == std::string::npos) c.default_provider = f.provider;
    return c;
}

problems::ProblemSet load_problems(const RunConfig& c) {
    if (c.problems.empty() || !fs::is_directory(c.problems)) {
        throw ConfigError("problems directory '" + c.problems.string() + "' does not exist");
    }
    try {
        return problems::load_problem_set(c.problems);
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("problem set rejected: ") + e.what());
    } catch (const ParseError& e) {
        throw ConfigError(std::string("problem set rejected: ") + e.what());
    }
}

harness::EvaluatorOptions evaluator_options(const RunConfig& c, bool keep_scratch) {
    harness::EvaluatorOptions o;
    o.toolchain = toolchain_of(c);
    harness::preflight(o.toolchain);
    o.scratch_root = c.scratch;
    o.sim_timeout = std::chrono::milliseconds(static_cast<long long>(c.timeout_seconds * 1000.0));
    o.keep_scratch = keep_scratch;
    return o;
}

int cmd_corpus(const Flags& f, std::ostream& out) {
    RunConfig c = effective_config(f);
    corpus::CorpusBuildOptions o;
    o.sources = c.corpus_roots;
    for (const auto& r : f.roots) o.sources.push_back({r, corpus::Origin::RepoTree});
    for (const auto& b : f.books) o.sources.push_back({b, corpus::Origin::BookText});
    if (o.sources.empty()) throw ConfigError("no corpus roots; pass --root/--book or set corpus.roots");
    for (const auto& s : o.sources) {
        if (!fs::is_directory(s.root)) throw ConfigError("corpus root '" + s.root.string() + "' does not exist");
    }
    o.dedup.threshold = f.threshold > 0 ? f.threshold : c.dedup_threshold;
    o.window = f.window ? f.window : c.window;
    o.stride = f.stride ? f.stride : c.stride;
    if (o.window == 0 || o.stride > o.window) throw ConfigError("need 1 <= stride <= window");

    const auto build = corpus::build_corpus(o);
    const fs::path dir = f.out.empty() ? c.corpus_out : fs::path(f.out);
    fs::create_directories(dir);
    corpus::export_training_set(build.examples, dir / "training.jsonl");
    util::write_file_atomic(dir / "manifest.json", corpus::corpus_manifest_json(build, o));

    const auto& s = build.stats;
    out << fmt::format("kept={} dropped={} examples={} blocks={} filtered_large={} examined={}\n", s.kept, s.dropped,
                       s.examples, s.blocks, s.filtered_large, s.examined);
    return kExitOk;
}

int cmd_eval(const Flags& f, std::ostream& out, std::ostream& err) {
    RunConfig c = effective_config(f);
    const auto set = load_problems(c);
    auto eopts = evaluator_options(c, f.keep_scratch);

    generation::GenerationClient client;
    const auto& profile = provider_profile(c, f.provider);
    auto made = generation::make_provider(profile, c.base_dir.empty() ? fs::current_path() : c.base_dir);
    made.provider->check_ready();
    const auto provider_id = client.register_provider(made.provider, made.rate_limit);

    harness::SweepConfig sc;
    sc.problem_ids = set.ids();
    sc.details = c.details;
    sc.temperatures = c.temperatures;
    sc.n = c.n;
    sc.provider_id = provider_id;
    sc.parallelism = c.parallelism;
    sc.max_tokens = c.max_tokens;
    sc.system_prompt_mode = c.system_prompt;
    harness::validate(sc, set);

    if (c.store.has_parent_path()) fs::create_directories(c.store.parent_path());
    harness::Evaluator evaluator(std::move(eopts));

    std::size_t step = 0;
    auto progress = [&](const harness::SweepProgress& p) {
        if (step == 0) step = std::max<std::size_t>(1, p.total / 20);
        if (p.done % step == 0 || p.done == p.total) err << fmt::format("[{}/{}]\n", p.done, p.total) << std::flush;
    };
    const auto summary = harness::run_sweep(sc, set, client, evaluator, c.store, progress);

    out << fmt::format("records={} expected={} evaluated={} already_present={} wall_s={:.1f}\n", summary.records,
                       summary.expected, summary.evaluated, summary.already_present, summary.wall_seconds);
    for (const auto& [status, count] : summary.by_status) {
        out << fmt::format("  {}={}\n", harness::to_string(status), count);
    }
    if (summary.aborted) {
        err << "sweep aborted: " << summary.abort_reason << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_report(const Flags& f, std::ostream& out, std::ostream& err) {
    RunConfig c = effective_config(f);
    const auto set = load_problems(c);
    if (!fs::exists(c.store)) throw ConfigError("record store '" + c.store.string() + "' does not exist");
    const scoring::RecordIndex index(harness::load_records(c.store));

    scoring::TableOptions o;
    o.layout = scoring::parse_layout(f.layout);
    o.temperatures = c.temperatures;
    o.n = c.n;
    if (!f.predicate.empty()) o.predicate = scoring::parse_predicate(f.predicate);
    if (f.provider.find(',') != std::string::npos) {
        std::string rest = f.provider;
        for (std::size_t at; (at = rest.find(',')) != std::string::npos; rest.erase(0, at + 1)) {
            if (at) o.providers.push_back(rest.substr(0, at));
        }
        if (!rest.empty()) o.providers.push_back(rest);
    } else if (!f.provider.empty()) {
        o.providers = {f.provider};
    } else {
        o.providers = index.providers();
    }

    const auto t = scoring::build_tables(index, set, o);
    const fs::path stem = f.out.empty() ? c.reports / std::string(scoring::to_string(o.layout)) : fs::path(f.out);
    const auto files = scoring::write_tables(t, stem);
    out << t.text;
    err << "wrote " << files.text.string() << " and " << files.csv.string() << "\n";
    return kExitOk;
}

int cmd_validate(const Flags& f, std::ostream& out) {
    RunConfig c = effective_config(f);
    const auto set = load_problems(c);
    harness::Evaluator evaluator(evaluator_options(c, f.keep_scratch));
    const auto report = problems::validate_references(set, evaluator);
    for (const auto& chk : report.checks) {
        out << fmt::format("{:<28} {:<16} mismatches={} {:.2f}s\n", chk.problem_id, harness::to_string(chk.status),
                           chk.mismatches, chk.seconds);
        if (chk.status != harness::EvalStatus::Success && !chk.log.empty()) out << chk.log << "\n";
    }
    out << fmt::format("passed {}/{}\n", report.passed(), report.checks.size());
    return report.all_passed() ? kExitOk : kExitFailure;
}

/// Canned completions that continue every prompt tier with the reference body.
int cmd_fixture(const Flags& f, std::ostream& out) {
    RunConfig c = effective_config(f);
    const auto set = load_problems(c);
    if (f.out.empty()) throw ConfigError("fixture needs --out");
    generation::MockFixture fx;
    for (const auto& p : set.problems) {
        const auto body = util::read_file(p.reference_path);
        for (auto d : kAllDetails) {
            const auto& prompt = problems::prompt_for(p, d);
            fx.add(prompt, {p.prompt_high.substr(prompt.size()) + body});
        }
    }
    fx.save(f.out);
    out << fmt::format("fixture entries={}\n", fx.entries.size());
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Flags f;
    CLI::App app{"Verilog code generation evaluation"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", f.config, "JSON run config");
    app.add_option("--problems", f.problems, "problem set directory");
    app.add_option("--store", f.store, "JSONL record store");
    app.add_option("--toolchain", f.toolchain, "icarus, verilator or auto");
    app.add_flag("--debug-keep-scratch", f.keep_scratch, "keep scratch dirs of failed evaluations");

    auto* corpus_cmd = app.add_subcommand("corpus", "scan, deduplicate and window a Verilog corpus");
    corpus_cmd->add_option("--root", f.roots, "repository tree root (repeatable)");
    corpus_cmd->add_option("--book", f.books, "book text root (repeatable)");
    corpus_cmd->add_option("--out", f.out, "output directory");
    corpus_cmd->add_option("--threshold", f.threshold, "near-duplicate Jaccard threshold");
    corpus_cmd->add_option("--window", f.window, "window length in characters");
    corpus_cmd->add_option("--stride", f.stride, "window stride in characters");

    auto* eval_cmd = app.add_subcommand("eval", "generate and evaluate completions over the sweep grid");
    auto* report_cmd = app.add_subcommand("report", "build score tables from a record store");
    for (auto* sub : {eval_cmd, report_cmd}) {
        sub->add_option("--provider", f.provider, "provider id (report: comma list)");
        sub->add_option("--temps", f.temps, "comma-separated temperatures");
        sub->add_option("--n", f.n, "completions per cell");
    }
    eval_cmd->add_option("--mock-fixture", f.mock_fixture, "register a mock provider from this fixture");
    eval_cmd->add_option("--details", f.details, "comma-separated detail levels (L,M,H)");
    eval_cmd->add_option("--parallelism", f.parallelism, "concurrent evaluations");
    eval_cmd->add_option("--timeout", f.timeout, "simulation timeout in seconds");
    report_cmd->add_option("--predicate", f.predicate, "compiles or passes")->check(CLI::IsMember({"compiles", "passes"}));
    report_cmd->add_option("--layout", f.layout, "compile or functional")->check(CLI::IsMember({"compile", "functional"}));
    report_cmd->add_option("--out", f.out, "output file stem");

    auto* validate_cmd = app.add_subcommand("validate", "check every reference solution against its testbench");
    validate_cmd->add_option("--timeout", f.timeout, "simulation timeout in seconds");
    auto* fixture_cmd = app.add_subcommand("fixture", "write a mock fixture answering every prompt with its reference");
    fixture_cmd->add_option("--out", f.out, "fixture path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (corpus_cmd->parsed()) return cmd_corpus(f, out);
        if (eval_cmd->parsed()) return cmd_eval(f, out, err);
        if (report_cmd->parsed()) return cmd_report(f, out, err);
        if (validate_cmd->parsed()) return cmd_validate(f, out);
        if (fixture_cmd->parsed()) return cmd_fixture(f, out);
    } catch (const CoverageError& e) {
        err << "coverage error: " << e.what() << "\n";
        return kExitCoverage;
    } catch (const ToolNotFound& e) {
        err << "tool error: " << e.what() << "\n";
        return kExitTool;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace vereval::cli
