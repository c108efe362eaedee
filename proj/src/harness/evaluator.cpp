#include "vereval/harness/evaluator.hpp"

#include "vereval/errors.hpp"
#include "vereval/util/digest.hpp"
#include "vereval/util/files.hpp"
#include "vereval/util/subprocess.hpp"

namespace vereval::harness {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kDiagnosticsLimit = 64 * 1024;

std::string join_output(const util::ProcessResult& r) {
    std::string s = r.err;
    if (!r.out.empty()) {
        if (!s.empty() && s.back() != '\n') s += '\n';
        s += r.out;
    }
    if (s.size() > kDiagnosticsLimit) s.resize(kDiagnosticsLimit);
    return s;
}

fs::path default_scratch_root() {
    std::error_code ec;
    auto p = fs::temp_directory_path(ec);
    return ec ? fs::path("/tmp") : p;
}

}  // namespace

CompileResult compile(const postprocess::CandidateSource& candidate, const fs::path& testbench, const fs::path& workdir,
                      const ToolchainConfig& tc, std::chrono::milliseconds timeout) {
    CompileResult res;
    const auto src = workdir / "candidate.v";
    util::write_file_atomic(src, candidate.source_text);
    res.image = workdir / tc.image_name;

    const auto argv = expand_command(tc.compile_command, {{"sources", {src.string(), fs::absolute(testbench).string()}},
                                                          {"image", {res.image.string()}},
                                                          {"output", {workdir.string()}},
                                                          {"top", {tc.top_module}}});
    util::ProcessOptions po;
    po.cwd = workdir;
    po.timeout = timeout;
    const auto r = util::run_process(argv, po);
    if (r.spawn_failed) throw ToolNotFound("cannot start compiler '" + argv.front() + "'");
    res.seconds = r.wall_seconds;
    res.diagnostics = join_output(r);
    if (r.timed_out) res.diagnostics += "\ncompile timed out";
    res.ok = r.ok() && fs::exists(res.image);
    return res;
}

SimulationResult simulate(const fs::path& image, const fs::path& workdir, const ToolchainConfig& tc,
                          std::chrono::milliseconds timeout) {
    const auto argv = expand_command(tc.simulate_command, {{"image", {image.string()}},
                                                           {"output", {workdir.string()}},
                                                           {"top", {tc.top_module}}});
    util::ProcessOptions po;
    po.cwd = workdir;
    po.timeout = timeout;
    const auto r = util::run_process(argv, po);
    if (r.spawn_failed) throw ToolNotFound("cannot start simulator '" + argv.front() + "'");

    SimulationResult s;
    s.seconds = r.wall_seconds;
    s.timed_out = r.timed_out;
    s.exit_code = r.exited ? r.exit_code : -1;
    s.stdout_text = r.out;
    if (s.stdout_text.size() > kDiagnosticsLimit) s.stdout_text.resize(kDiagnosticsLimit);

    const auto report = parse_testbench_output(r.out);
    if (r.timed_out) {
        s.problem = "timed out";
    } else if (!report.summary) {
        s.problem = r.exited ? "exited with code " + std::to_string(r.exit_code) + " before the testbench summary"
                             : "killed by signal " + std::to_string(r.term_signal);
    } else {
        s.ran_to_completion = true;
        // Trust whichever evidence reports more failures.
        s.mismatches = std::max(*report.summary, report.mismatch_lines);
    }
    return s;
}

Evaluator::Evaluator(EvaluatorOptions opts) : opts_(std::move(opts)) {
    if (opts_.scratch_root.empty()) opts_.scratch_root = default_scratch_root();
    fs::create_directories(opts_.scratch_root);
    if (opts_.image_cache) cache_dir_ = std::make_unique<util::ScratchDir>(opts_.scratch_root, "images-");
}

Evaluator::~Evaluator() = default;

std::size_t Evaluator::compile_count() const {
    std::lock_guard lk(mu_);
    return compiles_;
}

std::size_t Evaluator::cache_hits() const {
    std::lock_guard lk(mu_);
    return hits_;
}

CompileResult Evaluator::compile_cached(const postprocess::CandidateSource& candidate, const fs::path& testbench,
                                        const fs::path& workdir) {
    if (!cache_dir_) {
        {
            std::lock_guard lk(mu_);
            ++compiles_;
        }
        return compile(candidate, testbench, workdir, opts_.toolchain, opts_.compile_timeout);
    }

    util::Sha256Builder key;
    key.field(fingerprint(opts_.toolchain)).field(candidate.source_text).field(util::read_file(testbench));
    const auto k = key.hex();

    std::promise<CachedImage> promise;
    std::shared_future<CachedImage> fut;
    bool owner = false;
    {
        std::lock_guard lk(mu_);
        if (auto it = cache_.find(k); it != cache_.end()) {
            fut = it->second;
            ++hits_;
        } else {
            fut = promise.get_future().share();
            cache_.emplace(k, fut);
            owner = true;
            ++compiles_;
        }
    }

    if (owner) {
        CachedImage entry;
        try {
            const auto dir = cache_dir_->path() / k;
            fs::create_directories(dir);
            auto r = compile(candidate, testbench, dir, opts_.toolchain, opts_.compile_timeout);
            entry = {r.ok, r.image, std::move(r.diagnostics), r.seconds};
            // The compile step leaves the candidate copy behind; only the image is reused.
            std::error_code ec;
            fs::remove(dir / "candidate.v", ec);
            promise.set_value(entry);
        } catch (...) {
            {
                std::lock_guard lk(mu_);
                cache_.erase(k);
            }
            promise.set_exception(std::current_exception());
            throw;
        }
    }

    const CachedImage& entry = fut.get();
    CompileResult res;
    res.ok = entry.ok;
    res.diagnostics = entry.diagnostics;
    res.seconds = owner ? entry.seconds : 0.0;
    res.cached = !owner;
    util::write_file_atomic(workdir / "candidate.v", candidate.source_text);
    if (entry.ok) {
        res.image = workdir / opts_.toolchain.image_name;
        // A hard link avoids holding a writable fd that concurrent spawns could inherit.
        std::error_code ec;
        fs::create_hard_link(entry.image, res.image, ec);
        if (ec) fs::copy_file(entry.image, res.image, fs::copy_options::overwrite_existing);
    }
    return res;
}

Evaluation Evaluator::evaluate(const postprocess::CandidateSource& candidate, const fs::path& testbench) {
    util::ScratchDir work(opts_.scratch_root, "eval-");
    // Kept only for failed evaluations, and only in debug mode.
    work.keep(opts_.keep_scratch);

    Evaluation ev;
    const auto c = compile_cached(candidate, testbench, work.path());
    ev.compile_seconds = c.seconds;
    ev.compile_cached = c.cached;
    if (!c.ok) {
        ev.outcome = classify(false, std::nullopt);
        ev.outcome.compile_stderr = c.diagnostics;
        return ev;
    }
    const auto s = simulate(c.image, work.path(), opts_.toolchain, opts_.sim_timeout);
    ev.sim_seconds = s.seconds;
    ev.outcome = classify(true, s);
    ev.outcome.compile_stderr = c.diagnostics;
    if (ev.outcome.status == EvalStatus::Success) work.keep(false);
    return ev;
}

}  // namespace vereval::harness
