#pragma once

#include "vereval/harness/outcome.hpp"
#include "vereval/harness/toolchain.hpp"
#include "vereval/postprocess/truncate.hpp"

#include <chrono>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace vereval::util {
class ScratchDir;
}

namespace vereval::harness {

struct CompileResult {
    bool ok = false;
    std::filesystem::path image;
    std::string diagnostics;  // compiler stdout + stderr
    double seconds = 0.0;
    bool cached = false;
};

/// Writes the candidate into `workdir` and compiles it with the testbench.
/// Throws ToolNotFound when the compiler cannot be started.
CompileResult compile(const postprocess::CandidateSource& candidate, const std::filesystem::path& testbench,
                      const std::filesystem::path& workdir, const ToolchainConfig& tc,
                      std::chrono::milliseconds timeout = std::chrono::minutes(2));

/// Runs a compiled image under a wall-clock timeout and parses the testbench protocol.
SimulationResult simulate(const std::filesystem::path& image, const std::filesystem::path& workdir,
                          const ToolchainConfig& tc, std::chrono::milliseconds timeout);

struct EvaluatorOptions {
    ToolchainConfig toolchain;
    std::filesystem::path scratch_root;          // empty = system temp dir
    std::chrono::milliseconds sim_timeout{10000};
    std::chrono::milliseconds compile_timeout{120000};
    bool keep_scratch = false;  // retain scratch dirs of failed evaluations
    bool image_cache = true;
};

struct Evaluation {
    EvalOutcome outcome;
    double compile_seconds = 0.0;
    double sim_seconds = 0.0;
    bool compile_cached = false;
};

/// Thread-safe. Every evaluation gets a private scratch directory. Compiled
/// images are cached by (toolchain, candidate text, testbench text); the
/// simulation itself always runs.
class Evaluator {
public:
    explicit Evaluator(EvaluatorOptions opts);
    ~Evaluator();
    Evaluator(const Evaluator&) = delete;
    Evaluator& operator=(const Evaluator&) = delete;

    Evaluation evaluate(const postprocess::CandidateSource& candidate, const std::filesystem::path& testbench);

    const EvaluatorOptions& options() const noexcept { return opts_; }
    std::size_t compile_count() const;
    std::size_t cache_hits() const;

private:
    struct CachedImage {
        bool ok = false;
        std::filesystem::path image;
        std::string diagnostics;
        double seconds = 0.0;
    };

    CompileResult compile_cached(const postprocess::CandidateSource& candidate, const std::filesystem::path& testbench,
                                 const std::filesystem::path& workdir);

    EvaluatorOptions opts_;
    std::unique_ptr<util::ScratchDir> cache_dir_;
    mutable std::mutex mu_;
    std::map<std::string, std::shared_future<CachedImage>> cache_;
    std::size_t compiles_ = 0;
    std::size_t hits_ = 0;
};

}  // namespace vereval::harness
