#include "vereval/harness/sweep.hpp"

#include "vereval/errors.hpp"
#include "vereval/postprocess/truncate.hpp"

#include <fmt/format.h>

#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <optional>
#include <set>
#include <thread>

namespace vereval::harness {

namespace {

template <typename T>
class Channel {
public:
    explicit Channel(std::size_t capacity) : cap_(capacity) {}

    void push(T v) {
        std::unique_lock lk(mu_);
        not_full_.wait(lk, [&] { return q_.size() < cap_ || closed_; });
        if (closed_) return;
        q_.push_back(std::move(v));
        not_empty_.notify_one();
    }

    std::optional<T> pop() {
        std::unique_lock lk(mu_);
        not_empty_.wait(lk, [&] { return !q_.empty() || closed_; });
        if (q_.empty()) return std::nullopt;
        T v = std::move(q_.front());
        q_.pop_front();
        not_full_.notify_one();
        return v;
    }

    /// Consumers drain what is queued, then see end of stream.
    void close() {
        std::lock_guard lk(mu_);
        closed_ = true;
        not_empty_.notify_all();
        not_full_.notify_all();
    }

private:
    std::size_t cap_;
    std::mutex mu_;
    std::condition_variable not_empty_, not_full_;
    std::deque<T> q_;
    bool closed_ = false;
};

struct Task {
    const problems::Problem* problem;
    Detail detail;
    double temperature;
    generation::Completion completion;
};

}  // namespace

void validate(const SweepConfig& cfg, const problems::ProblemSet& set) {
    if (cfg.problem_ids.empty()) throw ConfigError("sweep needs at least one problem");
    if (cfg.details.empty()) throw ConfigError("sweep needs at least one detail level");
    if (cfg.temperatures.empty()) throw ConfigError("sweep needs at least one temperature");
    if (cfg.n == 0) throw ConfigError("sweep needs n >= 1");
    if (cfg.parallelism == 0) throw ConfigError("sweep needs parallelism >= 1");
    if (cfg.provider_id.empty()) throw ConfigError("sweep needs a provider");
    if (std::set(cfg.problem_ids.begin(), cfg.problem_ids.end()).size() != cfg.problem_ids.size()) {
        throw ConfigError("sweep lists a problem twice");
    }
    if (std::set(cfg.details.begin(), cfg.details.end()).size() != cfg.details.size()) {
        throw ConfigError("sweep lists a detail level twice");
    }
    std::set<std::int64_t> temps;
    for (double t : cfg.temperatures) {
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError(fmt::format("temperature {} is outside [0, 1]", t));
        if (!temps.insert(temperature_key(t)).second) throw ConfigError(fmt::format("temperature {} listed twice", t));
    }
    for (const auto& id : cfg.problem_ids) {
        if (!set.find(id)) throw ConfigError("unknown problem '" + id + "'");
    }
}

SweepSummary run_sweep(const SweepConfig& cfg, const problems::ProblemSet& set, generation::GenerationClient& client,
                       Evaluator& evaluator, const std::filesystem::path& store_path, const ProgressFn& progress) {
    validate(cfg, set);
    const auto t0 = std::chrono::steady_clock::now();

    RecordStore store(store_path);
    std::set<RecordKey> present;
    for (const auto& r : store.existing()) present.insert(r.key());

    SweepSummary summary;
    summary.expected = cfg.problem_ids.size() * cfg.details.size() * cfg.temperatures.size() * cfg.n;
    const auto key_for = [&](const std::string& pid, Detail d, double t, std::size_t i) {
        return RecordKey{cfg.provider_id, pid, d, temperature_key(t), i};
    };
    for (const auto& pid : cfg.problem_ids)
        for (auto d : cfg.details)
            for (double t : cfg.temperatures)
                for (std::size_t i = 0; i < cfg.n; ++i) summary.already_present += present.count(key_for(pid, d, t, i));

    Channel<Task> tasks(2 * static_cast<std::size_t>(cfg.parallelism));
    Channel<EvalRecord> results(4 * static_cast<std::size_t>(cfg.parallelism));
    std::mutex err_mu;
    std::exception_ptr first_error;
    const auto fail = [&](std::exception_ptr e) {
        std::lock_guard lk(err_mu);
        if (!first_error) first_error = e;
    };
    const auto failed = [&] {
        std::lock_guard lk(err_mu);
        return first_error != nullptr;
    };

    std::jthread writer([&] {
        std::size_t done = summary.already_present;
        while (auto r = results.pop()) {
            try {
                store.append(*r);
            } catch (...) {
                fail(std::current_exception());
                tasks.close();
                continue;
            }
            ++done;
            ++summary.evaluated;
            ++summary.by_status[r->outcome.status];
            if (progress) progress({done, summary.expected, &*r});
        }
    });

    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < cfg.parallelism; ++w) {
            workers.emplace_back([&] {
                while (auto t = tasks.pop()) {
                    try {
                        postprocess::CandidateSource cand;
                        Evaluation ev;
                        try {
                            cand = postprocess::build_candidate(problems::prompt_for(*t->problem, t->detail),
                                                                t->completion.raw_text);
                        } catch (const ContractError& e) {
                            // Unassemblable text cannot compile; record it rather than stop the sweep.
                            ev.outcome.status = EvalStatus::CompileError;
                            ev.outcome.compile_stderr = std::string("candidate assembly failed: ") + e.what();
                        }
                        if (!cand.source_text.empty()) {
                            cand.problem_id = t->problem->id;
                            cand.detail = t->detail;
                            cand.completion_ref =
                                t->completion.request_ref + "#" + std::to_string(t->completion.index);
                            ev = evaluator.evaluate(cand, t->problem->testbench_path);
                        }

                        EvalRecord r;
                        r.problem_id = t->problem->id;
                        r.detail = t->detail;
                        r.temperature = t->temperature;
                        r.completion_index = t->completion.index;
                        r.provider_id = cfg.provider_id;
                        r.outcome = ev.outcome;
                        r.gen_latency_seconds = t->completion.latency_seconds;
                        r.compile_seconds = ev.compile_seconds;
                        r.sim_seconds = ev.sim_seconds;
                        r.truncation_applied = cand.truncation_applied;
                        r.synthesized_close = cand.synthesized_close;
                        results.push(std::move(r));
                    } catch (...) {
                        fail(std::current_exception());
                        tasks.close();
                    }
                }
            });
        }

        for (const auto& pid : cfg.problem_ids) {
            const auto& problem = set.at(pid);
            for (auto d : cfg.details) {
                for (double t : cfg.temperatures) {
                    if (failed() || summary.aborted) break;
                    std::vector<std::size_t> missing;
                    for (std::size_t i = 0; i < cfg.n; ++i) {
                        if (!present.contains(key_for(pid, d, t, i))) missing.push_back(i);
                    }
                    if (missing.empty()) continue;

                    generation::GenerationRequest req;
                    req.prompt = problems::prompt_for(problem, d);
                    req.temperature = t;
                    req.n = cfg.n;
                    req.max_tokens = cfg.max_tokens;
                    req.system_prompt_mode = cfg.system_prompt_mode;
                    req.provider_id = cfg.provider_id;
                    std::vector<generation::Completion> completions;
                    try {
                        completions = client.generate(req);
                    } catch (const ProviderError& e) {
                        summary.aborted = true;
                        summary.abort_reason = e.what();
                        break;
                    } catch (...) {
                        fail(std::current_exception());
                        break;
                    }
                    for (auto i : missing) tasks.push(Task{&problem, d, t, std::move(completions[i])});
                }
            }
        }
        tasks.close();
    }  // workers joined
    results.close();
    writer.join();

    if (first_error) std::rethrow_exception(first_error);

    summary.records = summary.already_present + summary.evaluated;
    summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return summary;
}

}  // namespace vereval::harness
