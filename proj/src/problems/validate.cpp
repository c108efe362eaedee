#include "vereval/problems/validate.hpp"

#include "vereval/postprocess/lexer.hpp"
#include "vereval/util/files.hpp"

namespace vereval::problems {

std::size_t ValidationReport::passed() const noexcept {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.status == harness::EvalStatus::Success;
    return n;
}

postprocess::CandidateSource reference_candidate(const Problem& p) {
    const auto text = util::read_file(p.reference_path);
    const auto b = postprocess::module_balance(text);
    if (b.opened > 0 && b.net == 0) {
        postprocess::CandidateSource c;
        c.problem_id = p.id;
        c.detail = Detail::H;
        c.completion_ref = "reference";
        c.source_text = text;
        return c;
    }
    auto c = postprocess::build_candidate(p.prompt_high, text);
    c.problem_id = p.id;
    c.detail = Detail::H;
    c.completion_ref = "reference";
    return c;
}

ValidationReport validate_references(const ProblemSet& set, harness::Evaluator& evaluator) {
    ValidationReport report;
    for (const auto& p : set.problems) {
        ReferenceCheck check;
        check.problem_id = p.id;
        postprocess::CandidateSource cand;
        try {
            cand = reference_candidate(p);
        } catch (const ContractError& e) {
            check.log = e.what();
            report.checks.push_back(std::move(check));
            continue;
        }
        const auto ev = evaluator.evaluate(cand, p.testbench_path);
        check.status = ev.outcome.status;
        check.mismatches = ev.outcome.mismatches;
        check.seconds = ev.compile_seconds + ev.sim_seconds;
        if (check.status == harness::EvalStatus::CompileError) check.log = ev.outcome.compile_stderr;
        else if (check.status != harness::EvalStatus::Success) check.log = ev.outcome.sim_stdout;
        report.checks.push_back(std::move(check));
    }
    return report;
}

}  // namespace vereval::problems
