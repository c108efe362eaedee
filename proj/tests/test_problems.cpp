#include "support.hpp"

#include "vereval/errors.hpp"
#include "vereval/harness/evaluator.hpp"
#include "vereval/postprocess/lexer.hpp"
#include "vereval/problems/problem.hpp"
#include "vereval/problems/validate.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <map>

using namespace vereval;
using namespace vereval::problems;
namespace fs = std::filesystem;

namespace {

const ProblemSet& set1() {
    static const ProblemSet s = load_problem_set(support::data_dir() / "problems" / "set1");
    return s;
}

std::string lines(const std::string& text, std::size_t count) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < count; ++i) pos = text.find('\n', pos) + 1;
    return text.substr(0, pos);
}

void write_problem(const fs::path& dir, const std::string& id, const std::string& low, const std::string& medium,
                   const std::string& high) {
    support::put(dir / "prompt_L.v", low);
    support::put(dir / "prompt_M.v", medium);
    support::put(dir / "prompt_H.v", high);
    support::put(dir / "ref_body.v", "assign y = a;\nendmodule\n");
    support::put(dir / "tb.v", "module tb; endmodule\n");
    nlohmann::json j{{"id", id},
                     {"set", "SetII"},
                     {"difficulty", "GettingStarted"},
                     {"title", "t"},
                     {"module_name", "m"},
                     {"prompts", {{"L", "prompt_L.v"}, {"M", "prompt_M.v"}, {"H", "prompt_H.v"}}},
                     {"testbench", "tb.v"},
                     {"reference", "ref_body.v"}};
    support::put(dir / "problem.json", j.dump(2));
}

}  // namespace

TEST(ProblemSet, ShippedSetIHasSeventeenProblemsSplit485) {
    const auto& s = set1();
    ASSERT_EQ(s.problems.size(), 17u);
    std::map<Difficulty, int> count;
    for (const auto& p : s.problems) ++count[p.difficulty];
    EXPECT_EQ(count[Difficulty::Basic], 4);
    EXPECT_EQ(count[Difficulty::Intermediate], 8);
    EXPECT_EQ(count[Difficulty::Advanced], 5);
    EXPECT_EQ(s.problems.front().id, "set1/p1");
    EXPECT_EQ(s.problems.back().id, "set1/p17");
}

TEST(ProblemSet, TiersExtendEachOtherAndOpenOneModule) {
    for (const auto& p : set1().problems) {
        EXPECT_TRUE(p.prompt_medium.starts_with(p.prompt_low)) << p.id;
        EXPECT_TRUE(p.prompt_high.starts_with(p.prompt_medium)) << p.id;
        for (auto d : kAllDetails) EXPECT_EQ(postprocess::module_balance(prompt_for(p, d)).net, 1) << p.id;
    }
}

TEST(ProblemSet, P15PromptIsFourLinesAtLowDetail) {
    const auto& p = set1().at("set1/p15");
    const auto& low = prompt_for(p, Detail::L);
    EXPECT_EQ(std::count(low.begin(), low.end(), '\n'), 4);
    EXPECT_EQ(lines(prompt_for(p, Detail::H), 4), low);
    EXPECT_NE(low.find("101"), std::string::npos);
}

TEST(ProblemSet, P1IsASimpleWire) {
    const auto& p = set1().at("set1/p1");
    EXPECT_EQ(p.title, "A simple wire");
    const auto body = util::read_file(p.reference_path);
    EXPECT_NE(body.find("assign"), std::string::npos);
    EXPECT_EQ(std::count(body.begin(), body.end(), ';'), 1);
}

TEST(ProblemSet, ShippedSetIILoads) {
    const auto s = load_problem_set(support::data_dir() / "problems" / "set2");
    EXPECT_EQ(s.problems.size(), 5u);
    for (const auto& p : s.problems) EXPECT_EQ(p.set, SetKind::SetII);
}

TEST(ProblemSet, EmptyDirectoryIsAnError) {
    auto dir = support::temp_dir();
    EXPECT_THROW(load_problem_set(dir->path()), ValidationError);
}

TEST(ProblemSet, EditedLowerTierIsRejected) {
    auto dir = support::temp_dir();
    write_problem(dir->path() / "a", "x/a", "module m(input a, output y);\n",
                  "module m(input b, output y);\n// more\n", "module m(input b, output y);\n// more\n// most\n");
    try {
        load_problem_set(dir->path());
        FAIL() << "expected a prefix violation";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("x/a"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("does not extend"), std::string::npos);
    }
}

TEST(ProblemSet, MissingTestbenchNamesTheProblem) {
    auto dir = support::temp_dir();
    const std::string low = "module m(input a, output y);\n";
    write_problem(dir->path() / "a", "x/a", low, low, low);
    fs::remove(dir->path() / "a" / "tb.v");
    try {
        load_problem_set(dir->path());
        FAIL() << "expected a validation error";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("x/a"), std::string::npos);
    }
}

TEST(ProblemSet, DuplicateIdsAreRejected) {
    auto dir = support::temp_dir();
    const std::string low = "module m(input a, output y);\n";
    write_problem(dir->path() / "a", "x/a", low, low, low);
    write_problem(dir->path() / "b", "x/a", low, low, low);
    EXPECT_THROW(load_problem_set(dir->path()), ValidationError);
}

TEST(ProblemSet, PromptMustLeaveOneModuleOpen) {
    auto dir = support::temp_dir();
    const std::string closed = "module m(input a, output y);\nendmodule\n";
    write_problem(dir->path() / "a", "x/a", closed, closed, closed);
    EXPECT_THROW(load_problem_set(dir->path()), ValidationError);
}

TEST(ProblemSet, UnknownIdThrows) { EXPECT_THROW(set1().at("set1/p99"), ValidationError); }

TEST(NaturalSort, NumbersCompareByValue) {
    EXPECT_TRUE(natural_less("p2", "p10"));
    EXPECT_FALSE(natural_less("p10", "p2"));
    EXPECT_TRUE(natural_less("1_output_zero", "2_vector_reversal"));
    EXPECT_FALSE(natural_less("p3", "p3"));
}

TEST(Difficulty, LaddersAndParsing) {
    EXPECT_EQ(difficulty_ladder(SetKind::SetI).size(), 3u);
    EXPECT_EQ(difficulty_ladder(SetKind::SetII).size(), 5u);
    EXPECT_EQ(parse_difficulty(to_string(Difficulty::CircuitsSequential)), Difficulty::CircuitsSequential);
    EXPECT_FALSE(difficulty_belongs_to(Difficulty::Basic, SetKind::SetII));
    EXPECT_THROW(parse_difficulty("Hard"), ParseError);
}

class ReferenceValidation : public ::testing::Test {
protected:
    static harness::Evaluator& evaluator() {
        static harness::Evaluator ev([] {
            harness::EvaluatorOptions o;
            o.toolchain = harness::resolve_toolchain("auto");
            return o;
        }());
        return ev;
    }
};

TEST_F(ReferenceValidation, ShippedSetIAllSucceed) {
    const auto report = validate_references(set1(), evaluator());
    for (const auto& c : report.checks) EXPECT_EQ(c.status, harness::EvalStatus::Success) << c.problem_id << "\n" << c.log;
    EXPECT_EQ(report.passed(), 17u);
}

TEST_F(ReferenceValidation, OffByOnePriorityEncoderIsIncorrect) {
    const auto& p = set1().at("set1/p3");
    const auto body = util::read_file(support::data_dir() / "mutants" / "p3_position_offset.v");
    const auto ev = evaluator().evaluate(postprocess::build_candidate(p.prompt_high, body), p.testbench_path);
    EXPECT_EQ(ev.outcome.status, harness::EvalStatus::Incorrect);
    EXPECT_GT(ev.outcome.mismatches, 0u);
}

TEST_F(ReferenceValidation, DeletedSemicolonIsCompileErrorAndReported) {
    auto dir = support::temp_dir();
    ProblemSet s;
    s.name = "one";
    s.problems = {set1().at("set1/p1")};
    auto body = util::read_file(s.problems[0].reference_path);
    body.erase(body.find(';'), 1);
    s.problems[0].reference_path = dir->path() / "ref_body.v";
    support::put(s.problems[0].reference_path, body);
    const auto report = validate_references(s, evaluator());
    ASSERT_EQ(report.checks.size(), 1u);
    EXPECT_EQ(report.checks[0].status, harness::EvalStatus::CompileError);
    EXPECT_FALSE(report.checks[0].log.empty());
    EXPECT_FALSE(report.all_passed());
}
