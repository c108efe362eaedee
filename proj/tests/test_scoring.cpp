#include "store_gen.hpp"
#include "support.hpp"

#include "vereval/errors.hpp"
#include "vereval/generation/mock_provider.hpp"
#include "vereval/harness/sweep.hpp"
#include "vereval/scoring/score.hpp"
#include "vereval/scoring/tables.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace vereval;
using namespace vereval::scoring;
using harness::EvalRecord;
using harness::EvalStatus;

namespace {

const problems::ProblemSet& set1() {
    static const problems::ProblemSet s = problems::load_problem_set(support::data_dir() / "problems" / "set1");
    return s;
}

const std::vector<std::string>& basic_ids() {
    static const auto ids = scenarios_by_difficulty(set1(), Predicate::PassesTests).front().problem_ids;
    return ids;
}

using StatusFn = std::function<EvalStatus(const std::string& problem, Detail d, double t, std::size_t i)>;

std::vector<EvalRecord> grid(const std::string& provider, const std::vector<std::string>& ids,
                             const std::vector<Detail>& details, const std::vector<double>& temps, std::size_t n,
                             const StatusFn& status) {
    std::vector<EvalRecord> out;
    for (const auto& id : ids) {
        for (auto d : details) {
            for (double t : temps) {
                for (std::size_t i = 0; i < n; ++i) {
                    EvalRecord r;
                    r.provider_id = provider;
                    r.problem_id = id;
                    r.detail = d;
                    r.temperature = t;
                    r.completion_index = i;
                    r.outcome.status = status(id, d, t, i);
                    out.push_back(std::move(r));
                }
            }
        }
    }
    return out;
}

Scenario basic(std::optional<Detail> d, Predicate p = Predicate::PassesTests) {
    Scenario s;
    s.name = "Basic";
    s.problem_ids = basic_ids();
    s.detail = d;
    s.predicate = p;
    return s;
}

EvalStatus success_below(std::size_t i, std::size_t k) { return i < k ? EvalStatus::Success : EvalStatus::Incorrect; }

}  // namespace

TEST(PassAt, TwentyOfFortyIsHalf) {
    const auto recs = grid("p", basic_ids(), {Detail::H}, {0.5}, 10,
                           [](auto&, auto, auto, std::size_t i) { return success_below(i, 5); });
    const auto c = pass_at_scenario_n(RecordIndex(recs), basic(Detail::H), "p", 0.5, 10);
    EXPECT_EQ(c.numerator, 20u);
    EXPECT_EQ(c.denominator, 40u);
    EXPECT_DOUBLE_EQ(c.score, 0.5);
}

TEST(PassAt, AllSuccessIsOne) {
    const auto recs = grid("p", basic_ids(), {Detail::L}, {0.1}, 10, [](auto&&...) { return EvalStatus::Success; });
    EXPECT_DOUBLE_EQ(pass_at_scenario_n(RecordIndex(recs), basic(Detail::L), "p", 0.1, 10).score, 1.0);
}

TEST(PassAt, PooledDenominatorCountsEveryDetail) {
    // p, L: 10/10, M: 4/10, H: 0/10 for each basic problem -> 56 / 120
    const auto recs = grid("p", basic_ids(), {Detail::L, Detail::M, Detail::H}, {0.5}, 10,
                           [](auto&, Detail d, auto, std::size_t i) {
                               return success_below(i, d == Detail::L ? 10 : d == Detail::M ? 4 : 0);
                           });
    const auto c = pass_at_scenario_n(RecordIndex(recs), basic(std::nullopt), "p", 0.5, 10);
    EXPECT_EQ(c.numerator, 56u);
    EXPECT_EQ(c.denominator, 120u);
    EXPECT_FALSE(c.detail.has_value());
}

TEST(PassAt, OnlyIndicesBelowNCount) {
    const auto recs = grid("p", basic_ids(), {Detail::H}, {0.5}, 25,
                           [](auto&, auto, auto, std::size_t i) { return success_below(i, 10); });
    EXPECT_DOUBLE_EQ(pass_at_scenario_n(RecordIndex(recs), basic(Detail::H), "p", 0.5, 10).score, 1.0);
    EXPECT_DOUBLE_EQ(pass_at_scenario_n(RecordIndex(recs), basic(Detail::H), "p", 0.5, 25).score, 0.4);
}

TEST(PassAt, CompilesCountsEverythingButCompileErrors) {
    const EvalStatus cycle[] = {EvalStatus::Success, EvalStatus::Incorrect, EvalStatus::SimulationError,
                                EvalStatus::CompileError, EvalStatus::CompileError};
    const auto recs = grid("p", basic_ids(), {Detail::H}, {0.5}, 10, [&](auto&, auto, auto, std::size_t i) { return cycle[i % 5]; });
    const RecordIndex idx(recs);
    EXPECT_EQ(pass_at_scenario_n(idx, basic(Detail::H, Predicate::Compiles), "p", 0.5, 10).numerator, 24u);
    EXPECT_EQ(pass_at_scenario_n(idx, basic(Detail::H, Predicate::PassesTests), "p", 0.5, 10).numerator, 8u);
}

TEST(PassAt, MissingRecordsAreNamed) {
    auto recs = grid("p", basic_ids(), {Detail::H}, {0.5}, 10, [](auto&&...) { return EvalStatus::Success; });
    recs.erase(recs.begin() + 3);
    try {
        pass_at_scenario_n(RecordIndex(recs), basic(Detail::H), "p", 0.5, 10);
        FAIL();
    } catch (const CoverageError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("missing 1 record"), std::string::npos) << what;
        EXPECT_NE(what.find(basic_ids()[0] + "/H#3"), std::string::npos) << what;
    }
    EXPECT_THROW(pass_at_scenario_n(RecordIndex(recs), basic(Detail::H), "p", 0.7, 10), CoverageError);
}

TEST(BestTemperature, TieGoesToLowestTemperature) {
    // 0.1: 9/10, 0.3: 9/10, 0.5: 7/10
    const auto recs = grid("p", basic_ids(), {Detail::H}, {0.1, 0.3, 0.5}, 10, [](auto&, auto, double t, std::size_t i) {
        return success_below(i, t > 0.4 ? 7 : 9);
    });
    const auto b = best_temperature(RecordIndex(recs), basic(Detail::H), "p", {0.5, 0.3, 0.1}, 10);
    EXPECT_DOUBLE_EQ(b.temperature, 0.1);
    EXPECT_DOUBLE_EQ(b.cell.score, 0.9);
}

TEST(BestTemperature, SingleTemperature) {
    const auto recs = grid("p", basic_ids(), {Detail::H}, {0.7}, 10,
                           [](auto&, auto, auto, std::size_t i) { return success_below(i, 2); });
    EXPECT_DOUBLE_EQ(best_temperature(RecordIndex(recs), basic(Detail::H), "p", {0.7}, 10).temperature, 0.7);
}

TEST(BestTemperature, ScalingCountsKeepsTheArgmax) {
    std::mt19937_64 rng(5);
    const std::vector<double> temps{0.1, 0.3, 0.5, 0.7, 1.0};
    for (int trial = 0; trial < 50; ++trial) {
        std::map<double, std::size_t> k;
        for (double t : temps) k[t] = rng() % 11;
        const auto small = grid("p", basic_ids(), {Detail::M}, temps, 10,
                                [&](auto&, auto, double t, std::size_t i) { return success_below(i, k[t]); });
        // Twice the completions, twice the successes per cell.
        const auto large = grid("p", basic_ids(), {Detail::M}, temps, 20,
                                [&](auto&, auto, double t, std::size_t i) { return success_below(i % 10, k[t]); });
        EXPECT_EQ(best_temperature(RecordIndex(small), basic(Detail::M), "p", temps, 10).temperature,
                  best_temperature(RecordIndex(large), basic(Detail::M), "p", temps, 20).temperature);
    }
}

TEST(Properties, DominanceAndMonotonicityOnRandomStores) {
    const std::vector<double> temps{0.1, 0.5};
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto recs = support::random_store(seed, set1(), {"a"}, temps, 4);
        const RecordIndex idx(recs);
        std::vector<ScoreCell> before;
        for (auto& s : scenarios_by_difficulty(set1(), Predicate::PassesTests)) {
            for (double t : temps) {
                const auto pass = pass_at_scenario_n(idx, s, "a", t, 4);
                s.predicate = Predicate::Compiles;
                ASSERT_GE(pass_at_scenario_n(idx, s, "a", t, 4).score, pass.score);
                s.predicate = Predicate::PassesTests;
                before.push_back(pass);
            }
        }
        for (auto& r : recs) {
            if (r.outcome.status != EvalStatus::Success && (r.completion_index + seed) % 3 == 0) r.outcome.status = EvalStatus::Success;
        }
        const RecordIndex after(recs);
        std::size_t k = 0;
        for (const auto& s : scenarios_by_difficulty(set1(), Predicate::PassesTests)) {
            for (double t : temps) ASSERT_GE(pass_at_scenario_n(after, s, "a", t, 4).score, before[k++].score);
        }
    }
}

TEST(Tables, PlantedBasicCellRendersToThreeDecimals) {
    // 4 basic problems x 3 details x n=25 = 300 completions; 219 compile -> 0.730
    std::size_t seen = 0;
    auto recs = grid("ft", set1().ids(), {Detail::L, Detail::M, Detail::H}, {0.5}, 25,
                     [&](const std::string& id, auto, auto, auto) {
                         if (set1().at(id).difficulty != problems::Difficulty::Basic) return EvalStatus::Success;
                         return seen++ < 219 ? EvalStatus::Incorrect : EvalStatus::CompileError;
                     });
    TableOptions o;
    o.layout = TableLayout::CompileTable;
    o.providers = {"ft"};
    o.temperatures = {0.5};
    o.n = 25;
    const auto t = build_tables(RecordIndex(recs), set1(), o);
    ASSERT_EQ(t.cells.size(), 3u);
    EXPECT_EQ(t.cells[0].scenario, "Basic");
    EXPECT_EQ(t.cells[0].numerator, 219u);
    EXPECT_EQ(t.cells[0].denominator, 300u);
    EXPECT_NE(t.text.find("0.730 (t=0.5)"), std::string::npos) << t.text;
    EXPECT_NE(t.text.find("1.000"), std::string::npos);
}

TEST(Tables, FunctionalLayoutHasNineColumnsAndLatency) {
    const std::vector<double> temps{0.1, 0.5};
    const auto recs = support::random_store(3, set1(), {"a", "b"}, temps, 3);
    TableOptions o;
    o.providers = {"b", "a"};
    o.temperatures = temps;
    o.n = 3;
    const auto t = build_tables(RecordIndex(recs), set1(), o);
    EXPECT_EQ(t.cells.size(), 18u);
    EXPECT_EQ(t.cells.front().provider_id, "b");
    ASSERT_EQ(t.latency.size(), 2u);
    EXPECT_TRUE(t.latency[0].second.has_value());
    EXPECT_NE(t.text.find("Advanced/H"), std::string::npos);
    EXPECT_FALSE(t.latency_csv.empty());
}

TEST(Tables, EmptyProviderListIsConfigError) {
    TableOptions o;
    o.temperatures = {0.5};
    EXPECT_THROW(build_tables(RecordIndex({}), set1(), o), ConfigError);
}

TEST(Tables, GapsAreCoverageErrors) {
    const auto recs = support::random_store(4, set1(), {"a"}, {0.1}, 2);
    TableOptions o;
    o.providers = {"a"};
    o.temperatures = {0.1, 0.3};
    o.n = 2;
    EXPECT_THROW(build_tables(RecordIndex(recs), set1(), o), CoverageError);
}

TEST(Tables, CsvRoundTripIsExact) {
    const std::vector<double> temps{0.1, 0.3, 0.7};
    const auto recs = support::random_store(9, set1(), {"x,y", "plain"}, temps, 7);
    TableOptions o;
    o.providers = {"x,y", "plain"};
    o.temperatures = temps;
    o.n = 7;
    const auto t = build_tables(RecordIndex(recs), set1(), o);
    EXPECT_EQ(parse_score_csv(t.csv), t.cells);
    EXPECT_THROW(parse_score_csv("nope\n"), ParseError);
}

TEST(Tables, SameStoreBytesGiveIdenticalTables) {
    auto dir = support::temp_dir();
    const auto recs = support::random_store(12, set1(), {"a"}, {0.5}, 2);
    {
        harness::RecordStore store(dir->path() / "s.jsonl");
        for (const auto& r : recs) store.append(r);
    }
    TableOptions o;
    o.providers = {"a"};
    o.temperatures = {0.5};
    o.n = 2;
    const auto a = build_tables(RecordIndex(harness::load_records(dir->path() / "s.jsonl")), set1(), o);
    const auto b = build_tables(RecordIndex(harness::load_records(dir->path() / "s.jsonl")), set1(), o);
    EXPECT_EQ(a.text, b.text);
    EXPECT_EQ(a.csv, b.csv);
    const auto files = write_tables(a, dir->path() / "out" / "functional");
    EXPECT_EQ(util::read_file(files.csv), a.csv);
    EXPECT_TRUE(std::filesystem::exists(files.latency_csv));
}

TEST(FixtureSweep, PlantedCompileRateAndBestTemperature) {
    // Each basic prompt: 7 reference continuations and 3 garbage at every
    // temperature except 0.5, where all ten are the reference.
    generation::MockFixture fx;
    for (const auto& id : basic_ids()) {
        const auto& p = set1().at(id);
        const std::string good = util::read_file(p.reference_path);
        std::vector<std::string> list(7, good);
        list.insert(list.end(), 3, "this is not verilog at all\nendmodule\n");
        fx.add(p.prompt_high, list);
        fx.add_for_temperature(p.prompt_high, 0.5, {good});
    }
    generation::GenerationClient client;
    client.register_provider(std::make_shared<generation::MockProvider>(fx));
    harness::EvaluatorOptions eo;
    eo.toolchain = harness::resolve_toolchain("auto");
    harness::Evaluator ev(eo);
    harness::SweepConfig c;
    c.problem_ids = basic_ids();
    c.details = {Detail::H};
    c.temperatures = {0.1, 0.5};
    c.n = 10;
    c.provider_id = "mock";
    c.parallelism = 4;
    auto dir = support::temp_dir();
    const auto s = harness::run_sweep(c, set1(), client, ev, dir->path() / "s.jsonl");
    ASSERT_EQ(s.records, 80u);

    const RecordIndex idx(harness::load_records(dir->path() / "s.jsonl"));
    const auto compiled = pass_at_scenario_n(idx, basic(Detail::H, Predicate::Compiles), "mock", 0.1, 10);
    EXPECT_EQ(compiled.numerator, 28u);
    EXPECT_DOUBLE_EQ(compiled.score, 0.7);
    const auto best = best_temperature(idx, basic(Detail::H), "mock", {0.1, 0.5}, 10);
    EXPECT_DOUBLE_EQ(best.temperature, 0.5);
    EXPECT_DOUBLE_EQ(best.cell.score, 1.0);
}
