#pragma once

#include "vereval/detail.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vereval::problems {

enum class SetKind { SetI, SetII };

enum class Difficulty {
    Basic,
    Intermediate,
    Advanced,
    GettingStarted,
    VerilogLanguage,
    CircuitsCombinational,
    CircuitsSequential,
    VerifyBugs,
};

std::string_view to_string(SetKind s) noexcept;
std::string_view to_string(Difficulty d) noexcept;
SetKind parse_set_kind(std::string_view s);
Difficulty parse_difficulty(std::string_view s);
bool difficulty_belongs_to(Difficulty d, SetKind s) noexcept;
/// Difficulty bands of a set, in table order.
std::vector<Difficulty> difficulty_ladder(SetKind s);

struct Problem {
    std::string id;
    SetKind set = SetKind::SetI;
    Difficulty difficulty = Difficulty::Basic;
    std::string title;
    std::string module_name;
    std::string prompt_low;
    std::string prompt_medium;
    std::string prompt_high;
    std::filesystem::path testbench_path;
    std::filesystem::path reference_path;
    std::string notes;
};

struct ProblemSet {
    std::string name;
    std::vector<Problem> problems;

    const Problem* find(std::string_view id) const noexcept;
    const Problem& at(std::string_view id) const;  // throws ValidationError
    std::vector<std::string> ids() const;
};

/// Loads every `<dir>/*/problem.json`, ordered by natural sort of the
/// subdirectory name, and checks all invariants. Throws ValidationError
/// (naming the problem) or ParseError.
ProblemSet load_problem_set(const std::filesystem::path& dir);

/// Invariant checks shared by the loader; exposed for tests.
void check_problem(const Problem& p);
void check_problem_set(const ProblemSet& set);

const std::string& prompt_for(const Problem& p, Detail d) noexcept;

/// "p2" < "p10".
bool natural_less(std::string_view a, std::string_view b) noexcept;

}  // namespace vereval::problems
