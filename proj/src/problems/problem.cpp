#include "vereval/problems/problem.hpp"

#include "vereval/errors.hpp"
#include "vereval/postprocess/lexer.hpp"
#include "vereval/util/files.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <utility>

namespace vereval::problems {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<std::pair<Difficulty, std::string_view>, 8> kDifficultyNames{{
    {Difficulty::Basic, "Basic"},
    {Difficulty::Intermediate, "Intermediate"},
    {Difficulty::Advanced, "Advanced"},
    {Difficulty::GettingStarted, "GettingStarted"},
    {Difficulty::VerilogLanguage, "VerilogLanguage"},
    {Difficulty::CircuitsCombinational, "CircuitsCombinational"},
    {Difficulty::CircuitsSequential, "CircuitsSequential"},
    {Difficulty::VerifyBugs, "VerifyBugs"},
}};

std::string read_fragment(const fs::path& p, const std::string& problem_id, const char* what) {
    if (!fs::is_regular_file(p)) {
        throw ValidationError(problem_id + ": " + what + " '" + p.string() + "' does not exist");
    }
    return util::read_file(p);
}

Problem load_one(const fs::path& dir) {
    const auto manifest = dir / "problem.json";
    json j;
    try {
        j = json::parse(util::read_file(manifest));
    } catch (const json::parse_error& e) {
        throw ParseError("malformed manifest '" + manifest.string() + "': " + e.what());
    }

    Problem p;
    try {
        p.id = j.at("id").get<std::string>();
        p.set = parse_set_kind(j.at("set").get<std::string>());
        p.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
        p.title = j.at("title").get<std::string>();
        p.module_name = j.at("module_name").get<std::string>();
        p.notes = j.value("notes", std::string());
        const auto& prompts = j.at("prompts");
        p.prompt_low = read_fragment(dir / prompts.at("L").get<std::string>(), p.id, "prompt L");
        p.prompt_medium = read_fragment(dir / prompts.at("M").get<std::string>(), p.id, "prompt M");
        p.prompt_high = read_fragment(dir / prompts.at("H").get<std::string>(), p.id, "prompt H");
        p.testbench_path = dir / j.at("testbench").get<std::string>();
        p.reference_path = dir / j.at("reference").get<std::string>();
    } catch (const json::exception& e) {
        throw ValidationError("manifest '" + manifest.string() + "': " + e.what());
    }
    check_problem(p);
    return p;
}

bool opens_one_module(std::string_view prompt) {
    const auto b = postprocess::module_balance(prompt);
    return b.net == 1 && b.min_depth >= 0;
}

}  // namespace

std::string_view to_string(SetKind s) noexcept { return s == SetKind::SetI ? "SetI" : "SetII"; }

std::string_view to_string(Difficulty d) noexcept {
    for (const auto& [k, name] : kDifficultyNames) {
        if (k == d) return name;
    }
    return "?";
}

SetKind parse_set_kind(std::string_view s) {
    if (s == "SetI") return SetKind::SetI;
    if (s == "SetII") return SetKind::SetII;
    throw ParseError("unknown problem set kind '" + std::string(s) + "'");
}

Difficulty parse_difficulty(std::string_view s) {
    for (const auto& [k, name] : kDifficultyNames) {
        if (name == s) return k;
    }
    throw ParseError("unknown difficulty '" + std::string(s) + "'");
}

bool difficulty_belongs_to(Difficulty d, SetKind s) noexcept {
    const bool first = d == Difficulty::Basic || d == Difficulty::Intermediate || d == Difficulty::Advanced;
    return (s == SetKind::SetI) == first;
}

std::vector<Difficulty> difficulty_ladder(SetKind s) {
    std::vector<Difficulty> out;
    for (const auto& [d, name] : kDifficultyNames) {
        if (difficulty_belongs_to(d, s)) out.push_back(d);
    }
    return out;
}

const Problem* ProblemSet::find(std::string_view id) const noexcept {
    for (const auto& p : problems) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

const Problem& ProblemSet::at(std::string_view id) const {
    if (const auto* p = find(id)) return *p;
    throw ValidationError("unknown problem '" + std::string(id) + "' in set '" + name + "'");
}

std::vector<std::string> ProblemSet::ids() const {
    std::vector<std::string> out;
    for (const auto& p : problems) out.push_back(p.id);
    return out;
}

bool natural_less(std::string_view a, std::string_view b) noexcept {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            auto na = a.substr(i, ie - i), nb = b.substr(j, je - j);
            while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
            while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = ie;
            j = je;
            continue;
        }
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
    }
    return a.size() - i < b.size() - j;
}

void check_problem(const Problem& p) {
    if (p.id.empty()) throw ValidationError("problem with empty id");
    if (!difficulty_belongs_to(p.difficulty, p.set)) {
        throw ValidationError(p.id + ": difficulty " + std::string(to_string(p.difficulty)) + " is not part of " +
                              std::string(to_string(p.set)));
    }
    if (!p.prompt_medium.starts_with(p.prompt_low)) {
        throw ValidationError(p.id + ": prompt M does not extend prompt L");
    }
    if (!p.prompt_high.starts_with(p.prompt_medium)) {
        throw ValidationError(p.id + ": prompt H does not extend prompt M");
    }
    for (auto d : kAllDetails) {
        if (!opens_one_module(prompt_for(p, d))) {
            throw ValidationError(p.id + ": prompt " + std::string(to_string(d)) +
                                  " must leave exactly one module open");
        }
    }
    for (const auto& [path, what] : {std::pair{p.testbench_path, "testbench"}, std::pair{p.reference_path, "reference"}}) {
        std::error_code ec;
        if (!fs::is_regular_file(path, ec)) {
            throw ValidationError(p.id + ": " + what + " '" + path.string() + "' does not exist");
        }
        if (fs::file_size(path, ec) == 0) throw ValidationError(p.id + ": " + what + " '" + path.string() + "' is empty");
    }
}

void check_problem_set(const ProblemSet& set) {
    if (set.problems.empty()) throw ValidationError("problem set '" + set.name + "' is empty");
    std::set<std::string_view> ids;
    for (const auto& p : set.problems) {
        if (!ids.insert(p.id).second) throw ValidationError("duplicate problem id '" + p.id + "'");
    }
    const auto kind = set.problems.front().set;
    for (const auto& p : set.problems) {
        if (p.set != kind) throw ValidationError(p.id + ": problem sets cannot be mixed");
    }
    if (kind == SetKind::SetI) {
        std::map<Difficulty, std::size_t> counts;
        for (const auto& p : set.problems) ++counts[p.difficulty];
        if (set.problems.size() != 17 || counts[Difficulty::Basic] != 4 || counts[Difficulty::Intermediate] != 8 ||
            counts[Difficulty::Advanced] != 5) {
            throw ValidationError("SetI must hold 17 problems split 4/8/5 by difficulty; found " +
                                  std::to_string(set.problems.size()) + " (" +
                                  std::to_string(counts[Difficulty::Basic]) + "/" +
                                  std::to_string(counts[Difficulty::Intermediate]) + "/" +
                                  std::to_string(counts[Difficulty::Advanced]) + ")");
        }
    }
}

ProblemSet load_problem_set(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("problem directory '" + dir.string() + "' does not exist");
    std::vector<fs::path> subdirs;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_directory() && fs::exists(e.path() / "problem.json")) subdirs.push_back(e.path());
    }
    std::sort(subdirs.begin(), subdirs.end(), [](const fs::path& a, const fs::path& b) {
        return natural_less(a.filename().string(), b.filename().string());
    });

    ProblemSet set;
    set.name = dir.filename().empty() ? dir.parent_path().filename().string() : dir.filename().string();
    for (const auto& d : subdirs) set.problems.push_back(load_one(d));
    check_problem_set(set);
    return set;
}

const std::string& prompt_for(const Problem& p, Detail d) noexcept {
    switch (d) {
        case Detail::L: return p.prompt_low;
        case Detail::M: return p.prompt_medium;
        case Detail::H: break;
    }
    return p.prompt_high;
}

}  // namespace vereval::problems
