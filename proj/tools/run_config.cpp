#include "run_config.hpp"

#include "vereval/errors.hpp"
#include "vereval/util/files.hpp"

#include <charconv>
#include <set>

namespace vereval::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_relative() ? base / path : path;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto at = s.find(sep, start);
        auto piece = s.substr(start, at == std::string::npos ? std::string::npos : at - start);
        while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
        while (!piece.empty() && piece.back() == ' ') piece.pop_back();
        if (!piece.empty()) out.push_back(piece);
        if (at == std::string::npos) break;
        start = at + 1;
    }
    return out;
}

}  // namespace

RunConfig default_run_config() {
    RunConfig c;
#ifdef VEREVAL_DATA_DIR
    c.problems = fs::path(VEREVAL_DATA_DIR) / "problems" / "set1";
#else
    c.problems = "data/problems/set1";
#endif
    return c;
}

std::vector<double> parse_temperature_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& piece : split(s, ',')) {
        double v = 0;
        const auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (ec != std::errc() || p != piece.data() + piece.size() || !(v >= 0.0 && v <= 1.0)) {
            throw ConfigError("bad temperature '" + piece + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty temperature list");
    return out;
}

std::vector<Detail> parse_detail_list(const std::string& s) {
    std::vector<Detail> out;
    for (const auto& piece : split(s, ',')) {
        try {
            out.push_back(parse_detail(piece));
        } catch (const ParseError& e) {
            throw ConfigError(e.what());
        }
    }
    if (out.empty()) throw ConfigError("empty detail list");
    return out;
}

RunConfig parse_run_config(const json& j, const fs::path& base_dir) {
    if (!j.is_object()) throw ConfigError("run config must be a JSON object");
    RunConfig c = default_run_config();
    c.base_dir = base_dir;
    try {
        if (j.contains("toolchain")) {
            const auto& t = j.at("toolchain");
            if (t.is_string()) {
                c.toolchain_name = t.get<std::string>();
                harness::resolve_toolchain(c.toolchain_name);  // validates the name
            } else {
                harness::ToolchainConfig tc;
                tc.name = t.value("name", std::string("custom"));
                tc.compile_command = t.at("compile").get<std::vector<std::string>>();
                tc.simulate_command = t.at("simulate").get<std::vector<std::string>>();
                tc.image_name = t.value("image", std::string("sim.out"));
                tc.top_module = t.value("top", std::string("tb"));
                if (tc.compile_command.empty() || tc.simulate_command.empty()) {
                    throw ConfigError("toolchain commands must not be empty");
                }
                tc.required_programs = {tc.compile_command.front()};
                if (tc.simulate_command.front() != "{image}") tc.required_programs.push_back(tc.simulate_command.front());
                c.custom_toolchain = std::move(tc);
                c.toolchain_name = c.custom_toolchain->name;
            }
        }

        if (j.contains("providers")) {
            std::set<std::string> ids;
            for (const auto& p : j.at("providers")) {
                const auto id = p.at("id").get<std::string>();
                if (!ids.insert(id).second) throw ConfigError("provider '" + id + "' is defined twice");
                auto copy = p;
                if (copy.contains("fixture")) copy["fixture"] = resolve(base_dir, copy["fixture"].get<std::string>()).string();
                c.providers.push_back(std::move(copy));
            }
            c.default_provider = j.value("default_provider", std::string());
            if (c.default_provider.empty() && c.providers.size() == 1) {
                c.default_provider = c.providers.front().at("id").get<std::string>();
            }
            if (!c.default_provider.empty() && !ids.contains(c.default_provider)) {
                throw ConfigError("default_provider '" + c.default_provider + "' is not defined");
            }
            if (c.default_provider.empty() && c.providers.size() > 1) {
                throw ConfigError("several providers are defined; set default_provider");
            }
        }

        if (j.contains("sweep")) {
            const auto& s = j.at("sweep");
            if (s.contains("temperatures")) c.temperatures = s.at("temperatures").get<std::vector<double>>();
            c.n = s.value("n", c.n);
            if (s.contains("details")) {
                c.details.clear();
                for (const auto& d : s.at("details")) c.details.push_back(parse_detail(d.get<std::string>()));
            }
            c.parallelism = s.value("parallelism", c.parallelism);
            c.timeout_seconds = s.value("timeout_seconds", c.timeout_seconds);
            c.max_tokens = s.value("max_tokens", c.max_tokens);
            if (s.contains("system_prompt")) {
                c.system_prompt = generation::parse_system_prompt_mode(s.at("system_prompt").get<std::string>());
            }
        }

        if (j.contains("paths")) {
            const auto& p = j.at("paths");
            if (p.contains("problems")) c.problems = resolve(base_dir, p.at("problems").get<std::string>());
            if (p.contains("store")) c.store = resolve(base_dir, p.at("store").get<std::string>());
            if (p.contains("scratch")) c.scratch = resolve(base_dir, p.at("scratch").get<std::string>());
            if (p.contains("reports")) c.reports = resolve(base_dir, p.at("reports").get<std::string>());
        }

        if (j.contains("corpus")) {
            const auto& k = j.at("corpus");
            if (k.contains("roots")) {
                for (const auto& r : k.at("roots")) {
                    corpus::CorpusSource src;
                    src.root = resolve(base_dir, r.at("path").get<std::string>());
                    src.origin = corpus::parse_origin(r.value("origin", std::string("repo")));
                    c.corpus_roots.push_back(std::move(src));
                }
            }
            if (k.contains("out")) c.corpus_out = resolve(base_dir, k.at("out").get<std::string>());
            c.dedup_threshold = k.value("threshold", c.dedup_threshold);
            c.window = k.value("window", c.window);
            c.stride = k.value("stride", c.stride);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad run config: ") + e.what());
    } catch (const ParseError& e) {
        throw ConfigError(std::string("bad run config: ") + e.what());
    }
    if (c.n == 0) throw ConfigError("sweep.n must be >= 1");
    if (c.parallelism == 0) throw ConfigError("sweep.parallelism must be >= 1");
    if (!(c.timeout_seconds > 0)) throw ConfigError("sweep.timeout_seconds must be > 0");
    return c;
}

RunConfig load_run_config(const fs::path& path) {
    if (!fs::is_regular_file(path)) throw ConfigError("config '" + path.string() + "' does not exist");
    json j;
    try {
        j = json::parse(util::read_file(path));
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_run_config(j, fs::absolute(path).parent_path());
}

harness::ToolchainConfig toolchain_of(const RunConfig& cfg) {
    if (cfg.custom_toolchain) return *cfg.custom_toolchain;
    return harness::resolve_toolchain(cfg.toolchain_name);
}

const json& provider_profile(const RunConfig& cfg, const std::string& id) {
    const auto& want = id.empty() ? cfg.default_provider : id;
    if (want.empty()) throw ConfigError("no provider selected; pass --provider or --mock-fixture");
    for (const auto& p : cfg.providers) {
        if (p.at("id").get<std::string>() == want) return p;
    }
    throw ConfigError("provider '" + want + "' is not defined in the run config");
}

}  // namespace vereval::cli
