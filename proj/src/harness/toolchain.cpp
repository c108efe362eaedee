#include "vereval/harness/toolchain.hpp"

#include "vereval/errors.hpp"
#include "vereval/util/subprocess.hpp"

#include <cstdlib>

namespace vereval::harness {

namespace fs = std::filesystem;

ToolchainConfig icarus_toolchain() {
    ToolchainConfig tc;
    tc.name = "icarus";
    tc.compile_command = {"iverilog", "-s", "{top}", "-o", "{image}", "{sources}"};
    tc.simulate_command = {"vvp", "-n", "{image}"};
    tc.image_name = "sim.vvp";
    tc.required_programs = {"iverilog", "vvp"};
    return tc;
}

ToolchainConfig verilator_toolchain(const fs::path& script_dir) {
    ToolchainConfig tc;
    tc.name = "verilator";
    const auto script = (script_dir / "verilator-build.sh").string();
    tc.compile_command = {script, "{image}", "{top}", "{sources}"};
    tc.simulate_command = {"{image}", "+verilator+quiet"};
    tc.image_name = "sim.bin";
    tc.required_programs = {script, "g++"};
    return tc;
}

fs::path default_toolchain_dir() {
    if (const char* env = std::getenv("VEREVAL_TOOLCHAIN_DIR"); env && *env) return env;
#ifdef VEREVAL_TOOLCHAIN_DIR
    return VEREVAL_TOOLCHAIN_DIR;
#else
    return "toolchains";
#endif
}

ToolchainConfig resolve_toolchain(std::string_view name) {
    if (name == "icarus") return icarus_toolchain();
    if (name == "verilator") return verilator_toolchain(default_toolchain_dir());
    if (name == "auto") {
        if (util::find_program("iverilog") && util::find_program("vvp")) return icarus_toolchain();
        return verilator_toolchain(default_toolchain_dir());
    }
    throw ConfigError("unknown toolchain '" + std::string(name) + "' (expected icarus, verilator or auto)");
}

void preflight(const ToolchainConfig& tc) {
    std::string missing;
    for (const auto& p : tc.required_programs) {
        if (!util::find_program(p)) missing += (missing.empty() ? "" : ", ") + p;
    }
    if (!missing.empty()) {
        throw ToolNotFound("toolchain '" + tc.name + "' is missing: " + missing);
    }
}

std::string fingerprint(const ToolchainConfig& tc) {
    std::string s = tc.name;
    const auto add = [&](const std::vector<std::string>& v) {
        s += '\x1f';
        for (const auto& a : v) s += a + '\x1e';
    };
    add(tc.compile_command);
    add(tc.simulate_command);
    s += '\x1f' + tc.image_name + '\x1f' + tc.top_module;
    return s;
}

std::vector<std::string> expand_command(const std::vector<std::string>& templ,
                                        const std::map<std::string, std::vector<std::string>>& values) {
    std::vector<std::string> out;
    for (const auto& arg : templ) {
        if (arg.size() > 2 && arg.front() == '{' && arg.back() == '}') {
            if (auto it = values.find(arg.substr(1, arg.size() - 2)); it != values.end()) {
                out.insert(out.end(), it->second.begin(), it->second.end());
                continue;
            }
        }
        std::string a = arg;
        for (const auto& [key, v] : values) {
            const std::string ph = "{" + key + "}";
            if (a.find(ph) == std::string::npos) continue;
            if (v.size() != 1) throw ConfigError("placeholder " + ph + " must be a whole argument");
            for (auto at = a.find(ph); at != std::string::npos; at = a.find(ph, at + v[0].size())) {
                a.replace(at, ph.size(), v[0]);
            }
        }
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace vereval::harness
