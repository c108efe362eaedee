#include "vereval/generation/mock_provider.hpp"

#include "vereval/util/digest.hpp"
#include "vereval/util/files.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

namespace vereval::generation {

using nlohmann::json;

namespace {

std::int64_t milli(double t) { return std::llround(t * 1000.0); }

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::size_t line_of_key(std::string_view text, const std::string& key) {
    const auto at = text.find(json(key).dump());
    return at == std::string_view::npos ? 0 : line_of_offset(text, at);
}

bool is_digest(const std::string& s) {
    return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
               return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
           });
}

std::vector<std::string> string_list(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw std::runtime_error(std::string(what) + " must be a non-empty array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw std::runtime_error(std::string(what) + " must contain only strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

}  // namespace

MockFixture MockFixture::parse(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed mock fixture: ") + e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    if (!j.is_object()) throw ParseError("mock fixture must be a JSON object", 1);

    MockFixture f;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "fallback") {
                if (!value.is_string()) throw std::runtime_error("fallback must be a string");
                f.fallback = value.get<std::string>();
                continue;
            }
            if (key == "latency_ms") {
                if (!value.is_number() || value.get<double>() < 0) throw std::runtime_error("latency_ms must be >= 0");
                f.latency_ms = value.get<double>();
                continue;
            }
            if (!is_digest(key)) throw std::runtime_error("key is not a lowercase SHA-256 hex digest");
            MockEntry e;
            if (value.is_array()) {
                e.completions = string_list(value, "completions");
            } else if (value.is_object()) {
                for (const auto& [k, v] : value.items()) {
                    if (k == "completions") {
                        e.completions = string_list(v, "completions");
                    } else if (k == "latency_ms") {
                        if (!v.is_number() || v.get<double>() < 0) throw std::runtime_error("latency_ms must be >= 0");
                        e.latency_ms = v.get<double>();
                    } else if (k == "temperatures") {
                        if (!v.is_object()) throw std::runtime_error("temperatures must be an object");
                        for (const auto& [t, list] : v.items()) {
                            double temp = 0;
                            const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), temp);
                            if (ec != std::errc() || p != t.data() + t.size()) {
                                throw std::runtime_error("temperature key '" + t + "' is not a number");
                            }
                            e.by_temperature[milli(temp)] = string_list(list, "temperature completions");
                        }
                    } else {
                        throw std::runtime_error("unknown field '" + k + "'");
                    }
                }
                if (e.completions.empty() && e.by_temperature.empty()) {
                    throw std::runtime_error("entry has no completions");
                }
            } else {
                throw std::runtime_error("entry must be an array or an object");
            }
            f.entries[key] = std::move(e);
        } catch (const std::runtime_error& err) {
            throw ParseError("mock fixture entry '" + key + "': " + err.what(), line_of_key(text, key));
        }
    }
    return f;
}

MockFixture MockFixture::load(const std::filesystem::path& path) {
    const auto text = util::read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void MockFixture::add(std::string_view prompt, std::vector<std::string> completions) {
    entries[util::sha256_hex(prompt)].completions = std::move(completions);
}

void MockFixture::add_for_temperature(std::string_view prompt, double temperature, std::vector<std::string> completions) {
    entries[util::sha256_hex(prompt)].by_temperature[milli(temperature)] = std::move(completions);
}

std::string MockFixture::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [digest, e] : entries) {
        if (e.by_temperature.empty() && !e.latency_ms) {
            j[digest] = e.completions;
            continue;
        }
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        if (!e.completions.empty()) o["completions"] = e.completions;
        if (e.latency_ms) o["latency_ms"] = *e.latency_ms;
        if (!e.by_temperature.empty()) {
            nlohmann::ordered_json t = nlohmann::ordered_json::object();
            for (const auto& [m, list] : e.by_temperature) {
                char buf[32];
                const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<double>(m) / 1000.0);
                t[std::string(buf, p)] = list;
            }
            o["temperatures"] = std::move(t);
        }
        j[digest] = std::move(o);
    }
    if (fallback) j["fallback"] = *fallback;
    if (latency_ms > 0) j["latency_ms"] = latency_ms;
    return j.dump(2) + "\n";
}

void MockFixture::save(const std::filesystem::path& path) const { util::write_file_atomic(path, to_json()); }

MockProvider::MockProvider(MockFixture fixture, std::string id, std::size_t max_n_per_call)
    : fixture_(std::move(fixture)),
      id_(std::move(id)),
      cap_(max_n_per_call == 0 ? std::numeric_limits<std::size_t>::max() : max_n_per_call) {}

std::string MockProvider::text_for(std::string_view prompt, double temperature, std::size_t index) const {
    const auto it = fixture_.entries.find(util::sha256_hex(prompt));
    if (it != fixture_.entries.end()) {
        const auto& e = it->second;
        const auto t = e.by_temperature.find(milli(temperature));
        const auto& list = t != e.by_temperature.end() ? t->second : e.completions;
        if (!list.empty()) return list[index % list.size()];
    }
    if (fallback_) return *fallback_;
    return fixture_.fallback.value_or("");
}

ProviderReply MockProvider::complete(const ProviderCall& call) {
    ++calls_;
    double delay = fixture_.latency_ms;
    if (const auto it = fixture_.entries.find(util::sha256_hex(call.prompt)); it != fixture_.entries.end()) {
        delay = it->second.latency_ms.value_or(delay);
    }
    if (delay > 0) std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(delay));

    ProviderReply r;
    for (std::size_t i = 0; i < call.n; ++i) {
        r.texts.push_back(text_for(call.prompt, call.temperature, call.first_index + i));
        r.finish_reasons.push_back("stop");
    }
    return r;
}

}  // namespace vereval::generation
