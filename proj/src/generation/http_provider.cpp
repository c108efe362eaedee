#include "vereval/generation/http_provider.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>

namespace vereval::generation {

using nlohmann::json;

namespace {

std::string api_key(const HttpProviderConfig& cfg) {
    if (cfg.api_key_env.empty()) return {};
    const char* v = std::getenv(cfg.api_key_env.c_str());
    return v ? std::string(v) : std::string();
}

}  // namespace

std::string strip_code_fence(const std::string& text) {
    const auto open = text.find("```");
    if (open == std::string::npos) return text;
    const auto body_start = text.find('\n', open);
    if (body_start == std::string::npos) return text;
    const auto close = text.find("```", body_start + 1);
    if (close == std::string::npos) return text.substr(body_start + 1);
    return text.substr(body_start + 1, close - body_start - 1);
}

HttpProvider::HttpProvider(HttpProviderConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.id.empty()) throw ConfigError("provider profile needs an id");
    if (cfg_.base_url.empty()) throw ConfigError("provider '" + cfg_.id + "' needs a base_url");
    if (cfg_.model.empty()) throw ConfigError("provider '" + cfg_.id + "' needs a model");
    if (cfg_.max_n_per_call == 0) throw ConfigError("provider '" + cfg_.id + "' needs max_n_per_call >= 1");
    if (cfg_.path.empty()) cfg_.path = cfg_.style == ApiStyle::Chat ? "/v1/chat/completions" : "/v1/completions";
}

void HttpProvider::check_ready() const {
    if (!cfg_.api_key_env.empty() && api_key(cfg_).empty()) {
        throw ConfigError("provider '" + cfg_.id + "' needs the environment variable " + cfg_.api_key_env);
    }
}

ProviderReply HttpProvider::complete(const ProviderCall& call) {
    check_ready();
    json body = json::object();
    body["model"] = cfg_.model;
    body["n"] = call.n;
    body["max_tokens"] = call.max_tokens;
    body["temperature"] = call.temperature;
    if (call.seed) body["seed"] = *call.seed;
    if (cfg_.style == ApiStyle::Chat) {
        json msgs = json::array();
        const auto sys = system_prompt_text(call.system_prompt_mode);
        if (!sys.empty()) msgs.push_back({{"role", "system"}, {"content", std::string(sys)}});
        msgs.push_back({{"role", "user"}, {"content", call.prompt}});
        body["messages"] = std::move(msgs);
    } else {
        body["prompt"] = call.prompt;
    }

    httplib::Client cli(cfg_.base_url);
    cli.set_connection_timeout(std::chrono::seconds(10));
    cli.set_read_timeout(std::chrono::seconds(cfg_.timeout_seconds));
    httplib::Headers headers;
    if (const auto key = api_key(cfg_); !key.empty()) headers.emplace("Authorization", "Bearer " + key);

    auto res = cli.Post(cfg_.path, headers, body.dump(), "application/json");
    if (!res) throw TransportError("transport failure: " + httplib::to_string(res.error()), true);
    if (res->status >= 500) throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200), true);
    if (res->status != 200) throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200), false);

    ProviderReply reply;
    try {
        const auto j = json::parse(res->body);
        for (const auto& choice : j.at("choices")) {
            std::string text = cfg_.style == ApiStyle::Chat ? choice.at("message").at("content").get<std::string>()
                                                            : choice.at("text").get<std::string>();
            if (cfg_.style == ApiStyle::Chat) text = strip_code_fence(text);
            reply.texts.push_back(std::move(text));
            const auto& fr = choice.contains("finish_reason") ? choice["finish_reason"] : json();
            reply.finish_reasons.push_back(fr.is_string() ? fr.get<std::string>() : "unknown");
        }
    } catch (const json::exception& e) {
        throw TransportError(std::string("unreadable response: ") + e.what(), false);
    }
    return reply;
}

}  // namespace vereval::generation
