#include "vereval/generation/profile.hpp"

#include "vereval/generation/http_provider.hpp"
#include "vereval/generation/mock_provider.hpp"

namespace vereval::generation {

ProviderProfile make_provider(const nlohmann::json& p, const std::filesystem::path& base_dir) {
    try {
        ProviderProfile out;
        const auto id = p.at("id").get<std::string>();
        const auto kind = p.at("kind").get<std::string>();
        out.rate_limit.calls_per_second = p.value("requests_per_second", 0.0);
        out.rate_limit.burst = p.value("burst", 1.0);

        if (kind == "mock") {
            auto fixture_path = std::filesystem::path(p.at("fixture").get<std::string>());
            if (fixture_path.is_relative()) fixture_path = base_dir / fixture_path;
            auto mock = std::make_shared<MockProvider>(MockFixture::load(fixture_path), id,
                                                       p.value("max_n_per_call", std::size_t{0}));
            if (p.contains("fallback")) mock->set_fallback(p.at("fallback").get<std::string>());
            out.provider = std::move(mock);
            return out;
        }
        if (kind != "completions" && kind != "chat") {
            throw ConfigError("provider '" + id + "' has unknown kind '" + kind + "' (expected mock, completions or chat)");
        }
        HttpProviderConfig cfg;
        cfg.id = id;
        cfg.style = kind == "chat" ? ApiStyle::Chat : ApiStyle::Completions;
        cfg.base_url = p.at("base_url").get<std::string>();
        cfg.path = p.value("path", std::string());
        cfg.model = p.at("model").get<std::string>();
        cfg.api_key_env = p.value("api_key_env", std::string());
        cfg.max_n_per_call = p.value("max_n_per_call", std::size_t{10});
        cfg.max_tokens = p.value("max_tokens", kDefaultMaxTokens);
        cfg.timeout_seconds = p.value("timeout_seconds", 120);
        out.provider = std::make_shared<HttpProvider>(std::move(cfg));
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad provider profile: ") + e.what());
    }
}

}  // namespace vereval::generation
