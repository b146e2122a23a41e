#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "padic_periods/cli/json_codec.hpp"
#include "padic_periods/supersingular/supersingular.hpp"

#ifndef PADIC_PERIODS_VERSION
#define PADIC_PERIODS_VERSION "0.0.0"
#endif

namespace padic_periods::cli {

inline constexpr const char* tool_version = PADIC_PERIODS_VERSION;

/// One JSON file per prime; entries written by another version are ignored and overwritten.
class SupersingularCache {
public:
    explicit SupersingularCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// --cache-dir if given, else $PADIC_PERIODS_CACHE, else no cache.
    static std::optional<SupersingularCache> resolve(const std::string& flag) {
        if (!flag.empty()) return SupersingularCache(flag);
        if (const char* env = std::getenv("PADIC_PERIODS_CACHE"); env && *env) return SupersingularCache(env);
        return std::nullopt;
    }

    std::filesystem::path path_for(std::uint64_t p) const { return dir_ / ("supersingular_" + std::to_string(p) + ".json"); }

    static json encode(const SupersingularSet& s) {
        json lambdas = json::array();
        for (const Fp2& l : s.lambdas) lambdas.push_back(to_json(l));
        return json{{"version", tool_version}, {"p", s.p}, {"n", s.ctx.n}, {"order_key", s.order_key},
                    {"lambdas", lambdas}, {"frobenius", s.frobenius_perm}};
    }

    static std::optional<SupersingularSet> decode(const json& j, std::uint64_t p) {
        if (j.value("version", std::string()) != tool_version || j.value("p", std::uint64_t{0}) != p) return std::nullopt;
        SupersingularSet s;
        s.p = p;
        s.ctx = Fp2Context::for_prime(p);
        if (j.at("n").get<std::uint64_t>() != s.ctx.n) return std::nullopt;
        s.order_key = j.at("order_key").get<std::string>();
        for (const json& l : j.at("lambdas")) s.lambdas.push_back(fp2_from_json(l, s.ctx));
        s.frobenius_perm = j.at("frobenius").get<std::vector<std::size_t>>();
        if (s.frobenius_perm.size() != s.lambdas.size()) return std::nullopt;
        return s;
    }

    std::optional<SupersingularSet> load(std::uint64_t p) const {
        std::ifstream in(path_for(p));
        if (!in) return std::nullopt;
        try {
            return decode(json::parse(in), p);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    void store(const SupersingularSet& s) const {
        std::filesystem::create_directories(dir_);
        const auto target = path_for(s.p);
        const auto tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp);
            out << encode(s).dump(2) << "\n";
        }
        std::filesystem::rename(tmp, target);
    }

    SupersingularSet get(std::uint64_t p) const {
        if (auto s = load(p)) return *s;
        SupersingularSet s = supersingular_lambdas(p);
        store(s);
        return s;
    }

private:
    std::filesystem::path dir_;
};

inline SupersingularSet supersingular_with_cache(std::uint64_t p, const std::optional<SupersingularCache>& cache) {
    require_working_prime(p);
    return cache ? cache->get(p) : supersingular_lambdas(p);
}

} // namespace padic_periods::cli
