#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "padic_periods/cli/commands.hpp"

using namespace padic_periods;
using namespace padic_periods::cli;

namespace {

const json& result(const Report& r, const std::string& name) {
    for (const json& x : r.results)
        if (x.at("name") == name) return x;
    throw std::runtime_error("no result named " + name);
}

// Oracle: lambda in F_p is supersingular iff x^{p-1} has coefficient 0 in (x(x-1)(x-lambda))^{(p-1)/2} mod p.
bool hasse_vanishes(std::uint64_t p, std::uint64_t lambda) {
    // x^3 - (1 + lambda) x^2 + lambda x
    std::vector<std::uint64_t> f{0, lambda % p, (2 * p - 1 - lambda % p) % p, 1};
    std::vector<std::uint64_t> acc{1};
    for (std::uint64_t k = 0; k < (p - 1) / 2; ++k) {
        std::vector<std::uint64_t> next(acc.size() + 3, 0);
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) next[i + j] = (next[i + j] + acc[i] * f[j]) % p;
        acc = next;
    }
    return acc[p - 1] == 0;
}

int run(const std::function<Report()>& cmd, std::string& out, std::string& err, const std::string& format = "json") {
    std::ostringstream o, e;
    int code = run_reporting(cmd, format, false, o, e);
    out = o.str();
    err = e.str();
    return code;
}

SchottkyGroup sample(const std::string& name) {
    std::ifstream in(std::string(PADIC_SAMPLES_DIR) + "/" + name);
    return group_from_json(json::parse(in));
}

} // namespace

TEST(CliSupersingular, PrimeSevenMatchesHasseScan) {
    json expected = json::array();
    for (std::uint64_t l = 2; l < 7; ++l)
        if (hasse_vanishes(7, l)) expected.push_back(json::array({l, 0}));
    Report r = cmd_supersingular(7);
    EXPECT_EQ(result(r, "lambdas").at("value"), expected);
    EXPECT_EQ(expected, json::parse("[[2,0],[4,0],[6,0]]"));
    EXPECT_EQ(result(r, "count").at("status"), "pass");
}

TEST(CliSupersingular, PrimeFiveOverQuadraticExtension) {
    Report r = cmd_supersingular(5);
    auto doc = r.document();
    EXPECT_EQ(doc["meta"]["field"]["n"], 2);
    EXPECT_EQ(doc["meta"]["field"]["p"], 5);
    // Oracle: scan F_25 = F_5[x]/(x^2 - 2) for roots of the Legendre Hasse invariant 1 + 4 l + l^2.
    json expected = json::array();
    for (std::uint64_t a = 0; a < 5; ++a)
        for (std::uint64_t b = 0; b < 5; ++b) {
            // (a + b x)^2 = a^2 + 2 b^2 + 2ab x
            std::uint64_t sq_a = (a * a + 2 * b * b) % 5, sq_b = (2 * a * b) % 5;
            if ((1 + 4 * a + sq_a) % 5 == 0 && (4 * b + sq_b) % 5 == 0) expected.push_back(json::array({a, b}));
        }
    EXPECT_EQ(result(r, "lambdas").at("value"), expected);
    EXPECT_EQ(result(r, "frobenius_permutation").at("value"), json::parse("[1,0]"));
}

TEST(CliSupersingular, InvalidPrimeExitsTwo) {
    std::string out, err;
    EXPECT_EQ(run([] { return cmd_supersingular(6); }, out, err), exit_usage);
    EXPECT_TRUE(out.empty());
    EXPECT_NE(err.find("not prime"), std::string::npos);
    EXPECT_EQ(run([] { return cmd_supersingular(3); }, out, err), exit_usage);
}

TEST(CliPairing, WorkedEntries) {
    // p = 5: (lambda_0 - lambda_1)^6 = (-x)^6 = x^6 = 2^3 = 3.
    Report r5 = cmd_pairing(5, false);
    EXPECT_EQ(result(r5, "matrix").at("value")[0][1], json::parse(R"({"val":0,"res":[3,0]})"));
    // p = 7: (4 - 2)^8 = 256 = 4 mod 7, squared to 2.
    Report r7 = cmd_pairing(7, true);
    EXPECT_EQ(result(r7, "matrix").at("value")[0][1], json::parse(R"({"val":0,"res":[4,0]})"));
    const json& table = result(r7, "powered_table").at("value");
    EXPECT_EQ(table.at("exponent"), 2);
    EXPECT_EQ(table.at("entries")[0][1], json::parse(R"({"val":0,"res":[2,0]})"));
}

TEST(CliPairing, AllChecksPassAt97) {
    std::string out, err;
    EXPECT_EQ(run([] { return cmd_pairing(97, false); }, out, err), exit_ok);
    json doc = json::parse(out);
    std::size_t checks = 0;
    for (const json& x : doc["results"]) {
        EXPECT_NE(x["status"], "fail") << x["name"];
        checks += x["status"] == "pass";
    }
    EXPECT_EQ(checks, 5u);
}

TEST(CliTheta, TateValuationOne) {
    Report r = cmd_theta(sample("tate.json"), "g1", "g1", 12);
    const json& phi = result(r, "phi").at("value");
    EXPECT_EQ(phi.at("valuation"), 1);
    EXPECT_EQ(result(r, "translation_lengths").at("value"), json::parse("[1]"));
}

TEST(CliTheta, IdentityGivesOne) {
    Report r = cmd_theta(sample("tate.json"), "identity", "g1", 4);
    const json& phi = result(r, "phi").at("value");
    EXPECT_EQ(phi.at("is_one"), true);
    EXPECT_EQ(phi.at("valuation"), 0);
    EXPECT_EQ(phi.at("residue"), json::parse("[1,0]"));
}

TEST(CliTheta, ExitCodes) {
    std::string out, err;
    EXPECT_EQ(run([] { return cmd_theta(sample("crossing.json"), "g1", "g1", 6); }, out, err), exit_geometry);
    EXPECT_EQ(run([] { return cmd_theta(sample("genus2.json"), "g1", "g2", 2); }, out, err), exit_precision);
    EXPECT_EQ(run([] { return cmd_theta(sample("genus2.json"), "g3", "g2", 5); }, out, err), exit_usage);
    EXPECT_EQ(run([] { return cmd_theta(sample("genus2.json"), "g1", "g2", 5); }, out, err), exit_ok);
}

TEST(CliTheta, MalformedGenerators) {
    EXPECT_THROW(group_from_json(json::parse(R"({"prime":5})")), precondition_error);
    EXPECT_THROW(group_from_json(json::parse(R"({"prime":5,"generators":[{"matrix":[[1,2],[2,4]]}]})")), precondition_error);
    EXPECT_THROW(group_from_json(json::parse(R"({"prime":4,"generators":[]})")), precondition_error);
}

TEST(CliQseries, Examples) {
    Report lam = cmd_qseries(5, "lambda", 40);
    EXPECT_FALSE(lam.any_failed());
    const json& coeffs = result(lam, "lambda_eta_identity").at("value").at("coefficients");
    ASSERT_EQ(coeffs.size(), 40u);
    EXPECT_EQ(coeffs[0], "16");
    EXPECT_EQ(coeffs[1], "-128");
    EXPECT_EQ(coeffs[2], "704");

    Report fm = cmd_qseries(5, "fourier-mu", 20);
    const json& f = result(fm, "fourier_mu").at("value");
    EXPECT_EQ(f.at("coefficient"), "5^-3");
    EXPECT_EQ(f.at("exponent"), -6);

    Report ram = cmd_qseries(7, "ramify", 20);
    EXPECT_FALSE(ram.any_failed());
    EXPECT_EQ(result(ram, "local_parameter_relations").at("status"), "pass");
    const json& table = result(ram, "ramification_table_level_3");
    EXPECT_EQ(table.at("status"), "finding");
    EXPECT_EQ(table.at("value").at("mismatches"), json::parse(R"(["0:pi_0","0:pi_3"])"));
}

TEST(CliQseries, AllChecksPass) {
    for (std::uint64_t p : {5u, 7u, 13u}) {
        Report r = cmd_qseries(p, "all", 12);
        EXPECT_FALSE(r.any_failed()) << p;
    }
}

TEST(CliQseries, BadArguments) {
    std::string out, err;
    EXPECT_EQ(run([] { return cmd_qseries(5, "nope", 10); }, out, err), exit_usage);
    EXPECT_EQ(run([] { return cmd_qseries(5, "lambda", 0); }, out, err), exit_usage);
    EXPECT_EQ(run([] { return cmd_qseries(9, "lambda", 5); }, out, err), exit_usage);
}

TEST(CliRender, CsvQuotingAndJsonDeterminism) {
    EXPECT_EQ(csv_quote("plain"), "plain");
    EXPECT_EQ(csv_quote("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
    Report r = cmd_pairing(11, true);
    EXPECT_EQ(render(r, "json"), render(cmd_pairing(11, true), "json"));
    std::string csv = render(r, "csv");
    EXPECT_EQ(csv.rfind("command,name,status,value\r\n", 0), 0u);
    EXPECT_THROW(render(r, "xml"), precondition_error);
    r.timing_ms = 1.5;
    EXPECT_EQ(r.document()["meta"]["timing_ms"], 1.5);
}

TEST(CliCache, RoundTrip) {
    auto dir = std::filesystem::temp_directory_path() / "padic_periods_cache_test";
    std::filesystem::remove_all(dir);
    SupersingularCache cache(dir);
    for (std::uint64_t p : {5u, 7u, 101u}) {
        SupersingularSet fresh = supersingular_lambdas(p);
        EXPECT_FALSE(cache.load(p));
        SupersingularSet got = cache.get(p);
        auto loaded = cache.load(p);
        ASSERT_TRUE(loaded);
        for (const SupersingularSet* s : {&got, &*loaded}) {
            EXPECT_EQ(s->lambdas, fresh.lambdas);
            EXPECT_EQ(s->frobenius_perm, fresh.frobenius_perm);
            EXPECT_EQ(s->ctx.n, fresh.ctx.n);
            EXPECT_EQ(s->order_key, fresh.order_key);
        }
    }
    json stale = SupersingularCache::encode(supersingular_lambdas(5));
    stale["version"] = "0.0.0-old";
    EXPECT_FALSE(SupersingularCache::decode(stale, 5));
    EXPECT_FALSE(SupersingularCache::decode(SupersingularCache::encode(supersingular_lambdas(7)), 5));
    std::filesystem::remove_all(dir);
}
