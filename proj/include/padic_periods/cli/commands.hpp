#pragma once

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "padic_periods/cli/cache.hpp"
#include "padic_periods/cli/json_codec.hpp"
#include "padic_periods/pairing/pairing.hpp"
#include "padic_periods/qseries/qseries.hpp"
#include "padic_periods/theta/theta.hpp"

namespace padic_periods::cli {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_usage = 2, exit_geometry = 3, exit_precision = 4 };

/// Machine-readable output: {meta, params, results}. Results carry a name, a status
/// (pass, fail, info or finding) and a value.
struct Report {
    std::string command;
    json params = json::object();
    std::optional<Fp2Context> field;
    json results = json::array();
    std::optional<double> timing_ms;

    void add(const std::string& name, const std::string& status, json value) {
        results.push_back(json{{"name", name}, {"status", status}, {"value", std::move(value)}});
    }
    void check(const std::string& name, bool ok, json value) { add(name, ok ? "pass" : "fail", std::move(value)); }

    bool any_failed() const {
        for (const json& r : results)
            if (r.at("status") == "fail") return true;
        return false;
    }

    json document() const {
        json meta{{"tool", "padic_periods"}, {"version", tool_version}, {"command", command}};
        meta["field"] = field ? json{{"p", field->p}, {"n", field->n}, {"model", "F_p[x]/(x^2 - n)"}} : json(nullptr);
        if (timing_ms) meta["timing_ms"] = *timing_ms;
        return json{{"meta", meta}, {"params", params}, {"results", results}};
    }
};

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

/// "json" (pretty, sorted keys) or "csv" (one row per result, value as compact JSON).
inline std::string render(const Report& r, const std::string& format) {
    if (format == "json") return r.document().dump(2) + "\n";
    if (format != "csv") throw precondition_error("unknown format '" + format + "'");
    std::ostringstream out;
    out << "command,name,status,value\r\n";
    for (const json& row : r.results) {
        out << csv_quote(r.command) << ',' << csv_quote(row.at("name").get<std::string>()) << ','
            << csv_quote(row.at("status").get<std::string>()) << ',' << csv_quote(row.at("value").dump()) << "\r\n";
    }
    return out.str();
}

inline json residual_matrix_json(const std::vector<std::vector<ResidualClass>>& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& c : row) r.push_back(to_json(c));
        rows.push_back(r);
    }
    return rows;
}

inline Report cmd_supersingular(std::uint64_t p, const std::optional<SupersingularCache>& cache = std::nullopt) {
    Report r;
    r.command = "supersingular";
    r.params = {{"prime", p}};
    SupersingularSet s = supersingular_with_cache(p, cache);
    r.field = s.ctx;
    json lambdas = json::array();
    for (const Fp2& l : s.lambdas) lambdas.push_back(to_json(l));
    r.add("lambdas", "info", lambdas);
    r.add("frobenius_permutation", "info", s.frobenius_perm);
    r.add("deuring_polynomial", "info", deuring_polynomial(p));
    r.check("count", s.size() == (p - 1) / 2, json{{"count", s.size()}, {"expected", (p - 1) / 2}});
    return r;
}

inline Report cmd_pairing(std::uint64_t p, bool powered, const std::optional<SupersingularCache>& cache = std::nullopt) {
    Report r;
    r.command = "pairing";
    r.params = {{"prime", p}, {"powered", powered}};
    PairingMatrix m = pairing_matrix_from_basis(supersingular_with_cache(p, cache));
    r.field = m.basis.ctx;
    json lambdas = json::array();
    for (const Fp2& l : m.basis.lambdas) lambdas.push_back(to_json(l));
    r.add("basis", "info", lambdas);
    r.add("d", "info", m.d);
    r.add("matrix", "info", residual_matrix_json(m.entries));
    if (powered) r.add("powered_table", "info", json{{"exponent", 12 / m.d}, {"entries", residual_matrix_json(twelfth_power_table(m))}});
    r.check("eisenstein", eisenstein_check(m), "row products equal the class of p");
    r.check("rationality", rationality_check(m), "residues lie in F_p^x");
    r.check("frobenius_equivariance", frobenius_equivariance_check(m), "entries commute with Frobenius");
    r.check("symmetry", symmetry_check(m), "matrix is symmetric");
    auto gram = valuation_gram(m);
    bool gram_ok = true;
    for (std::size_t i = 0; i < gram.size(); ++i)
        for (std::size_t j = 0; j < gram.size(); ++j) gram_ok = gram_ok && gram[i][j] == (i == j ? 2 : 1);
    const std::size_t genus = m.size() - 1;
    Integer det = gram.empty() ? Integer(1) : integer_determinant(gram);
    gram_ok = gram_ok && det == static_cast<unsigned long>(genus + 1);
    r.check("monodromy_gram", gram_ok, json{{"determinant", det.get_str()}, {"genus", genus}, {"gram", gram}});
    return r;
}

inline Report cmd_theta(const SchottkyGroup& g, const std::string& alpha, const std::string& beta, std::size_t max_length) {
    Report r;
    r.command = "theta";
    r.params = {{"prime", g.p}, {"alpha", alpha}, {"beta", beta}, {"max_length", max_length}, {"genus", g.genus()}};
    r.field = Fp2Context::for_prime(g.p);
    if (!g.ball_system) throw geometry_error("generators file has no ball system");
    GoodPositionReport gp = verify_good_position(g);
    json conds = json::array();
    for (const auto& c : gp.conditions) conds.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    if (!gp.passed()) throw geometry_error("group is not in good position: " + gp.first_failure());
    r.check("good_position", true, conds);
    const Word a = parse_word(alpha, g.genus()), b = parse_word(beta, g.genus());
    PeriodPairingResult phi = drinfeld_pairing(g, a, b, max_length);
    json profile = json::array();
    for (const auto& s : phi.profile) profile.push_back(s.valuation ? json(*s.valuation) : json(nullptr));
    ResidualClass cls = phi.value.residual();
    r.add("phi", "info",
          json{{"alpha", phi.alpha.label()},
               {"beta", phi.beta.label()},
               {"a", phi.a.get_str()},
               {"z", phi.z.get_str()},
               {"valuation", cls.val()},
               {"residue", to_json(cls.res())},
               {"is_one", phi.exact == 1},
               {"precision_estimate", phi.precision_estimate ? json(*phi.precision_estimate) : json(nullptr)},
               {"profile", profile}});
    json tl = json::array();
    for (const auto& gen : g.generators) tl.push_back(translation_length(gen, g.p));
    r.add("translation_lengths", "info", tl);
    return r;
}

namespace detail {

inline json coefficient_strings(const QExpansion& f, std::size_t count) {
    json out = json::array();
    for (const auto& [e, c] : f.terms()) {
        if (out.size() == count) break;
        out.push_back(json::array({e.get_str(), c.str()}));
    }
    return out;
}

inline void check_lambda(Report& r, long order) {
    QExpansion lam = lambda_expansion(order);
    QExpansion eta = lambda_eta_quotient().expand(Rational(1, 2), order);
    json coeffs = json::array();
    for (long k = 1; k <= order; ++k) coeffs.push_back(lam.coefficient(Rational(k)).rational().get_str());
    const bool head = lam.coefficient(1) == Cyclotomic(16) && lam.coefficient(2) == Cyclotomic(-128) &&
                      lam.coefficient(3) == Cyclotomic(704);
    r.check("lambda_leading_terms", head, json::array({"16", "-128", "704"}));
    r.check("lambda_eta_identity", lam == eta, json{{"order", order}, {"coefficients", coeffs}});
}

inline void check_u(Report& r, std::uint64_t p, long order) {
    const long d = d_of(p);
    QExpansion u = u_expansion(p, order);
    QExpansion ratio = discriminant_expansion(order).compose_affine(Rational(static_cast<unsigned long>(p)), 0).in_scale(1) /
                       discriminant_expansion(order);
    r.check("u_leading_exponent", *u.leading_exponent() == Rational((static_cast<long>(p) - 1) / d),
            json{{"exponent", u.leading_exponent()->get_str()}, {"d", d}});
    r.check("u_eta_quotient", u == u_eta_quotient(p).expand(1, order), detail::coefficient_strings(u, 12));
    r.check("u_power_d_is_delta_ratio", u.pow(d).agrees_with(ratio), json{{"d", d}});
}

inline void check_mu(Report& r, std::uint64_t p, long order) {
    QExpansion mu = mu_expansion(p, order), direct = mu_expansion_direct(p, order);
    r.check("mu_two_routes", mu.agrees_with(direct), coefficient_strings(mu, 12));
    QExpansion one = QExpansion::monomial(mu.variable(), 1, 0, Rational(order));
    r.check("mu_times_inverse", (mu * mu.inverse()).agrees_with(one), json{{"order", order}});
    r.add("mu_leading_term", "info", json{{"exponent", mu.leading_exponent()->get_str()}, {"coefficient", mu.leading_coefficient().str()}});
}

inline void check_fourier_mu(Report& r, std::uint64_t p) {
    FourierMuResult f = verify_fourier_mu(p);
    const long d = d_of(p), P = static_cast<long>(p);
    const bool ok = f.coefficient == rational_pow(Rational(P), -12 / d) && f.exponent == -6 * (P - 1) / d;
    r.check("fourier_mu", ok,
            json{{"coefficient", std::to_string(p) + "^" + std::to_string(-12 / d)},
                 {"coefficient_value", f.coefficient.get_str()},
                 {"exponent", f.exponent},
                 {"steps", f.steps}});
}

inline void check_functional_eq(Report& r, std::uint64_t p) {
    r.check("delta_axiom_self_test", delta_axiom_self_test(), "Delta(-1/(-1/z)) -> Delta(z)");
    FunctionalEquationReport u = verify_functional_equation_u(p), mu = verify_functional_equation_mu(p);
    r.check("u_functional_equation", u.passed,
            json{{"p_exponent", u.p_exponent.get_str()}, {"normal_form", u.lhs_normal_form}, {"trace", u.trace}});
    r.check("mu_functional_equation", mu.passed,
            json{{"p_exponent", mu.p_exponent.get_str()}, {"normal_form", mu.lhs_normal_form}, {"trace", mu.trace}});
}

inline void check_ramify(Report& r, std::uint64_t p) {
    json rel = json::array();
    bool all = true;
    for (const auto& x : local_parameter_relations(p)) {
        all = all && x.passed();
        rel.push_back(json{{"cusp", x.cusp}, {"map", x.map}, {"expected", x.expected}, {"computed", x.computed}});
    }
    r.check("local_parameter_relations", all, rel);
    const std::string inv_p = "1/" + std::to_string(p);
    CuspDivisor psi = correspondence_pullback(p);
    r.check("psi_pullback", psi == CuspDivisor{{"1", -6}, {inv_p, 6}}, psi);
    CuspDivisor mu = mu_divisor(p);
    long deg = 0;
    for (const auto& [c, v] : mu) deg += v;
    r.check("mu_divisor_degree_zero", deg == 0, mu);
    for (int N : {2, 3}) {
        json fibers = json::array();
        bool ok = true;
        for (const auto& m : level_maps(N)) {
            for (const ProjectivePoint& t : {cusp_point(0), ProjectivePoint::infinity()}) {
                long s = fiber_sum(N, p, m.map, t);
                ok = ok && s == level_map_degree(N);
                fibers.push_back(json{{"map", m.name}, {"target", t.str()}, {"sum", s}});
            }
        }
        r.check("fiber_sums_level_" + std::to_string(N), ok, json{{"degree", level_map_degree(N)}, {"fibers", fibers}});
    }
    json table = json::array();
    std::vector<std::string> mismatches;
    for (const auto& e : ramification_table(p)) {
        table.push_back(json{{"cusp", e.cusp}, {"map", e.map}, {"published", e.published}, {"computed", e.computed}});
        if (e.mismatch()) mismatches.push_back(e.cusp + ":" + e.map);
    }
    r.add("ramification_table_level_3", mismatches.empty() ? "pass" : "finding",
          json{{"entries", table}, {"mismatches", mismatches}, {"hypothesis_p_1_mod_3", p % 3 == 1}});
}

inline void check_n3(Report& r, std::uint64_t p, long order) {
    QExpansion h = h3_expansion(order);
    bool thirds = true;
    const QExpansion h1 = h.in_scale(1);
    for (const auto& [e, c] : h1.terms()) thirds = thirds && (e.get_den() == 1 || e.get_den() == 3);
    r.check("h3_exponents_in_thirds", thirds, json{{"variable", h.variable().str()}, {"terms", coefficient_strings(h, 10)}});
    QExpansion mu3 = mu3_expansion(p, order);
    QExpansion one = QExpansion::monomial(mu3.variable(), 1, 0, Rational(order));
    r.check("mu3_times_inverse", (mu3 * mu3.inverse()).agrees_with(one), coefficient_strings(mu3, 8));
    r.add("mu3_leading_term", "info",
          json{{"exponent", mu3.leading_exponent()->get_str()}, {"coefficient", mu3.leading_coefficient().str()}});
    json widths = json::array();
    for (const auto& x : cusps_of_x(3, p)) {
        CuspData cd = cusp_data(3, p, x);
        widths.push_back(json{{"cusp", x.str()}, {"width", cd.width}, {"local_parameter", cd.local_parameter()}});
    }
    r.add("cusp_widths_level_3", "info", widths);
}

} // namespace detail

inline const std::vector<std::string>& qseries_checks() {
    static const std::vector<std::string> names{"all", "lambda", "u", "mu", "fourier-mu", "functional-eq", "ramify", "n3"};
    return names;
}

inline Report cmd_qseries(std::uint64_t p, const std::string& check, long order) {
    require_working_prime(p);
    if (order < 1) throw precondition_error("order must be >= 1");
    if (std::find(qseries_checks().begin(), qseries_checks().end(), check) == qseries_checks().end())
        throw precondition_error("unknown check '" + check + "'");
    Report r;
    r.command = "qseries";
    r.params = {{"prime", p}, {"check", check}, {"order", order}};
    auto want = [&](const char* c) { return check == "all" || check == c; };
    if (want("lambda")) detail::check_lambda(r, order);
    if (want("u")) detail::check_u(r, p, order);
    if (want("mu")) detail::check_mu(r, p, order);
    if (want("fourier-mu")) detail::check_fourier_mu(r, p);
    if (want("functional-eq")) detail::check_functional_eq(r, p);
    if (want("ramify")) detail::check_ramify(r, p);
    if (want("n3")) detail::check_n3(r, p, order);
    return r;
}

/// Runs a command, writes the rendered report to `out` and diagnostics to `err`, and maps errors to exit codes.
inline int run_reporting(const std::function<Report()>& command, const std::string& format, bool timing, std::ostream& out,
                         std::ostream& err) {
    try {
        if (format != "json" && format != "csv") throw precondition_error("unknown format '" + format + "'");
        auto start = std::chrono::steady_clock::now();
        Report r = command();
        if (timing) r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out << render(r, format);
        return r.any_failed() ? exit_check_failed : exit_ok;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const field_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const geometry_error& e) {
        err << "geometry error: " << e.what() << "\n";
        return exit_geometry;
    } catch (const precision_error& e) {
        err << "precision error: " << e.what() << "\n";
        return exit_precision;
    }
}

} // namespace padic_periods::cli
