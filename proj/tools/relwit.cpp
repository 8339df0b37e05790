// Command-line front end: every checker and report exposed as a reproducible
// batch command. JSON goes to stdout (schema version "1"), diagnostics to
// stderr; the exit status is 0 exactly when every assertion passed.

#include <relwit/selftest.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::ordered_json;

struct Output {
    std::string format = "json";

    int emit(const std::string& command, const ordered_json& body, bool pass) const {
        if (format == "json") {
            ordered_json doc;
            doc["schema"] = "1";
            doc["command"] = command;
            doc["pass"] = pass;
            doc["report"] = body;
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << command << ": " << (pass ? "pass" : "FAIL") << "\n";
            emit_text(body, 1);
        }
        return pass ? 0 : 1;
    }

private:
    static void emit_text(const ordered_json& j, int depth) {
        std::string pad(2 * static_cast<std::size_t>(depth), ' ');
        if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (it.value().is_structured()) {
                    std::cout << pad << it.key() << ":\n";
                    emit_text(it.value(), depth + 1);
                } else {
                    std::cout << pad << it.key() << ": " << it.value().dump() << "\n";
                }
            }
        } else if (j.is_array()) {
            for (const auto& e : j) {
                if (e.is_structured()) {
                    std::cout << pad << "-\n";
                    emit_text(e, depth + 1);
                } else {
                    std::cout << pad << "- " << e.dump() << "\n";
                }
            }
        }
    }
};

std::size_t resolve_max_order(std::size_t flag_value) {
    if (const char* env = std::getenv("RELWIT_MAX_ORDER")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        std::cerr << "ignoring invalid RELWIT_MAX_ORDER value\n";
    }
    return flag_value;
}

ordered_json padic_report(std::int64_t p, unsigned k, std::int64_t u, unsigned n) {
    using namespace relwit;
    Report rep;
    rep.title = "principal-unit exponent solving";
    PadicInt unit(ExactInt(p), n, u);
    PadicInt v = solve_power_exponent(ExactInt(p), k, unit, n);
    ExactInt pk = int_pow(ExactInt(p), k);
    PadicInt base(ExactInt(p), n, 1 + pk * u);
    PadicInt target(ExactInt(p), n, 1 + pk);

    rep.check("log(base) valuation = k", padic_log(base).valuation() == k);
    rep.check("log(target) valuation = k", padic_log(target).valuation() == k);
    ExactInt pw = boost::multiprecision::powm(base.residue(), v.residue(),
                                              int_pow(ExactInt(p), n));
    ExactInt check_mod = int_pow(ExactInt(p), n - k);
    rep.check("base^v = target at the output precision",
              (pw - target.residue()) % check_mod == 0);
    rep.extra["v_residue"] = v.residue().str();
    rep.extra["v_precision"] = v.precision();
    return rep.to_json();
}

ordered_json dpoly_report(std::int64_t p, bool& pass) {
    using namespace relwit;
    auto arr = ordered_json::array();
    auto rep1 = lemma_di_check(p);
    auto rep2 = module_recurrence_check(p);
    pass = rep1.all_pass() && rep2.all_pass();
    arr.push_back(rep1.to_json());
    arr.push_back(rep2.to_json());
    for (std::int64_t i = 1; i <= p - 1; ++i)
        for (std::int64_t n = 1; n <= p; ++n) {
            auto rep = tower_induction_check(p, i, n);
            pass = pass && rep.all_pass();
            arr.push_back(rep.to_json());
        }
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace relwit;
    CLI::App app{"exact finite-group, polynomial, and p-adic relation checkers"};
    app.require_subcommand(1);

    Output out;
    std::uint64_t seed = 0;
    std::size_t max_order = kDefaultMaxOrder;
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "seed for all sampled checks")->capture_default_str();
    app.add_option("--max-order", max_order, "subgroup enumeration bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::int64_t p = 3, k = 1, m = 2, l = 1, u = 1;
    unsigned precision = 12;
    std::string theorem = "metacyclic-quotient";
    std::string relation_text;
    std::string tail_text = "[y1,y2]";
    std::optional<std::int64_t> w_opt;
    bool with_t = false;
    std::size_t family = 2;

    auto* c_meta = app.add_subcommand("metacyclic", "structure report for G(a,m)");
    c_meta->add_option("--p", p, "prime")->required();
    c_meta->add_option("--k", k, "cyclotomic depth")->required();
    c_meta->add_option("--m", m, "torsion exponent")->required();

    auto* c_crq = app.add_subcommand("crquotient", "multi-generator quotient relations");
    c_crq->add_option("--p", p, "prime")->required();
    c_crq->add_option("--k", k, "cyclotomic depth")->required();
    c_crq->add_option("--m", m, "residue precision")->required();
    c_crq->add_option("--family", family, "number of tau generators")->capture_default_str();

    auto* c_uni = app.add_subcommand("unipotent", "witness group report for <X,Y>");
    c_uni->add_option("--p", p, "prime")->required();
    c_uni->add_option("--k", k, "chain length parameter")->required();

    auto* c_dp = app.add_subcommand("dpoly", "polynomial and group-ring identity suite");
    c_dp->add_option("--p", p, "prime")->required();

    auto* c_pad = app.add_subcommand("padic", "solve (1+p^k u)^v = 1+p^k");
    c_pad->add_option("--p", p, "prime")->required();
    c_pad->add_option("--k", k, "unit depth")->required();
    c_pad->add_option("--u", u, "unit multiplier")->required();
    c_pad->add_option("--n", precision, "working precision in digits")->capture_default_str();

    auto* c_obs = app.add_subcommand("obstruct", "single obstruction check");
    c_obs->add_option("--theorem", theorem, "checker id")
        ->check(CLI::IsMember({"cyclic-quotient", "metacyclic-quotient", "root-action",
                               "filtration-quotient"}))
        ->required();
    c_obs->add_option("--p", p, "prime")->required();
    c_obs->add_option("--k", k, "cyclotomic depth")->capture_default_str();
    c_obs->add_option("--m", m, "quotient exponent")->capture_default_str();
    c_obs->add_option("--l", l, "leading valuation")->required();
    c_obs->add_option("--u", u, "leading unit")->required();
    c_obs->add_option("--relation", relation_text, "full relation word");
    c_obs->add_option("--tail", tail_text, "tail word")->capture_default_str();
    std::int64_t w_flag = 0;
    auto* w_cli = c_obs->add_option("--w", w_flag, "sigma component of the image of x");
    c_obs->add_flag("--with-t", with_t, "draw a sample deep-filtration element");

    auto* c_sw = app.add_subcommand("sweep", "run the checkers over a parameter grid");
    SweepGrid grid;
    c_sw->add_option("--theorems", grid.theorems, "checker ids")->capture_default_str();
    c_sw->add_option("--p", grid.ps, "primes")->capture_default_str();
    c_sw->add_option("--k", grid.ks, "cyclotomic depths")->capture_default_str();
    c_sw->add_option("--m-max", grid.m_max, "largest quotient exponent")->capture_default_str();
    c_sw->add_option("--u", grid.us, "leading units")->capture_default_str();

    auto* c_self = app.add_subcommand("selftest", "run the full acceptance grid");

    CLI11_PARSE(app, argc, argv);
    max_order = resolve_max_order(max_order);

    try {
        if (c_meta->parsed()) {
            auto rep = verify_metacyclic_structure(MetacyclicParams(p, k, m), max_order);
            return out.emit("metacyclic", rep.to_json(), rep.all_pass());
        }
        if (c_crq->parsed()) {
            auto rep = cr_quotient_check(p, k, m, family, max_order);
            return out.emit("crquotient", rep.to_json(), rep.all_pass());
        }
        if (c_uni->parsed()) {
            auto rep = witness_group_check(WitnessGroupSpec(p, static_cast<int>(k)),
                                           max_order);
            return out.emit("unipotent", rep.to_json(), rep.all_pass());
        }
        if (c_dp->parsed()) {
            bool pass = false;
            auto body = dpoly_report(p, pass);
            return out.emit("dpoly", body, pass);
        }
        if (c_pad->parsed()) {
            auto body = padic_report(p, static_cast<unsigned>(k), u, precision);
            return out.emit("padic", body, body["pass"]);
        }
        if (c_obs->parsed()) {
            Alphabet alphabet = Alphabet::standard(4);
            WitnessReport rep;
            if (theorem == "cyclic-quotient") {
                rep = check_cyclic_quotient(p, m, l, u, parse_word(tail_text, alphabet),
                                            TailTag::InDerivedTimesT, alphabet);
            } else if (theorem == "metacyclic-quotient") {
                Word rel;
                if (relation_text.empty()) {
                    ExactInt lead = int_pow(ExactInt(p), static_cast<unsigned long>(l)) * u;
                    rel = concat(letter_word("x", static_cast<long long>(lead)),
                                 parse_word(tail_text, alphabet));
                } else {
                    rel = parse_word(relation_text, alphabet);
                }
                rep = check_metacyclic_quotient(p, k, m, l, u, rel, alphabet, std::nullopt,
                                                max_order);
            } else if (theorem == "root-action") {
                if (w_cli->count() > 0) w_opt = w_flag;
                rep = check_root_action(p, k, l, u, m, w_opt);
            } else {
                rep = check_filtration_quotient(p, k, l, u, parse_word(tail_text, alphabet),
                                                alphabet, with_t, std::nullopt, max_order);
            }
            return out.emit("obstruct", rep.to_json(), rep.obstructed() && rep.all_pass());
        }
        if (c_sw->parsed()) {
            grid.max_order = static_cast<unsigned long>(max_order);
            auto sw = sweep(grid);
            return out.emit("sweep", sw.to_json(), sw.all_pass());
        }
        if (c_self->parsed()) {
            auto results = run_acceptance_suite(seed);
            bool pass = true;
            auto arr = ordered_json::array();
            for (const auto& c : results) {
                pass = pass && c.pass;
                ordered_json e;
                e["criterion"] = c.index;
                e["name"] = c.name;
                e["pass"] = c.pass;
                e["detail"] = c.detail;
                arr.push_back(e);
            }
            return out.emit("selftest", arr, pass);
        }
    } catch (const HypothesisViolation& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
