#pragma once

#include <relwit/arith.hpp>
#include <relwit/groups.hpp>
#include <relwit/metacyclic.hpp>
#include <relwit/report.hpp>
#include <relwit/words.hpp>

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relwit {

/// Caller-asserted classification of the tail of a candidate relation
/// r = x^(p^l u) * s. Membership in the corresponding subgroup of the free
/// pro-p group is not decidable syntactically; the checkers verify only the
/// consequences used (the tail's image on the relevant coordinate is trivial).
enum class TailTag {
    InDerivedTimesT,     // s in [S,S]T
    CommutatorAvoidingX, // product of commutators whose innermost pairs avoid x
    InT,                 // s in T = normal closure of the y-generators
    InDerivedTWithT,     // s in [T,T], optional extra factor t deeper in the filtration
};

inline std::string tail_tag_name(TailTag tag) {
    switch (tag) {
        case TailTag::InDerivedTimesT: return "in-derived-times-T";
        case TailTag::CommutatorAvoidingX: return "commutator-avoiding-x";
        case TailTag::InT: return "in-T";
        case TailTag::InDerivedTWithT: return "in-derived-T-with-t";
    }
    return "?";
}

/// A grid point or direct call whose parameters fall outside a checker's
/// stated hypotheses.
struct HypothesisViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The outcome of one obstruction check: the finite quotient, the generator
/// assignment, and the nontrivial image that rules the relation shape out.
struct WitnessReport {
    std::string theorem;
    nlohmann::ordered_json params;
    std::string quotient;
    nlohmann::ordered_json assignment;
    std::string image;
    ExactInt image_order = 0;
    std::string verdict;  // "obstructed" iff image != identity
    std::string note;
    Report checks;

    bool obstructed() const { return verdict == "obstructed"; }
    bool all_pass() const { return checks.all_pass(); }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["theorem"] = theorem;
        j["params"] = params;
        j["quotient"] = quotient;
        j["assignment"] = assignment;
        j["image"] = image;
        j["image_order"] = image_order.str();
        j["verdict"] = verdict;
        if (!note.empty()) j["note"] = note;
        j["checks"] = checks.to_json();
        return j;
    }
};

/// Cyclic group Z/n with additive composition, used as the quotient when the
/// ground field contains enough roots of unity to kill the semidirect action.
class CyclicGroup {
public:
    struct Element {
        std::int64_t a = 0;
    };

    explicit CyclicGroup(std::int64_t n) : n_(n) {
        if (n < 1) throw std::invalid_argument("cyclic group: order must be positive");
    }

    std::int64_t modulus() const { return n_; }
    Element identity() const { return {0}; }
    Element generator() const { return make(1); }
    Element make(std::int64_t a) const { return {((a % n_) + n_) % n_}; }
    Element mul(const Element& g, const Element& h) const { return make(g.a + h.a); }
    Element inverse(const Element& g) const { return make(-g.a); }
    std::uint64_t encode(const Element& g) const { return static_cast<std::uint64_t>(g.a); }
    std::string describe(const Element& g) const { return "g^" + std::to_string(g.a); }

private:
    std::int64_t n_;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw HypothesisViolation(what);
}

inline void require_unit(std::int64_t p, std::int64_t u) {
    require(u != 0 && std::gcd(p, u < 0 ? -u : u) == 1, "u must be coprime to p");
}

// Default y-assignment exponents: the first `count` nonzero residues, cycling
// modulo `modulus`. Reproducible and nonzero whenever modulus > 1.
inline std::vector<std::int64_t> default_exponents(std::size_t count, std::int64_t modulus) {
    std::vector<std::int64_t> c;
    for (std::size_t i = 0; i < count; ++i) {
        std::int64_t v = modulus > 1 ? static_cast<std::int64_t>(i) % (modulus - 1) + 1 : 0;
        c.push_back(v);
    }
    return c;
}

// Generator names y1..yn appearing anywhere in the word.
inline void collect_y_names(const Word& w, const Alphabet& alphabet,
                            std::vector<std::string>& out) {
    for (const auto& t : w.terms) {
        if (const auto* name = std::get_if<std::string>(&t.atom)) {
            if (*name != alphabet.x &&
                std::find(out.begin(), out.end(), *name) == out.end())
                out.push_back(*name);
        } else {
            const auto& c = std::get<CommutatorExpr>(t.atom);
            collect_y_names(*c.left, alphabet, out);
            collect_y_names(*c.right, alphabet, out);
        }
    }
}

inline std::string disclaimer() {
    return "verifies the witness inequality (nontrivial image in an explicit finite "
           "quotient); realizability of the quotient as a Galois group is assumed";
}

}  // namespace detail

/// Relation shape r = x^(p^l u) s with s in [S,S]T, obstructed in the cyclic
/// quotient C_(p^m): every commutator and every y-generator dies, leaving
/// g^(p^l u) of order p^(m-l) > 1 because l < m.
inline WitnessReport check_cyclic_quotient(std::int64_t p, std::int64_t m, std::int64_t l,
                                           std::int64_t u, const Word& tail, TailTag tag,
                                           const Alphabet& alphabet) {
    if (!is_prime(ExactInt(p))) throw std::invalid_argument("p must be prime");
    detail::require(m >= 2, "need m >= 2");
    detail::require(l >= 1, "need l >= 1");
    detail::require(l < m, "need l < m: the image order p^(m-l) must exceed 1");
    detail::require_unit(p, u);
    detail::require(tag == TailTag::InDerivedTimesT,
                    "tail must be tagged in-derived-times-T for the cyclic quotient check");

    WitnessReport w;
    w.theorem = "cyclic-quotient";
    w.params = {{"p", p}, {"m", m}, {"l", l}, {"u", u}};
    ExactInt pm = int_pow(ExactInt(p), static_cast<unsigned long>(m));
    w.quotient = "C_" + pm.str();
    w.note = detail::disclaimer();

    CyclicGroup c(static_cast<std::int64_t>(pm));
    std::map<std::string, CyclicGroup::Element> assign;
    assign[alphabet.x] = c.generator();
    for (const auto& y : alphabet.ys) assign[y] = c.identity();
    w.assignment = {{alphabet.x, "g"}};
    for (const auto& y : alphabet.ys) w.assignment[y] = "1";

    auto tail_img = evaluate(tail, assign, c);
    w.checks.check("tail image trivial", c.encode(tail_img) == 0, c.describe(tail_img));

    ExactInt lead = int_pow(ExactInt(p), static_cast<unsigned long>(l)) * u;
    auto img = c.mul(group_pow(c, c.generator(), lead), tail_img);
    w.image = c.describe(img);
    w.image_order = element_order(c, img);
    ExactInt expected = int_pow(ExactInt(p), static_cast<unsigned long>(m - l));
    w.checks.check("image = g^(p^l u)", c.encode(img) == c.encode(group_pow(c, c.generator(), lead)));
    w.checks.check("image order = p^(m-l)", w.image_order == expected,
                   w.image_order.str() + " vs " + expected.str());
    w.checks.check("image != identity", c.encode(img) != 0);
    w.verdict = c.encode(img) != 0 ? "obstructed" : "not-obstructed";
    return w;
}

/// Relation shape r = x^(p^l u) s where s is a product of commutators none of
/// whose innermost letter pairs involves x: obstructed in the metacyclic
/// quotient, where x maps to tau and every y into the abelian complement.
/// The relation word must start with the term x^(p^l u).
inline WitnessReport check_metacyclic_quotient(
    std::int64_t p, std::int64_t k, std::int64_t m, std::int64_t l, std::int64_t u,
    const Word& relation, const Alphabet& alphabet,
    const std::optional<std::vector<std::int64_t>>& y_exponents = std::nullopt,
    unsigned long max_order = kDefaultMaxOrder) {
    MetacyclicParams params(p, k, m);
    detail::require(m > k && m > l, "need m > max(k,l)");
    detail::require(l >= 1, "need l >= 1");
    detail::require_unit(p, u);

    ExactInt lead = int_pow(ExactInt(p), static_cast<unsigned long>(l)) * u;
    detail::require(!relation.terms.empty(), "relation is empty");
    {
        const auto& t0 = relation.terms.front();
        const auto* name = std::get_if<std::string>(&t0.atom);
        detail::require(name && *name == alphabet.x && ExactInt(t0.exponent) == lead,
                        "relation must start with the term x^(p^l u)");
    }
    Word tail;
    tail.terms.assign(relation.terms.begin() + 1, relation.terms.end());
    for (const auto& [a, b] : appearing_pairs(tail))
        detail::require(a.name != alphabet.x && b.name != alphabet.x,
                        "appearing pair [" + a.to_string() + "," + b.to_string() +
                            "] involves " + alphabet.x);

    WitnessReport w;
    w.theorem = "metacyclic-quotient";
    w.params = {{"p", p}, {"k", k}, {"m", m}, {"l", l}, {"u", u}};
    w.quotient = "G(a," + std::to_string(m) + ") of order " + std::to_string(params.order());
    w.note = detail::disclaimer();

    MetacyclicGroup c(params);
    auto cexp = y_exponents.value_or(
        detail::default_exponents(alphabet.ys.size(), params.pmk));
    if (cexp.size() < alphabet.ys.size())
        throw std::invalid_argument("not enough y-assignment exponents");
    std::map<std::string, MetacyclicGroup::Element> assign;
    assign[alphabet.x] = c.tau();
    w.assignment = {{alphabet.x, "tau"}};
    for (std::size_t i = 0; i < alphabet.ys.size(); ++i) {
        assign[alphabet.ys[i]] = c.power(c.sigma(), ExactInt(cexp[i]));
        w.assignment[alphabet.ys[i]] = "sigma^" + std::to_string(cexp[i]);
    }

    auto tail_img = evaluate(tail, assign, c);
    w.checks.check("tail image trivial", c.encode(tail_img) == c.encode(c.identity()),
                   c.describe(tail_img));

    auto img = evaluate(relation, assign, c);
    auto expected_img = c.power(c.tau(), lead);
    w.image = c.describe(img);
    w.image_order = element_order(c, img);
    ExactInt expected_order = int_pow(ExactInt(p), static_cast<unsigned long>(m - l));
    w.checks.check("image = tau^(p^l u)", c.encode(img) == c.encode(expected_img),
                   c.describe(img) + " vs " + c.describe(expected_img));
    w.checks.check("image order = p^(m-l)", w.image_order == expected_order,
                   w.image_order.str() + " vs " + expected_order.str());
    w.checks.check("image != identity", c.encode(img) != c.encode(c.identity()));
    (void)max_order;
    w.verdict = c.encode(img) != c.encode(c.identity()) ? "obstructed" : "not-obstructed";
    return w;
}

/// Relation shape r = x^(p^l u) s with s in T: obstructed through the action
/// on a fixed p^m-th root. Case 1 maps x to tau (the unit acting on the
/// cyclotomic coordinate is trivial); case 2 maps x to tau sigma^w and the
/// root-action exponent of the image is the geometric sum
///   N = ((1+p^k)^(w p^l u) - 1) / ((1+p^k)^w - 1),
/// computed both by exact big-integer division and inside the group carrier,
/// with v_p(N) = l < m so N is nonzero mod p^m.
inline WitnessReport check_root_action(std::int64_t p, std::int64_t k, std::int64_t l,
                                       std::int64_t u, std::int64_t m,
                                       std::optional<std::int64_t> case2_w = std::nullopt) {
    MetacyclicParams params(p, k, m);
    detail::require(m > l, "need m > l");
    detail::require(l >= 1, "need l >= 1");
    detail::require_unit(p, u);

    WitnessReport w;
    w.theorem = "root-action";
    w.params = {{"p", p}, {"k", k}, {"m", m}, {"l", l}, {"u", u}};
    w.quotient = "G(a," + std::to_string(m) + ") acting on a p^m-th root";
    w.note = detail::disclaimer() +
             "; case 2 models the unit component of the image of x as (1+p^k)^w";

    MetacyclicGroup c(params);
    ExactInt pm = int_pow(ExactInt(p), static_cast<unsigned long>(m));
    ExactInt lead = int_pow(ExactInt(p), static_cast<unsigned long>(l)) * u;

    if (!case2_w || *case2_w % params.pmk == 0) {
        w.params["case"] = 1;
        auto img = c.power(c.tau(), lead);
        w.image = c.describe(img);
        w.image_order = element_order(c, img);
        w.assignment = {{"x", "tau"}};
        std::int64_t root_exp = c.act_on_root(img);
        ExactInt expected = lead % pm;
        w.checks.check("root-action exponent = p^l u mod p^m",
                       ExactInt(root_exp) == (expected % pm + pm) % pm);
        w.checks.check("root-action exponent != 0 mod p^m", root_exp % params.pm != 0,
                       std::to_string(root_exp));
        w.verdict = root_exp % params.pm != 0 ? "obstructed" : "not-obstructed";
        ExactInt expected_order = int_pow(ExactInt(p), static_cast<unsigned long>(m - l));
        w.checks.check("image order = p^(m-l)", w.image_order == expected_order);
        return w;
    }

    std::int64_t wexp = ((*case2_w % params.pmk) + params.pmk) % params.pmk;
    w.params["case"] = 2;
    w.params["w"] = wexp;
    w.assignment = {{"x", "tau sigma^" + std::to_string(wexp)}};

    // Exact big-integer path.
    ExactInt base = int_pow(ExactInt(p), static_cast<unsigned long>(k)) + 1;
    ExactInt bw = 1;
    for (std::int64_t i = 0; i < wexp; ++i) bw *= base;
    ExactInt alpha = bw - 1;
    ExactInt numer = -1;
    {
        ExactInt e = lead;  // p^l u > 0
        ExactInt acc = 1;
        ExactInt sq = bw;
        while (e > 0) {
            if (e % 2 == 1) acc *= sq;
            sq *= sq;
            e /= 2;
        }
        numer += acc;
    }
    ExactInt big_n = numer / alpha;
    w.checks.check("geometric-series division is exact", big_n * alpha == numer);

    auto vn = vp(big_n, ExactInt(p));
    w.checks.check("v_p(N) = l", vn == static_cast<unsigned long>(l),
                   vn.to_string() + " vs " + std::to_string(l));
    // Independent valuation of the numerator through the unit-power identity.
    unsigned long vnum = unit_power_valuation(ExactInt(p), alpha, lead);
    auto valpha = vp(alpha, ExactInt(p));
    w.checks.check("v_p((1+p^k v)^(p^l u) - 1) = v_p(p^k v) + l",
                   vnum == valpha.value() + static_cast<unsigned long>(l));

    // Carrier path: the tau-exponent of (tau sigma^w)^(p^l u) is the same sum.
    auto g = c.mul(c.tau(), c.power(c.sigma(), ExactInt(wexp)));
    auto img = c.power(g, lead);
    w.image = c.describe(img);
    w.image_order = element_order(c, img);
    std::int64_t root_exp = c.act_on_root(img);
    ExactInt big_n_mod = (big_n % pm + pm) % pm;
    w.checks.check("big-integer N = carrier geometric sum mod p^m",
                   big_n_mod == ExactInt(root_exp),
                   big_n_mod.str() + " vs " + std::to_string(root_exp));
    w.checks.check("root-action exponent != 0 mod p^m", root_exp % params.pm != 0);
    ExactInt expected_order = int_pow(ExactInt(p), static_cast<unsigned long>(m - l));
    ExactInt root_order = element_order(CyclicGroup(params.pm), CyclicGroup(params.pm).make(root_exp));
    w.checks.check("root-action order = p^(m - v_p(N))", root_order == expected_order,
                   root_order.str() + " vs " + expected_order.str());
    w.verdict = root_exp % params.pm != 0 ? "obstructed" : "not-obstructed";
    return w;
}

/// Relation shape r = x^(p^(l-1) u) s t with s in [T,T] and t deep in the
/// p-descending series: obstructed in G(a,l), whose (l+1)-st p-descending term
/// is trivial (so t dies), while x maps to tau^(p^(l-1) u) of order exactly p.
inline WitnessReport check_filtration_quotient(
    std::int64_t p, std::int64_t k, std::int64_t l, std::int64_t u, const Word& s,
    const Alphabet& alphabet, bool with_t = false,
    const std::optional<std::vector<std::int64_t>>& y_exponents = std::nullopt,
    unsigned long max_order = kDefaultMaxOrder) {
    detail::require(l >= 2, "need l >= 2");
    detail::require(l >= k, "need l >= k so the metacyclic quotient exists at m = l");
    detail::require_unit(p, u);
    for (const auto& [a, b] : appearing_pairs(s))
        detail::require(a.name != alphabet.x && b.name != alphabet.x,
                        "tail pair [" + a.to_string() + "," + b.to_string() +
                            "] involves " + alphabet.x);

    MetacyclicParams params(p, k, l);
    WitnessReport w;
    w.theorem = "filtration-quotient";
    w.params = {{"p", p}, {"k", k}, {"l", l}, {"u", u}};
    w.quotient = "G(a," + std::to_string(l) + ") of order " + std::to_string(params.order());
    w.note = detail::disclaimer();

    MetacyclicGroup c(params);
    auto grp = closure(c, {c.tau(), c.sigma()}, max_order);
    auto pds = p_descending_series(c, grp, ExactInt(p), max_order);
    const auto& deep = detail::chain_term(pds, static_cast<std::size_t>(l) + 1);
    w.checks.check("p-descending term l+1 is trivial", deep.trivial(),
                   "order " + std::to_string(deep.order()));
    if (with_t) {
        // Any t lands in the trivial deep term; its image is forced to 1.
        auto t_img = deep.elements.empty() ? c.identity() : deep.elements.front();
        w.checks.check("sample t image trivial", c.encode(t_img) == c.encode(c.identity()));
    }

    auto cexp = y_exponents.value_or(
        detail::default_exponents(alphabet.ys.size(), params.pmk));
    if (cexp.size() < alphabet.ys.size())
        throw std::invalid_argument("not enough y-assignment exponents");
    std::map<std::string, MetacyclicGroup::Element> assign;
    assign[alphabet.x] = c.tau();
    w.assignment = {{alphabet.x, "tau"}};
    for (std::size_t i = 0; i < alphabet.ys.size(); ++i) {
        assign[alphabet.ys[i]] = c.power(c.sigma(), ExactInt(cexp[i]));
        w.assignment[alphabet.ys[i]] = "sigma^" + std::to_string(cexp[i]);
    }
    auto s_img = evaluate(s, assign, c);
    w.checks.check("tail image trivial", c.encode(s_img) == c.encode(c.identity()),
                   c.describe(s_img));

    ExactInt lead = int_pow(ExactInt(p), static_cast<unsigned long>(l - 1)) * u;
    auto img = c.mul(c.power(c.tau(), lead), s_img);
    w.image = c.describe(img);
    w.image_order = element_order(c, img);
    w.checks.check("image = tau^(p^(l-1) u)",
                   c.encode(img) == c.encode(c.power(c.tau(), lead)));
    w.checks.check("image order = p", w.image_order == ExactInt(p),
                   w.image_order.str());
    w.checks.check("image != identity", c.encode(img) != c.encode(c.identity()));
    w.verdict = c.encode(img) != c.encode(c.identity()) ? "obstructed" : "not-obstructed";
    return w;
}

/// Finite parameter grid for the sweep. Every combination is visited in a
/// fixed nested order; hypothesis violations are recorded, not fatal.
struct SweepGrid {
    std::vector<std::string> theorems{"cyclic-quotient", "metacyclic-quotient",
                                      "root-action", "filtration-quotient"};
    std::vector<std::int64_t> ps{3, 5};
    std::vector<std::int64_t> ks{1, 2};
    std::int64_t m_max = 3;
    std::vector<std::int64_t> us{1, 2};
    unsigned long max_order = kDefaultMaxOrder;
};

struct SweepResult {
    std::vector<WitnessReport> reports;
    std::size_t obstructed = 0;
    std::size_t violations = 0;
    std::size_t failures = 0;  // checks that did not pass at hypothesis-valid points

    bool all_pass() const { return failures == 0; }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["points"] = reports.size();
        j["obstructed"] = obstructed;
        j["hypothesis_violations"] = violations;
        j["failures"] = failures;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) arr.push_back(r.to_json());
        j["reports"] = arr;
        return j;
    }
};

/// Runs the applicable checker at every grid point. The default tail is
/// [y1,y2], which satisfies every checker's syntactic condition.
inline SweepResult sweep(const SweepGrid& grid) {
    SweepResult out;
    Alphabet alphabet = Alphabet::standard(2);
    Word tail = commutator_word(letter_word("y1"), letter_word("y2"));

    auto record = [&out](WitnessReport r) {
        if (r.obstructed() && r.all_pass())
            ++out.obstructed;
        else
            ++out.failures;
        out.reports.push_back(std::move(r));
    };
    auto record_violation = [&out](const std::string& theorem,
                                   nlohmann::ordered_json params, const std::string& why) {
        WitnessReport r;
        r.theorem = theorem;
        r.params = std::move(params);
        r.verdict = "hypothesis-violation";
        r.note = why;
        ++out.violations;
        out.reports.push_back(std::move(r));
    };

    for (const auto& theorem : grid.theorems)
        for (std::int64_t p : grid.ps)
            for (std::int64_t k : grid.ks) {
                if (p == 2 && k < 2) continue;
                for (std::int64_t m = 1; m <= grid.m_max; ++m)
                    for (std::int64_t l = 1; l <= grid.m_max; ++l)
                        for (std::int64_t u : grid.us) {
                            nlohmann::ordered_json params{
                                {"p", p}, {"k", k}, {"m", m}, {"l", l}, {"u", u}};
                            try {
                                if (theorem == "cyclic-quotient") {
                                    if (k != grid.ks.front()) continue;  // k unused
                                    record(check_cyclic_quotient(
                                        p, m, l, u, tail, TailTag::InDerivedTimesT,
                                        alphabet));
                                } else if (theorem == "metacyclic-quotient") {
                                    ExactInt lead =
                                        int_pow(ExactInt(p), static_cast<unsigned long>(l)) *
                                        u;
                                    Word rel = concat(
                                        letter_word("x",
                                                    static_cast<long long>(lead)),
                                        tail);
                                    record(check_metacyclic_quotient(p, k, m, l, u, rel,
                                                                     alphabet, std::nullopt,
                                                                     grid.max_order));
                                } else if (theorem == "root-action") {
                                    record(check_root_action(p, k, l, u, m));
                                    record(check_root_action(p, k, l, u, m, 1));
                                } else if (theorem == "filtration-quotient") {
                                    if (m != grid.m_max) continue;  // m unused; visit once
                                    params.erase("m");
                                    record(check_filtration_quotient(p, k, l, u, tail,
                                                                     alphabet, true,
                                                                     std::nullopt,
                                                                     grid.max_order));
                                } else {
                                    throw std::invalid_argument("unknown theorem id '" +
                                                                theorem + "'");
                                }
                            } catch (const HypothesisViolation& e) {
                                record_violation(theorem, params, e.what());
                            } catch (const std::invalid_argument& e) {
                                record_violation(theorem, params, e.what());
                            }
                        }
            }
    return out;
}

}  // namespace relwit
