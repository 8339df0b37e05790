#pragma once

#include <relwit/arith.hpp>
#include <relwit/groups.hpp>
#include <relwit/report.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace relwit {

/// Parameters of the metacyclic group
///   G(a,m) = < sigma, tau | tau^(p^m) = sigma^(p^(m-k)) = 1,
///                           sigma tau sigma^-1 = tau^(p^k + 1) >.
/// Requires k >= 1 (k >= 2 if p = 2) and m >= k. The boundary case m = k is
/// admitted and flagged degenerate: the conjugation unit 1 + p^k is 1 mod p^m,
/// so the group is abelian.
struct MetacyclicParams {
    std::int64_t p;
    std::int64_t k;
    std::int64_t m;

    MetacyclicParams(std::int64_t p_, std::int64_t k_, std::int64_t m_)
        : p(p_), k(k_), m(m_) {
        if (!is_prime(ExactInt(p))) throw std::invalid_argument("metacyclic: p is not prime");
        if (k < 1 || (p == 2 && k < 2))
            throw std::invalid_argument("metacyclic: need k >= 1 (k >= 2 for p = 2)");
        if (m < k) throw std::invalid_argument("metacyclic: need m >= k");
        pm = to_int64(int_pow(ExactInt(p), static_cast<unsigned long>(m)));
        pmk = to_int64(int_pow(ExactInt(p), static_cast<unsigned long>(m - k)));
        action_unit = (to_int64(int_pow(ExactInt(p), static_cast<unsigned long>(k))) + 1) % pm;
    }

    std::int64_t pm;           // p^m
    std::int64_t pmk;          // p^(m-k)
    std::int64_t action_unit;  // (1 + p^k) mod p^m

    bool degenerate_abelian() const { return m == k; }
    std::int64_t order() const { return pm * pmk; }

    friend bool operator==(const MetacyclicParams& a, const MetacyclicParams& b) {
        return a.p == b.p && a.k == b.k && a.m == b.m;
    }

private:
    static std::int64_t to_int64(const ExactInt& v) {
        if (v > ExactInt(INT64_MAX)) throw std::invalid_argument("metacyclic: parameters too large");
        return static_cast<std::int64_t>(v);
    }
};

inline std::int64_t mod_pow64(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    base %= mod;
    if (base < 0) base += mod;
    __int128 r = 1, b = base;
    while (exp > 0) {
        if (exp & 1) r = r * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::int64_t>(r);
}

/// Carrier for G(a,m). Elements are normal forms tau^a sigma^b with
/// 0 <= a < p^m, 0 <= b < p^(m-k); the composition law follows from the
/// conjugation relation sigma^b tau^a sigma^-b = tau^(a (1+p^k)^b).
class MetacyclicGroup {
public:
    struct Element {
        std::int64_t a;  // tau-exponent mod p^m
        std::int64_t b;  // sigma-exponent mod p^(m-k)
        friend bool operator==(const Element&, const Element&) = default;
    };

    explicit MetacyclicGroup(MetacyclicParams params) : params_(params) {}

    const MetacyclicParams& params() const { return params_; }

    Element identity() const { return {0, 0}; }
    Element tau() const { return make(1, 0); }
    Element sigma() const { return make(0, 1); }

    Element make(std::int64_t a, std::int64_t b) const {
        a %= params_.pm;
        if (a < 0) a += params_.pm;
        b %= params_.pmk;
        if (b < 0) b += params_.pmk;
        return {a, b};
    }

    // (tau^a1 sigma^b1)(tau^a2 sigma^b2) = tau^(a1 + a2 (1+p^k)^b1) sigma^(b1+b2)
    Element mul(const Element& g, const Element& h) const {
        std::int64_t act = mod_pow64(params_.action_unit, g.b, params_.pm);
        __int128 a = g.a + static_cast<__int128>(h.a) * act;
        return make(static_cast<std::int64_t>(a % params_.pm), g.b + h.b);
    }

    Element inverse(const Element& g) const {
        std::int64_t act = mod_pow64(params_.action_unit, g.b, params_.pm);
        // inverse of the unit (1+p^k)^b mod p^m
        std::int64_t inv_act = mod_pow64(act, euler_phi_pm() - 1, params_.pm);
        __int128 a = -static_cast<__int128>(g.a) * inv_act;
        return make(static_cast<std::int64_t>(a % params_.pm), -g.b);
    }

    std::uint64_t encode(const Element& g) const {
        return static_cast<std::uint64_t>(g.a) * static_cast<std::uint64_t>(params_.pmk) +
               static_cast<std::uint64_t>(g.b);
    }

    Element power(const Element& g, const ExactInt& e) const { return group_pow(*this, g, e); }

    /// Exponent c such that g sends the p^m-th root symbol to zeta^c times it.
    /// In normal form tau^a sigma^b, sigma fixes the root, so c = a.
    std::int64_t act_on_root(const Element& g) const { return g.a; }

    /// Unit (1+p^k)^b mod p^m by which g raises zeta_(p^m).
    std::int64_t act_on_zeta(const Element& g) const {
        return mod_pow64(params_.action_unit, g.b, params_.pm);
    }

    std::string describe(const Element& g) const {
        if (g.a == 0 && g.b == 0) return "1";
        std::string s;
        if (g.a != 0) s += "tau^" + std::to_string(g.a);
        if (g.b != 0) s += (s.empty() ? "" : " ") + ("sigma^" + std::to_string(g.b));
        return s;
    }

private:
    std::int64_t euler_phi_pm() const { return params_.pm / params_.p * (params_.p - 1); }
    MetacyclicParams params_;
};

/// [sigma^mu tau^nu, tau^lambda] = tau^(lambda ((1+p^k)^mu - 1)), checked in the
/// carrier against the closed form.
inline bool cyclotomic_commutator_identity(const MetacyclicParams& params, std::int64_t mu,
                                           std::int64_t nu, std::int64_t lambda) {
    MetacyclicGroup g(params);
    auto lhs = group_commutator(
        g, g.mul(g.power(g.sigma(), mu), g.power(g.tau(), nu)), g.power(g.tau(), lambda));
    std::int64_t unit = mod_pow64(params.action_unit, ((mu % params.pmk) + params.pmk) % params.pmk,
                                  params.pm);
    __int128 e = static_cast<__int128>(lambda % params.pm) * (unit - 1);
    auto rhs = g.make(static_cast<std::int64_t>(e % params.pm), 0);
    return g.encode(lhs) == g.encode(rhs);
}

/// Structure report for G(a,m), computed by brute force on the enumerated
/// carrier: order, lower central series closed form, powerfulness, Zassenhaus
/// terms, exponent, and the two vanishing indices n0 and m0.
inline Report verify_metacyclic_structure(const MetacyclicParams& params,
                                          std::size_t max_order = kDefaultMaxOrder) {
    MetacyclicGroup c(params);
    const ExactInt p(params.p);
    Report rep;
    rep.title = "metacyclic structure p=" + std::to_string(params.p) +
                " k=" + std::to_string(params.k) + " m=" + std::to_string(params.m);

    auto g = closure(c, {c.tau(), c.sigma()}, max_order);

    // order p^(2m-k)
    ExactInt expected_order = int_pow(p, static_cast<unsigned long>(2 * params.m - params.k));
    rep.check("order = p^(2m-k)", ExactInt(g.order()) == expected_order,
              std::to_string(g.order()));

    // lower central series: G_{i+1} = <tau^(p^(k i))>
    auto lcs = lower_central_series(c, g, max_order);
    bool lcs_ok = true;
    for (std::size_t i = 1;; ++i) {
        ExactInt e = int_pow(p, static_cast<unsigned long>(params.k) * i);
        auto expect = closure(c, {c.power(c.tau(), e)}, max_order);
        const auto& term = detail::chain_term(lcs, i + 1);
        if (!term.same_elements(expect)) {
            lcs_ok = false;
            break;
        }
        if (term.trivial() && expect.trivial()) break;
    }
    rep.check("G_(i+1) = <tau^(p^(k i))> for all i >= 1", lcs_ok);

    rep.check("G is powerful", is_powerful(c, g, p, max_order));

    // Zassenhaus recursive = closed form G^(p^s) with p^(s-1) < n <= p^s, and = Lazard
    auto zass = zassenhaus_filtration(c, g, p, max_order);
    bool closed_ok = true;
    {
        std::size_t n_max = zass.size();
        for (std::size_t n = 2; n <= n_max; ++n) {
            unsigned long s = 0;
            ExactInt ps = 1;
            while (ps < n) {
                ps *= p;
                ++s;
            }
            auto expect = power_subgroup(c, g, int_pow(p, s), max_order);
            if (!detail::chain_term(zass, n).same_elements(expect)) {
                closed_ok = false;
                break;
            }
        }
    }
    rep.check("G_(n) = G^(p^s) with p^(s-1) < n <= p^s", closed_ok);

    auto laz = zassenhaus_lazard(c, g, p, max_order);
    bool laz_ok = true;
    for (std::size_t n = 1; n <= std::max(zass.size(), laz.size()); ++n)
        if (!detail::chain_term(zass, n).same_elements(detail::chain_term(laz, n))) {
            laz_ok = false;
            break;
        }
    rep.check("zassenhaus recursive = lazard formula", laz_ok);

    ExactInt expo = subgroup_exponent(c, g);
    rep.check("exponent = p^m", expo == int_pow(p, static_cast<unsigned long>(params.m)),
              expo.str());

    auto pds = p_descending_series(c, g, p, max_order);
    // chain ends at its first trivial term, so n0 is its length
    bool pds_trivial_tail = pds.back().trivial();
    std::size_t n0 = pds.size();
    rep.check("n0 = m + 1", pds_trivial_tail && n0 == static_cast<std::size_t>(params.m) + 1,
              "n0 = " + std::to_string(n0));

    std::size_t m0 = zass.size();
    ExactInt expected_m0 = int_pow(p, static_cast<unsigned long>(params.m - 1)) + 1;
    rep.check("m0 = p^(m-1) + 1", zass.back().trivial() && ExactInt(m0) == expected_m0,
              "m0 = " + std::to_string(m0));

    nlohmann::ordered_json data;
    data["order"] = g.order();
    data["exponent"] = expo.str();
    auto orders = [](const auto& chain) {
        std::vector<std::size_t> v;
        for (const auto& t : chain) v.push_back(t.order());
        return v;
    };
    data["lcs_orders"] = orders(lcs);
    data["pds_orders"] = orders(pds);
    data["zassenhaus_orders"] = orders(zass);
    data["powerful"] = is_powerful(c, g, p, max_order);
    data["n0"] = n0;
    data["m0"] = m0;
    data["degenerate_abelian"] = params.degenerate_abelian();
    rep.extra = data;
    return rep;
}

/// Finite quotient of the presentation
///   < sigma, tau_i (i in I) | [tau_i, tau_j] = 1, [sigma, tau_i] = tau_i^(p^k) >
/// with every tau_i truncated mod p^M and sigma mod p^(M-k).
struct CRQuotientParams {
    std::int64_t p;
    std::int64_t k;
    std::int64_t M;       // precision, M >= k
    std::size_t family;   // |I|

    CRQuotientParams(std::int64_t p_, std::int64_t k_, std::int64_t M_, std::size_t family_)
        : p(p_), k(k_), M(M_), family(family_) {
        if (!is_prime(ExactInt(p))) throw std::invalid_argument("cr quotient: p is not prime");
        if (k < 1 || (p == 2 && k < 2))
            throw std::invalid_argument("cr quotient: need k >= 1 (k >= 2 for p = 2)");
        if (M < k) throw std::invalid_argument("cr quotient: need M >= k");
        if (family < 1) throw std::invalid_argument("cr quotient: need |I| >= 1");
        pM = static_cast<std::int64_t>(int_pow(ExactInt(p), static_cast<unsigned long>(M)));
        pMk = static_cast<std::int64_t>(int_pow(ExactInt(p), static_cast<unsigned long>(M - k)));
        action_unit = (static_cast<std::int64_t>(int_pow(ExactInt(p), static_cast<unsigned long>(k))) + 1) % pM;
    }

    std::int64_t pM;
    std::int64_t pMk;
    std::int64_t action_unit;

    ExactInt order() const {
        return int_pow(ExactInt(pM), static_cast<unsigned long>(family)) * pMk;
    }
};

/// Carrier for the CR quotient: sigma acts identically on every tau_i.
class CRQuotientGroup {
public:
    struct Element {
        std::vector<std::int64_t> a;  // tau_i exponents mod p^M
        std::int64_t b;               // sigma exponent mod p^(M-k)
        friend bool operator==(const Element&, const Element&) = default;
    };

    explicit CRQuotientGroup(CRQuotientParams params) : params_(params) {
        // keys are packed base p^M; make sure they fit in 64 bits
        long double bits = (params_.family + 1) * std::log2l((long double)params_.pM);
        if (bits > 63) throw std::invalid_argument("cr quotient: carrier too large to encode");
    }

    const CRQuotientParams& params() const { return params_; }

    Element identity() const { return {std::vector<std::int64_t>(params_.family, 0), 0}; }
    Element sigma() const { return identity_with_b(1); }
    Element tau(std::size_t i) const {
        Element e = identity();
        e.a.at(i) = 1;
        return e;
    }

    Element mul(const Element& g, const Element& h) const {
        std::int64_t act = mod_pow64(params_.action_unit, g.b, params_.pM);
        Element r;
        r.a.resize(params_.family);
        for (std::size_t i = 0; i < params_.family; ++i) {
            __int128 a = g.a[i] + static_cast<__int128>(h.a[i]) * act;
            r.a[i] = static_cast<std::int64_t>(a % params_.pM);
        }
        r.b = (g.b + h.b) % params_.pMk;
        return r;
    }

    Element inverse(const Element& g) const {
        std::int64_t act = mod_pow64(params_.action_unit, g.b, params_.pM);
        std::int64_t phi = params_.pM / params_.p * (params_.p - 1);
        std::int64_t inv_act = mod_pow64(act, phi - 1, params_.pM);
        Element r;
        r.a.resize(params_.family);
        for (std::size_t i = 0; i < params_.family; ++i) {
            __int128 a = -static_cast<__int128>(g.a[i]) * inv_act % params_.pM;
            r.a[i] = static_cast<std::int64_t>(a < 0 ? a + params_.pM : a);
        }
        r.b = (params_.pMk - g.b) % params_.pMk;
        return r;
    }

    std::uint64_t encode(const Element& g) const {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < params_.family; ++i)
            key = key * static_cast<std::uint64_t>(params_.pM) + static_cast<std::uint64_t>(g.a[i]);
        return key * static_cast<std::uint64_t>(params_.pMk) + static_cast<std::uint64_t>(g.b);
    }

private:
    Element identity_with_b(std::int64_t b) const {
        Element e = identity();
        e.b = b;
        return e;
    }
    CRQuotientParams params_;
};

/// Verifies the three relation families and the carrier order for the finite
/// CR quotient; the |I| = 1 case coincides with G(a,M).
inline Report cr_quotient_check(std::int64_t p, std::int64_t k, std::int64_t M,
                                std::size_t family,
                                std::size_t max_order = kDefaultMaxOrder) {
    CRQuotientParams params(p, k, M, family);
    CRQuotientGroup c(params);
    Report rep;
    rep.title = "cr quotient p=" + std::to_string(p) + " k=" + std::to_string(k) +
                " M=" + std::to_string(M) + " |I|=" + std::to_string(family);

    std::vector<CRQuotientGroup::Element> gens{c.sigma()};
    for (std::size_t i = 0; i < family; ++i) gens.push_back(c.tau(i));
    auto g = closure(c, gens, max_order);
    rep.check("order = p^(M|I|) * p^(M-k)", ExactInt(g.order()) == params.order(),
              std::to_string(g.order()));

    bool comm_ok = true;
    for (std::size_t i = 0; i < family && comm_ok; ++i)
        for (std::size_t j = 0; j < family && comm_ok; ++j)
            comm_ok = c.encode(group_commutator(c, c.tau(i), c.tau(j))) ==
                      c.encode(c.identity());
    rep.check("[tau_i, tau_j] = 1", comm_ok);

    ExactInt pk = int_pow(ExactInt(p), static_cast<unsigned long>(k));
    bool act_ok = true;
    for (std::size_t i = 0; i < family && act_ok; ++i)
        act_ok = c.encode(group_commutator(c, c.sigma(), c.tau(i))) ==
                 c.encode(group_pow(c, c.tau(i), pk));
    rep.check("[sigma, tau_i] = tau_i^(p^k)", act_ok);

    ExactInt pM = int_pow(ExactInt(p), static_cast<unsigned long>(M));
    bool tors_ok = true;
    for (std::size_t i = 0; i < family && tors_ok; ++i)
        tors_ok = c.encode(group_pow(c, c.tau(i), pM)) == c.encode(c.identity());
    tors_ok = tors_ok && c.encode(group_pow(c, c.sigma(), ExactInt(params.pMk))) ==
                             c.encode(c.identity());
    rep.check("tau_i^(p^M) = sigma^(p^(M-k)) = 1", tors_ok);
    return rep;
}

}  // namespace relwit
