#pragma once

#include <relwit/arith.hpp>
#include <relwit/report.hpp>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace relwit {

/// A concrete finite group: identity, total multiplication and inversion, and
/// an injective 64-bit encoding of elements used to key all element sets.
template <typename C>
concept GroupCarrier = requires(const C& c, const typename C::Element& a,
                                const typename C::Element& b) {
    { c.identity() } -> std::same_as<typename C::Element>;
    { c.mul(a, b) } -> std::same_as<typename C::Element>;
    { c.inverse(a) } -> std::same_as<typename C::Element>;
    { c.encode(a) } -> std::same_as<std::uint64_t>;
};

struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(std::size_t bound)
        : std::runtime_error("subgroup closure exceeded max_order bound " +
                             std::to_string(bound)) {}
};

inline constexpr std::size_t kDefaultMaxOrder = 1'000'000;

template <GroupCarrier C>
typename C::Element group_pow(const C& c, typename C::Element g, ExactInt e) {
    if (e < 0) {
        g = c.inverse(g);
        e = -e;
    }
    auto r = c.identity();
    while (e > 0) {
        if (e % 2 == 1) r = c.mul(r, g);
        g = c.mul(g, g);
        e /= 2;
    }
    return r;
}

/// [a,b] = a b a^-1 b^-1 (the convention used throughout).
template <GroupCarrier C>
typename C::Element group_commutator(const C& c, const typename C::Element& a,
                                     const typename C::Element& b) {
    return c.mul(c.mul(a, b), c.mul(c.inverse(a), c.inverse(b)));
}

/// Fully enumerated subgroup: generating set plus the closed element set.
template <typename C>
struct Subgroup {
    std::vector<typename C::Element> generators;
    std::vector<typename C::Element> elements;
    std::unordered_set<std::uint64_t> keys;

    std::size_t order() const { return elements.size(); }
    bool trivial() const { return elements.size() == 1; }

    bool contains(const C& c, const typename C::Element& g) const {
        return keys.contains(c.encode(g));
    }
    bool contains_subgroup(const Subgroup& other) const {
        for (std::uint64_t k : other.keys)
            if (!keys.contains(k)) return false;
        return true;
    }
    bool same_elements(const Subgroup& other) const {
        return keys.size() == other.keys.size() && contains_subgroup(other);
    }
};

/// Breadth-first closure of a generating set under multiplication by the
/// generators and their inverses. Exact when the result fits in max_order.
template <GroupCarrier C>
Subgroup<C> closure(const C& c, std::vector<typename C::Element> gens,
                    std::size_t max_order = kDefaultMaxOrder) {
    if (max_order < 1) throw std::invalid_argument("closure: max_order must be >= 1");
    Subgroup<C> h;
    h.generators = gens;
    std::vector<typename C::Element> step = gens;
    for (const auto& g : gens) step.push_back(c.inverse(g));

    auto id = c.identity();
    h.elements.push_back(id);
    h.keys.insert(c.encode(id));
    std::deque<typename C::Element> frontier{id};
    while (!frontier.empty()) {
        auto cur = frontier.front();
        frontier.pop_front();
        for (const auto& s : step) {
            auto nxt = c.mul(cur, s);
            if (h.keys.insert(c.encode(nxt)).second) {
                if (h.elements.size() >= max_order) throw ResourceLimitError(max_order);
                h.elements.push_back(nxt);
                frontier.push_back(nxt);
            }
        }
    }
    return h;
}

namespace detail {

// Close over a pool of candidate elements, keeping only the candidates that
// actually enlarge the subgroup as generators. Each accepted generator at
// least doubles the order, so the closure is recomputed O(log |H|) times.
template <GroupCarrier C>
Subgroup<C> close_over(const C& c, const std::vector<typename C::Element>& pool,
                       std::size_t max_order) {
    std::vector<typename C::Element> gens;
    Subgroup<C> h = closure(c, gens, max_order);
    for (const auto& g : pool) {
        if (h.contains(c, g)) continue;
        gens.push_back(g);
        h = closure(c, gens, max_order);
    }
    return h;
}

}  // namespace detail

// Pair bound below which the generator-pair computation of [H,K] is validated
// against the defining all-element-pairs computation.
inline constexpr std::size_t kCommutatorValidationPairs = 1'000'000;

/// [H,K]: the subgroup generated by all commutators [x,y], x in H, y in K.
/// Computed as the normal closure, under conjugation by the generators of H
/// and K, of the generator-pair commutators; [H,K] is normalized by <H,K>, so
/// this equals the full element-pair subgroup. Whenever |H|*|K| is small the
/// result is verified against the defining computation and a logic error is
/// raised on any mismatch.
template <GroupCarrier C>
Subgroup<C> commutator_subgroup(const C& c, const Subgroup<C>& h, const Subgroup<C>& k,
                                std::size_t max_order = kDefaultMaxOrder) {
    std::vector<typename C::Element> conjugators;
    for (const auto* side : {&h, &k})
        for (const auto& g : side->generators) {
            conjugators.push_back(g);
            conjugators.push_back(c.inverse(g));
        }

    std::vector<typename C::Element> seeds;
    for (const auto& a : h.generators)
        for (const auto& b : k.generators) seeds.push_back(group_commutator(c, a, b));
    auto s = detail::close_over(c, seeds, max_order);

    // Close the generating set under conjugation; conjugation is an
    // automorphism, so generator-level invariance gives subgroup invariance.
    std::deque<typename C::Element> queue(s.generators.begin(), s.generators.end());
    while (!queue.empty()) {
        auto g = queue.front();
        queue.pop_front();
        for (const auto& t : conjugators) {
            auto x = c.mul(c.mul(t, g), c.inverse(t));
            if (!s.contains(c, x)) {
                s.generators.push_back(x);
                s = closure(c, s.generators, max_order);
                queue.push_back(x);
            }
        }
    }

    if (h.order() * k.order() <= kCommutatorValidationPairs) {
        std::vector<typename C::Element> pool;
        for (const auto& a : h.elements)
            for (const auto& b : k.elements) pool.push_back(group_commutator(c, a, b));
        auto oracle = detail::close_over(c, pool, max_order);
        if (!oracle.same_elements(s))
            throw std::logic_error(
                "commutator_subgroup: generator-pair closure disagrees with the "
                "element-pair definition");
    }
    return s;
}

/// H^e: subgroup generated by the e-th powers of all elements of H.
template <GroupCarrier C>
Subgroup<C> power_subgroup(const C& c, const Subgroup<C>& h, const ExactInt& e,
                           std::size_t max_order = kDefaultMaxOrder) {
    std::vector<typename C::Element> pool;
    pool.reserve(h.elements.size());
    for (const auto& a : h.elements) pool.push_back(group_pow(c, a, e));
    return detail::close_over(c, pool, max_order);
}

/// Lower central series H = G_1 >= G_2 >= ..., G_{i+1} = [G_i, H], down to the
/// first repeated term (the trivial group for nilpotent H).
template <GroupCarrier C>
std::vector<Subgroup<C>> lower_central_series(const C& c, const Subgroup<C>& h,
                                              std::size_t max_order = kDefaultMaxOrder) {
    std::vector<Subgroup<C>> chain{h};
    for (;;) {
        auto next = commutator_subgroup(c, chain.back(), h, max_order);
        if (next.same_elements(chain.back())) break;
        chain.push_back(std::move(next));
        if (chain.back().trivial()) break;
    }
    return chain;
}

/// p-descending central series: G^(i+1) = (G^(i))^p [G^(i), H].
template <GroupCarrier C>
std::vector<Subgroup<C>> p_descending_series(const C& c, const Subgroup<C>& h,
                                             const ExactInt& p,
                                             std::size_t max_order = kDefaultMaxOrder) {
    std::vector<Subgroup<C>> chain{h};
    for (;;) {
        const auto& cur = chain.back();
        std::vector<typename C::Element> pool;
        for (const auto& a : cur.elements) pool.push_back(group_pow(c, a, p));
        auto comm = commutator_subgroup(c, cur, h, max_order);
        pool.insert(pool.end(), comm.generators.begin(), comm.generators.end());
        auto next = detail::close_over(c, pool, max_order);
        if (next.same_elements(cur)) break;
        chain.push_back(std::move(next));
        if (chain.back().trivial()) break;
    }
    return chain;
}

namespace detail {

// Chains are stored up to their stable tail; index past the end clamps.
template <typename C>
const Subgroup<C>& chain_term(const std::vector<Subgroup<C>>& chain, std::size_t n) {
    if (n < 1) throw std::invalid_argument("chain term index starts at 1");
    return chain[std::min(n, chain.size()) - 1];
}

}  // namespace detail

inline constexpr std::size_t kSeriesLengthCap = 10'000;

/// p-Zassenhaus filtration by its recursive definition:
/// G_(n) = G_(ceil(n/p))^p * prod_{i+j=n} [G_(i), G_(j)].
template <GroupCarrier C>
std::vector<Subgroup<C>> zassenhaus_filtration(const C& c, const Subgroup<C>& h,
                                               const ExactInt& p,
                                               std::size_t max_order = kDefaultMaxOrder) {
    std::size_t pl = static_cast<std::size_t>(p);
    std::vector<Subgroup<C>> chain{h};
    if (h.trivial()) return chain;
    for (std::size_t n = 2; n <= kSeriesLengthCap; ++n) {
        std::size_t up = (n + pl - 1) / pl;  // ceil(n/p)
        std::vector<typename C::Element> pool;
        for (const auto& a : detail::chain_term(chain, up).elements)
            pool.push_back(group_pow(c, a, p));
        for (std::size_t i = 1; i <= n - 1; ++i) {
            std::size_t j = n - i;
            if (i > j) break;  // [G_(j),G_(i)] adds only inverses
            auto comm = commutator_subgroup(c, detail::chain_term(chain, i),
                                            detail::chain_term(chain, j), max_order);
            pool.insert(pool.end(), comm.generators.begin(), comm.generators.end());
        }
        auto next = detail::close_over(c, pool, max_order);
        bool done = next.trivial();
        chain.push_back(std::move(next));
        if (done) return chain;
    }
    throw std::runtime_error("zassenhaus_filtration: series did not terminate");
}

template <GroupCarrier C>
ExactInt element_order(const C& c, const typename C::Element& g) {
    auto id = c.identity();
    auto id_key = c.encode(id);
    auto cur = g;
    ExactInt n = 1;
    while (c.encode(cur) != id_key) {
        cur = c.mul(cur, g);
        ++n;
    }
    return n;
}

template <GroupCarrier C>
ExactInt subgroup_exponent(const C& c, const Subgroup<C>& h) {
    ExactInt e = 1;
    for (const auto& g : h.elements) {
        ExactInt o = element_order(c, g);
        e = boost::multiprecision::lcm(e, o);
    }
    return e;
}

/// The same filtration via the cross-formula G_(n) = prod_{i p^h >= n} G_i^{p^h}
/// over the lower central series. Must agree with the recursion term by term.
template <GroupCarrier C>
std::vector<Subgroup<C>> zassenhaus_lazard(const C& c, const Subgroup<C>& h,
                                           const ExactInt& p,
                                           std::size_t max_order = kDefaultMaxOrder) {
    auto lcs = lower_central_series(c, h, max_order);
    // largest power of p that can act nontrivially
    unsigned hmax = 0;
    ExactInt exp_bound = 1;
    {
        ExactInt e = subgroup_exponent(c, h);
        while (exp_bound < e) {
            exp_bound *= p;
            ++hmax;
        }
    }
    std::vector<Subgroup<C>> chain{h};
    if (h.trivial()) return chain;
    for (std::size_t n = 2; n <= kSeriesLengthCap; ++n) {
        std::vector<typename C::Element> pool;
        for (std::size_t i = 1; i <= lcs.size(); ++i) {
            for (unsigned hh = 0; hh <= hmax; ++hh) {
                ExactInt weight = ExactInt(i) * int_pow(p, hh);
                if (weight < n) continue;
                ExactInt ph = int_pow(p, hh);
                for (const auto& a : lcs[i - 1].elements)
                    pool.push_back(group_pow(c, a, ph));
            }
        }
        auto next = detail::close_over(c, pool, max_order);
        bool done = next.trivial();
        chain.push_back(std::move(next));
        if (done) return chain;
    }
    throw std::runtime_error("zassenhaus_lazard: series did not terminate");
}

/// Powerful test: [H,H] <= H^p for odd p, [H,H] <= H^4 for p = 2.
template <GroupCarrier C>
bool is_powerful(const C& c, const Subgroup<C>& h, const ExactInt& p,
                 std::size_t max_order = kDefaultMaxOrder) {
    auto comm = commutator_subgroup(c, h, h, max_order);
    auto pw = power_subgroup(c, h, p == 2 ? ExactInt(4) : p, max_order);
    return pw.contains_subgroup(comm);
}

/// Cross-cutting filtration checks: recursive Zassenhaus equals the Lazard
/// cross-formula term by term, and H_(p^(l-1)+1) <= H^((l+1)) for l in {2,3}.
template <GroupCarrier C>
Report filtration_cross_checks(const C& c, const Subgroup<C>& h, const ExactInt& p,
                               std::size_t max_order = kDefaultMaxOrder) {
    Report rep;
    rep.title = "filtration cross-checks";
    auto zr = zassenhaus_filtration(c, h, p, max_order);
    auto zl = zassenhaus_lazard(c, h, p, max_order);
    std::size_t len = std::max(zr.size(), zl.size());
    bool agree = true;
    for (std::size_t n = 1; n <= len; ++n)
        if (!detail::chain_term(zr, n).same_elements(detail::chain_term(zl, n))) {
            agree = false;
            break;
        }
    rep.check("zassenhaus recursive = lazard formula", agree);

    auto pds = p_descending_series(c, h, p, max_order);
    for (unsigned long l : {2UL, 3UL}) {
        ExactInt idx = int_pow(p, l - 1) + 1;
        const auto& zterm = detail::chain_term(zr, static_cast<std::size_t>(idx));
        const auto& dterm = detail::chain_term(pds, l + 1);
        rep.check("H_(p^" + std::to_string(l - 1) + "+1) <= H^((" + std::to_string(l + 1) + "))",
                  dterm.contains_subgroup(zterm));
    }
    return rep;
}

}  // namespace relwit
