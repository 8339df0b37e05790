#pragma once

#include <relwit/arith.hpp>
#include <relwit/groups.hpp>
#include <relwit/report.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace relwit {

/// Carrier for U_n(Z/pZ): unit upper-triangular n x n matrices with entries
/// mod p. Inversion uses the Neumann series of the nilpotent part, which is
/// exact and stays in the group.
class UnipotentGroup {
public:
    struct Element {
        std::vector<std::uint8_t> e;  // row-major n*n
        friend bool operator==(const Element&, const Element&) = default;
    };

    UnipotentGroup(int n, std::int64_t p) : n_(n), p_(p) {
        if (n < 2) throw std::invalid_argument("unipotent: need n >= 2");
        if (!is_prime(ExactInt(p))) throw std::invalid_argument("unipotent: p is not prime");
        // strict upper entries must pack into a 64-bit key
        double bits = n * (n - 1) / 2.0 * std::log2(static_cast<double>(p));
        if (bits > 63) throw std::invalid_argument("unipotent: matrices too large to encode");
    }

    int size() const { return n_; }
    std::int64_t prime() const { return p_; }

    Element identity() const {
        Element m{std::vector<std::uint8_t>(n_ * n_, 0)};
        for (int i = 0; i < n_; ++i) m.e[i * n_ + i] = 1;
        return m;
    }

    /// I + E_{ij}, i < j.
    Element elementary(int i, int j) const {
        check_upper(i, j);
        Element m = identity();
        m.e[i * n_ + j] = 1;
        return m;
    }

    std::uint8_t at(const Element& m, int i, int j) const { return m.e[i * n_ + j]; }

    Element set(Element m, int i, int j, std::int64_t v) const {
        check_upper(i, j);
        v %= p_;
        if (v < 0) v += p_;
        m.e[i * n_ + j] = static_cast<std::uint8_t>(v);
        return m;
    }

    Element mul(const Element& a, const Element& b) const {
        Element r{std::vector<std::uint8_t>(n_ * n_, 0)};
        for (int i = 0; i < n_; ++i)
            for (int k = i; k < n_; ++k) {
                std::uint32_t aik = a.e[i * n_ + k];
                if (!aik) continue;
                for (int j = k; j < n_; ++j) {
                    std::uint32_t v = r.e[i * n_ + j] + aik * b.e[k * n_ + j];
                    r.e[i * n_ + j] = static_cast<std::uint8_t>(v % p_);
                }
            }
        return r;
    }

    Element inverse(const Element& a) const {
        // a = I + N with N strictly upper; a^-1 = I - N + N^2 - ...
        Element nil = a;
        for (int i = 0; i < n_; ++i) nil.e[i * n_ + i] = 0;
        Element acc = identity();
        Element pw = identity();
        int sign = -1;
        for (int t = 1; t < n_; ++t) {
            pw = mul(pw, nil);
            for (int idx = 0; idx < n_ * n_; ++idx) {
                std::int32_t v = acc.e[idx] + sign * static_cast<std::int32_t>(pw.e[idx]);
                v %= static_cast<std::int32_t>(p_);
                if (v < 0) v += static_cast<std::int32_t>(p_);
                acc.e[idx] = static_cast<std::uint8_t>(v);
            }
            sign = -sign;
        }
        return acc;
    }

    std::uint64_t encode(const Element& m) const {
        std::uint64_t key = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                key = key * static_cast<std::uint64_t>(p_) + m.e[i * n_ + j];
        return key;
    }

    std::string describe(const Element& m) const {
        std::string s = "[";
        for (int i = 0; i < n_; ++i) {
            s += i ? ";" : "";
            for (int j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string(m.e[i * n_ + j]);
        }
        return s + "]";
    }

private:
    void check_upper(int i, int j) const {
        if (i < 0 || j >= n_ || i >= j)
            throw std::invalid_argument("unipotent: entry must be strictly upper triangular");
    }

    int n_;
    std::int64_t p_;
};

/// Witness-group parameters: prime p and 1 <= k <= p-1; the ambient group is
/// U_{k+2}(Z/pZ).
struct WitnessGroupSpec {
    std::int64_t p;
    int k;

    WitnessGroupSpec(std::int64_t p_, int k_) : p(p_), k(k_) {
        if (!is_prime(ExactInt(p))) throw std::invalid_argument("witness spec: p is not prime");
        if (k < 1 || k >= p)
            throw std::invalid_argument("witness spec: need 1 <= k <= p-1");
    }

    int matrix_size() const { return k + 2; }
};

/// X = I + E_{1,2} + ... + E_{k,k+1}  and  Y = I + E_{k+1,k+2}
/// (1-based positions, as displayed; indices below are 0-based).
inline std::pair<UnipotentGroup::Element, UnipotentGroup::Element> build_generators(
    const WitnessGroupSpec& spec, const UnipotentGroup& c) {
    auto x = c.identity();
    for (int i = 0; i < spec.k; ++i) x = c.set(std::move(x), i, i + 1, 1);
    auto y = c.set(c.identity(), spec.k, spec.k + 1, 1);
    return {x, y};
}

inline UnipotentGroup witness_carrier(const WitnessGroupSpec& spec) {
    return UnipotentGroup(spec.matrix_size(), spec.p);
}

/// Left-nested [x^(i), y] on group elements.
template <GroupCarrier C>
typename C::Element iterated_group_commutator(const C& c, const typename C::Element& x,
                                              const typename C::Element& y, unsigned i) {
    auto cur = y;
    for (unsigned t = 0; t < i; ++t) cur = group_commutator(c, x, cur);
    return cur;
}

inline UnipotentGroup::Element iterated_matrix_commutator(const UnipotentGroup& c,
                                                          const UnipotentGroup::Element& x,
                                                          const UnipotentGroup::Element& y,
                                                          unsigned i) {
    return iterated_group_commutator(c, x, y, i);
}

/// Exponent-tuple table for the normal form
///   g = [x^(k),y]^{e_k} ... [x,y]^{e_1} y^{e_0} x^{e_-1},
/// tabulated over all p^(k+2) tuples. Membership is table lookup.
class WitnessNormalForm {
public:
    WitnessNormalForm(const WitnessGroupSpec& spec, const UnipotentGroup& c) : spec_(spec) {
        auto [x, y] = build_generators(spec, c);
        basis_.push_back(x);                                  // e_-1 slot, rightmost
        basis_.insert(basis_.begin(), y);                     // e_0
        for (int i = 1; i <= spec.k; ++i)
            basis_.insert(basis_.begin(), iterated_matrix_commutator(c, x, y, i));
        // basis_ is now [ [x^(k),y], ..., [x,y], y, x ]

        std::vector<int> tuple(spec.k + 2, 0);
        build(c, 0, c.identity(), tuple);
    }

    /// Tuple order: (e_k, ..., e_1, e_0, e_-1).
    std::vector<int> decompose(const UnipotentGroup& c,
                               const UnipotentGroup::Element& g) const {
        auto it = table_.find(c.encode(g));
        if (it == table_.end())
            throw std::domain_error("normal form: element is not in <X,Y>");
        return it->second;
    }

    UnipotentGroup::Element compose(const UnipotentGroup& c,
                                    const std::vector<int>& tuple) const {
        if (tuple.size() != basis_.size())
            throw std::invalid_argument("normal form: tuple length mismatch");
        auto g = c.identity();
        for (std::size_t i = 0; i < tuple.size(); ++i)
            g = c.mul(g, group_pow(c, basis_[i], tuple[i]));
        return g;
    }

    std::size_t table_size() const { return table_.size(); }

private:
    void build(const UnipotentGroup& c, std::size_t slot, UnipotentGroup::Element acc,
               std::vector<int>& tuple) {
        if (slot == basis_.size()) {
            table_.emplace(c.encode(acc), tuple);
            return;
        }
        auto cur = acc;
        for (int e = 0; e < spec_.p; ++e) {
            tuple[slot] = e;
            build(c, slot + 1, cur, tuple);
            cur = c.mul(cur, basis_[slot]);
        }
        tuple[slot] = 0;
    }

    WitnessGroupSpec spec_;
    std::vector<UnipotentGroup::Element> basis_;
    std::unordered_map<std::uint64_t, std::vector<int>> table_;
};

/// Full witness-group report: subgroup order p^(k+2), the defining relations,
/// the closed form [X^(i),Y] = I + E_{k+1-i,k+2}, lower central series
/// vanishing exactly at step k+2, and the normal-form bijection.
inline Report witness_group_check(const WitnessGroupSpec& spec,
                                  std::size_t max_order = kDefaultMaxOrder) {
    UnipotentGroup c = witness_carrier(spec);
    auto [x, y] = build_generators(spec, c);
    const ExactInt p(spec.p);
    Report rep;
    rep.title = "unipotent witness group p=" + std::to_string(spec.p) +
                " k=" + std::to_string(spec.k);

    ExactInt expected = int_pow(p, static_cast<unsigned long>(spec.k) + 2);
    if (expected > ExactInt(max_order)) throw ResourceLimitError(max_order);
    auto h = closure(c, {x, y}, max_order);
    rep.check("|<X,Y>| = p^(k+2)", ExactInt(h.order()) == expected,
              std::to_string(h.order()));

    auto id_key = c.encode(c.identity());
    bool rel1 = c.encode(group_pow(c, x, p)) == id_key &&
                c.encode(group_pow(c, y, p)) == id_key;
    bool rel2 = true;
    for (int i = 1; i <= spec.k; ++i) {
        auto ci = iterated_matrix_commutator(c, x, y, static_cast<unsigned>(i));
        rel1 = rel1 && c.encode(group_pow(c, ci, p)) == id_key;
        rel2 = rel2 && c.encode(group_commutator(c, ci, y)) == id_key;
    }
    rel2 = rel2 &&
           c.encode(iterated_matrix_commutator(c, x, y, static_cast<unsigned>(spec.k) + 1)) ==
               id_key;
    rep.check("relations (1): x^p = y^p = [x^(i),y]^p = 1", rel1);
    rep.check("relations (2): [[x^(i),y],y] = 1, [x^(k+1),y] = 1", rel2);

    bool closed_form = true;
    for (int i = 0; i <= spec.k; ++i) {
        auto lhs = iterated_matrix_commutator(c, x, y, static_cast<unsigned>(i));
        auto rhs = c.elementary(spec.k - i, spec.k + 1);  // I + E_{k+1-i, k+2}, 0-based
        closed_form = closed_form && c.encode(lhs) == c.encode(rhs);
    }
    rep.check("[X^(i),Y] = I + E_{k+1-i,k+2} for 0 <= i <= k", closed_form);

    auto lcs = lower_central_series(c, h, max_order);
    bool vanish = lcs.size() == static_cast<std::size_t>(spec.k) + 2 && lcs.back().trivial() &&
                  !lcs[lcs.size() - 2].trivial();
    rep.check("LCS vanishes exactly at step k+2", vanish,
              "chain length " + std::to_string(lcs.size()));
    rep.check("[X^(k),Y] != I",
              c.encode(iterated_matrix_commutator(c, x, y, static_cast<unsigned>(spec.k))) !=
                  id_key);

    WitnessNormalForm nf(spec, c);
    bool bijective = nf.table_size() == h.order();
    if (bijective) {
        for (const auto& g : h.elements)
            if (c.encode(nf.compose(c, nf.decompose(c, g))) != c.encode(g)) {
                bijective = false;
                break;
            }
    }
    rep.check("normal-form tuples biject with subgroup elements", bijective,
              std::to_string(nf.table_size()) + " tuples");
    return rep;
}

/// Perturbation congruences in the k = p-1 witness group H: for sigma = X gamma,
/// tau = Y delta with gamma, delta in H_2 = [H,H], asserts
/// [sigma^(i),tau] = [X^(i),Y] mod H_{i+2} for 1 <= i <= p-1, with exact
/// equality and nontriviality at i = p-1. Exhaustive when |H_2|^2 <= 10^4,
/// otherwise 10^3 seeded uniform pairs.
inline Report perturbation_congruence_check(std::int64_t p, std::uint64_t seed = 0,
                                         std::size_t sample_count = 1000,
                                         std::size_t max_order = kDefaultMaxOrder) {
    if (p == 2 || !is_prime(ExactInt(p)))
        throw std::invalid_argument("congruence check: p must be an odd prime");
    WitnessGroupSpec spec(p, static_cast<int>(p) - 1);
    UnipotentGroup c = witness_carrier(spec);
    auto [x, y] = build_generators(spec, c);
    Report rep;
    rep.title = "iterated-commutator perturbation congruence p=" + std::to_string(p);

    auto h = closure(c, {x, y}, max_order);
    auto lcs = lower_central_series(c, h, max_order);
    const auto& h2 = detail::chain_term(lcs, 2);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (h2.order() * h2.order() <= 10'000) {
        for (std::size_t i = 0; i < h2.order(); ++i)
            for (std::size_t j = 0; j < h2.order(); ++j) pairs.emplace_back(i, j);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> dist(0, h2.order() - 1);
        for (std::size_t t = 0; t < sample_count; ++t)
            pairs.emplace_back(dist(rng), dist(rng));
    }

    std::size_t cong_fail = 0, exact_fail = 0, nontrivial_fail = 0;
    auto id_key = c.encode(c.identity());
    for (auto [gi, di] : pairs) {
        auto sigma = c.mul(x, h2.elements[gi]);
        auto tau = c.mul(y, h2.elements[di]);
        auto cur = tau;       // [sigma^(i), tau]
        auto model = y;       // [X^(i), Y]
        for (int i = 1; i <= spec.k; ++i) {
            cur = group_commutator(c, sigma, cur);
            model = group_commutator(c, x, model);
            auto diff = c.mul(cur, c.inverse(model));
            if (!detail::chain_term(lcs, static_cast<std::size_t>(i) + 2)
                     .contains(c, diff))
                ++cong_fail;
        }
        if (c.encode(cur) != c.encode(model)) ++exact_fail;
        if (c.encode(cur) == id_key) ++nontrivial_fail;
    }
    std::string n = std::to_string(pairs.size()) + " pairs";
    rep.check("[sigma^(i),tau] = [X^(i),Y] mod H_(i+2), all i", cong_fail == 0, n);
    rep.check("exact equality at i = p-1", exact_fail == 0, n);
    rep.check("[sigma^(p-1),tau] != 1", nontrivial_fail == 0, n);
    return rep;
}

}  // namespace relwit
