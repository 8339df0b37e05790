#pragma once

#include <relwit/arith.hpp>
#include <relwit/dpoly.hpp>
#include <relwit/groups.hpp>
#include <relwit/metacyclic.hpp>
#include <relwit/obstruction.hpp>
#include <relwit/unipotent.hpp>
#include <relwit/words.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace relwit {

struct CriterionResult {
    int index;
    std::string name;
    bool pass;
    std::string detail;
};

namespace selftest {

// Criterion grid rows shared by several checks below.
inline std::vector<MetacyclicParams> metacyclic_grid() {
    std::vector<MetacyclicParams> grid;
    for (std::int64_t p : {3, 5})
        for (std::int64_t k : {1, 2})
            for (std::int64_t m = k; m <= 3; ++m) {
                ExactInt order = int_pow(ExactInt(p), static_cast<unsigned long>(2 * m - k));
                if (order <= 1'000'000) grid.emplace_back(p, k, m);
            }
    return grid;
}

inline std::vector<WitnessGroupSpec> witness_grid() {
    return {WitnessGroupSpec(3, 1), WitnessGroupSpec(3, 2), WitnessGroupSpec(5, 1),
            WitnessGroupSpec(5, 2), WitnessGroupSpec(5, 3), WitnessGroupSpec(7, 1),
            WitnessGroupSpec(7, 2)};
}

inline CriterionResult metacyclic_structure_grid() {
    CriterionResult r{1, "metacyclic structure grid", true, ""};
    for (const auto& params : metacyclic_grid()) {
        auto rep = verify_metacyclic_structure(params);
        if (!rep.all_pass()) {
            r.pass = false;
            r.detail = rep.title;
            return r;
        }
    }
    r.detail = std::to_string(metacyclic_grid().size()) + " parameter points";
    return r;
}

inline CriterionResult unipotent_witness_grid() {
    CriterionResult r{2, "unipotent witness grid", true, ""};
    for (const auto& spec : witness_grid()) {
        auto rep = witness_group_check(spec);
        if (!rep.all_pass()) {
            r.pass = false;
            r.detail = rep.title;
            return r;
        }
    }
    r.detail = std::to_string(witness_grid().size()) + " (p,k) points";
    return r;
}

inline CriterionResult obstruction_sweep() {
    CriterionResult r{3, "obstruction sweep", true, ""};
    std::size_t points = 0, obstructed = 0, violations = 0;
    for (std::int64_t p : {3, 5}) {
        SweepGrid grid;
        grid.ps = {p};
        grid.ks = {1, 2};
        grid.m_max = 4;
        grid.us = {1, 2, p + 1};
        auto sw = sweep(grid);
        points += sw.reports.size();
        obstructed += sw.obstructed;
        violations += sw.violations;
        if (sw.failures != 0) {
            r.pass = false;
            for (const auto& rep : sw.reports)
                if (rep.verdict != "hypothesis-violation" &&
                    !(rep.obstructed() && rep.all_pass())) {
                    r.detail = rep.theorem + " " + rep.params.dump();
                    break;
                }
            return r;
        }
    }
    r.pass = obstructed > 0;
    r.detail = std::to_string(points) + " points, " + std::to_string(obstructed) +
               " obstructed, " + std::to_string(violations) + " hypothesis violations";
    return r;
}

inline CriterionResult valuation_identity(std::uint64_t seed) {
    CriterionResult r{4, "unit power valuation identity", true, ""};
    std::mt19937_64 rng(seed);
    const std::array<std::int64_t, 4> primes{2, 3, 5, 7};
    for (int t = 0; t < 1000; ++t) {
        std::int64_t p = primes[rng() % primes.size()];
        unsigned long floor = p == 2 ? 2 : 1;
        unsigned long va = floor + rng() % 5;
        std::int64_t w = static_cast<std::int64_t>(1 + rng() % 50);
        while (w % p == 0) ++w;
        if (rng() % 2) w = -w;
        ExactInt alpha = int_pow(ExactInt(p), va) * w;
        ExactInt n = static_cast<std::int64_t>(1 + rng() % 10'000);
        unsigned long got = unit_power_valuation(ExactInt(p), alpha, n);
        unsigned long want = va + vp(n, ExactInt(p)).value();
        if (got != want) {
            r.pass = false;
            r.detail = "p=" + std::to_string(p) + " alpha=" + alpha.str() +
                       " n=" + n.str() + ": " + std::to_string(got) + " vs " +
                       std::to_string(want);
            return r;
        }
    }
    r.detail = "1000 random instances";
    return r;
}

inline CriterionResult padic_exponent_solving() {
    CriterionResult r{5, "p-adic exponent solving", true, ""};
    const unsigned N = 12;
    std::size_t count = 0;
    for (std::int64_t p : {3, 5})
        for (unsigned k : {1u, 2u})
            for (std::int64_t u = 1; u < p; ++u) {
                PadicInt unit(ExactInt(p), N, u);
                PadicInt v = solve_power_exponent(ExactInt(p), k, unit, N);
                ExactInt pk = int_pow(ExactInt(p), k);
                ExactInt mod = int_pow(ExactInt(p), N);
                ExactInt got = boost::multiprecision::powm(ExactInt(1 + pk * u), v.residue(), mod);
                ExactInt check_mod = int_pow(ExactInt(p), N - 2 * k);
                if (v.precision() != N - k ||
                    (got - (1 + pk)) % check_mod != 0) {
                    r.pass = false;
                    r.detail = "p=" + std::to_string(p) + " k=" + std::to_string(k) +
                               " u=" + std::to_string(u);
                    return r;
                }
                ++count;
            }
    r.detail = std::to_string(count) + " (p,k,u) points at N=12";
    return r;
}

inline CriterionResult polynomial_suite(std::uint64_t seed) {
    CriterionResult r{6, "polynomial and group-ring suite", true, ""};
    for (long long p = 2; p <= 50; ++p) {
        if (!is_prime(ExactInt(p))) continue;
        if (!lemma_di_check(p).all_pass()) {
            r.pass = false;
            r.detail = "recurrence failed at p=" + std::to_string(p);
            return r;
        }
    }
    for (long long p : {3, 5, 7}) {
        if (!module_recurrence_check(p).all_pass()) {
            r.pass = false;
            r.detail = "module recurrence failed at p=" + std::to_string(p);
            return r;
        }
        for (long long i = 1; i <= p - 1; ++i)
            for (long long n = 1; n <= p; ++n)
                if (!tower_induction_check(p, i, n).all_pass()) {
                    r.pass = false;
                    r.detail = "tower identity failed at p=" + std::to_string(p) +
                               " i=" + std::to_string(i) + " n=" + std::to_string(n);
                    return r;
                }
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 1000; ++t) {
        long long p = (rng() % 2) ? 3 : 5;
        std::size_t d = 2 + rng() % 19;  // dimension 2..20
        FpLinearMap nmat(p, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                nmat.at(i, j) = static_cast<long long>(rng() % p);
        std::vector<long long> v(d);
        bool nonzero = false;
        for (auto& x : v) {
            x = static_cast<long long>(rng() % p);
            if (x) nonzero = true;
        }
        if (!nonzero) v[0] = 1;
        // largest chain with N^k v != 0
        std::size_t kk = 0;
        auto cur = nmat.apply(v);
        auto is_zero = [p](const std::vector<long long>& w) {
            for (long long x : w)
                if (x % p != 0) return false;
            return true;
        };
        while (!is_zero(cur)) {
            ++kk;
            cur = nmat.apply(cur);
        }
        if (!nilpotent_independence_check(nmat, v, kk)) {
            r.pass = false;
            r.detail = "independence failed, instance " + std::to_string(t);
            return r;
        }
    }
    r.detail = "primes to 50, full (i,n) ranges, 1000 nilpotent instances";
    return r;
}

inline CriterionResult congruence_check(std::uint64_t seed) {
    CriterionResult r{7, "iterated-commutator congruence", true, ""};
    auto p3 = perturbation_congruence_check(3, seed);
    auto p5 = perturbation_congruence_check(5, seed);
    if (!p3.all_pass() || !p5.all_pass()) {
        r.pass = false;
        r.detail = !p3.all_pass() ? "p=3" : "p=5";
        return r;
    }
    r.detail = "exhaustive at p=3, 1000 sampled pairs at p=5";
    return r;
}

inline CriterionResult cross_cutting() {
    CriterionResult r{8, "cross-cutting filtration and identity checks", true, ""};
    for (const auto& params : metacyclic_grid()) {
        MetacyclicGroup c(params);
        auto h = closure(c, {c.tau(), c.sigma()});
        if (!filtration_cross_checks(c, h, ExactInt(params.p)).all_pass()) {
            r.pass = false;
            r.detail = "metacyclic p=" + std::to_string(params.p) +
                       " k=" + std::to_string(params.k) + " m=" + std::to_string(params.m);
            return r;
        }
    }
    for (const auto& spec : witness_grid()) {
        auto c = witness_carrier(spec);
        auto [x, y] = build_generators(spec, c);
        auto h = closure(c, {x, y});
        if (!filtration_cross_checks(c, h, ExactInt(spec.p)).all_pass()) {
            r.pass = false;
            r.detail = "witness p=" + std::to_string(spec.p) + " k=" + std::to_string(spec.k);
            return r;
        }
    }
    {
        MetacyclicGroup c(MetacyclicParams(3, 1, 2));
        auto h = closure(c, {c.tau(), c.sigma()});
        std::vector<std::array<MetacyclicGroup::Element, 3>> triples;
        for (const auto& a : h.elements)
            for (const auto& b : h.elements)
                for (const auto& z : h.elements) triples.push_back({a, b, z});
        if (!commutator_identities_check(c, triples).all_pass()) {
            r.pass = false;
            r.detail = "commutator identities on the metacyclic carrier";
            return r;
        }
    }
    {
        WitnessGroupSpec spec(3, 1);
        auto c = witness_carrier(spec);
        auto [x, y] = build_generators(spec, c);
        auto h = closure(c, {x, y});
        std::vector<std::array<UnipotentGroup::Element, 3>> triples;
        for (const auto& a : h.elements)
            for (const auto& b : h.elements)
                for (const auto& z : h.elements) triples.push_back({a, b, z});
        if (!commutator_identities_check(c, triples).all_pass()) {
            r.pass = false;
            r.detail = "commutator identities on the unipotent carrier";
            return r;
        }
    }
    r.detail = "all constructed groups";
    return r;
}

}  // namespace selftest

/// Runs the full acceptance grid. Every criterion is exact: any failure is a
/// genuine defect, never a tolerance issue.
inline std::vector<CriterionResult> run_acceptance_suite(std::uint64_t seed = 0) {
    return {selftest::metacyclic_structure_grid(),
            selftest::unipotent_witness_grid(),
            selftest::obstruction_sweep(),
            selftest::valuation_identity(seed),
            selftest::padic_exponent_solving(),
            selftest::polynomial_suite(seed),
            selftest::congruence_check(seed),
            selftest::cross_cutting()};
}

}  // namespace relwit
