#include <relwit/metacyclic.hpp>

#include <catch_amalgamated.hpp>

using namespace relwit;

namespace {

// Independent model: tau^a sigma^b acts on Z/p^m as x -> u^b x + a with
// u = 1 + p^k. Composition of these affine maps is an oracle for the
// normal-form multiplication law.
struct AffineMap {
    std::int64_t mult;
    std::int64_t add;
    std::int64_t mod;

    std::int64_t operator()(std::int64_t x) const { return (mult * x + add) % mod; }
};

AffineMap affine_of(const MetacyclicGroup& g, const MetacyclicGroup::Element& e) {
    return {g.act_on_zeta(e), e.a, g.params().pm};
}

}  // namespace

TEST_CASE("normal-form multiplication", "[metacyclic]") {
    MetacyclicGroup g(MetacyclicParams(3, 1, 2));

    SECTION("worked examples") {
        auto ts = g.mul(g.tau(), g.sigma());  // tau sigma
        auto prod = g.mul(ts, g.tau());
        CHECK(g.encode(prod) == g.encode(g.make(5, 1)));  // (tau sigma) tau = tau^5 sigma

        auto some = g.make(4, 1);
        CHECK(g.encode(g.mul(some, g.identity())) == g.encode(some));

        auto conj = g.mul(g.mul(g.sigma(), g.tau()), g.inverse(g.sigma()));
        CHECK(g.encode(conj) == g.encode(g.make(4, 0)));  // sigma tau sigma^-1 = tau^4
    }

    SECTION("exhaustive agreement with the affine-map oracle") {
        auto h = closure(g, {g.tau(), g.sigma()});
        REQUIRE(h.order() == 27);
        for (const auto& a : h.elements)
            for (const auto& b : h.elements) {
                auto prod = g.mul(a, b);
                auto fa = affine_of(g, a), fb = affine_of(g, b), fp = affine_of(g, prod);
                for (std::int64_t x : {0, 1, 2, 5, 8})
                    CHECK(fp(x) == fa(fb(x)));
            }
    }

    SECTION("parameter mismatch is rejected at the parameter level") {
        CHECK_THROWS_AS(MetacyclicParams(4, 1, 2), std::invalid_argument);
        CHECK_THROWS_AS(MetacyclicParams(3, 0, 2), std::invalid_argument);
        CHECK_THROWS_AS(MetacyclicParams(3, 2, 1), std::invalid_argument);
        CHECK_THROWS_AS(MetacyclicParams(2, 1, 2), std::invalid_argument);
        CHECK_NOTHROW(MetacyclicParams(2, 2, 3));
    }
}

TEST_CASE("inverses and powers", "[metacyclic]") {
    MetacyclicGroup g(MetacyclicParams(3, 1, 2));

    CHECK(g.encode(g.inverse(g.identity())) == g.encode(g.identity()));
    CHECK(g.encode(g.power(g.mul(g.tau(), g.sigma()), 3)) == g.encode(g.make(3, 0)));
    CHECK(g.encode(g.power(g.tau(), 9)) == g.encode(g.identity()));

    auto h = closure(g, {g.tau(), g.sigma()});
    for (const auto& e : h.elements) {
        CHECK(g.encode(g.mul(e, g.inverse(e))) == g.encode(g.identity()));
        CHECK(g.encode(g.power(e, 9)) == g.encode(g.identity()));  // exponent divides
    }

    SECTION("powers against repeated multiplication") {
        auto ts = g.mul(g.tau(), g.sigma());
        auto acc = g.identity();
        for (int n = 0; n <= 12; ++n) {
            CHECK(g.encode(g.power(ts, n)) == g.encode(acc));
            acc = g.mul(acc, ts);
        }
    }
}

TEST_CASE("actions on the root and on the root of unity", "[metacyclic]") {
    MetacyclicGroup g(MetacyclicParams(3, 1, 2));
    CHECK(g.act_on_root(g.tau()) == 1);
    CHECK(g.act_on_root(g.sigma()) == 0);
    CHECK(g.act_on_zeta(g.sigma()) == 4);  // 1 + p^k
    CHECK(g.act_on_zeta(g.tau()) == 1);

    SECTION("the pair of actions is a homomorphic action") {
        auto h = closure(g, {g.tau(), g.sigma()});
        for (const auto& a : h.elements)
            for (const auto& b : h.elements) {
                auto prod = g.mul(a, b);
                auto fa = affine_of(g, a), fb = affine_of(g, b);
                CHECK(g.act_on_root(prod) == fa(fb(0)));
                CHECK(g.act_on_zeta(prod) ==
                      g.act_on_zeta(a) * g.act_on_zeta(b) % g.params().pm);
            }
    }

    SECTION("sigma-conjugation formula on all (a,b)") {
        auto h = closure(g, {g.tau(), g.sigma()});
        for (const auto& e : h.elements) {
            auto sb = g.make(0, e.b);
            auto ta = g.make(e.a, 0);
            auto conj = g.mul(g.mul(sb, ta), g.inverse(sb));
            CHECK(g.encode(conj) ==
                  g.encode(g.make(e.a * g.act_on_zeta(sb) % g.params().pm, 0)));
        }
    }
}

TEST_CASE("cyclotomic commutator identity", "[metacyclic]") {
    MetacyclicParams p312(3, 1, 2);
    CHECK(cyclotomic_commutator_identity(p312, 0, 1, 2));   // mu = 0: trivial
    CHECK(cyclotomic_commutator_identity(p312, 1, 0, 1));   // [sigma,tau] = tau^3
    CHECK(cyclotomic_commutator_identity(MetacyclicParams(3, 1, 3), 2, 1, 2));

    for (std::int64_t mu = 0; mu < 3; ++mu)
        for (std::int64_t nu = 0; nu < 9; ++nu)
            for (std::int64_t lambda = 0; lambda < 9; ++lambda)
                CHECK(cyclotomic_commutator_identity(p312, mu, nu, lambda));
}

TEST_CASE("structure report for the metacyclic family", "[metacyclic]") {
    SECTION("p=3, k=1, m=2") {
        auto rep = verify_metacyclic_structure(MetacyclicParams(3, 1, 2));
        CHECK(rep.all_pass());
        CHECK(rep.extra["order"] == 27);
        CHECK(rep.extra["exponent"] == "9");
        CHECK(rep.extra["n0"] == 3);
        CHECK(rep.extra["m0"] == 4);
        CHECK(rep.extra["powerful"] == true);
        CHECK(rep.extra["degenerate_abelian"] == false);
    }

    SECTION("p=5, k=1, m=2") {
        auto rep = verify_metacyclic_structure(MetacyclicParams(5, 1, 2));
        CHECK(rep.all_pass());
        CHECK(rep.extra["order"] == 125);
        CHECK(rep.extra["exponent"] == "25");
        CHECK(rep.extra["m0"] == 6);
    }

    SECTION("m = k is flagged as the degenerate abelian case") {
        auto rep = verify_metacyclic_structure(MetacyclicParams(3, 1, 1));
        CHECK(rep.all_pass());
        CHECK(rep.extra["degenerate_abelian"] == true);
        CHECK(rep.extra["lcs_orders"].size() == 2);
    }
}

TEST_CASE("multi-generator quotient of the two-relation presentation", "[metacyclic]") {
    SECTION("a single tau reduces to the metacyclic assertions") {
        auto rep = cr_quotient_check(3, 1, 2, 1);
        CHECK(rep.all_pass());
    }

    SECTION("two commuting tau generators") {
        auto rep = cr_quotient_check(3, 1, 2, 2);
        CHECK(rep.all_pass());
        CHECK(rep.extra.is_null());
    }

    SECTION("commutation holds pairwise on the carrier") {
        CRQuotientParams params(3, 1, 2, 3);
        CRQuotientGroup c(params);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                auto comm = group_commutator(c, c.tau(i), c.tau(j));
                CHECK(c.encode(comm) == c.encode(c.identity()));
            }
    }
}
