#include "gda/forms.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>

using namespace gda;

namespace {

// The unique nontrivial alternating bicharacter on Z2^2: -1 on all pairs of
// distinct nontrivial elements.
int nontrivial_z22(const FinAbelianGroup& g, const GroupElement& u, const GroupElement& v) {
    if (g.order_of(u) == 1 || g.order_of(v) == 1 || u == v) return 1;
    return -1;
}

QuadraticForm z22_form(const FinAbelianGroup& g, int mu_a, int mu_b, int mu_c) {
    return QuadraticForm::from_values(Subgroup::whole(g), [&](const GroupElement& t) {
        if (t == GroupElement{{1, 0}}) return mu_a;
        if (t == GroupElement{{0, 1}}) return mu_b;
        if (t == GroupElement{{1, 1}}) return mu_c;
        return 1;
    });
}

} // namespace

TEST_CASE("bicharacter validation") {
    FinAbelianGroup g(2, 0);
    Subgroup whole = Subgroup::whole(g);
    CHECK_NOTHROW(Bicharacter::from_table(
        whole, [&](const GroupElement& u, const GroupElement& v) {
            return nontrivial_z22(g, u, v);
        }));
    CHECK_NOTHROW(Bicharacter::from_table(whole, [](const GroupElement&, const GroupElement&) {
        return 1;
    }));
    CHECK_THROWS_AS(Bicharacter::from_table(whole,
                                            [&](const GroupElement& u, const GroupElement& v) {
                                                if (u == v && g.order_of(u) > 1) return -1;
                                                return 1;
                                            }),
                    GdaError); // beta(t,t) = -1 is not alternating
}

TEST_CASE("polarization") {
    FinAbelianGroup g(2, 0);
    auto beta_ref = Bicharacter::from_table(Subgroup::whole(g),
                                            [&](const GroupElement& u, const GroupElement& v) {
                                                return nontrivial_z22(g, u, v);
                                            });
    CHECK(z22_form(g, -1, -1, -1).polarize() == beta_ref);
    CHECK(z22_form(g, 1, 1, -1).polarize() == beta_ref);
    auto trivial = QuadraticForm::from_values(Subgroup::whole(g),
                                              [](const GroupElement&) { return 1; });
    Subgroup rad = trivial.polarize().radical();
    CHECK(rad.size() == 4); // trivial bicharacter

    // mu(a)=mu(b)=+1, mu(c)=+1 with mu(e)=+1 is quadratic; a non-quadratic map
    // must be rejected through its polarization.
    FinAbelianGroup g3(3, 0);
    auto bad = QuadraticForm::from_values(Subgroup::whole(g3), [&](const GroupElement& t) {
        // parity of popcount: mu(t) = -1 iff exactly one coordinate set
        int cnt = t.e[0] + t.e[1] + t.e[2];
        return cnt == 1 ? -1 : 1;
    });
    CHECK_THROWS_AS(bad.polarize(), GdaError);
}

TEST_CASE("radical and type") {
    FinAbelianGroup g(2, 0);
    auto beta = Bicharacter::from_table(Subgroup::whole(g),
                                        [&](const GroupElement& u, const GroupElement& v) {
                                            return nontrivial_z22(g, u, v);
                                        });
    CHECK(radical_and_type(beta).tag == FormType::TypeI);

    FinAbelianGroup z2(1, 0);
    auto mu = QuadraticForm::from_values(Subgroup::whole(z2), [](const GroupElement& t) {
        return t.e[0] ? -1 : 1;
    });
    auto type = radical_and_type(mu.polarize(), mu);
    CHECK(type.tag == FormType::TypeII);
    REQUIRE(type.semineutral.has_value());
    CHECK(*type.semineutral == GroupElement{{1}});

    auto trivial2 = Bicharacter::from_table(Subgroup::whole(g),
                                            [](const GroupElement&, const GroupElement&) {
                                                return 1;
                                            });
    CHECK(radical_and_type(trivial2).tag == FormType::NotRegular);
}

TEST_CASE("radical contains the squares") {
    FinAbelianGroup g(1, 1);
    // Type II bicharacter on Z2 x Z4: the unique nondegenerate pairing mod squares.
    auto beta = Bicharacter::from_table(Subgroup::whole(g),
                                        [&](const GroupElement& u, const GroupElement& v) {
                                            int bits = (u.e[0] & 1) * (v.e[1] & 1) +
                                                       (u.e[1] & 1) * (v.e[0] & 1);
                                            return bits % 2 ? -1 : 1;
                                        });
    Subgroup rad = beta.radical();
    Subgroup sq = Subgroup::whole(g).squares();
    for (std::size_t r : sq.ranks()) CHECK(rad.contains_rank(r));
    CHECK(rad.size() == 2);
    auto type = radical_and_type(beta);
    CHECK(type.tag == FormType::TypeII);
    CHECK(*type.semineutral == GroupElement{{0, 2}});
}

TEST_CASE("symplectic basis on Z2^2") {
    FinAbelianGroup g(2, 0);
    auto beta = Bicharacter::from_table(Subgroup::whole(g),
                                        [&](const GroupElement& u, const GroupElement& v) {
                                            return nontrivial_z22(g, u, v);
                                        });
    auto fam = symplectic_basis(beta);
    REQUIRE(fam.pairs.size() == 1);
    CHECK_FALSE(fam.trailing.has_value());
    CHECK(beta.value(fam.pairs[0].first, fam.pairs[0].second) == -1);
}

TEST_CASE("symplectic basis on the trivial group") {
    FinAbelianGroup g(0, 0);
    auto beta = Bicharacter::from_table(Subgroup::whole(g),
                                        [](const GroupElement&, const GroupElement&) {
                                            return 1;
                                        });
    auto fam = symplectic_basis(beta);
    CHECK(fam.pairs.empty());
    CHECK_FALSE(fam.trailing.has_value());
}

TEST_CASE("symplectic basis Z4 case has b_m of order 4 with b_m^2 = f") {
    FinAbelianGroup g(1, 1);
    auto beta = Bicharacter::from_table(Subgroup::whole(g),
                                        [&](const GroupElement& u, const GroupElement& v) {
                                            int bits = (u.e[0] & 1) * (v.e[1] & 1) +
                                                       (u.e[1] & 1) * (v.e[0] & 1);
                                            return bits % 2 ? -1 : 1;
                                        });
    auto fam = symplectic_basis(beta);
    REQUIRE(fam.pairs.size() == 1);
    const auto& [a, b] = fam.pairs[0];
    CHECK(g.order_of(a) == 2);
    CHECK(g.order_of(b) == 4);
    CHECK(g.mul(b, b) == GroupElement{{0, 2}});
}

TEST_CASE("symplectic bases on Z2^4 verified by brute force") {
    FinAbelianGroup g(4, 0);
    Subgroup whole = Subgroup::whole(g);
    // A nondegenerate pairing: symplectic normal form on coordinates.
    auto beta = Bicharacter::from_table(whole, [&](const GroupElement& u, const GroupElement& v) {
        int bits = u.e[0] * v.e[1] + u.e[1] * v.e[0] + u.e[2] * v.e[3] + u.e[3] * v.e[2];
        return bits % 2 ? -1 : 1;
    });
    auto fam = symplectic_basis(beta);
    REQUIRE(fam.pairs.size() == 2);
    CHECK(fam.validate(beta));
    // Brute-force re-verification of all 16 pairwise products.
    std::vector<GroupElement> members;
    for (const auto& [a, b] : fam.pairs) {
        members.push_back(a);
        members.push_back(b);
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            int expect = (i / 2 == j / 2 && i != j) ? -1 : 1;
            CHECK(beta.value(members[i], members[j]) == expect);
        }
}

TEST_CASE("Arf invariants of the Z2^2 forms") {
    FinAbelianGroup g(2, 0);
    CHECK(arf(z22_form(g, -1, -1, -1)) == -1); // the quaternion form
    CHECK(arf(z22_form(g, 1, 1, -1)) == 1);    // the matrix form
    FinAbelianGroup t(0, 0);
    auto empty = QuadraticForm::from_values(Subgroup::whole(t),
                                            [](const GroupElement&) { return 1; });
    CHECK(arf(empty) == 1);
    CHECK_THROWS_AS(arf(QuadraticForm::from_values(Subgroup::whole(FinAbelianGroup(1, 0)),
                                                   [](const GroupElement& u) {
                                                       return u.e[0] ? -1 : 1;
                                                   })),
                    GdaError); // type II input
}

TEST_CASE("nice maps on Z2") {
    FinAbelianGroup g(1, 0);
    Subgroup t = Subgroup::whole(g);
    Subgroup k = Subgroup::trivial(g);
    auto pos = check_nice_map(NiceMap::from_values(t, k, [](const GroupElement&) { return 1; }));
    CHECK(pos.type.tag == FormType::TypeI);
    CHECK(pos.sign == 1);
    auto neg = check_nice_map(NiceMap::from_values(t, k, [](const GroupElement&) { return -1; }));
    CHECK(neg.type.tag == FormType::TypeI);
    CHECK(neg.sign == -1);
}

TEST_CASE("nice map from the quaternion form is negative") {
    FinAbelianGroup g(3, 0);
    Subgroup t = Subgroup::whole(g);
    Subgroup k = Subgroup::span(g, {GroupElement{{1, 0, 0}}, GroupElement{{0, 1, 0}}});
    FinAbelianGroup z22(2, 0);
    // nu(gk) = mu_H(k) where mu_H is the Arf -1 form on K ~ Z2^2.
    auto nu = NiceMap::from_values(t, k, [&](const GroupElement& x) {
        GroupElement inner{{x.e[0], x.e[1]}};
        return z22.order_of(inner) == 1 ? 1 : -1;
    });
    auto res = check_nice_map(nu);
    CHECK(res.type.tag == FormType::TypeI);
    CHECK(res.sign == -1);
}

TEST_CASE("nice map lemma identity") {
    FinAbelianGroup g(3, 0);
    Subgroup t = Subgroup::whole(g);
    Subgroup k = Subgroup::span(g, {GroupElement{{1, 0, 0}}, GroupElement{{0, 1, 0}}});
    auto nu = NiceMap::from_values(t, k, [&](const GroupElement& x) {
        return (x.e[0] + x.e[1]) % 2 ? -1 : 1;
    });
    auto res = check_nice_map(nu);
    GroupElement g0 = nu.least_domain_element();
    QuadraticForm mu0 = nu.mu_at(g0);
    Bicharacter beta = mu0.polarize();
    for (const auto& [r, v] : nu.values()) {
        (void)v;
        GroupElement h = g.unrank(r);
        QuadraticForm muh = nu.mu_at(h);
        GroupElement shift = g.mul(g.inv(g0), h);
        for (const auto& kk : k.elements())
            CHECK(muh.value(kk) == mu0.value(kk) * beta.value(shift, kk));
    }
}

TEST_CASE("form enumeration counts") {
    FinAbelianGroup g(2, 0);
    auto beta = Bicharacter::from_table(Subgroup::whole(g),
                                        [&](const GroupElement& u, const GroupElement& v) {
                                            return nontrivial_z22(g, u, v);
                                        });
    auto filtered = enumerate_quadratic_forms(Subgroup::whole(g), beta);
    CHECK(filtered.size() == 4);
    int arf_minus = 0;
    for (const auto& mu : filtered)
        if (arf(mu) == -1) ++arf_minus;
    CHECK(arf_minus == 1); // exactly the quaternion form

    FinAbelianGroup z2(1, 0);
    CHECK(enumerate_quadratic_forms(Subgroup::whole(z2)).size() == 2);

    FinAbelianGroup z24(4, 0);
    auto beta4 = Bicharacter::from_table(Subgroup::whole(z24),
                                         [&](const GroupElement& u, const GroupElement& v) {
                                             int bits = u.e[0] * v.e[1] + u.e[1] * v.e[0] +
                                                        u.e[2] * v.e[3] + u.e[3] * v.e[2];
                                             return bits % 2 ? -1 : 1;
                                         });
    auto forms4 = enumerate_quadratic_forms(Subgroup::whole(z24), beta4);
    CHECK(forms4.size() == 16);
    int plus = 0;
    for (const auto& mu : forms4) {
        // cross-check the product formula against the majority count
        int by_majority = 0;
        int p = 0, m = 0;
        for (const auto& [r, v] : mu.values()) {
            (void)r;
            (v == 1 ? p : m)++;
        }
        by_majority = p > m ? 1 : -1;
        CHECK(arf(mu) == by_majority);
        if (by_majority == 1) ++plus;
    }
    CHECK(plus == 10);
}

TEST_CASE("every enumerated form polarizes to a valid bicharacter") {
    for (std::size_t a : {1u, 2u}) {
        FinAbelianGroup g(a, 0);
        for (const auto& mu : enumerate_quadratic_forms(Subgroup::whole(g)))
            CHECK_NOTHROW(mu.polarize()); // validates alternating + bimultiplicative
    }
}
