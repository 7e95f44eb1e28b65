#include <gtest/gtest.h>

#include "hopfq/groupscheme.hpp"
#include "oracles.hpp"

using namespace hopfq;

namespace {

const Field F7 = Field::prime(7);
const Field F3 = Field::prime(3);

int element(const GroupScheme& g, const std::string& name) {
    const auto& n = g.cayley->names;
    return static_cast<int>(std::find(n.begin(), n.end(), name) - n.begin());
}

}  // namespace

TEST(Constant, CayleyValidation) {
    EXPECT_THROW(make_cayley({"a", "b"}, {{0, 1}, {1, 1}}), NotAGroup);
    EXPECT_THROW(make_cayley({"a", "b"}, {{1, 0}, {0, 0}}), NotAGroup);
    EXPECT_THROW(make_cayley({"a"}, {{0, 0}}), NotAGroup);
    // associative with identity but b has no inverse
    EXPECT_THROW(make_cayley({"e", "b"}, {{0, 1}, {1, 1}}), NotAGroup);
    EXPECT_NO_THROW(make_cayley({"e", "s"}, {{0, 1}, {1, 0}}));
}

TEST(Constant, Z2AndS3) {
    auto z2 = cyclic_group(Field::rationals(), 2);
    EXPECT_EQ(z2.order(), 2u);
    EXPECT_EQ(z2.coordinate_algebra.unit(), z2.coordinate_algebra.basis(0) + z2.coordinate_algebra.basis(1));
    auto s3 = symmetric_group3(F7);
    const auto& o = s3.coordinate_algebra;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            EXPECT_EQ(o.product(i, j), i == j ? o.basis(i) : o.zero());
    EXPECT_EQ(s3.points, 6);
    EXPECT_EQ(s3.connected_order, 1);
}

TEST(Constant, PairingIsPerfectAndDual) {
    for (const auto& g : {symmetric_group3(F7), ga_kernel(F3, 2), mu_p_kernel(F3)}) {
        EXPECT_EQ(g.pairing().rank(), g.order());
        EXPECT_EQ(dual_hopf(g.group_algebra), g.coordinate_algebra);
        auto r1 = verify_hopf(g.group_algebra);
        auto r2 = verify_hopf(g.coordinate_algebra);
        EXPECT_TRUE(r1.cocommutative);
        EXPECT_TRUE(r2.commutative);
    }
}

TEST(AdditiveKernel, StructureConstants) {
    auto g = ga_kernel(Field::prime(2), 1);
    EXPECT_TRUE(g.group_algebra.product(1, 1).is_zero());
    EXPECT_TRUE(g.coordinate_algebra.product(1, 1).is_zero());
    EXPECT_THROW(ga_kernel(Field::rationals(), 1), CharZero);

    auto g2 = ga_kernel(F3, 2);
    const auto& kg = g2.group_algebra;
    for (std::size_t n = 0; n < 9; ++n) {
        Accumulator acc(F3, 81);
        for (std::size_t a = 0; a <= n; ++a) acc.add(a * 9 + n - a, Field::one());
        EXPECT_EQ(kg.coproduct(kg.basis(n)), acc.take());
        EXPECT_EQ(kg.apply_antipode(kg.basis(n)), kg.basis(n).scaled(n % 2 ? F3.neg(Field::one()) : Field::one()));
    }
    EXPECT_EQ(g2.connected_order, 9);
    EXPECT_EQ(g2.points, 1);
}

TEST(AdditiveKernel, FrobeniusGeneratorsGiveTruncatedPolynomials) {
    auto g = ga_kernel(F3, 2);
    const auto& kg = g.group_algebra;
    // X0 -> d1, X1 -> d3: monomials X0^a X1^b are nonzero multiples of d_{a + 3b}
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            SparseVec m = kg.unit();
            for (int i = 0; i < a; ++i) m = kg.multiply(m, kg.basis(1));
            for (int i = 0; i < b; ++i) m = kg.multiply(m, kg.basis(3));
            ASSERT_EQ(m.nnz(), 1u);
            EXPECT_EQ(m.entries()[0].index, a + 3 * b);
        }
    EXPECT_TRUE(kg.multiply(kg.multiply(kg.basis(1), kg.basis(1)), kg.basis(1)).is_zero());
    EXPECT_TRUE(kg.multiply(kg.multiply(kg.basis(3), kg.basis(3)), kg.basis(3)).is_zero());
}

TEST(MultiplicativeKernel, ConnectedWithPOrthogonalIdempotents) {
    auto g = mu_p_kernel(F3);
    EXPECT_EQ(g.order(), 3u);
    EXPECT_EQ(g.connected_order, 3);
    const auto& kg = g.group_algebra;
    SparseVec sum = kg.zero();
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(kg.product(i, j), i == j ? kg.basis(i) : kg.zero());
        sum = sum + kg.basis(i);
    }
    EXPECT_EQ(sum, kg.unit());
    auto gl = grouplikes(g.coordinate_algebra);
    EXPECT_EQ(gl.size(), 3u);
    EXPECT_EQ(grouplikes(kg).size(), 1u);
}

TEST(DirectProduct, TagsCompose) {
    Field f2 = Field::prime(2);
    auto a = ga_kernel(f2, 1);
    auto aa = direct_product(a, a);
    EXPECT_EQ(aa.order(), 4u);
    EXPECT_EQ(aa.points, 1);
    auto mixed = direct_product(cyclic_group(f2, 2), a);
    EXPECT_EQ(mixed.order(), 4u);
    EXPECT_EQ(mixed.connected_order, 2);
    EXPECT_EQ(mixed.points, 2);
    EXPECT_EQ(static_cast<std::int64_t>(grouplikes(mixed.group_algebra).size()), mixed.points);
    EXPECT_TRUE(verify_hopf(mixed.group_algebra).ok());
    EXPECT_THROW(direct_product(a, ga_kernel(F3, 1)), FieldMismatch);
    auto c = direct_product(cyclic_group(F3, 2), cyclic_group(F3, 3));
    EXPECT_TRUE(c.is_constant());
}

TEST(RestrictedLie, TwoDimensionalNonabelian) {
    Field f2 = Field::prime(2);
    auto g = restricted_enveloping(f2, two_dim_nonabelian_lie(f2));
    const auto& kg = g.group_algebra;
    EXPECT_EQ(kg.dim(), 4u);
    EXPECT_TRUE(verify_hopf(kg).ok());
    // PBW basis 1, y, x, xy
    EXPECT_EQ(kg.labels()[3], "xy");
    SparseVec x = kg.basis(2), y = kg.basis(1);
    EXPECT_EQ(kg.multiply(y, x), kg.multiply(x, y) - y);
    EXPECT_EQ(kg.multiply(x, x), x);
    EXPECT_TRUE(kg.multiply(y, y).is_zero());
    EXPECT_EQ(primitives(kg).size(), 2u);
}

TEST(RestrictedLie, AbelianLineMatchesAdditiveKernel) {
    Field f5 = Field::prime(5);
    RestrictedLieData lie{1, {{{0}}}, {{0}}, {"x"}};
    auto u = restricted_enveloping(f5, lie);
    auto a = ga_kernel(f5, 1);
    // d_n = x^n / n!
    SparseMat d(f5, 5, 5);
    Elem fact = Field::one();
    for (std::size_t n = 0; n < 5; ++n) {
        if (n > 0) fact = f5.mul(fact, f5.from_int(static_cast<std::int64_t>(n)));
        d.set_col(n, SparseVec::unit(f5, 5, n, f5.inv(fact)));
    }
    EXPECT_TRUE(is_hopf_morphism(d, a.group_algebra, u.group_algebra));
}

TEST(RestrictedLie, HeisenbergAtThree) {
    auto g = restricted_enveloping(F3, heisenberg_lie());
    EXPECT_EQ(g.order(), 27u);
    EXPECT_EQ(g.points, 1);
    EXPECT_TRUE(verify_hopf(g.group_algebra).ok());
    EXPECT_EQ(grouplikes(g.group_algebra).size(), 1u);
}

TEST(RestrictedLie, RejectsInvalidData) {
    RestrictedLieData not_antisym{2, {{{0, 0}, {0, 1}}, {{0, 1}, {0, 0}}}, {{0, 0}, {0, 0}}, {"x", "y"}};
    EXPECT_THROW(restricted_enveloping(F3, not_antisym), NotRestrictedLie);
    // [x,y] = y but x^[p] = 0 breaks ad(x)^p = ad(x^[p])
    auto bad_p = two_dim_nonabelian_lie(F3);
    bad_p.p_map[0] = {0, 0};
    EXPECT_THROW(restricted_enveloping(F3, bad_p), NotRestrictedLie);
    EXPECT_THROW(restricted_enveloping(Field::rationals(), heisenberg_lie()), CharZero);
}

TEST(Subgroups, GeneratorClosure) {
    auto g = ga_kernel(F3, 2);
    auto h = subgroup_from_generators(g, {g.group_algebra.basis(0), g.group_algebra.basis(1)});
    EXPECT_EQ(h.order(), 3u);
    EXPECT_EQ(h, frobenius_subgroup(g, 1));
    EXPECT_EQ(trivial_subgroup(g).order(), 1u);
    EXPECT_EQ(trivial_subgroup(g).own.coordinate_algebra.dim(), 1u);
    auto full = full_subgroup(g);
    EXPECT_EQ(full.surjection(), SparseMat::identity(F3, 9));
    EXPECT_TRUE(is_hopf_morphism(h.inclusion, h.own.group_algebra, g.group_algebra));
    EXPECT_TRUE(is_hopf_morphism(h.surjection(), g.coordinate_algebra, h.own.coordinate_algebra));
}

TEST(Subgroups, NonHopfSubspaceIsRejected) {
    auto g = ga_kernel(F3, 1);
    auto s = Subspace::span(F3, 3, {g.group_algebra.basis(0), g.group_algebra.basis(2)});
    EXPECT_THROW(subgroup_from_subspace(g, s), ClosureNotHopf);
}

TEST(Adjoint, CoadjointDualityOnAllBasisPairs) {
    for (const auto& g : {symmetric_group3(F7), restricted_enveloping(Field::prime(2), two_dim_nonabelian_lie(Field::prime(2)))}) {
        const auto& kg = g.group_algebra;
        for (std::size_t u = 0; u < kg.dim(); ++u)
            for (std::size_t b = 0; b < kg.dim(); ++b)
                for (std::size_t v = 0; v < kg.dim(); ++v)
                    EXPECT_EQ(coadjoint(g, kg.basis(u), g.coordinate_algebra.basis(b)).at(v),
                              ad_right(kg, kg.basis(u), kg.basis(v)).at(b));
    }
}

TEST(Adjoint, CommutativeGroupsActTrivially) {
    auto g = ga_kernel(F3, 2);
    const auto& kg = g.group_algebra;
    for (std::size_t u = 0; u < 9; ++u)
        for (std::size_t b = 0; b < 9; ++b)
            EXPECT_EQ(coadjoint(g, kg.basis(u), g.coordinate_algebra.basis(b)),
                      g.coordinate_algebra.basis(b).scaled(kg.counit().at(u)));
    EXPECT_EQ(ad_left(kg, kg.unit(), kg.basis(4)), kg.basis(4));
}

TEST(Adjoint, ConjugationInS3MatchesCayleyTable) {
    auto g = symmetric_group3(F7);
    const auto& kg = g.group_algebra;
    const auto& t = *g.cayley;
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y) {
            EXPECT_EQ(ad_left(kg, kg.basis(x), kg.basis(y)), kg.basis(t.conj(x, y)));
            EXPECT_EQ(ad_right(kg, kg.basis(x), kg.basis(y)), kg.basis(t.conj(t.inverse[x], y)));
        }
    EXPECT_EQ(ad_left(kg, kg.basis(element(g, "(12)")), kg.basis(element(g, "(123)"))),
              kg.basis(element(g, "(132)")));
    EXPECT_EQ(conjugacy_classes(t).size(), 3u);
}

TEST(Normality, S3Subgroups) {
    auto g = symmetric_group3(F7);
    auto a3 = subgroup_from_elements(g, {element(g, "(123)")});
    auto c2 = subgroup_from_elements(g, {element(g, "(12)")});
    EXPECT_EQ(a3.order(), 3u);
    EXPECT_TRUE(is_normal(g, a3));
    EXPECT_FALSE(is_normal(g, c2));
    EXPECT_FALSE(centralize(g, a3, c2));
    EXPECT_TRUE(centralize(g, a3, a3));
    auto normals = normal_subgroups(g);
    EXPECT_EQ(normals.size(), 3u);

    // brute-force normality of every cyclic subgroup
    for (int x = 0; x < 6; ++x) {
        auto sub = subgroup_from_elements(g, {x});
        std::set<int> members;
        for (std::size_t c = 0; c < sub.order(); ++c) members.insert(sub.inclusion.col(c).entries()[0].index);
        bool normal = true;
        for (int h : members)
            for (int y = 0; y < 6; ++y) normal &= members.count(g.cayley->conj(y, h)) > 0;
        EXPECT_EQ(is_normal(g, sub), normal);
    }
}

TEST(Normality, CommutativeAmbient) {
    auto g = ga_kernel(F3, 2);
    auto h = frobenius_subgroup(g, 1);
    EXPECT_TRUE(is_normal(g, h));
    EXPECT_TRUE(centralize(g, h, full_subgroup(g)));
    EXPECT_EQ(normal_subgroups(g).size(), 3u);
}

TEST(Quotients, AdditiveChain) {
    auto g = ga_kernel(F3, 2);
    auto h = frobenius_subgroup(g, 1);
    auto q = quotient_by_normal(g, h);
    EXPECT_EQ(q.quotient.order(), 3u);
    for (std::size_t n = 0; n < 9; ++n) {
        SparseVec expect = n % 3 == 0 ? SparseVec::unit(F3, 3, n / 3) : SparseVec(F3, 3);
        EXPECT_EQ(q.pi.col(n), expect);
    }
    EXPECT_TRUE(verify_hopf(q.quotient.group_algebra).ok());
    EXPECT_TRUE(is_hopf_morphism(q.pi, g.group_algebra, q.quotient.group_algebra));
    // quotient of G_a,2 by G_a,1 is again G_a,1
    EXPECT_EQ(q.quotient.group_algebra.mult(), ga_kernel(F3, 1).group_algebra.mult());
}

TEST(Quotients, TrivialAndFull) {
    auto g = symmetric_group3(F7);
    auto by_one = quotient_by_normal(g, trivial_subgroup(g));
    EXPECT_EQ(by_one.pi, SparseMat::identity(F7, 6));
    auto by_all = quotient_by_normal(g, full_subgroup(g));
    EXPECT_EQ(by_all.quotient.order(), 1u);
    EXPECT_EQ(by_all.pi.row_vectors()[0], g.group_algebra.counit());
    EXPECT_THROW(quotient_by_normal(g, subgroup_from_elements(g, {3})), NotNormal);
}

TEST(Quotients, CoinvariantsAreDualToQuotient) {
    for (auto [g, h] : {std::pair{symmetric_group3(F7), 1}, std::pair{ga_kernel(F3, 2), 0}}) {
        auto sub = g.is_constant() ? subgroup_from_elements(g, {h}) : frobenius_subgroup(g, 1);
        auto q = quotient_by_normal(g, sub);
        Subspace coinv = quotient_coinvariants(g, sub);
        EXPECT_EQ(coinv.dim(), q.quotient.order());
        // pi^T embeds O(G/H) into O(G) as exactly the coinvariants
        EXPECT_EQ(q.pi.transpose().image(), coinv);
    }
}

TEST(Sections, AdditiveChainClosedForm) {
    auto g = ga_kernel(F3, 2);
    auto h = frobenius_subgroup(g, 1);
    auto s = section_mu(g, h);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s.mu.col(i), SparseVec::unit(F3, 9, i));
    EXPECT_EQ(oracle::section_identities(g, h, s), "");
}

TEST(Sections, FullSubgroupAndConstantGroups) {
    auto g = symmetric_group3(F7);
    auto full = full_subgroup(g);
    EXPECT_EQ(section_mu(g, full).mu, SparseMat::identity(F7, 6));
    for (int x = 0; x < 6; ++x) {
        auto l = subgroup_from_elements(g, {x});
        auto s = section_mu(g, l);
        EXPECT_EQ(oracle::section_identities(g, l, s), "") << x;
        EXPECT_TRUE(is_valid_section(g, l, s.mu));
    }
}

TEST(Sections, NonConstantSubgroupsAndAlternatives) {
    Field f2 = Field::prime(2);
    auto g = restricted_enveloping(f2, two_dim_nonabelian_lie(f2));
    for (const auto& l : normal_subgroups(g)) {
        auto s = section_mu(g, l);
        EXPECT_EQ(oracle::section_identities(g, l, s), "");
    }
    auto s3 = symmetric_group3(F7);
    auto c2 = subgroup_from_elements(s3, {3});
    auto s = section_mu(s3, c2);
    auto alt = alternative_section(s3, c2, s.mu);
    ASSERT_TRUE(alt.has_value());
    EXPECT_FALSE(*alt == s.mu);
    EXPECT_TRUE(is_valid_section(s3, c2, *alt));
}

TEST(Cleaving, AdditiveChainClosedForm) {
    auto g = ga_kernel(F3, 2);
    auto h = frobenius_subgroup(g, 1);
    auto q = quotient_by_normal(g, h);
    auto c = cleaving_gamma(g, h, q);
    for (std::size_t n = 0; n < 3; ++n) {
        EXPECT_EQ(c.gamma.col(n), SparseVec::unit(F3, 9, 3 * n));
        EXPECT_EQ(c.gamma_inv.col(n), SparseVec::unit(F3, 9, 3 * n, n % 2 ? F3.neg(Field::one()) : Field::one()));
    }
    EXPECT_EQ(oracle::cleaving_identities(g, h, q, c), "");
    // the affine solve lands on an equally valid cleaving
    auto solved = cleaving_gamma(g, h, q, {100'000, true, 0});
    EXPECT_EQ(oracle::cleaving_identities(g, h, q, solved), "");
}

TEST(Cleaving, TrivialSubgroupGivesIdentity) {
    auto g = symmetric_group3(F7);
    auto one = trivial_subgroup(g);
    auto q = quotient_by_normal(g, one);
    auto c = cleaving_gamma(g, one, q);
    EXPECT_EQ(c.gamma, SparseMat::identity(F7, 6));
    EXPECT_EQ(c.eta, convolution_unit(g.group_algebra, g.group_algebra));
    EXPECT_EQ(oracle::cleaving_identities(g, one, q, c), "");
}

TEST(Cleaving, S3ModA3MatchesCosetOracle) {
    auto g = symmetric_group3(F7);
    const auto& t = *g.cayley;
    auto a3 = subgroup_from_elements(g, {1});
    auto q = quotient_by_normal(g, a3);
    auto c = cleaving_gamma(g, a3, q);
    EXPECT_EQ(oracle::cleaving_identities(g, a3, q, c), "");
    // gamma picks e and (12); eta(g) = g gamma(pi(g))^-1
    EXPECT_EQ(c.gamma.col(0), g.group_algebra.basis(t.identity));
    EXPECT_EQ(c.gamma.col(1), g.group_algebra.basis(element(g, "(12)")));
    for (int x = 0; x < 6; ++x) {
        const auto& lifted = c.gamma.col(q.pi.col(x).entries()[0].index);
        int rep = lifted.entries()[0].index;
        int expect = t.mul(x, t.inverse[rep]);
        EXPECT_EQ(c.eta.col(x), g.group_algebra.basis(expect));
        EXPECT_TRUE(a3.subspace.contains(c.eta.col(x)));
    }
    // constant groups: eta is a coalgebra map
    EXPECT_TRUE(is_coalgebra_map(c.eta, g.group_algebra, g.group_algebra));
}

TEST(Cleaving, NonConstantNormalSubgroups) {
    Field f2 = Field::prime(2);
    for (const auto& g : {restricted_enveloping(f2, two_dim_nonabelian_lie(f2)), restricted_enveloping(F3, heisenberg_lie()),
                          direct_product(cyclic_group(f2, 2), ga_kernel(f2, 1))}) {
        for (const auto& h : normal_subgroups(g)) {
            auto q = quotient_by_normal(g, h);
            auto c = cleaving_gamma(g, h, q);
            EXPECT_EQ(oracle::cleaving_identities(g, h, q, c), "") << g.name << " / " << h.order();
        }
    }
}

TEST(Cleaving, RequiresNormality) {
    auto g = symmetric_group3(F7);
    auto c2 = subgroup_from_elements(g, {3});
    QuotientData dummy = quotient_by_normal(g, trivial_subgroup(g));
    EXPECT_THROW(cleaving_gamma(g, c2, dummy), NotNormal);
}

TEST(ProductsAndIntersections, Basics) {
    auto g = symmetric_group3(F7);
    auto a3 = subgroup_from_elements(g, {1});
    auto c2 = subgroup_from_elements(g, {3});
    auto one = trivial_subgroup(g);
    auto full = full_subgroup(g);
    EXPECT_EQ(product_subgroup(g, a3, one), a3);
    EXPECT_EQ(intersect_subgroup(g, a3, full), a3);
    EXPECT_EQ(intersect_subgroup(g, a3, c2), one);
    EXPECT_EQ(product_subgroup(g, a3, c2), full);

    auto ga = ga_kernel(F3, 2);
    auto h = frobenius_subgroup(ga, 1);
    EXPECT_EQ(product_subgroup(ga, h, h), h);
    EXPECT_EQ(intersect_subgroup(ga, h, trivial_subgroup(ga)), trivial_subgroup(ga));
}

TEST(ProductsAndIntersections, DualMeetAgreesOnAllNormalPairs) {
    Field f2 = Field::prime(2);
    for (const auto& g : {restricted_enveloping(f2, two_dim_nonabelian_lie(f2)), symmetric_group3(F3),
                          direct_product(cyclic_group(f2, 2), ga_kernel(f2, 1))}) {
        auto subs = normal_subgroups(g);
        for (const auto& a : subs)
            for (const auto& b : subs) {
                auto m = intersect_subgroup(g, a, b);
                EXPECT_TRUE(is_subgroup_of(m, a));
                EXPECT_TRUE(is_subgroup_of(m, b));
                auto p = product_subgroup(g, a, b);
                EXPECT_EQ(p.order() * m.order(), a.order() * b.order());
            }
    }
}
