#include <gtest/gtest.h>

#include "hopfq/groupscheme.hpp"

using namespace hopfq;

namespace {

HopfAlgebra with_mult(const HopfAlgebra& h, std::size_t i, std::size_t j, SparseVec v) {
    SparseTensor3 m = h.mult();
    m.set_slice(i, j, std::move(v));
    return HopfAlgebra(h.field(), h.labels(), m, h.unit(), h.comult(), h.counit(), h.antipode());
}

}  // namespace

TEST(Hopf, GroupAlgebrasPassAllAxioms) {
    Field f7 = Field::prime(7);
    for (const auto& g : {cyclic_group(f7, 2), cyclic_group(f7, 3), symmetric_group3(f7)}) {
        auto rep = verify_hopf(g.group_algebra);
        EXPECT_TRUE(rep.ok()) << g.name;
        auto dual = verify_hopf(g.coordinate_algebra);
        EXPECT_TRUE(dual.ok()) << g.name;
    }
    auto s3 = symmetric_group3(f7);
    auto rep = verify_hopf(s3.group_algebra);
    EXPECT_FALSE(rep.commutative);
    EXPECT_TRUE(rep.cocommutative);
    EXPECT_TRUE(rep.involutive);
}

TEST(Hopf, FrobeniusKernelOfAdditiveGroup) {
    Field f3 = Field::prime(3);
    auto g = ga_kernel(f3, 2);
    EXPECT_EQ(g.order(), 9u);
    auto rep = verify_hopf(g.group_algebra);
    EXPECT_TRUE(rep.ok());
    EXPECT_TRUE(rep.commutative);
    EXPECT_TRUE(rep.cocommutative);
    // d1 * d2 = 3 d3 = 0 in characteristic 3
    EXPECT_TRUE(g.group_algebra.product(1, 2).is_zero());
    EXPECT_EQ(g.group_algebra.product(1, 3), g.group_algebra.basis(4).scaled(f3.from_int(4)));
}

TEST(Hopf, FaultInjectionIsDetected) {
    Field f3 = Field::prime(3);
    auto g = ga_kernel(f3, 2);
    // break associativity: d1 d1 := d2 + d5
    auto bad = with_mult(g.group_algebra, 1, 1, g.group_algebra.basis(2) + g.group_algebra.basis(5));
    auto rep = verify_hopf(bad);
    EXPECT_FALSE(rep.ok());
    ASSERT_NE(rep.first_failure(), nullptr);
    EXPECT_FALSE(rep.first_failure()->witness.empty());

    // break the antipode
    SparseMat s = g.group_algebra.antipode();
    s.set_col(1, g.group_algebra.basis(1));
    HopfAlgebra bad_s(f3, g.group_algebra.labels(), g.group_algebra.mult(), g.group_algebra.unit(),
                      g.group_algebra.comult(), g.group_algebra.counit(), s);
    auto rep2 = verify_hopf(bad_s);
    EXPECT_FALSE(rep2.find("antipode").passed);
    EXPECT_TRUE(rep2.find("associativity").passed);
}

TEST(Hopf, DualOfZ2GroupAlgebraIsFunctionAlgebra) {
    Field q = Field::rationals();
    auto g = cyclic_group(q, 2);
    const auto& o = g.coordinate_algebra;
    EXPECT_TRUE(verify_hopf(o).ok());
    // delta_a delta_b = [a = b] delta_a
    EXPECT_EQ(o.product(0, 0), o.basis(0));
    EXPECT_TRUE(o.product(0, 1).is_zero());
    EXPECT_EQ(o.product(1, 1), o.basis(1));
    // unit is delta_e + delta_g
    EXPECT_EQ(o.unit(), o.basis(0) + o.basis(1));
    // dual of the dual recovers k[G]
    EXPECT_EQ(dual_hopf(o), g.group_algebra);
}

TEST(Hopf, GrouplikesOfCyclicGroup) {
    Field f7 = Field::prime(7);
    auto g = cyclic_group(f7, 3);
    EXPECT_EQ(grouplikes(g.group_algebra).size(), 3u);
    // 7 = 1 mod 3, so F7 has all cube roots of unity: three characters
    auto chars = grouplikes(g.coordinate_algebra);
    EXPECT_EQ(chars.size(), 3u);
    for (const auto& c : chars) EXPECT_TRUE(is_grouplike(g.coordinate_algebra, c));
    // over F5 only the trivial character exists
    EXPECT_EQ(grouplikes(cyclic_group(Field::prime(5), 3).coordinate_algebra).size(), 1u);
}

TEST(Hopf, InfinitesimalGroupHasOnlyTrivialGrouplike) {
    Field f5 = Field::prime(5);
    auto g = ga_kernel(f5, 1);
    auto gl = grouplikes(g.group_algebra);
    ASSERT_EQ(gl.size(), 1u);
    EXPECT_EQ(gl[0], g.group_algebra.unit());
    auto prim = primitives(g.group_algebra);
    ASSERT_EQ(prim.size(), 1u);
    EXPECT_EQ(prim[0], g.group_algebra.basis(1));
}

TEST(Hopf, RationalGrouplikesNeedFiniteSearch) {
    auto g = cyclic_group(Field::rationals(), 2);
    EXPECT_EQ(grouplikes(g.group_algebra).size(), 2u);
    EXPECT_EQ(grouplikes(g.coordinate_algebra).size(), 2u);
}

TEST(Hopf, OpAndCopVariants) {
    Field f7 = Field::prime(7);
    auto s3 = symmetric_group3(f7);
    auto op = variant(s3.group_algebra, Variant::op);
    auto cop = variant(s3.coordinate_algebra, Variant::cop);
    EXPECT_TRUE(verify_hopf(op).ok());
    EXPECT_TRUE(verify_hopf(cop).ok());
    EXPECT_EQ(op.product(1, 3), s3.group_algebra.product(3, 1));
    EXPECT_EQ(variant(op, Variant::op), s3.group_algebra);
}

TEST(Hopf, TensorProductIsHopf) {
    Field f3 = Field::prime(3);
    auto t = tensor_hopf(cyclic_group(f3, 2).group_algebra, ga_kernel(f3, 1).group_algebra);
    EXPECT_EQ(t.dim(), 6u);
    EXPECT_TRUE(verify_hopf(t).ok());
}

TEST(Hopf, MorphismChecks) {
    Field f7 = Field::prime(7);
    auto s3 = symmetric_group3(f7);
    auto a3 = subgroup_from_elements(s3, {1});
    EXPECT_TRUE(is_hopf_morphism(a3.inclusion, a3.own.group_algebra, s3.group_algebra));
    // a non-multiplicative linear map
    SparseMat bad = a3.inclusion;
    bad.set_col(1, s3.group_algebra.basis(3));
    auto r = is_hopf_morphism(bad, a3.own.group_algebra, s3.group_algebra);
    EXPECT_FALSE(r);
    EXPECT_FALSE(r.failed.empty());
}

TEST(Hopf, ConvolutionInverseOfIdentityIsAntipode) {
    Field f3 = Field::prime(3);
    for (const auto& g : {ga_kernel(f3, 2), symmetric_group3(f3)}) {
        const auto& h = g.group_algebra;
        SparseMat id = SparseMat::identity(f3, h.dim());
        EXPECT_EQ(convolution_inverse(id, h, h), h.antipode()) << g.name;
        EXPECT_EQ(convolution(id, h.antipode(), h, h), convolution_unit(h, h));
    }
}

TEST(Hopf, ConvolutionInverseRejectsSingularMaps) {
    Field f3 = Field::prime(3);
    const auto h = ga_kernel(f3, 1).group_algebra;
    SparseMat zero(f3, h.dim(), h.dim());
    EXPECT_THROW(convolution_inverse(zero, h, h), NotInvertible);
}

TEST(Hopf, StridedVerificationIsASubsetOfChecks) {
    Field f3 = Field::prime(3);
    auto g = ga_kernel(f3, 2);
    auto bad = with_mult(g.group_algebra, 1, 1, g.group_algebra.basis(2) + g.group_algebra.basis(5));
    EXPECT_FALSE(verify_hopf(bad, {1}).ok());
    EXPECT_TRUE(verify_hopf(g.group_algebra, {4}).ok());
}

TEST(Hopf, GrouplikeSearchMatchesBruteForce) {
    Field f3 = Field::prime(3);
    for (const auto& h : {tensor_hopf(cyclic_group(f3, 2).group_algebra, ga_kernel(f3, 1).group_algebra),
                          symmetric_group3(f3).coordinate_algebra, mu_p_kernel(f3).coordinate_algebra}) {
        std::vector<SparseVec> brute;
        const auto values = f3.elements();
        std::size_t total = 1;
        for (std::size_t i = 0; i < h.dim(); ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Elem> v(h.dim());
            std::size_t c = code;
            for (std::size_t i = h.dim(); i-- > 0;) {
                v[i] = values[c % 3];
                c /= 3;
            }
            SparseVec g = SparseVec::from_dense(f3, v);
            if (!g.is_zero() && is_grouplike(h, g)) brute.push_back(g);
        }
        EXPECT_EQ(grouplikes(h), brute);
    }
}
