#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hopfq/hopf.hpp"

namespace hopfq {

// Multiplication table of a finite (constant) group.
struct CayleyTable {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table;
    int identity = 0;
    std::vector<int> inverse;

    int size() const { return static_cast<int>(names.size()); }
    int mul(int a, int b) const { return table[a][b]; }
    int conj(int g, int x) const { return mul(mul(g, x), inverse[g]); }  // g x g^-1
};

// Throws NotAGroup with a witness.
CayleyTable make_cayley(std::vector<std::string> names, std::vector<std::vector<int>> table);

// Dual pair (k[G], O(G)). O(G) is always stored in the basis dual to the
// k[G] basis, so the pairing is the identity matrix.
struct GroupScheme {
    std::string name;
    HopfAlgebra group_algebra;
    HopfAlgebra coordinate_algebra;
    std::int64_t connected_order = 1;  // |G°|
    std::int64_t points = 1;           // |G(k)|
    std::optional<CayleyTable> cayley;

    Field field() const { return group_algebra.field(); }
    std::size_t order() const { return group_algebra.dim(); }
    bool is_constant() const { return cayley.has_value(); }
    SparseMat pairing() const { return SparseMat::identity(field(), order()); }
};

// Builds O(G) as the dual of k[G] and labels its basis.
GroupScheme from_group_algebra(std::string name, HopfAlgebra kg, std::vector<std::string> o_labels,
                               std::int64_t connected_order, std::int64_t points,
                               std::optional<CayleyTable> cayley = std::nullopt);

GroupScheme constant_group(Field f, const CayleyTable& t, std::string name = "G");
GroupScheme cyclic_group(Field f, int n);
GroupScheme symmetric_group3(Field f);
// Throws CharZero.
GroupScheme ga_kernel(Field f, int r);
GroupScheme mu_p_kernel(Field f);
GroupScheme direct_product(const GroupScheme& a, const GroupScheme& b);

struct RestrictedLieData {
    int dim = 0;
    // bracket[i][j] = coefficients of [x_i, x_j]
    std::vector<std::vector<std::vector<std::int64_t>>> bracket;
    // p_map[i] = coefficients of x_i^[p]
    std::vector<std::vector<std::int64_t>> p_map;
    std::vector<std::string> names;
};

// u^[p](g) on the PBW basis. Throws NotRestrictedLie, CharZero.
GroupScheme restricted_enveloping(Field f, const RestrictedLieData& lie, std::string name = "u(g)");
// [x,y] = y, x^[p] = x, y^[p] = 0
RestrictedLieData two_dim_nonabelian_lie(Field f);
// [x,y] = z, z central, zero p-map
RestrictedLieData heisenberg_lie();

// Closed subgroup scheme L of a fixed ambient G. k[L] is stored with the
// inclusion's columns as its basis.
struct SubgroupScheme {
    Subspace subspace;    // image of k[L] in k[G]
    SparseMat inclusion;  // |G| x |L|
    GroupScheme own;

    std::size_t order() const { return own.order(); }
    SparseMat surjection() const { return inclusion.transpose(); }  // q: O(G) -> O(L)
    friend bool operator==(const SubgroupScheme& a, const SubgroupScheme& b) {
        return a.subspace == b.subspace;
    }
};

// Subspace must be a Hopf subalgebra; throws ClosureNotHopf otherwise.
SubgroupScheme subgroup_from_subspace(const GroupScheme& g, const Subspace& s, std::string name = "L");
SubgroupScheme subgroup_from_generators(const GroupScheme& g, const std::vector<SparseVec>& gens,
                                        std::string name = "L");
SubgroupScheme trivial_subgroup(const GroupScheme& g);
SubgroupScheme full_subgroup(const GroupScheme& g);
// Constant groups: subgroup of the listed elements' closure.
SubgroupScheme subgroup_from_elements(const GroupScheme& g, const std::vector<int>& elements,
                                      std::string name = "L");
// k[G_{a,r'}] inside k[G_{a,r}]: span of d_0, ..., d_{p^{r'}-1}.
SubgroupScheme frobenius_subgroup(const GroupScheme& g, int r_sub);

// inner viewed as a subgroup scheme of outer.own; requires inner <= outer.
SubgroupScheme relative_subgroup(const SubgroupScheme& inner, const SubgroupScheme& outer);
// Coordinates of k[inner] in the basis of k[outer]: iota_{inner, outer}.
SparseMat relative_inclusion(const SubgroupScheme& inner, const SubgroupScheme& outer);
bool is_subgroup_of(const SubgroupScheme& inner, const SubgroupScheme& outer);

SparseVec ad_right(const HopfAlgebra& kg, const SparseVec& u, const SparseVec& v);  // S(u1) v u2
SparseVec ad_left(const HopfAlgebra& kg, const SparseVec& u, const SparseVec& v);   // u1 v S(u2)
// u acting on b in O(G): <S(b1) b3, u> b2
SparseVec coadjoint(const GroupScheme& g, const SparseVec& u, const SparseVec& b);
// Matrix of v -> ad_r(u)(v) on k[G].
SparseMat ad_right_matrix(const HopfAlgebra& kg, const SparseVec& u);

bool is_normal(const GroupScheme& g, const SubgroupScheme& l);
bool centralize(const GroupScheme& g, const SubgroupScheme& h, const SubgroupScheme& k);

struct QuotientData {
    GroupScheme quotient;          // G/H
    SparseMat pi;                  // |G/H| x |G|
    SparseMat lift;                // |G| x |G/H|, chosen representatives
    std::vector<std::int32_t> reps;  // representative basis indices of k[G]
};

// Throws NotNormal.
QuotientData quotient_by_normal(const GroupScheme& g, const SubgroupScheme& h);
// O(G/H) realized inside O(G) as {b : b1 (x) q_H(b2) = b (x) 1}.
Subspace quotient_coinvariants(const GroupScheme& g, const SubgroupScheme& h);

struct SectionData {
    SparseMat mu;      // |G| x |L|, O(L) -> O(G)
    SparseMat mu_inv;  // convolution inverse
};

// Section of q for L inside ambient.own. Throws NoSection.
SectionData section_mu(const GroupScheme& ambient, const SubgroupScheme& l);
// All conditions on a candidate section; used by tests to validate alternatives.
bool is_valid_section(const GroupScheme& ambient, const SubgroupScheme& l, const SparseMat& mu);
// A second section when one exists among small perturbations, for choice-independence tests.
std::optional<SparseMat> alternative_section(const GroupScheme& ambient, const SubgroupScheme& l,
                                             const SparseMat& mu);

struct CleavingData {
    SparseMat gamma;      // |G| x |G/H|
    SparseMat gamma_inv;  // |G| x |G/H|
    SparseMat eta;        // |G| x |G|, values in k[H]
    SparseMat eta_inv;    // |G| x |G|, values in k[H]
    SparseMat eta_h;      // |H| x |G|, eta in the basis of k[H]
    SparseMat eta_inv_h;  // |H| x |G|
};

struct CleavingOptions {
    std::size_t search_budget = 100'000;
    // Skip closed forms and start from the affine solve.
    bool force_solve = false;
    // Skip this many valid candidates in the search, for choice-independence tests.
    std::size_t skip = 0;
};

// Throws NotNormal, NoInvertibleSectionFound.
CleavingData cleaving_gamma(const GroupScheme& g, const SubgroupScheme& h, const QuotientData& q,
                            CleavingOptions opt = {});
bool is_colinear_section(const GroupScheme& g, const QuotientData& q, const SparseMat& gamma);
CleavingData cleaving_from_gamma(const GroupScheme& g, const SubgroupScheme& h, const QuotientData& q,
                                 const SparseMat& gamma);

SubgroupScheme product_subgroup(const GroupScheme& g, const SubgroupScheme& h, const SubgroupScheme& k);
// Dual computation through O(G), cross-checked against k[H] meet k[K]; throws AssertionFailure on mismatch.
SubgroupScheme intersect_subgroup(const GroupScheme& g, const SubgroupScheme& h, const SubgroupScheme& k);

// Normal subgroup schemes found by closure of basis vectors, pairs of basis
// vectors and products; exhaustive for constant groups.
std::vector<SubgroupScheme> normal_subgroups(const GroupScheme& g, std::size_t budget = 100'000);

// Conjugacy classes of a constant group as sorted element lists.
std::vector<std::vector<int>> conjugacy_classes(const CayleyTable& t);

}  // namespace hopfq
