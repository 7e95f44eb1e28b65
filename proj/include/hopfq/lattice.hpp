#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfq/quotient.hpp"

namespace hopfq {

// B-bar = B^* S : k[K] -> O(H).
SparseMat b_bar(const Triple& t);
// (H, K, B-bar); revalidated.
Triple centralizer_triple(const Triple& t);

// t' lies inside t: K' <= K, H <= H', B restricted to K' equals B' on H.
bool contains(const Triple& t, const Triple& t_sub);

// beta_{B,B'}: k[K meet K'] -> O(H meet H') as a matrix, with the two intersections.
struct Beta {
    SubgroupScheme k_meet;
    SubgroupScheme h_meet;
    SparseMat map;
};
Beta beta_map(const Triple& t, const Triple& t2);

// Largest triple contained in both.
Triple intersect(const Triple& t, const Triple& t2);

struct Flags {
    bool symmetric = false;
    bool nondegenerate = false;
    bool lagrangian = false;
    bool triangular = false;
    bool factorizable = false;

    friend bool operator==(const Flags&, const Flags&) = default;
};

// Categorical predicates from subgroup and B data.
Flags categorical_flags(const Triple& t);
// Categorical flags plus triangular/factorizable read off R(K,H,B).
Flags classify(const Triple& t, const QuotientPair& qp);

// (theta_t (x) theta_s)(R21 R) where R is the canonical R-matrix of D(G).
SparseVec double_braiding(const QuotientPair& t, const QuotientPair& s, const SparseVec& monodromy_dg);

struct LatticeNode {
    std::string name;
    Triple triple;
    std::size_t fp_dimension = 0;
    Flags flags;
    std::size_t centralizer = 0;  // index into the node list
};

struct Lattice {
    std::shared_ptr<const GroupScheme> group;
    std::vector<SubgroupScheme> normal;
    std::vector<LatticeNode> nodes;
    std::vector<QuotientPair> pairs;                        // parallel to nodes
    std::vector<std::pair<std::size_t, std::size_t>> hasse;  // (upper, lower)

    // Index of the node with this triple; throws AssertionFailure when absent.
    std::size_t find(const Triple& t) const;
};

struct EnumerateOptions {
    std::size_t subgroup_budget = 100'000;
    // Candidate assignments tried per (K, H) pair while enumerating B.
    std::size_t map_budget = 1'000'000;
};

// All G-equivariant Hopf maps k[H] -> O(K). Throws BudgetExceeded.
std::vector<SparseMat> equivariant_hopf_maps(const GroupScheme& g, const SubgroupScheme& k, const SubgroupScheme& h,
                                             std::size_t budget = 1'000'000);

// Throws BudgetExceeded, FieldTooLargeForEnumeration.
Lattice enumerate_triples(const std::shared_ptr<const GroupScheme>& g, EnumerateOptions opt = {});

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<LatticeNode>& nodes);
std::string hasse_dot(const Lattice& l);

struct BlockData {
    int representative = 0;              // element g of the Cayley table
    std::vector<int> conjugacy_class;    // C_g, sorted
    std::vector<int> centralizer;        // G_g, sorted
    SparseVec character;                 // B_g on the basis of k[H]
    std::vector<std::size_t> cosets;     // basis indices of k[G/H] spanned by pi(k[G_g])
    SparseMat twist;                     // psi_g on those cosets
    std::size_t fp_dimension = 0;
    bool character_invariant = false;
    bool p_g_multiplicative = false;
};

// Constant G only; throws NotConstant.
std::vector<BlockData> block_data(const QuotientPair& qp);

}  // namespace hopfq
