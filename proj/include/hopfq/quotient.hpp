#pragma once

#include <memory>
#include <optional>

#include "hopfq/double.hpp"

namespace hopfq {

// (K, H, B) with B: k[H] -> O(K) as a |K| x |H| matrix in the bases of k[H]
// and O(K) (the latter dual to the basis of k[K]).
struct Triple {
    std::shared_ptr<const GroupScheme> ambient;
    SubgroupScheme k;
    SubgroupScheme h;
    SparseMat b;

    friend bool operator==(const Triple& x, const Triple& y) {
        return x.k == y.k && x.h == y.h && x.b == y.b;
    }
};

// u * a = q_K(u -> mu_K(a)) as a |K| x |K| matrix acting on O(K).
SparseMat star_matrix(const GroupScheme& g, const SubgroupScheme& k, const SectionData& mu, const SparseVec& u);

// u * B(v) = B(ad_l(u)(v)) for all basis u of k[G] and v of k[H]; returns a witness or "".
std::string equivariance_witness(const GroupScheme& g, const SubgroupScheme& k, const SubgroupScheme& h,
                                 const SparseMat& b, const SectionData& mu);

// Normality, centralizing, Hopf map and G-equivariance of B. Never throws.
VerificationReport check_triple(const Triple& t, const SectionData& mu);
// Throws InvalidTriple naming the first violated condition.
void require_triple(const Triple& t, const SectionData& mu);

// The trivial Hopf map k[H] -> O(K), v -> eps(v) 1.
SparseMat trivial_b(const SubgroupScheme& k, const SubgroupScheme& h);

struct QuotientOptions {
    CleavingOptions cleaving;
    // Use this section of q_K instead of the default.
    std::optional<SparseMat> section;
    bool validate = true;
};

struct QuotientPair {
    Triple triple;
    SectionData section;   // for K
    QuotientData quotient; // G/H
    CleavingData cleaving; // for H
    std::vector<SparseMat> dot;  // dot[x] = action of basis x of k[G/H] on O(K)
    SparseTensor3 sigma;   // k[G/H] x k[G/H] -> O(K)
    SparseMat tau;         // |K|^2 x |G/H|
    HopfAlgebra algebra;   // D(K, H, B), basis index a*|G/H| + x
    SparseMat theta;       // |D| x |G|^2
    QuasiHopfData qt;      // closed-form R(K,H,B), V(K,H,B)

    std::size_t fp_dim() const { return algebra.dim(); }
};

// Throws InvalidTriple.
QuotientPair build_quotient(const Triple& t, QuotientOptions opt = {});

// eta^-1(u1)_1 eta(u2) (x) eta^-1(u1)_2 eta(u3) in k[H] (x) k[H], for u in k[G].
SparseVec tau_bar_lift(const GroupScheme& g, const SubgroupScheme& h, const CleavingData& c, const SparseVec& u);
// tau-bar(x) = tau_bar_lift(gamma(x)), before applying B (x) B.
SparseVec tau_bar(const GroupScheme& g, const SubgroupScheme& h, const CleavingData& c, const SparseVec& x);
// Coordinates of w in k[L]; throws AssertionFailure when w is outside.
SparseVec coordinates_in(const SubgroupScheme& l, const SparseVec& w, const char* what);

// Generators of ker theta: O(G/K)^+ # 1 and mu_K(B(v)) # 1 - 1 # v.
std::vector<SparseVec> kernel_generators(const QuotientPair& qp, const DoubleData& d);
// ker theta equals the two-sided ideal of those generators.
bool kernel_matches_ideal(const QuotientPair& qp, const DoubleData& d);

// (theta (x) theta)(R) and theta(V) from the canonical structure of D(G).
QuasiHopfData pushed_r_and_v(const QuotientPair& qp, const DoubleData& d);

// Right inverse of a surjective matrix, built on pivot columns.
SparseMat right_inverse(const SparseMat& surjection);

struct Recognition {
    Triple triple;
    QuotientPair pair;
    SparseMat iso;  // D(K,H,B) -> target with iso * theta = phi
};

// phi: D(G) -> target. Throws NotHopfMorphism, NotSurjective.
Recognition recognize_triple(const std::shared_ptr<const GroupScheme>& g, const DoubleData& d, const SparseMat& phi,
                             const HopfAlgebra& target);

// phi: D(K',H',B') -> D(K,H,B) with phi * theta' = theta. Throws NoFactorization.
SparseMat induced_surjection(const QuotientPair& target, const QuotientPair& source);

}  // namespace hopfq
