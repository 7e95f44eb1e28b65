#pragma once

#include <optional>

#include "hopfq/groupscheme.hpp"

namespace hopfq {

// D(G) on the basis delta_b # u with index b*|G| + u.
struct DoubleData {
    HopfAlgebra algebra;
    SparseMat embed_o;   // O(G)^cop -> D(G), b -> b # 1
    SparseMat embed_kg;  // k[G] -> D(G), u -> 1 # u
    SparseMat proj_kg;   // D(G) -> k[G], b # u -> eps(b) u
};

DoubleData drinfeld_double(const GroupScheme& g);

struct QuasiHopfData {
    HopfAlgebra algebra;
    SparseVec r;                 // in H (x) H
    std::optional<SparseVec> v;  // ribbon element
};

QuasiHopfData canonical_r_and_v(const GroupScheme& g, const DoubleData& d);

// Inverse of x in H (x) H, if any.
std::optional<SparseVec> tensor_inverse(const HopfAlgebra& h, const SparseVec& x);
// Inverse of x in H, if any.
std::optional<SparseVec> element_inverse(const HopfAlgebra& h, const SparseVec& x);

// R21 R
SparseVec monodromy(const HopfAlgebra& h, const SparseVec& r);

VerificationReport verify_quasitriangular(const QuasiHopfData& q);
// Throws MissingRibbonElement when q.v is empty.
VerificationReport verify_ribbon(const QuasiHopfData& q);

bool is_triangular(const QuasiHopfData& q);
// Full rank of f -> (f (x) id)(R21 R) on H^*.
bool is_factorizable(const QuasiHopfData& q);

}  // namespace hopfq
