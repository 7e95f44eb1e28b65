#pragma once

#include "hopfq/quotient.hpp"

namespace hopfq {

// B(d_n) = lambda^n / n! t^n for K = H = G_a,1 with the divided power basis.
SparseMat b_lambda(const SubgroupScheme& k, const SubgroupScheme& h, Elem lambda);

// sum_{i<p} lambda^i / i! t^i (x) t^i in O(G_a,1) (x) O(G_a,1).
SparseVec r_lambda(const HopfAlgebra& o, Elem lambda);

}  // namespace hopfq
