#include "hopfq/appendix.hpp"

namespace hopfq {

namespace {

// lambda^n / n! for n = 0 .. count-1
std::vector<Elem> exp_coefficients(Field f, Elem lambda, std::size_t count) {
    std::vector<Elem> c(count);
    Elem coef = Field::one();
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) coef = f.div(f.mul(coef, lambda), f.from_int(static_cast<std::int64_t>(i)));
        c[i] = coef;
    }
    return c;
}

}  // namespace

SparseMat b_lambda(const SubgroupScheme& k, const SubgroupScheme& h, Elem lambda) {
    const Field f = k.own.field();
    if (k.order() != h.order()) throw DimensionMismatch("B_lambda needs |K| = |H|");
    const std::size_t n = h.order();
    if (static_cast<std::int64_t>(n) > f.characteristic() || f.characteristic() == 0)
        throw InvalidInput("B_lambda is defined for G_a,1 only");
    auto c = exp_coefficients(f, lambda, n);
    SparseMat b(f, n, n);
    for (std::size_t i = 0; i < n; ++i) b.set_col(i, SparseVec::unit(f, n, i, c[i]));
    return b;
}

SparseVec r_lambda(const HopfAlgebra& o, Elem lambda) {
    const Field f = o.field();
    const std::size_t n = o.dim();
    auto c = exp_coefficients(f, lambda, n);
    Accumulator acc(f, n * n);
    for (std::size_t i = 0; i < n; ++i) acc.add(i * n + i, c[i]);
    return acc.take();
}

}  // namespace hopfq
