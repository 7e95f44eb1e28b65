#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hopfq/linalg.hpp"

namespace hopfq {

// Finite-dimensional Hopf algebra as structure constants in a fixed basis.
// comult is a dim^2 x dim matrix with output index i*dim + j.
class HopfAlgebra {
public:
    HopfAlgebra() = default;
    HopfAlgebra(Field f, std::vector<std::string> labels, SparseTensor3 mult, SparseVec unit,
                SparseMat comult, SparseVec counit, SparseMat antipode);

    Field field() const { return f_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const SparseTensor3& mult() const { return mult_; }
    const SparseVec& unit() const { return unit_; }
    const SparseMat& comult() const { return comult_; }
    const SparseVec& counit() const { return counit_; }
    const SparseMat& antipode() const { return antipode_; }

    SparseVec basis(std::size_t i) const { return SparseVec::unit(f_, dim(), i); }
    SparseVec zero() const { return SparseVec(f_, dim()); }
    const SparseVec& product(std::size_t i, std::size_t j) const { return mult_.slice(i, j); }
    SparseVec multiply(const SparseVec& x, const SparseVec& y) const { return mult_.contract(x, y); }
    SparseVec coproduct(const SparseVec& x) const { return comult_.apply(x); }
    Elem epsilon(const SparseVec& x) const;
    SparseVec apply_antipode(const SparseVec& x) const { return antipode_.apply(x); }

    // Product in H (x) H.
    SparseVec multiply2(const SparseVec& x, const SparseVec& y) const;
    // Iterated coproduct (Delta (x) id) Delta, in H^(x)3.
    SparseVec coproduct2(const SparseVec& x) const;
    SparseVec tensor_unit() const { return tensor(unit_, unit_); }

    friend bool operator==(const HopfAlgebra& a, const HopfAlgebra& b) {
        return a.f_ == b.f_ && a.mult_ == b.mult_ && a.unit_ == b.unit_ && a.comult_ == b.comult_ &&
               a.counit_ == b.counit_ && a.antipode_ == b.antipode_;
    }

private:
    Field f_;
    std::vector<std::string> labels_;
    SparseTensor3 mult_;
    SparseVec unit_;
    SparseMat comult_;
    SparseVec counit_;
    SparseMat antipode_;
};

// Product of x, y in A_1 (x) ... (x) A_k.
SparseVec multiply_tensor(const std::vector<const HopfAlgebra*>& legs, const SparseVec& x,
                          const SparseVec& y);

struct Check {
    std::string name;
    bool passed = true;
    std::string witness;
};

struct VerificationReport {
    std::vector<Check> checks;
    bool commutative = true;
    bool cocommutative = true;
    bool involutive = true;

    bool ok() const;
    const Check* first_failure() const;
    const Check& find(const std::string& name) const;
    void add(std::string name, bool passed, std::string witness = {});
};

struct VerifyOptions {
    // Only every stride-th outer basis index is visited; 1 means exhaustive.
    std::size_t stride = 1;
};

VerificationReport verify_hopf(const HopfAlgebra& h, VerifyOptions opt = {});

HopfAlgebra dual_hopf(const HopfAlgebra& h, std::vector<std::string> labels = {});

enum class Variant { op, cop };
// Throws AntipodeNotInvertible when S has no inverse.
HopfAlgebra variant(const HopfAlgebra& h, Variant which);

HopfAlgebra tensor_hopf(const HopfAlgebra& a, const HopfAlgebra& b);

struct MorphismReport {
    bool ok = true;
    std::string failed;
    std::string witness;
    explicit operator bool() const { return ok; }
};

// f is a target.dim x source.dim matrix.
MorphismReport is_algebra_map(const SparseMat& f, const HopfAlgebra& source, const HopfAlgebra& target);
MorphismReport is_coalgebra_map(const SparseMat& f, const HopfAlgebra& source, const HopfAlgebra& target);
MorphismReport is_hopf_morphism(const SparseMat& f, const HopfAlgebra& source, const HopfAlgebra& target);

// (f * g)(c) = f(c_1) g(c_2) for maps from the coalgebra of `coalg` into the algebra of `alg`.
SparseMat convolution(const SparseMat& f, const SparseMat& g, const HopfAlgebra& coalg, const HopfAlgebra& alg);
// u o epsilon
SparseMat convolution_unit(const HopfAlgebra& coalg, const HopfAlgebra& alg);
// Throws NotInvertible.
SparseMat convolution_inverse(const SparseMat& f, const HopfAlgebra& coalg, const HopfAlgebra& alg);

struct SearchBudget {
    std::size_t candidates = 10'000'000;
};

// Nonzero g with Delta(g) = g (x) g and epsilon(g) = 1, sorted by coordinates.
// Over Q only {-1, 0, 1} coordinate patterns are tried.
std::vector<SparseVec> grouplikes(const HopfAlgebra& h, SearchBudget budget = {});
std::vector<SparseVec> primitives(const HopfAlgebra& h);

bool is_grouplike(const HopfAlgebra& h, const SparseVec& g);
// Smallest two-sided ideal containing gens.
Subspace two_sided_ideal(const HopfAlgebra& h, const std::vector<SparseVec>& gens);
bool is_central(const HopfAlgebra& h, const SparseVec& x);

// Human-readable rendering of a vector in the labelled basis.
std::string format_vector(const HopfAlgebra& h, const SparseVec& v);
std::string format_tensor(const HopfAlgebra& a, const HopfAlgebra& b, const SparseVec& v);

}  // namespace hopfq
