#pragma once

#include <json.hpp>
#include <memory>
#include <optional>
#include <vector>

#include "hopfq/lattice.hpp"

namespace hopfq::io {

using Json = nlohmann::json;

inline constexpr int schema_version = 1;

// Scalars: decimal string (prime field), coefficient array (extension), "num/den" (Q).
Json to_json(Field f, Elem a);
Elem elem_from_json(Field f, const Json& j);

// Sparse encodings: {"shape": [...], "entries": [{"indices": [...], "value": ...}]},
// entries in lexicographic index order.
Json to_json(const SparseVec& v);
Json to_json(const SparseMat& m);
Json to_json(const SparseTensor3& t);
SparseVec vec_from_json(Field f, const Json& j);
// Also accepts a dense array of rows.
SparseMat mat_from_json(Field f, const Json& j);
SparseTensor3 tensor_from_json(Field f, const Json& j);

Json to_json(const HopfAlgebra& h);
HopfAlgebra hopf_from_json(const Json& j);

Json to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);

// Group specs: {"constant": {elements, table}}, {"cyclic": {n}}, {"symmetric3": {}},
// {"ga_kernel": {r}}, {"mu_p": {}}, {"product": [spec, spec]},
// {"restricted_lie": {dim, bracket, p_map, names?}} or {"restricted_lie": "two_dim_nonabelian" | "heisenberg"},
// or a full group document. Optional "name" and "field" keys sit beside the constructor.
// An explicit field argument overrides the spec's "field".
GroupScheme group_from_json(const Json& spec, std::optional<Field> field = std::nullopt);
// Full document: both Hopf algebras, orders and the Cayley table when constant.
Json to_json(const GroupScheme& g);

// Subgroup specs: "trivial", "full", {"generators": [vectors]}, {"frobenius_sub": r},
// {"elements": [names or indices]}; optional "name".
SubgroupScheme subgroup_from_json(const GroupScheme& g, const Json& spec);
Json to_json(const SubgroupScheme& s);

// {group, K, H, B}; B may be "trivial".
Json to_json(const Triple& t);
Triple triple_from_json(const Json& j, std::optional<Field> field = std::nullopt);

struct QuotientBundle {
    Triple triple;
    HopfAlgebra algebra;
    SparseMat theta;
    SparseTensor3 sigma;
    SparseMat tau;
    SparseVec r;
    std::optional<SparseVec> v;
    VerificationReport report;
};
Json to_json(const QuotientPair& qp, const VerificationReport& report);
QuotientBundle quotient_from_json(const Json& j);

struct DoubleBundle {
    std::shared_ptr<const GroupScheme> group;
    QuasiHopfData structure;
    VerificationReport report;
};
Json to_json(const GroupScheme& g, const QuasiHopfData& q, const VerificationReport& report);
DoubleBundle double_from_json(const Json& j);

Json to_json(const Flags& f);
Flags flags_from_json(const Json& j);

struct LatticeDocument {
    std::shared_ptr<const GroupScheme> group;
    std::vector<LatticeNode> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> hasse;
};
// Node list, Hasse edges and DOT text.
Json to_json(const Lattice& l);
LatticeDocument lattice_from_json(const Json& j);

Json to_json(const BlockData& b);
BlockData block_from_json(Field f, const Json& j);

}  // namespace hopfq::io
