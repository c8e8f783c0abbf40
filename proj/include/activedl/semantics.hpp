#pragma once

// Three-valued model theory for ground Datalog with negation: well-founded
// model via the W operator, reduct-based partial stable check, exhaustive
// partial stable model enumeration and model classification.

#include <cstdint>
#include <vector>

#include "activedl/core.hpp"
#include "activedl/rewriter.hpp"

namespace activedl {

/// Heads of rules whose body is True in I.
std::vector<AtomId> immediate_consequence(const GroundProgram& p, const Interpretation& I);

/// Greatest set U such that every rule with head in U has a body literal
/// False in I or a positive body atom in U.
std::vector<AtomId> greatest_unfounded(const GroundProgram& p, const Interpretation& I);

/// T(I) united with not U(I). Throws InternalError if inconsistent.
Interpretation wf_step(const GroundProgram& p, const Interpretation& I);

/// Least fixpoint of wf_step from the all-undefined interpretation.
Interpretation well_founded(const GroundProgram& p);

/// Positive program: each "not A" replaced by the constant not M(A).
struct ReductRule {
    AtomId head = 0;
    std::vector<AtomId> atoms;
    std::vector<TruthValue> constants;
};

struct ReductProgram {
    std::shared_ptr<const AtomTable> atoms;
    std::vector<ReductRule> rules;
};

ReductProgram gl_reduct(const GroundProgram& p, const Interpretation& M);

/// Least fixpoint from all-False of a <- max over rules of min over body.
Interpretation least_3v_model(const ReductProgram& r);

bool is_pstable(const GroundProgram& p, const Interpretation& M);

enum class ModelClass : std::uint8_t {
    WellFounded = 1 << 0,
    TStable = 1 << 1,
    MStable = 1 << 2,
    LStable = 1 << 3,
    Deterministic = 1 << 4,
    MaxDeterministic = 1 << 5,
};

struct ModelFlags {
    std::uint8_t bits = 0;

    bool has(ModelClass c) const { return bits & static_cast<std::uint8_t>(c); }
    void set(ModelClass c) { bits |= static_cast<std::uint8_t>(c); }
    /// "well-founded,t-stable,..." in declaration order.
    std::string str() const;

    friend bool operator==(ModelFlags, ModelFlags) = default;
};

std::string_view to_string(ModelClass c);
inline constexpr ModelClass kAllModelClasses[] = {
    ModelClass::WellFounded, ModelClass::TStable,       ModelClass::MStable,
    ModelClass::LStable,     ModelClass::Deterministic, ModelClass::MaxDeterministic,
};

struct ModelRecord {
    Interpretation model;
    ModelFlags flags;
    std::size_t undefined_count = 0;
};

/// Distinct P-stable models sorted by rendered literal set.
struct ModelFamily {
    std::vector<ModelRecord> records;

    std::size_t size() const { return records.size(); }
    std::size_t count(ModelClass c) const;
    std::vector<const ModelRecord*> with(ModelClass c) const;
};

struct EnumerationOptions {
    /// Maximum number of atoms left undefined by the well-founded model.
    std::size_t cap = 20;
};

/// All P-stable models. Searches over the true set between the well-founded
/// bounds, pruning with the reduct fixpoint operator. Unclassified.
ModelFamily enumerate_pstable(const GroundProgram& p, const EnumerationOptions& opts = {});

/// Baseline: tries every three-valued extension of the well-founded model's
/// undefined atoms. Must agree with enumerate_pstable.
ModelFamily enumerate_pstable_exhaustive(const GroundProgram& p,
                                         const EnumerationOptions& opts = {});

/// Sets flags. Throws InternalError if the family has no unique
/// max-deterministic model or lacks the intersection of all models.
ModelFamily classify(const GroundProgram& p, ModelFamily family);

/// classify(enumerate_pstable(p)).
ModelFamily models(const GroundProgram& p, const EnumerationOptions& opts = {});

Interpretation max_deterministic(const GroundProgram& p, const EnumerationOptions& opts = {});

}  // namespace activedl
