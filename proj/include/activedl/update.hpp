#pragma once

// Update outcomes, their application to three-valued databases, and the
// semantics selectors that turn an update program and a database into a new
// database.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "activedl/core.hpp"
#include "activedl/rewriter.hpp"
#include "activedl/semantics.hpp"

namespace activedl {

/// Update literals of a model, split by polarity and truth value.
struct UpdateOutcome {
    std::set<Atom> certain_insert;
    std::set<Atom> certain_delete;
    std::set<Atom> undef_insert;
    std::set<Atom> undef_delete;

    /// Conflict-free and consistent, else ConsistencyError.
    void validate() const;
    bool empty() const;

    friend bool operator==(const UpdateOutcome&, const UpdateOutcome&) = default;
};

/// Reads @plus_/@minus_ atoms of M; everything else is ignored.
UpdateOutcome extract_updates(const Interpretation& M);

/// p is true afterwards iff certainly inserted, or true before and its
/// delete is false. p is unknown iff (unknown before and neither update is
/// certain) or (true before and delete undefined) or (false before and
/// insert undefined).
Database apply_updates(const UpdateOutcome& u, const Database& d);

/// The input updates as certain updates.
Database apply_delta(const DeltaSet& delta, const Database& d);

/// M total, or every undefined insert is already true in d and every
/// undefined delete is already false in d.
bool is_total_transformation(const Interpretation& M, const Database& d);

enum class SemanticsId : std::uint8_t { WS, MD, TWFS, TMDS, UTS, TS, MS, MSTT, WS_BM };

inline constexpr SemanticsId kAllSemantics[] = {
    SemanticsId::WS,  SemanticsId::MD, SemanticsId::TWFS, SemanticsId::TMDS,  SemanticsId::UTS,
    SemanticsId::TS,  SemanticsId::MS, SemanticsId::MSTT, SemanticsId::WS_BM,
};

/// "ws", "md", ..., "ws_bm".
std::string_view to_string(SemanticsId s);
std::optional<SemanticsId> parse_semantics(std::string_view name);
bool requires_total_database(SemanticsId s);
bool is_deterministic(SemanticsId s);

struct SelectionPolicy {
    enum class Kind : std::uint8_t { Lexicographic, Seeded };

    Kind kind = Kind::Lexicographic;
    std::uint64_t seed = 0;

    static SelectionPolicy lexicographic() { return {}; }
    static SelectionPolicy seeded(std::uint64_t s) { return {Kind::Seeded, s}; }
};

struct FamilyStats {
    std::size_t models = 0;
    std::size_t well_founded = 0;
    std::size_t t_stable = 0;
    std::size_t m_stable = 0;
    std::size_t l_stable = 0;
    std::size_t deterministic = 0;
    std::size_t max_deterministic = 0;

    static FamilyStats of(const ModelFamily& f);
};

enum class RunStatus : std::uint8_t { Applied, RejectedUnchanged };
std::string_view to_string(RunStatus s);

struct RunReport {
    SemanticsId semantics = SemanticsId::WS;
    Database input_db;
    Database output_db;
    RunStatus status = RunStatus::Applied;
    /// Model whose updates were applied (or rejected). Absent when no
    /// eligible model exists.
    std::optional<Interpretation> chosen_model;
    UpdateOutcome updates;
    /// Only for semantics that enumerate models.
    std::optional<FamilyStats> family_stats;
    /// Models the policy chose from.
    std::size_t eligible = 0;
    SelectionPolicy policy;
};

struct RunOptions {
    SelectionPolicy policy;
    EnumerationOptions enumeration;
    GroundOptions grounding;
};

/// Rewrites, embeds d, grounds, computes the model(s) the semantics needs
/// and applies the updates. Throws PreconditionError for total-only
/// semantics on a database with unknown facts.
RunReport run(const UpdateProgram& up, const Database& d, SemanticsId xs,
              const RunOptions& opts = {});

struct ComparisonRow {
    SemanticsId semantics = SemanticsId::WS;
    std::optional<RunReport> report;
    std::string error;
};

struct Comparison {
    std::vector<ComparisonRow> rows;
    /// leq[i][j] = info_leq(output_i, output_j) when both rows succeeded.
    std::vector<std::vector<std::optional<bool>>> leq;
};

/// Runs every semantics with the lexicographic policy. Errors are recorded
/// per row.
Comparison compare(const UpdateProgram& up, const Database& d, const RunOptions& opts = {});

}  // namespace activedl
