#pragma once

// Update-program rewritings into plain Datalog with negation, database
// embedding, and grounding.
//
// Generated predicate names (fixed, see names::):
//   @plus_p / @minus_p   update atoms +p / -p read as standard atoms
//   @ck_a                guard blocking +a and -a from both holding
//   @ins_p / @del_p      facts for the input updates +p(t) / -p(t)
//   @insb_p / @delb_p    bridges for (+p or @ins_p) / (-p or @del_p)

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "activedl/core.hpp"

namespace activedl {

enum class Provenance : std::uint8_t {
    User,
    Guard,
    DeltaInsert,
    DeltaDelete,
    BridgeInsert,
    BridgeDelete,
    RenamedUpdate,
};

std::string_view to_string(Provenance p);

/// Program over standard atoms only, plus where each predicate came from.
struct StandardProgram {
    Program program;
    std::map<std::string, Provenance, std::less<>> provenance;
};

enum class RewriteMode : std::uint8_t { Standard, Bm };

/// AP + {p(t). | t true} + {p(t) :- not p(t). | t unknown}.
Program embed_database(const Program& program, const Database& db);

/// Guarded rewriting: active rules get "not @ck_a(t)", body update atoms go
/// through bridges that also accept the input updates, and the input updates
/// become @ins_/@del_ facts.
StandardProgram rewrite_st(const UpdateProgram& up);

/// Rival rewriting: +A <- Body gets "not -A" (and vice versa), each input
/// update +A becomes "+A :- not -A". Body update atoms are only renamed.
StandardProgram rewrite_bm(const UpdateProgram& up);

StandardProgram rewrite(const UpdateProgram& up, RewriteMode mode);

struct GroundRule {
    AtomId head = 0;
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;

    friend auto operator<=>(const GroundRule&, const GroundRule&) = default;
};

/// Variable-free, builtin-free program over interned atoms. Atom ids are in
/// canonical (sorted) order.
struct GroundProgram {
    std::shared_ptr<const AtomTable> atoms;
    std::vector<GroundRule> rules;

    std::size_t atom_count() const { return atoms->size(); }
    Program to_program() const;
};

struct GroundOptions {
    /// Only instantiate rules whose positive body atoms are derivable from
    /// the positive part of the program. Dropped instances can never fire.
    bool prune = true;
    /// Added to the active constant set (no effect when pruning, since
    /// safe rules only bind variables through derivable atoms).
    std::vector<std::string> extra_constants;
};

/// Instantiates a program without update literals over its constants.
/// Throws ValidationError on unsafe rules or remaining update literals.
GroundProgram ground(const Program& p, const GroundOptions& opts = {});

}  // namespace activedl
