#pragma once

// Language and database data model: terms, atoms, update atoms, rules,
// programs, three-valued databases, delta sets and interpretations.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace activedl {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. The message carries "file:line:col: ".
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed syntax that violates a program or database invariant
/// (safety, reserved names, arity, update atoms over derived predicates).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Arity mismatch between two structures over the same predicate.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A fact or update that contradicts another one (p. and p?, +A and -A).
class ConflictError : public Error {
public:
    using Error::Error;
};

/// Lookup of an atom outside an interpretation's universe.
class UniverseError : public Error {
public:
    using Error::Error;
};

/// Update set extracted from a model is not conflict-free or not consistent.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap (enumeration width) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Operation invoked outside its domain, e.g. a total-only semantics on a
/// database with unknown facts.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Broken engine invariant. Seeing one of these is a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Syntax

struct Term {
    enum class Kind : std::uint8_t { Constant, Variable };

    Kind kind = Kind::Constant;
    /// Symbol exactly as written; quoted constants keep their quotes.
    std::string name;

    static Term constant(std::string symbol) { return {Kind::Constant, std::move(symbol)}; }
    static Term variable(std::string symbol) { return {Kind::Variable, std::move(symbol)}; }

    bool is_variable() const { return kind == Kind::Variable; }
    bool is_constant() const { return kind == Kind::Constant; }

    friend auto operator<=>(const Term&, const Term&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;

    friend auto operator<=>(const Atom&, const Atom&) = default;
};

enum class Polarity : std::uint8_t { Insert, Delete };

inline Polarity opposite(Polarity p) {
    return p == Polarity::Insert ? Polarity::Delete : Polarity::Insert;
}

/// +A or -A. Ordered by atom first so delta sets render atom by atom.
struct UpdateAtom {
    Atom atom;
    Polarity polarity = Polarity::Insert;

    friend auto operator<=>(const UpdateAtom&, const UpdateAtom&) = default;
};

enum class BuiltinOp : std::uint8_t { Eq, Neq };

struct Literal {
    enum class Kind : std::uint8_t { Standard, Update, Builtin };

    Kind kind = Kind::Standard;
    bool negated = false;
    Polarity polarity = Polarity::Insert;  // Update only
    Atom atom;                             // Standard and Update
    BuiltinOp op = BuiltinOp::Eq;          // Builtin only
    Term left;                             // Builtin only
    Term right;                            // Builtin only

    static Literal standard(Atom a, bool negated = false);
    static Literal update(Polarity p, Atom a, bool negated = false);
    static Literal builtin(BuiltinOp op, Term l, Term r);

    bool is_builtin() const { return kind == Kind::Builtin; }
    bool is_positive_atom() const { return kind != Kind::Builtin && !negated; }
    bool is_ground() const;

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Head {
    std::optional<Polarity> update;  // set for active rules
    Atom atom;

    bool is_update() const { return update.has_value(); }

    friend auto operator<=>(const Head&, const Head&) = default;
};

struct SourceLoc {
    std::string file;
    int line = 0;
    int column = 0;

    std::string str() const;
};

struct Rule {
    Head head;
    std::vector<Literal> body;
    SourceLoc origin;

    bool is_active() const { return head.is_update(); }
    bool is_fact() const { return body.empty(); }
    bool is_ground() const;

    /// Structural comparison; origin is ignored.
    friend bool operator==(const Rule& a, const Rule& b) {
        return a.head == b.head && a.body == b.body;
    }
    friend std::strong_ordering operator<=>(const Rule& a, const Rule& b) {
        if (auto c = a.head <=> b.head; c != 0) return c;
        return a.body <=> b.body;
    }
};

/// A set of rules. Rule order is preserved for rendering diagnostics but
/// equality is set equality.
struct Program {
    std::vector<Rule> rules;

    bool is_active() const;
    bool empty() const { return rules.empty(); }

    /// Predicates occurring in the head of a deductive rule.
    std::set<std::string> derived_predicates() const;
    /// Constants occurring anywhere in the program.
    std::set<std::string> constants() const;

    friend bool operator==(const Program& a, const Program& b);
};

// ---------------------------------------------------------------------------
// Databases and updates

/// Three-valued database: true facts and unknown facts, disjoint. Anything
/// else is false. Arity is fixed per predicate.
class Database {
public:
    void add_true(const Atom& a);
    void add_unknown(const Atom& a);

    bool is_true(const Atom& a) const { return true_.contains(a); }
    bool is_unknown(const Atom& a) const { return unknown_.contains(a); }
    bool is_false(const Atom& a) const { return !is_true(a) && !is_unknown(a); }

    const std::set<Atom>& true_facts() const { return true_; }
    const std::set<Atom>& unknown_facts() const { return unknown_; }
    /// Tuples of D+(p) or unknown(p) as ground atoms.
    std::set<Atom> true_facts(std::string_view predicate) const;
    std::set<Atom> unknown_facts(std::string_view predicate) const;

    bool is_total() const { return unknown_.empty(); }
    bool empty() const { return true_.empty() && unknown_.empty(); }
    const std::map<std::string, std::size_t, std::less<>>& schema() const { return arity_; }
    std::set<std::string> constants() const;

    friend bool operator==(const Database& a, const Database& b) {
        return a.true_ == b.true_ && a.unknown_ == b.unknown_;
    }

private:
    void check(const Atom& a);

    std::set<Atom> true_;
    std::set<Atom> unknown_;
    std::map<std::string, std::size_t, std::less<>> arity_;
};

/// Ground update atoms; never contains both +A and -A.
class DeltaSet {
public:
    void add(const UpdateAtom& u);
    void add(Polarity p, const Atom& a) { add(UpdateAtom{a, p}); }

    const std::set<UpdateAtom>& updates() const { return updates_; }
    bool contains(Polarity p, const Atom& a) const { return updates_.contains(UpdateAtom{a, p}); }
    bool empty() const { return updates_.empty(); }
    std::size_t size() const { return updates_.size(); }
    std::set<std::string> constants() const;

    friend bool operator==(const DeltaSet&, const DeltaSet&) = default;

private:
    std::set<UpdateAtom> updates_;
};

/// <delta, AP>.
struct UpdateProgram {
    DeltaSet delta;
    Program program;
};

/// Checks arity agreement between program, delta and database, and that the
/// delta only touches base predicates.
void validate_update_program(const UpdateProgram& up, const Database& db);

struct ValidationOptions {
    /// Accept '@'-prefixed predicates (rewritten programs).
    bool allow_reserved = false;
};

/// Safety, reserved names, strict arity, no update atoms over derived
/// predicates. Throws ValidationError naming the rule.
void validate_program(const Program& p, const ValidationOptions& opts = {});

// ---------------------------------------------------------------------------
// Truth values and interpretations

enum class TruthValue : std::uint8_t { False = 0, Undefined = 1, True = 2 };

inline TruthValue negate(TruthValue v) {
    return static_cast<TruthValue>(2 - static_cast<int>(v));
}
inline TruthValue min(TruthValue a, TruthValue b) { return a < b ? a : b; }
inline TruthValue max(TruthValue a, TruthValue b) { return a < b ? b : a; }
std::string_view to_string(TruthValue v);

using AtomId = std::uint32_t;

/// Interned ground atoms. Ids follow insertion order; builders that want
/// canonical ids insert atoms in sorted order.
class AtomTable {
public:
    AtomTable() = default;
    explicit AtomTable(const std::set<Atom>& sorted_atoms);

    AtomId intern(const Atom& a);
    std::optional<AtomId> find(const Atom& a) const;
    const Atom& at(AtomId id) const { return atoms_.at(id); }
    std::size_t size() const { return atoms_.size(); }
    const std::vector<Atom>& atoms() const { return atoms_; }

    friend bool operator==(const AtomTable& a, const AtomTable& b) { return a.atoms_ == b.atoms_; }

private:
    std::vector<Atom> atoms_;
    std::map<Atom, AtomId> ids_;
};

/// Consistent three-valued assignment over a finite universe of ground atoms.
class Interpretation {
public:
    explicit Interpretation(std::shared_ptr<const AtomTable> universe,
                            TruthValue fill = TruthValue::Undefined);

    /// Atoms listed as (atom, true) or (atom, false); unlisted atoms are
    /// Undefined. Listing an atom both ways throws ConflictError.
    static Interpretation from_literals(std::shared_ptr<const AtomTable> universe,
                                        std::span<const std::pair<Atom, bool>> literals);

    TruthValue operator[](AtomId id) const { return values_[id]; }
    TruthValue value(const Atom& a) const;
    void set(AtomId id, TruthValue v) { values_.at(id) = v; }

    std::size_t size() const { return values_.size(); }
    const AtomTable& universe() const { return *universe_; }
    const std::shared_ptr<const AtomTable>& universe_ptr() const { return universe_; }
    const std::vector<TruthValue>& values() const { return values_; }

    bool is_total() const;
    std::size_t undefined_count() const;
    std::vector<AtomId> atoms_with(TruthValue v) const;

    /// Literal-set inclusion: every defined atom of *this has the same value
    /// in other.
    bool subset_of(const Interpretation& other) const;
    /// True iff the literal-set union is consistent.
    bool compatible_with(const Interpretation& other) const;
    /// Literal-set intersection.
    Interpretation meet(const Interpretation& other) const;

    std::map<Atom, TruthValue> to_map() const;

    friend bool operator==(const Interpretation& a, const Interpretation& b);

private:
    void require_same_universe(const Interpretation& other) const;

    std::shared_ptr<const AtomTable> universe_;
    std::vector<TruthValue> values_;
};

// ---------------------------------------------------------------------------
// Reserved predicate naming for rewritten programs. User programs may not
// use the '@' prefix.

namespace names {
inline constexpr char kReserved = '@';

std::string plus(std::string_view p);           // +p
std::string minus(std::string_view p);          // -p
std::string guard(std::string_view p);          // ck_p
std::string delta_insert(std::string_view p);   // p'
std::string delta_delete(std::string_view p);   // p''
std::string bridge_insert(std::string_view p);  // p+ = (+p or p')
std::string bridge_delete(std::string_view p);  // p- = (-p or p'')
std::string update(Polarity pol, std::string_view p);

/// Inverse of plus/minus: "@plus_mgr" -> (Insert, "mgr").
std::optional<std::pair<Polarity, std::string>> parse_update(std::string_view predicate);

/// +p(t) -> @plus_p(t).
Atom standardize(const UpdateAtom& u);
}  // namespace names

// ---------------------------------------------------------------------------
// Elementary truth machinery

/// Ground literal under I. Update literals read the standardized atom.
TruthValue eval_literal(const Literal& lit, const Interpretation& I);
/// I(head) >= min over body (True for an empty body).
bool rule_satisfied(const Rule& r, const Interpretation& I);
bool is_model(const Program& p, const Interpretation& I);

/// D1 <= D2 in the knowledge ordering: unknown(D2) is a subset of
/// unknown(D1). Throws SchemaError when a predicate has different arities.
bool info_leq(const Database& d1, const Database& d2);

using ConstantMap = std::map<std::string, std::string, std::less<>>;

/// Replaces each constant c by rho(c); constants missing from rho are fixed.
/// Throws ValidationError if rho is not injective on the constants present.
Program rename_constants(const Program& p, const ConstantMap& rho);
Database rename_constants(const Database& d, const ConstantMap& rho);
DeltaSet rename_constants(const DeltaSet& d, const ConstantMap& rho);
Atom rename_constants(const Atom& a, const ConstantMap& rho);

}  // namespace activedl
