#include "activedl/core.hpp"

#include <algorithm>

#include "activedl/parser.hpp"

namespace activedl {

namespace {

void collect_constants(const Term& t, std::set<std::string>& out) {
    if (t.is_constant()) out.insert(t.name);
}

void collect_constants(const Atom& a, std::set<std::string>& out) {
    for (const auto& t : a.args) collect_constants(t, out);
}

void collect_variables(const Atom& a, std::set<std::string>& out) {
    for (const auto& t : a.args)
        if (t.is_variable()) out.insert(t.name);
}

std::string rule_context(const Rule& r) {
    std::string s = render(r);
    if (r.origin.line > 0) s = r.origin.str() + ": " + s;
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

Literal Literal::standard(Atom a, bool negated) {
    Literal l;
    l.kind = Kind::Standard;
    l.negated = negated;
    l.atom = std::move(a);
    return l;
}

Literal Literal::update(Polarity p, Atom a, bool negated) {
    Literal l;
    l.kind = Kind::Update;
    l.negated = negated;
    l.polarity = p;
    l.atom = std::move(a);
    return l;
}

Literal Literal::builtin(BuiltinOp op, Term lhs, Term rhs) {
    Literal l;
    l.kind = Kind::Builtin;
    l.op = op;
    l.left = std::move(lhs);
    l.right = std::move(rhs);
    return l;
}

bool Literal::is_ground() const {
    if (kind == Kind::Builtin) return left.is_constant() && right.is_constant();
    return atom.is_ground();
}

std::string SourceLoc::str() const {
    return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ":" +
           std::to_string(column);
}

bool Rule::is_ground() const {
    return head.atom.is_ground() &&
           std::all_of(body.begin(), body.end(), [](const Literal& l) { return l.is_ground(); });
}

bool Program::is_active() const {
    return std::any_of(rules.begin(), rules.end(), [](const Rule& r) { return r.is_active(); });
}

std::set<std::string> Program::derived_predicates() const {
    std::set<std::string> out;
    for (const auto& r : rules)
        if (!r.is_active()) out.insert(r.head.atom.predicate);
    return out;
}

std::set<std::string> Program::constants() const {
    std::set<std::string> out;
    for (const auto& r : rules) {
        collect_constants(r.head.atom, out);
        for (const auto& l : r.body) {
            if (l.is_builtin()) {
                collect_constants(l.left, out);
                collect_constants(l.right, out);
            } else {
                collect_constants(l.atom, out);
            }
        }
    }
    return out;
}

bool operator==(const Program& a, const Program& b) {
    std::set<Rule> sa(a.rules.begin(), a.rules.end());
    std::set<Rule> sb(b.rules.begin(), b.rules.end());
    return sa == sb;
}

// ---------------------------------------------------------------------------
// Validation

void validate_program(const Program& p, const ValidationOptions& opts) {
    std::map<std::string, std::size_t> arity;
    auto check_atom = [&](const Atom& a, const Rule& r) {
        if (!opts.allow_reserved && !a.predicate.empty() && a.predicate.front() == names::kReserved)
            throw ValidationError(rule_context(r) + ": predicate '" + a.predicate +
                                  "' uses the reserved '@' prefix");
        auto [it, inserted] = arity.emplace(a.predicate, a.arity());
        if (!inserted && it->second != a.arity())
            throw ValidationError(rule_context(r) + ": predicate '" + a.predicate + "' used with arity " +
                                  std::to_string(a.arity()) + " but earlier with arity " +
                                  std::to_string(it->second));
    };

    const auto derived = p.derived_predicates();
    for (const auto& r : p.rules) {
        check_atom(r.head.atom, r);
        if (r.head.is_update() && derived.contains(r.head.atom.predicate))
            throw ValidationError(rule_context(r) + ": update atom over derived predicate '" +
                                  r.head.atom.predicate + "'");

        std::set<std::string> bound;
        std::set<std::string> used;
        collect_variables(r.head.atom, used);
        for (const auto& l : r.body) {
            if (l.is_builtin()) {
                if (l.left.is_variable()) used.insert(l.left.name);
                if (l.right.is_variable()) used.insert(l.right.name);
                continue;
            }
            check_atom(l.atom, r);
            if (l.kind == Literal::Kind::Update && derived.contains(l.atom.predicate))
                throw ValidationError(rule_context(r) + ": update atom over derived predicate '" +
                                      l.atom.predicate + "'");
            collect_variables(l.atom, l.negated ? used : bound);
        }
        for (const auto& v : used)
            if (!bound.contains(v))
                throw ValidationError(rule_context(r) + ": unsafe rule, variable " + v +
                                      " does not occur in a positive body atom");
    }
}

void validate_update_program(const UpdateProgram& up, const Database& db) {
    std::map<std::string, std::size_t> arity;
    auto note = [&](const Atom& a, std::string_view where) {
        auto [it, inserted] = arity.emplace(a.predicate, a.arity());
        if (!inserted && it->second != a.arity())
            throw SchemaError(std::string(where) + ": predicate '" + a.predicate + "' used with arity " +
                              std::to_string(a.arity()) + " but elsewhere with arity " +
                              std::to_string(it->second));
    };
    for (const auto& r : up.program.rules) {
        note(r.head.atom, "program");
        for (const auto& l : r.body)
            if (!l.is_builtin()) note(l.atom, "program");
    }
    const auto derived = up.program.derived_predicates();
    for (const auto& u : up.delta.updates()) {
        note(u.atom, "delta");
        if (derived.contains(u.atom.predicate))
            throw ValidationError("delta: update " + render(u) + " targets derived predicate '" +
                                  u.atom.predicate + "'");
    }
    for (const auto& a : db.true_facts()) note(a, "database");
    for (const auto& a : db.unknown_facts()) note(a, "database");
}

// ---------------------------------------------------------------------------
// Database / DeltaSet

void Database::check(const Atom& a) {
    if (!a.is_ground()) throw ValidationError("database fact " + render(a) + " is not ground");
    if (!a.predicate.empty() && a.predicate.front() == names::kReserved)
        throw ValidationError("database fact " + render(a) + " uses the reserved '@' prefix");
    auto [it, inserted] = arity_.emplace(a.predicate, a.arity());
    if (!inserted && it->second != a.arity())
        throw SchemaError("database: predicate '" + a.predicate + "' has arity " +
                          std::to_string(it->second) + ", got " + render(a));
}

void Database::add_true(const Atom& a) {
    check(a);
    if (unknown_.contains(a)) throw ConflictError("fact " + render(a) + " is both true and unknown");
    true_.insert(a);
}

void Database::add_unknown(const Atom& a) {
    check(a);
    if (true_.contains(a)) throw ConflictError("fact " + render(a) + " is both true and unknown");
    unknown_.insert(a);
}

std::set<Atom> Database::true_facts(std::string_view predicate) const {
    std::set<Atom> out;
    for (const auto& a : true_)
        if (a.predicate == predicate) out.insert(a);
    return out;
}

std::set<Atom> Database::unknown_facts(std::string_view predicate) const {
    std::set<Atom> out;
    for (const auto& a : unknown_)
        if (a.predicate == predicate) out.insert(a);
    return out;
}

std::set<std::string> Database::constants() const {
    std::set<std::string> out;
    for (const auto& a : true_) collect_constants(a, out);
    for (const auto& a : unknown_) collect_constants(a, out);
    return out;
}

void DeltaSet::add(const UpdateAtom& u) {
    if (!u.atom.is_ground()) throw ValidationError("update " + render(u) + " is not ground");
    if (!u.atom.predicate.empty() && u.atom.predicate.front() == names::kReserved)
        throw ValidationError("update " + render(u) + " uses the reserved '@' prefix");
    if (updates_.contains(UpdateAtom{u.atom, opposite(u.polarity)}))
        throw ConflictError("conflicting updates +" + render(u.atom) + " and -" + render(u.atom));
    for (const auto& other : updates_)
        if (other.atom.predicate == u.atom.predicate && other.atom.arity() != u.atom.arity())
            throw SchemaError("delta: predicate '" + u.atom.predicate + "' used with two arities");
    updates_.insert(u);
}

std::set<std::string> DeltaSet::constants() const {
    std::set<std::string> out;
    for (const auto& u : updates_) collect_constants(u.atom, out);
    return out;
}

// ---------------------------------------------------------------------------
// Truth values / interpretations

std::string_view to_string(TruthValue v) {
    switch (v) {
        case TruthValue::False: return "false";
        case TruthValue::Undefined: return "undefined";
        case TruthValue::True: return "true";
    }
    return "?";
}

AtomTable::AtomTable(const std::set<Atom>& sorted_atoms) {
    atoms_.reserve(sorted_atoms.size());
    for (const auto& a : sorted_atoms) intern(a);
}

AtomId AtomTable::intern(const Atom& a) {
    auto [it, inserted] = ids_.emplace(a, static_cast<AtomId>(atoms_.size()));
    if (inserted) atoms_.push_back(a);
    return it->second;
}

std::optional<AtomId> AtomTable::find(const Atom& a) const {
    auto it = ids_.find(a);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

Interpretation::Interpretation(std::shared_ptr<const AtomTable> universe, TruthValue fill)
    : universe_(std::move(universe)), values_(universe_->size(), fill) {}

Interpretation Interpretation::from_literals(std::shared_ptr<const AtomTable> universe,
                                             std::span<const std::pair<Atom, bool>> literals) {
    Interpretation I(std::move(universe));
    std::vector<bool> seen(I.size(), false);
    for (const auto& [atom, positive] : literals) {
        auto id = I.universe_->find(atom);
        if (!id) throw UniverseError("atom " + render(atom) + " is outside the universe");
        TruthValue v = positive ? TruthValue::True : TruthValue::False;
        if (seen[*id] && I.values_[*id] != v)
            throw ConflictError("interpretation lists both " + render(atom) + " and not " + render(atom));
        seen[*id] = true;
        I.values_[*id] = v;
    }
    return I;
}

TruthValue Interpretation::value(const Atom& a) const {
    auto id = universe_->find(a);
    if (!id) throw UniverseError("atom " + render(a) + " is outside the universe");
    return values_[*id];
}

bool Interpretation::is_total() const {
    return std::none_of(values_.begin(), values_.end(),
                        [](TruthValue v) { return v == TruthValue::Undefined; });
}

std::size_t Interpretation::undefined_count() const {
    return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), TruthValue::Undefined));
}

std::vector<AtomId> Interpretation::atoms_with(TruthValue v) const {
    std::vector<AtomId> out;
    for (AtomId i = 0; i < values_.size(); ++i)
        if (values_[i] == v) out.push_back(i);
    return out;
}

void Interpretation::require_same_universe(const Interpretation& other) const {
    if (universe_ != other.universe_ && !(*universe_ == *other.universe_))
        throw UniverseError("interpretations over different universes");
}

bool Interpretation::subset_of(const Interpretation& other) const {
    require_same_universe(other);
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] != TruthValue::Undefined && values_[i] != other.values_[i]) return false;
    return true;
}

bool Interpretation::compatible_with(const Interpretation& other) const {
    require_same_universe(other);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        auto a = values_[i];
        auto b = other.values_[i];
        if (a != TruthValue::Undefined && b != TruthValue::Undefined && a != b) return false;
    }
    return true;
}

Interpretation Interpretation::meet(const Interpretation& other) const {
    require_same_universe(other);
    Interpretation out(universe_);
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] == other.values_[i]) out.values_[i] = values_[i];
    return out;
}

std::map<Atom, TruthValue> Interpretation::to_map() const {
    std::map<Atom, TruthValue> out;
    for (AtomId i = 0; i < values_.size(); ++i) out.emplace(universe_->at(i), values_[i]);
    return out;
}

bool operator==(const Interpretation& a, const Interpretation& b) {
    if (a.universe_ == b.universe_ || *a.universe_ == *b.universe_) return a.values_ == b.values_;
    return a.to_map() == b.to_map();
}

// ---------------------------------------------------------------------------
// Reserved names

namespace names {

std::string plus(std::string_view p) { return "@plus_" + std::string(p); }
std::string minus(std::string_view p) { return "@minus_" + std::string(p); }
std::string guard(std::string_view p) { return "@ck_" + std::string(p); }
std::string delta_insert(std::string_view p) { return "@ins_" + std::string(p); }
std::string delta_delete(std::string_view p) { return "@del_" + std::string(p); }
std::string bridge_insert(std::string_view p) { return "@insb_" + std::string(p); }
std::string bridge_delete(std::string_view p) { return "@delb_" + std::string(p); }

std::string update(Polarity pol, std::string_view p) {
    return pol == Polarity::Insert ? plus(p) : minus(p);
}

std::optional<std::pair<Polarity, std::string>> parse_update(std::string_view predicate) {
    constexpr std::string_view kPlus = "@plus_";
    constexpr std::string_view kMinus = "@minus_";
    if (predicate.starts_with(kPlus))
        return std::pair{Polarity::Insert, std::string(predicate.substr(kPlus.size()))};
    if (predicate.starts_with(kMinus))
        return std::pair{Polarity::Delete, std::string(predicate.substr(kMinus.size()))};
    return std::nullopt;
}

Atom standardize(const UpdateAtom& u) { return Atom{update(u.polarity, u.atom.predicate), u.atom.args}; }

}  // namespace names

// ---------------------------------------------------------------------------
// Truth machinery

TruthValue eval_literal(const Literal& lit, const Interpretation& I) {
    if (!lit.is_ground()) throw ValidationError("literal " + render(lit) + " is not ground");
    switch (lit.kind) {
        case Literal::Kind::Builtin: {
            bool same = lit.left.name == lit.right.name;
            bool holds = lit.op == BuiltinOp::Eq ? same : !same;
            return holds ? TruthValue::True : TruthValue::False;
        }
        case Literal::Kind::Standard: {
            auto v = I.value(lit.atom);
            return lit.negated ? negate(v) : v;
        }
        case Literal::Kind::Update: {
            auto v = I.value(names::standardize(UpdateAtom{lit.atom, lit.polarity}));
            return lit.negated ? negate(v) : v;
        }
    }
    return TruthValue::Undefined;
}

bool rule_satisfied(const Rule& r, const Interpretation& I) {
    const Atom head = r.head.is_update() ? names::standardize(UpdateAtom{r.head.atom, *r.head.update})
                                         : r.head.atom;
    TruthValue body = TruthValue::True;
    for (const auto& l : r.body) body = min(body, eval_literal(l, I));
    return I.value(head) >= body;
}

bool is_model(const Program& p, const Interpretation& I) {
    return std::all_of(p.rules.begin(), p.rules.end(),
                       [&](const Rule& r) { return rule_satisfied(r, I); });
}

bool info_leq(const Database& d1, const Database& d2) {
    for (const auto& [pred, n] : d1.schema()) {
        auto it = d2.schema().find(pred);
        if (it != d2.schema().end() && it->second != n)
            throw SchemaError("predicate '" + pred + "' has arity " + std::to_string(n) + " and " +
                              std::to_string(it->second));
    }
    return std::includes(d1.unknown_facts().begin(), d1.unknown_facts().end(),
                         d2.unknown_facts().begin(), d2.unknown_facts().end());
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

void require_injective(const std::set<std::string>& constants, const ConstantMap& rho) {
    std::set<std::string> image;
    std::set<std::string> seen_values;
    for (const auto& [from, to] : rho)
        if (!seen_values.insert(to).second)
            throw ValidationError("constant renaming maps two constants to '" + to + "'");
    for (const auto& c : constants) {
        auto it = rho.find(c);
        const std::string& target = it == rho.end() ? c : it->second;
        if (!image.insert(target).second)
            throw ValidationError("constant renaming is not injective on '" + target + "'");
    }
}

Term rename(const Term& t, const ConstantMap& rho) {
    if (t.is_variable()) return t;
    auto it = rho.find(t.name);
    return it == rho.end() ? t : Term::constant(it->second);
}

}  // namespace

Atom rename_constants(const Atom& a, const ConstantMap& rho) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(rename(t, rho));
    return out;
}

Program rename_constants(const Program& p, const ConstantMap& rho) {
    require_injective(p.constants(), rho);
    Program out;
    for (const auto& r : p.rules) {
        Rule nr = r;
        nr.head.atom = rename_constants(r.head.atom, rho);
        for (auto& l : nr.body) {
            if (l.is_builtin()) {
                l.left = rename(l.left, rho);
                l.right = rename(l.right, rho);
            } else {
                l.atom = rename_constants(l.atom, rho);
            }
        }
        out.rules.push_back(std::move(nr));
    }
    return out;
}

Database rename_constants(const Database& d, const ConstantMap& rho) {
    require_injective(d.constants(), rho);
    Database out;
    for (const auto& a : d.true_facts()) out.add_true(rename_constants(a, rho));
    for (const auto& a : d.unknown_facts()) out.add_unknown(rename_constants(a, rho));
    return out;
}

DeltaSet rename_constants(const DeltaSet& d, const ConstantMap& rho) {
    require_injective(d.constants(), rho);
    DeltaSet out;
    for (const auto& u : d.updates()) out.add(UpdateAtom{rename_constants(u.atom, rho), u.polarity});
    return out;
}

}  // namespace activedl
