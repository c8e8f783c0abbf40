#include "activedl/rewriter.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace activedl {

namespace {

std::vector<Term> generic_args(std::size_t n) {
    std::vector<Term> out;
    out.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) out.push_back(Term::variable("X" + std::to_string(i)));
    return out;
}

Literal pos(std::string predicate, std::vector<Term> args) {
    return Literal::standard(Atom{std::move(predicate), std::move(args)});
}

Literal neg(std::string predicate, std::vector<Term> args) {
    return Literal::standard(Atom{std::move(predicate), std::move(args)}, true);
}

Rule make_rule(std::string head_pred, std::vector<Term> head_args, std::vector<Literal> body = {}) {
    Rule r;
    r.head.atom = Atom{std::move(head_pred), std::move(head_args)};
    r.body = std::move(body);
    return r;
}

Atom renamed_head(const Head& h) {
    if (!h.is_update()) return h.atom;
    return names::standardize(UpdateAtom{h.atom, *h.update});
}

void note_user(StandardProgram& sp) {
    for (const auto& r : sp.program.rules) {
        auto add = [&](const std::string& p) {
            if (p.empty() || p.front() != names::kReserved) sp.provenance.emplace(p, Provenance::User);
        };
        add(r.head.atom.predicate);
        for (const auto& l : r.body)
            if (!l.is_builtin()) add(l.atom.predicate);
    }
}

}  // namespace

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::User: return "user";
        case Provenance::Guard: return "guard";
        case Provenance::DeltaInsert: return "delta-insert";
        case Provenance::DeltaDelete: return "delta-delete";
        case Provenance::BridgeInsert: return "bridge-insert";
        case Provenance::BridgeDelete: return "bridge-delete";
        case Provenance::RenamedUpdate: return "renamed-update";
    }
    return "?";
}

Program embed_database(const Program& program, const Database& db) {
    Program out = program;
    for (const auto& a : db.true_facts()) out.rules.push_back(make_rule(a.predicate, a.args));
    for (const auto& a : db.unknown_facts()) out.rules.push_back(make_rule(a.predicate, a.args, {neg(a.predicate, a.args)}));
    return out;
}

StandardProgram rewrite_st(const UpdateProgram& up) {
    StandardProgram sp;
    // (predicate, polarity) -> arity
    std::map<std::pair<std::string, Polarity>, std::size_t> bridges;
    std::map<std::string, std::size_t> actions;
    std::map<std::pair<std::string, Polarity>, std::size_t> renamed;

    for (const auto& r : up.program.rules) {
        Rule nr;
        nr.origin = r.origin;
        nr.head.atom = renamed_head(r.head);
        for (const auto& l : r.body) {
            if (l.kind != Literal::Kind::Update) {
                nr.body.push_back(l);
                continue;
            }
            const auto& p = l.atom.predicate;
            bridges.emplace(std::pair{p, l.polarity}, l.atom.arity());
            std::string bridge = l.polarity == Polarity::Insert ? names::bridge_insert(p) : names::bridge_delete(p);
            nr.body.push_back(Literal::standard(Atom{bridge, l.atom.args}, l.negated));
        }
        if (r.is_active()) {
            const auto& a = r.head.atom;
            actions.emplace(a.predicate, a.arity());
            renamed.emplace(std::pair{a.predicate, *r.head.update}, a.arity());
            nr.body.push_back(neg(names::guard(a.predicate), a.args));
        }
        sp.program.rules.push_back(std::move(nr));
    }

    for (const auto& [a, n] : actions) {
        auto xs = generic_args(n);
        sp.program.rules.push_back(
            make_rule(names::guard(a), xs, {pos(names::plus(a), xs), pos(names::minus(a), xs)}));
        sp.provenance[names::guard(a)] = Provenance::Guard;
        sp.provenance[names::plus(a)] = Provenance::RenamedUpdate;
        sp.provenance[names::minus(a)] = Provenance::RenamedUpdate;
    }

    for (const auto& u : up.delta.updates()) {
        const auto& p = u.atom.predicate;
        if (u.polarity == Polarity::Insert) {
            sp.program.rules.push_back(make_rule(names::delta_insert(p), u.atom.args));
            sp.provenance[names::delta_insert(p)] = Provenance::DeltaInsert;
        } else {
            sp.program.rules.push_back(make_rule(names::delta_delete(p), u.atom.args));
            sp.provenance[names::delta_delete(p)] = Provenance::DeltaDelete;
        }
    }

    for (const auto& [key, n] : bridges) {
        const auto& [p, pol] = key;
        auto xs = generic_args(n);
        bool ins = pol == Polarity::Insert;
        std::string bridge = ins ? names::bridge_insert(p) : names::bridge_delete(p);
        sp.program.rules.push_back(make_rule(bridge, xs, {pos(names::update(pol, p), xs)}));
        sp.program.rules.push_back(
            make_rule(bridge, xs, {pos(ins ? names::delta_insert(p) : names::delta_delete(p), xs)}));
        sp.provenance[bridge] = ins ? Provenance::BridgeInsert : Provenance::BridgeDelete;
        sp.provenance.try_emplace(ins ? names::delta_insert(p) : names::delta_delete(p),
                                  ins ? Provenance::DeltaInsert : Provenance::DeltaDelete);
        sp.provenance.try_emplace(names::update(pol, p), Provenance::RenamedUpdate);
    }

    note_user(sp);
    return sp;
}

StandardProgram rewrite_bm(const UpdateProgram& up) {
    StandardProgram sp;
    for (const auto& r : up.program.rules) {
        Rule nr;
        nr.origin = r.origin;
        nr.head.atom = renamed_head(r.head);
        for (const auto& l : r.body) {
            if (l.kind != Literal::Kind::Update) {
                nr.body.push_back(l);
                continue;
            }
            auto std_atom = names::standardize(UpdateAtom{l.atom, l.polarity});
            sp.provenance[std_atom.predicate] = Provenance::RenamedUpdate;
            nr.body.push_back(Literal::standard(std::move(std_atom), l.negated));
        }
        if (r.is_active()) {
            const auto& a = r.head.atom;
            Literal guard = neg(names::update(opposite(*r.head.update), a.predicate), a.args);
            if (std::find(nr.body.begin(), nr.body.end(), guard) == nr.body.end()) nr.body.push_back(std::move(guard));
            sp.provenance[names::plus(a.predicate)] = Provenance::RenamedUpdate;
            sp.provenance[names::minus(a.predicate)] = Provenance::RenamedUpdate;
        }
        sp.program.rules.push_back(std::move(nr));
    }
    for (const auto& u : up.delta.updates()) {
        const auto& p = u.atom.predicate;
        sp.program.rules.push_back(make_rule(names::update(u.polarity, p), u.atom.args,
                                             {neg(names::update(opposite(u.polarity), p), u.atom.args)}));
        sp.provenance[names::plus(p)] = Provenance::RenamedUpdate;
        sp.provenance[names::minus(p)] = Provenance::RenamedUpdate;
    }
    note_user(sp);
    return sp;
}

StandardProgram rewrite(const UpdateProgram& up, RewriteMode mode) {
    return mode == RewriteMode::Standard ? rewrite_st(up) : rewrite_bm(up);
}

}  // namespace activedl
