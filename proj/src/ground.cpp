#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "activedl/parser.hpp"
#include "activedl/rewriter.hpp"

namespace activedl {

namespace {

using Binding = std::map<std::string, std::string, std::less<>>;

std::optional<std::string> resolve(const Term& t, const Binding& b) {
    if (t.is_constant()) return t.name;
    auto it = b.find(t.name);
    if (it == b.end()) return std::nullopt;
    return it->second;
}

Atom instantiate(const Atom& a, const Binding& b) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) {
        auto v = resolve(t, b);
        if (!v) throw ValidationError("variable " + t.name + " is unbound in " + render(a));
        out.args.push_back(Term::constant(*v));
    }
    return out;
}

// false if the builtin is false, nullopt if not yet decidable
std::optional<bool> eval_builtin(const Literal& l, const Binding& b) {
    auto x = resolve(l.left, b);
    auto y = resolve(l.right, b);
    if (!x || !y) return std::nullopt;
    bool same = *x == *y;
    return l.op == BuiltinOp::Eq ? same : !same;
}

bool unify(const Atom& pattern, const Atom& fact, Binding& b, std::vector<std::string>& added) {
    if (pattern.arity() != fact.arity()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& t = pattern.args[i];
        const std::string& c = fact.args[i].name;
        if (t.is_constant()) {
            if (t.name != c) return false;
            continue;
        }
        auto it = b.find(t.name);
        if (it == b.end()) {
            b.emplace(t.name, c);
            added.push_back(t.name);
        } else if (it->second != c) {
            return false;
        }
    }
    return true;
}

using Index = std::map<std::string, std::vector<Atom>, std::less<>>;

// Enumerates bindings of r's positive standard literals against idx, with
// builtins checked as soon as they are decidable.
void join(const Rule& r, const Index& idx, const std::function<void(const Binding&)>& emit) {
    std::vector<const Literal*> positives;
    std::vector<const Literal*> builtins;
    for (const auto& l : r.body) {
        if (l.kind == Literal::Kind::Update)
            throw ValidationError("cannot ground update literal " + render(l) + "; rewrite first");
        if (l.is_builtin())
            builtins.push_back(&l);
        else if (!l.negated)
            positives.push_back(&l);
    }
    Binding b;
    std::function<void(std::size_t)> step = [&](std::size_t k) {
        for (const auto* bl : builtins)
            if (eval_builtin(*bl, b) == false) return;
        if (k == positives.size()) {
            for (const auto* bl : builtins)
                if (!eval_builtin(*bl, b))
                    throw ValidationError("unsafe rule: " + render(r));
            emit(b);
            return;
        }
        auto it = idx.find(positives[k]->atom.predicate);
        if (it == idx.end()) return;
        for (const auto& fact : it->second) {
            std::vector<std::string> added;
            if (unify(positives[k]->atom, fact, b, added)) step(k + 1);
            for (const auto& v : added) b.erase(v);
        }
    };
    step(0);
}

std::set<std::string> rule_variables(const Rule& r) {
    std::set<std::string> out;
    auto add = [&](const Term& t) {
        if (t.is_variable()) out.insert(t.name);
    };
    for (const auto& t : r.head.atom.args) add(t);
    for (const auto& l : r.body) {
        if (l.is_builtin()) {
            add(l.left);
            add(l.right);
        } else {
            for (const auto& t : l.atom.args) add(t);
        }
    }
    return out;
}

struct Instance {
    Atom head;
    std::vector<Atom> pos;
    std::vector<Atom> neg;

    friend auto operator<=>(const Instance&, const Instance&) = default;
};

std::optional<Instance> make_instance(const Rule& r, const Binding& b) {
    Instance inst;
    inst.head = instantiate(r.head.atom, b);
    for (const auto& l : r.body) {
        if (l.is_builtin()) {
            auto v = eval_builtin(l, b);
            if (!v) throw ValidationError("unsafe rule: " + render(r));
            if (!*v) return std::nullopt;
            continue;
        }
        (l.negated ? inst.neg : inst.pos).push_back(instantiate(l.atom, b));
    }
    return inst;
}

}  // namespace

Program GroundProgram::to_program() const {
    Program p;
    for (const auto& gr : rules) {
        Rule r;
        r.head.atom = atoms->at(gr.head);
        for (AtomId a : gr.pos) r.body.push_back(Literal::standard(atoms->at(a)));
        for (AtomId a : gr.neg) r.body.push_back(Literal::standard(atoms->at(a), true));
        p.rules.push_back(std::move(r));
    }
    return p;
}

GroundProgram ground(const Program& p, const GroundOptions& opts) {
    for (const auto& r : p.rules)
        if (r.head.is_update())
            throw ValidationError("cannot ground active rule " + render(r) + "; rewrite first");

    std::set<Instance> instances;

    if (opts.prune) {
        // Possibly-true atoms: least model of the positive projection.
        std::set<Atom> possible;
        Index idx;
        for (bool changed = true; changed;) {
            changed = false;
            std::vector<Atom> fresh;
            for (const auto& r : p.rules)
                join(r, idx, [&](const Binding& b) {
                    auto inst = make_instance(r, b);
                    if (inst && !possible.contains(inst->head)) fresh.push_back(inst->head);
                });
            for (auto& a : fresh)
                if (possible.insert(a).second) {
                    idx[a.predicate].push_back(a);
                    changed = true;
                }
        }
        for (const auto& r : p.rules)
            join(r, idx, [&](const Binding& b) {
                if (auto inst = make_instance(r, b)) instances.insert(std::move(*inst));
            });
    } else {
        std::set<std::string> constants = p.constants();
        constants.insert(opts.extra_constants.begin(), opts.extra_constants.end());
        std::vector<std::string> domain(constants.begin(), constants.end());
        for (const auto& r : p.rules) {
            auto vars = rule_variables(r);
            std::vector<std::string> vs(vars.begin(), vars.end());
            if (!vs.empty() && domain.empty()) continue;
            Binding b;
            std::function<void(std::size_t)> step = [&](std::size_t k) {
                if (k == vs.size()) {
                    if (auto inst = make_instance(r, b)) instances.insert(std::move(*inst));
                    return;
                }
                for (const auto& c : domain) {
                    b[vs[k]] = c;
                    step(k + 1);
                }
                b.erase(vs[k]);
            };
            step(0);
        }
    }

    std::set<Atom> universe;
    for (const auto& inst : instances) {
        universe.insert(inst.head);
        universe.insert(inst.pos.begin(), inst.pos.end());
        universe.insert(inst.neg.begin(), inst.neg.end());
    }
    auto table = std::make_shared<AtomTable>(universe);
    std::set<GroundRule> rules;
    for (const auto& inst : instances) {
        GroundRule gr;
        gr.head = *table->find(inst.head);
        for (const auto& a : inst.pos) gr.pos.push_back(*table->find(a));
        for (const auto& a : inst.neg) gr.neg.push_back(*table->find(a));
        std::sort(gr.pos.begin(), gr.pos.end());
        gr.pos.erase(std::unique(gr.pos.begin(), gr.pos.end()), gr.pos.end());
        std::sort(gr.neg.begin(), gr.neg.end());
        gr.neg.erase(std::unique(gr.neg.begin(), gr.neg.end()), gr.neg.end());
        rules.insert(std::move(gr));
    }
    GroundProgram gp;
    gp.atoms = std::move(table);
    gp.rules.assign(rules.begin(), rules.end());
    return gp;
}

}  // namespace activedl
