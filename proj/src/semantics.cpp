#include "activedl/semantics.hpp"

#include <algorithm>
#include <functional>

#include "activedl/parser.hpp"

namespace activedl {

namespace {

// Occurrence lists shared by the counter-based fixpoints below.
struct Occurrences {
    std::vector<std::vector<std::size_t>> pos;  // atom -> rules with it in the positive body

    explicit Occurrences(const GroundProgram& p) : pos(p.atom_count()) {
        for (std::size_t r = 0; r < p.rules.size(); ++r)
            for (AtomId a : p.rules[r].pos) pos[a].push_back(r);
    }
};

// Least model of the positive rules selected by `usable`.
std::vector<bool> horn_least(const GroundProgram& p, const Occurrences& occ,
                             const std::vector<bool>& usable) {
    std::vector<bool> in(p.atom_count(), false);
    std::vector<std::size_t> missing(p.rules.size());
    std::vector<AtomId> queue;
    for (std::size_t r = 0; r < p.rules.size(); ++r) {
        missing[r] = p.rules[r].pos.size();
        if (usable[r] && missing[r] == 0 && !in[p.rules[r].head]) {
            in[p.rules[r].head] = true;
            queue.push_back(p.rules[r].head);
        }
    }
    while (!queue.empty()) {
        AtomId a = queue.back();
        queue.pop_back();
        for (std::size_t r : occ.pos[a]) {
            if (--missing[r] == 0 && usable[r] && !in[p.rules[r].head]) {
                in[p.rules[r].head] = true;
                queue.push_back(p.rules[r].head);
            }
        }
    }
    return in;
}

// Least model where "not a" holds iff a is not in j.
std::vector<bool> gamma(const GroundProgram& p, const Occurrences& occ, const std::vector<bool>& j) {
    std::vector<bool> usable(p.rules.size());
    for (std::size_t r = 0; r < p.rules.size(); ++r)
        usable[r] = std::none_of(p.rules[r].neg.begin(), p.rules[r].neg.end(), [&](AtomId a) { return j[a]; });
    return horn_least(p, occ, usable);
}

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

void require_universe(const GroundProgram& p, const Interpretation& I) {
    if (I.universe_ptr() != p.atoms && !(I.universe() == *p.atoms))
        throw UniverseError("interpretation is not over the program's atoms");
}

void sort_family(ModelFamily& f) {
    std::vector<std::pair<std::string, ModelRecord>> keyed;
    keyed.reserve(f.records.size());
    for (auto& r : f.records) keyed.emplace_back(render(r.model), std::move(r));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    f.records.clear();
    for (auto& [key, r] : keyed) f.records.push_back(std::move(r));
}

ModelRecord record_of(Interpretation m) {
    std::size_t u = m.undefined_count();
    return ModelRecord{std::move(m), {}, u};
}

void check_cap(const Interpretation& wf, const EnumerationOptions& opts) {
    if (wf.undefined_count() > opts.cap)
        throw ResourceError("well-founded model leaves " + std::to_string(wf.undefined_count()) +
                            " atoms undefined, above the enumeration cap of " + std::to_string(opts.cap));
}

}  // namespace

std::vector<AtomId> immediate_consequence(const GroundProgram& p, const Interpretation& I) {
    require_universe(p, I);
    std::vector<bool> out(p.atom_count(), false);
    for (const auto& r : p.rules) {
        bool fires = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return I[a] == TruthValue::True; }) &&
                     std::all_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return I[a] == TruthValue::False; });
        if (fires) out[r.head] = true;
    }
    std::vector<AtomId> ids;
    for (AtomId a = 0; a < out.size(); ++a)
        if (out[a]) ids.push_back(a);
    return ids;
}

std::vector<AtomId> greatest_unfounded(const GroundProgram& p, const Interpretation& I) {
    require_universe(p, I);
    Occurrences occ(p);
    std::vector<bool> usable(p.rules.size());
    for (std::size_t r = 0; r < p.rules.size(); ++r) {
        const auto& rule = p.rules[r];
        usable[r] = std::none_of(rule.pos.begin(), rule.pos.end(), [&](AtomId a) { return I[a] == TruthValue::False; }) &&
                    std::none_of(rule.neg.begin(), rule.neg.end(), [&](AtomId a) { return I[a] == TruthValue::True; });
    }
    auto founded = horn_least(p, occ, usable);
    std::vector<AtomId> ids;
    for (AtomId a = 0; a < founded.size(); ++a)
        if (!founded[a]) ids.push_back(a);
    return ids;
}

Interpretation wf_step(const GroundProgram& p, const Interpretation& I) {
    Interpretation out(p.atoms);
    for (AtomId a : immediate_consequence(p, I)) out.set(a, TruthValue::True);
    for (AtomId a : greatest_unfounded(p, I)) {
        if (out[a] == TruthValue::True)
            throw InternalError("atom " + render(p.atoms->at(a)) + " is both derived and unfounded");
        out.set(a, TruthValue::False);
    }
    return out;
}

Interpretation well_founded(const GroundProgram& p) {
    Interpretation cur(p.atoms);
    for (;;) {
        Interpretation next = wf_step(p, cur);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

ReductProgram gl_reduct(const GroundProgram& p, const Interpretation& M) {
    require_universe(p, M);
    ReductProgram out{p.atoms, {}};
    out.rules.reserve(p.rules.size());
    for (const auto& r : p.rules) {
        ReductRule rr{r.head, r.pos, {}};
        for (AtomId a : r.neg) rr.constants.push_back(negate(M[a]));
        out.rules.push_back(std::move(rr));
    }
    return out;
}

Interpretation least_3v_model(const ReductProgram& rp) {
    // a >= v iff derivable with the rules whose constants are all >= v.
    GroundProgram shape{rp.atoms, {}};
    for (const auto& r : rp.rules) shape.rules.push_back(GroundRule{r.head, r.atoms, {}});
    Occurrences occ(shape);
    auto at_least = [&](TruthValue v) {
        std::vector<bool> usable(rp.rules.size());
        for (std::size_t i = 0; i < rp.rules.size(); ++i)
            usable[i] = std::all_of(rp.rules[i].constants.begin(), rp.rules[i].constants.end(),
                                    [&](TruthValue c) { return c >= v; });
        return horn_least(shape, occ, usable);
    };
    auto t = at_least(TruthValue::True);
    auto u = at_least(TruthValue::Undefined);
    Interpretation out(rp.atoms, TruthValue::False);
    for (AtomId a = 0; a < out.size(); ++a) {
        if (t[a])
            out.set(a, TruthValue::True);
        else if (u[a])
            out.set(a, TruthValue::Undefined);
    }
    return out;
}

bool is_pstable(const GroundProgram& p, const Interpretation& M) {
    return least_3v_model(gl_reduct(p, M)) == M;
}

// ---------------------------------------------------------------------------

std::string ModelFlags::str() const {
    std::string s;
    for (auto c : kAllModelClasses)
        if (has(c)) {
            if (!s.empty()) s += ',';
            s += to_string(c);
        }
    return s;
}

std::string_view to_string(ModelClass c) {
    switch (c) {
        case ModelClass::WellFounded: return "well-founded";
        case ModelClass::TStable: return "t-stable";
        case ModelClass::MStable: return "m-stable";
        case ModelClass::LStable: return "l-stable";
        case ModelClass::Deterministic: return "deterministic";
        case ModelClass::MaxDeterministic: return "max-deterministic";
    }
    return "?";
}

std::size_t ModelFamily::count(ModelClass c) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [&](const ModelRecord& r) { return r.flags.has(c); }));
}

std::vector<const ModelRecord*> ModelFamily::with(ModelClass c) const {
    std::vector<const ModelRecord*> out;
    for (const auto& r : records)
        if (r.flags.has(c)) out.push_back(&r);
    return out;
}

ModelFamily enumerate_pstable(const GroundProgram& p, const EnumerationOptions& opts) {
    const Interpretation wf = well_founded(p);
    check_cap(wf, opts);
    const std::size_t n = p.atom_count();
    Occurrences occ(p);

    std::vector<bool> lo(n), hi(n);
    for (AtomId a = 0; a < n; ++a) {
        lo[a] = wf[a] == TruthValue::True;
        hi[a] = wf[a] != TruthValue::False;
    }

    ModelFamily fam;
    std::function<void(std::vector<bool>, std::vector<bool>)> search = [&](std::vector<bool> l,
                                                                          std::vector<bool> h) {
        for (;;) {
            auto pos_hi = gamma(p, occ, l);
            auto pos_lo = gamma(p, occ, h);
            auto t_lo = gamma(p, occ, pos_hi);
            auto t_hi = gamma(p, occ, pos_lo);
            bool changed = false;
            for (AtomId a = 0; a < n; ++a) {
                if (t_lo[a] && !l[a]) {
                    l[a] = true;
                    changed = true;
                }
                if (h[a] && (!t_hi[a] || !pos_hi[a])) {
                    h[a] = false;
                    changed = true;
                }
            }
            if (!subset(l, h)) return;
            if (!changed) break;
        }
        AtomId pick = static_cast<AtomId>(n);
        for (AtomId a = 0; a < n; ++a)
            if (h[a] && !l[a]) {
                pick = a;
                break;
            }
        if (pick == n) {
            auto pos = gamma(p, occ, l);
            if (gamma(p, occ, pos) != l || !subset(l, pos)) return;
            Interpretation m(p.atoms, TruthValue::False);
            for (AtomId a = 0; a < n; ++a)
                if (l[a])
                    m.set(a, TruthValue::True);
                else if (pos[a])
                    m.set(a, TruthValue::Undefined);
            fam.records.push_back(record_of(std::move(m)));
            return;
        }
        auto l2 = l;
        l2[pick] = true;
        search(std::move(l2), h);
        h[pick] = false;
        search(std::move(l), std::move(h));
    };
    search(lo, hi);
    sort_family(fam);
    return fam;
}

ModelFamily enumerate_pstable_exhaustive(const GroundProgram& p, const EnumerationOptions& opts) {
    const Interpretation wf = well_founded(p);
    check_cap(wf, opts);
    const auto open = wf.atoms_with(TruthValue::Undefined);
    ModelFamily fam;
    Interpretation m = wf;
    std::function<void(std::size_t)> step = [&](std::size_t k) {
        if (k == open.size()) {
            if (is_pstable(p, m)) fam.records.push_back(record_of(m));
            return;
        }
        for (auto v : {TruthValue::False, TruthValue::Undefined, TruthValue::True}) {
            m.set(open[k], v);
            step(k + 1);
        }
        m.set(open[k], TruthValue::Undefined);
    };
    step(0);
    sort_family(fam);
    return fam;
}

ModelFamily classify(const GroundProgram& p, ModelFamily family) {
    auto& recs = family.records;
    if (recs.empty()) throw InternalError("empty partial stable model family");
    for (auto& r : recs) r.flags = {};

    Interpretation bottom = recs.front().model;
    for (const auto& r : recs) bottom = bottom.meet(r.model);
    if (!(bottom == well_founded(p)))
        throw InternalError("intersection of partial stable models differs from the well-founded model");

    bool found_wf = false;
    for (auto& r : recs) {
        if (r.model == bottom) {
            r.flags.set(ModelClass::WellFounded);
            found_wf = true;
        }
        if (r.undefined_count == 0) r.flags.set(ModelClass::TStable);
    }
    if (!found_wf) throw InternalError("well-founded model missing from the family");

    for (std::size_t i = 0; i < recs.size(); ++i) {
        bool maximal = true;
        bool det = true;
        for (std::size_t j = 0; j < recs.size(); ++j) {
            if (i == j) continue;
            if (recs[i].model.subset_of(recs[j].model)) maximal = false;
            if (!recs[i].model.compatible_with(recs[j].model)) det = false;
        }
        if (maximal) recs[i].flags.set(ModelClass::MStable);
        if (det) recs[i].flags.set(ModelClass::Deterministic);
    }

    auto undefined_subset = [](const Interpretation& a, const Interpretation& b) {
        for (AtomId x = 0; x < a.size(); ++x)
            if (a[x] == TruthValue::Undefined && b[x] != TruthValue::Undefined) return false;
        return true;
    };
    for (auto& r : recs) {
        if (!r.flags.has(ModelClass::MStable)) continue;
        bool minimal = true;
        for (const auto& o : recs) {
            if (&o == &r || !o.flags.has(ModelClass::MStable)) continue;
            if (undefined_subset(o.model, r.model) && o.undefined_count < r.undefined_count) minimal = false;
        }
        if (minimal) r.flags.set(ModelClass::LStable);
    }

    ModelRecord* top = nullptr;
    for (auto& r : recs) {
        if (!r.flags.has(ModelClass::Deterministic)) continue;
        bool above_all = true;
        for (const auto& o : recs)
            if (o.flags.has(ModelClass::Deterministic) && !o.model.subset_of(r.model)) above_all = false;
        if (above_all) {
            if (top) throw InternalError("max-deterministic model is not unique");
            top = &r;
        }
    }
    if (!top) throw InternalError("no max-deterministic model");
    top->flags.set(ModelClass::MaxDeterministic);
    return family;
}

ModelFamily models(const GroundProgram& p, const EnumerationOptions& opts) {
    return classify(p, enumerate_pstable(p, opts));
}

Interpretation max_deterministic(const GroundProgram& p, const EnumerationOptions& opts) {
    auto fam = models(p, opts);
    return fam.with(ModelClass::MaxDeterministic).front()->model;
}

}  // namespace activedl
