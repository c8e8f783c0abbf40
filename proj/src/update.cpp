#include "activedl/update.hpp"

#include <algorithm>
#include <random>

#include "activedl/parser.hpp"

namespace activedl {

namespace {

bool in(const std::set<Atom>& s, const Atom& a) { return s.contains(a); }

std::size_t choose(const SelectionPolicy& policy, std::size_t n) {
    if (policy.kind == SelectionPolicy::Kind::Lexicographic || n <= 1) return 0;
    std::mt19937_64 rng(policy.seed);
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(rng);
}

}  // namespace

void UpdateOutcome::validate() const {
    for (const auto& a : certain_insert) {
        if (in(certain_delete, a))
            throw ConsistencyError("update set is not conflict-free: +" + render(a) + " and -" + render(a));
        if (in(undef_delete, a))
            throw ConsistencyError("update set is not consistent: +" + render(a) + " certain, -" + render(a) +
                                   " undefined");
    }
    for (const auto& a : certain_delete)
        if (in(undef_insert, a))
            throw ConsistencyError("update set is not consistent: -" + render(a) + " certain, +" + render(a) +
                                   " undefined");
}

bool UpdateOutcome::empty() const {
    return certain_insert.empty() && certain_delete.empty() && undef_insert.empty() && undef_delete.empty();
}

UpdateOutcome extract_updates(const Interpretation& M) {
    UpdateOutcome u;
    for (AtomId id = 0; id < M.size(); ++id) {
        const Atom& a = M.universe().at(id);
        auto parsed = names::parse_update(a.predicate);
        if (!parsed || M[id] == TruthValue::False) continue;
        Atom base{parsed->second, a.args};
        bool certain = M[id] == TruthValue::True;
        if (parsed->first == Polarity::Insert)
            (certain ? u.certain_insert : u.undef_insert).insert(std::move(base));
        else
            (certain ? u.certain_delete : u.undef_delete).insert(std::move(base));
    }
    u.validate();
    return u;
}

Database apply_updates(const UpdateOutcome& u, const Database& d) {
    u.validate();
    std::set<Atom> touched = d.true_facts();
    touched.insert(d.unknown_facts().begin(), d.unknown_facts().end());
    for (const auto* s : {&u.certain_insert, &u.certain_delete, &u.undef_insert, &u.undef_delete})
        touched.insert(s->begin(), s->end());

    Database out;
    for (const auto& p : touched) {
        const bool was_true = d.is_true(p);
        const bool was_unknown = d.is_unknown(p);
        const bool was_false = !was_true && !was_unknown;
        if (in(u.certain_insert, p) || (was_true && !in(u.certain_delete, p) && !in(u.undef_delete, p))) {
            out.add_true(p);
        } else if ((was_unknown && !in(u.certain_insert, p) && !in(u.certain_delete, p)) ||
                   (was_true && in(u.undef_delete, p)) || (was_false && in(u.undef_insert, p))) {
            out.add_unknown(p);
        }
    }
    return out;
}

Database apply_delta(const DeltaSet& delta, const Database& d) {
    UpdateOutcome u;
    for (const auto& up : delta.updates())
        (up.polarity == Polarity::Insert ? u.certain_insert : u.certain_delete).insert(up.atom);
    return apply_updates(u, d);
}

bool is_total_transformation(const Interpretation& M, const Database& d) {
    if (M.is_total()) return true;
    for (AtomId id = 0; id < M.size(); ++id) {
        if (M[id] != TruthValue::Undefined) continue;
        const Atom& a = M.universe().at(id);
        auto parsed = names::parse_update(a.predicate);
        if (!parsed) continue;
        Atom base{parsed->second, a.args};
        if (parsed->first == Polarity::Insert && !d.is_true(base)) return false;
        if (parsed->first == Polarity::Delete && !d.is_false(base)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

std::string_view to_string(SemanticsId s) {
    switch (s) {
        case SemanticsId::WS: return "ws";
        case SemanticsId::MD: return "md";
        case SemanticsId::TWFS: return "twfs";
        case SemanticsId::TMDS: return "tmds";
        case SemanticsId::UTS: return "uts";
        case SemanticsId::TS: return "ts";
        case SemanticsId::MS: return "ms";
        case SemanticsId::MSTT: return "mstt";
        case SemanticsId::WS_BM: return "ws_bm";
    }
    return "?";
}

std::optional<SemanticsId> parse_semantics(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto s : kAllSemantics)
        if (to_string(s) == lower) return s;
    return std::nullopt;
}

bool requires_total_database(SemanticsId s) {
    switch (s) {
        case SemanticsId::WS:
        case SemanticsId::MD:
        case SemanticsId::WS_BM: return false;
        default: return true;
    }
}

bool is_deterministic(SemanticsId s) {
    switch (s) {
        case SemanticsId::TS:
        case SemanticsId::MS:
        case SemanticsId::MSTT: return false;
        default: return true;
    }
}

FamilyStats FamilyStats::of(const ModelFamily& f) {
    FamilyStats s;
    s.models = f.size();
    s.well_founded = f.count(ModelClass::WellFounded);
    s.t_stable = f.count(ModelClass::TStable);
    s.m_stable = f.count(ModelClass::MStable);
    s.l_stable = f.count(ModelClass::LStable);
    s.deterministic = f.count(ModelClass::Deterministic);
    s.max_deterministic = f.count(ModelClass::MaxDeterministic);
    return s;
}

std::string_view to_string(RunStatus s) {
    return s == RunStatus::Applied ? "applied" : "rejected-unchanged";
}

RunReport run(const UpdateProgram& up, const Database& d, SemanticsId xs, const RunOptions& opts) {
    validate_program(up.program);
    validate_update_program(up, d);
    if (requires_total_database(xs) && !d.is_total())
        throw PreconditionError(std::string(to_string(xs)) + " requires a total database; input has " +
                                std::to_string(d.unknown_facts().size()) + " unknown fact(s)");

    RunReport rep;
    rep.semantics = xs;
    rep.input_db = d;
    rep.output_db = d;
    rep.policy = opts.policy;

    const bool bm = xs == SemanticsId::WS_BM;
    const auto sp = rewrite(up, bm ? RewriteMode::Bm : RewriteMode::Standard);
    const auto gp = ground(embed_database(sp.program, d), opts.grounding);
    const Database base = bm ? d : apply_delta(up.delta, d);

    auto apply_model = [&](const Interpretation& m) {
        auto u = extract_updates(m);
        auto out = apply_updates(u, base);
        if (!bm && d.is_total() && is_total_transformation(m, base) != out.is_total())
            throw InternalError("totality check disagrees with the applied database");
        return std::pair{std::move(u), std::move(out)};
    };
    auto accept = [&](const Interpretation& m) {
        auto [u, out] = apply_model(m);
        rep.chosen_model = m;
        rep.updates = std::move(u);
        rep.output_db = std::move(out);
        rep.status = RunStatus::Applied;
    };
    auto reject = [&] {
        rep.output_db = d;
        rep.status = RunStatus::RejectedUnchanged;
    };

    switch (xs) {
        case SemanticsId::WS:
        case SemanticsId::TWFS:
        case SemanticsId::WS_BM: {
            rep.eligible = 1;
            accept(well_founded(gp));
            if (xs == SemanticsId::TWFS && !rep.output_db.is_total()) reject();
            return rep;
        }
        default: break;
    }

    const ModelFamily fam = models(gp, opts.enumeration);
    rep.family_stats = FamilyStats::of(fam);

    switch (xs) {
        case SemanticsId::MD:
        case SemanticsId::TMDS: {
            rep.eligible = 1;
            accept(fam.with(ModelClass::MaxDeterministic).front()->model);
            if (xs == SemanticsId::TMDS && !rep.output_db.is_total()) reject();
            break;
        }
        case SemanticsId::UTS: {
            auto ts = fam.with(ModelClass::TStable);
            rep.eligible = ts.size();
            if (ts.size() == 1)
                accept(ts.front()->model);
            else
                reject();
            break;
        }
        case SemanticsId::TS:
        case SemanticsId::MS: {
            auto pool = fam.with(xs == SemanticsId::TS ? ModelClass::TStable : ModelClass::MStable);
            rep.eligible = pool.size();
            if (pool.empty())
                reject();
            else
                accept(pool[choose(opts.policy, pool.size())]->model);
            break;
        }
        case SemanticsId::MSTT: {
            std::vector<const ModelRecord*> pool;
            for (const auto* r : fam.with(ModelClass::MStable))
                if (apply_model(r->model).second.is_total()) pool.push_back(r);
            rep.eligible = pool.size();
            if (pool.empty())
                reject();
            else
                accept(pool[choose(opts.policy, pool.size())]->model);
            break;
        }
        default: throw InternalError("unhandled semantics");
    }
    return rep;
}

Comparison compare(const UpdateProgram& up, const Database& d, const RunOptions& opts) {
    Comparison cmp;
    RunOptions lex = opts;
    lex.policy = SelectionPolicy::lexicographic();
    for (auto xs : kAllSemantics) {
        ComparisonRow row;
        row.semantics = xs;
        try {
            row.report = run(up, d, xs, lex);
        } catch (const PreconditionError& e) {
            row.error = std::string("precondition: ") + e.what();
        } catch (const ResourceError& e) {
            row.error = std::string("resource: ") + e.what();
        } catch (const Error& e) {
            row.error = std::string("error: ") + e.what();
        }
        cmp.rows.push_back(std::move(row));
    }
    const std::size_t n = cmp.rows.size();
    cmp.leq.assign(n, std::vector<std::optional<bool>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!cmp.rows[i].report || !cmp.rows[j].report) continue;
            try {
                cmp.leq[i][j] = info_leq(cmp.rows[i].report->output_db, cmp.rows[j].report->output_db);
            } catch (const SchemaError&) {
            }
        }
    return cmp;
}

}  // namespace activedl
