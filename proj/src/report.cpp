#include "activedl/report.hpp"

#include "activedl/parser.hpp"

namespace activedl {

namespace {

Json atoms(const std::set<Atom>& s) {
    Json out = Json::array();
    for (const auto& a : s) out.push_back(render(a));
    return out;
}

}  // namespace

Json to_json(const Database& d) {
    Json j;
    j["true"] = atoms(d.true_facts());
    j["unknown"] = atoms(d.unknown_facts());
    return j;
}

Json to_json(const UpdateOutcome& u) {
    Json j;
    j["certain_insert"] = atoms(u.certain_insert);
    j["certain_delete"] = atoms(u.certain_delete);
    j["undef_insert"] = atoms(u.undef_insert);
    j["undef_delete"] = atoms(u.undef_delete);
    return j;
}

Json to_json(const FamilyStats& s) {
    Json j;
    j["models"] = s.models;
    j["well_founded"] = s.well_founded;
    j["t_stable"] = s.t_stable;
    j["m_stable"] = s.m_stable;
    j["l_stable"] = s.l_stable;
    j["deterministic"] = s.deterministic;
    j["max_deterministic"] = s.max_deterministic;
    return j;
}

Json to_json(const ModelFamily& f) {
    Json j;
    j["counts"] = to_json(FamilyStats::of(f));
    Json list = Json::array();
    for (const auto& r : f.records) {
        Json m;
        m["model"] = render(r.model);
        Json flags = Json::array();
        for (auto c : kAllModelClasses)
            if (r.flags.has(c)) flags.push_back(to_string(c));
        m["flags"] = std::move(flags);
        m["undefined"] = r.undefined_count;
        list.push_back(std::move(m));
    }
    j["models"] = std::move(list);
    return j;
}

Json to_json(const RunReport& r) {
    Json j;
    j["semantics"] = to_string(r.semantics);
    j["status"] = to_string(r.status);
    Json policy;
    if (r.policy.kind == SelectionPolicy::Kind::Seeded) {
        policy["choose"] = "random";
        policy["seed"] = r.policy.seed;
    } else {
        policy["choose"] = "lex";
        policy["seed"] = nullptr;
    }
    j["policy"] = std::move(policy);
    j["input"] = to_json(r.input_db);
    j["output"] = to_json(r.output_db);
    j["updates"] = to_json(r.updates);
    j["eligible"] = r.eligible;
    j["model_counts"] = r.family_stats ? to_json(*r.family_stats) : Json(nullptr);
    j["chosen_model"] = r.chosen_model ? Json(render(*r.chosen_model)) : Json(nullptr);
    return j;
}

Json to_json(const Comparison& c) {
    Json j;
    Json rows = Json::array();
    Json names = Json::array();
    for (const auto& row : c.rows) {
        names.push_back(to_string(row.semantics));
        Json r;
        r["semantics"] = to_string(row.semantics);
        if (row.report)
            r["report"] = to_json(*row.report);
        else
            r["error"] = row.error;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    Json leq = Json::array();
    for (const auto& line : c.leq) {
        Json l = Json::array();
        for (const auto& v : line) l.push_back(v ? Json(*v) : Json(nullptr));
        leq.push_back(std::move(l));
    }
    j["leq_order"] = std::move(names);
    j["leq"] = std::move(leq);
    return j;
}

}  // namespace activedl
