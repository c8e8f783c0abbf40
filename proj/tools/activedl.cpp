// activedl: command-line front end.
//
// exit status: 0 ok/applied, 1 input or usage error, 2 rejected (database
// unchanged), 3 precondition, 4 enumeration cap, 5 internal error

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "activedl/parser.hpp"
#include "activedl/report.hpp"
#include "activedl/rewriter.hpp"
#include "activedl/semantics.hpp"
#include "activedl/testing/fixtures.hpp"
#include "activedl/update.hpp"

using namespace activedl;

namespace {

struct Inputs {
    std::string program;
    std::string db;
    std::string delta;
    std::string mode = "st";
    std::string semantics;
    std::string choose = "lex";
    std::uint64_t seed = 0;
    std::size_t cap = EnumerationOptions{}.cap;
    bool json = false;
    bool full = false;
    std::string out;
    std::string corpus;
    std::uint64_t selftest_seed = testing::SuiteOptions{}.seed;
};

UpdateProgram load_update_program(const Inputs& in) {
    UpdateProgram up;
    up.program = parse_program(read_source(in.program));
    if (!in.delta.empty()) up.delta = parse_delta(read_source(in.delta));
    return up;
}

Database load_database(const Inputs& in) {
    if (in.db.empty()) return {};
    return parse_database(read_source(in.db));
}

RewriteMode mode_of(const Inputs& in) { return in.mode == "bm" ? RewriteMode::Bm : RewriteMode::Standard; }

// Plain programs are used as they are; update programs are rewritten first.
GroundProgram build_ground(const Inputs& in) {
    UpdateProgram up = load_update_program(in);
    Database db = load_database(in);
    validate_update_program(up, db);
    Program p = (up.program.is_active() || !up.delta.empty()) ? rewrite(up, mode_of(in)).program : up.program;
    return ground(embed_database(p, db), GroundOptions{!in.full, {}});
}

void emit(const Inputs& in, const std::string& text) {
    if (in.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(in.out, std::ios::binary);
    if (!f) throw Error("cannot write " + in.out);
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_rewrite(const Inputs& in) {
    UpdateProgram up = load_update_program(in);
    StandardProgram sp = rewrite(up, mode_of(in));
    if (in.json) {
        Json j;
        j["mode"] = in.mode;
        j["program"] = render(sp.program);
        Json prov = Json::object();
        for (const auto& [pred, p] : sp.provenance) prov[pred] = to_string(p);
        j["provenance"] = std::move(prov);
        emit(in, dump(j));
    } else {
        emit(in, render(sp.program));
    }
    return 0;
}

int cmd_ground(const Inputs& in) {
    GroundProgram gp = build_ground(in);
    if (in.json) {
        Json j;
        j["atoms"] = gp.atom_count();
        j["rules"] = gp.rules.size();
        j["program"] = render(gp.to_program());
        emit(in, dump(j));
    } else {
        emit(in, render(gp.to_program()));
    }
    return 0;
}

int cmd_wf(const Inputs& in) {
    GroundProgram gp = build_ground(in);
    Interpretation wf = well_founded(gp);
    if (in.json) {
        Json j;
        j["model"] = render(wf);
        j["undefined"] = wf.undefined_count();
        j["total"] = wf.is_total();
        emit(in, dump(j));
    } else {
        emit(in, render(wf) + "\n");
    }
    return 0;
}

int cmd_models(const Inputs& in) {
    GroundProgram gp = build_ground(in);
    ModelFamily fam = models(gp, EnumerationOptions{in.cap});
    if (in.json) {
        emit(in, dump(to_json(fam)));
        return 0;
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto& r = fam.records[i];
        os << "M" << (i + 1) << " [" << r.flags.str() << "] " << render(r.model) << "\n";
    }
    emit(in, os.str());
    return 0;
}

RunOptions run_options(const Inputs& in) {
    RunOptions ro;
    ro.enumeration.cap = in.cap;
    ro.grounding.prune = !in.full;
    if (in.choose == "random") ro.policy = SelectionPolicy::seeded(in.seed);
    return ro;
}

int cmd_apply(const Inputs& in) {
    UpdateProgram up = load_update_program(in);
    Database db = load_database(in);
    auto xs = parse_semantics(in.semantics);
    if (!xs) throw ValidationError("unknown semantics '" + in.semantics + "'");
    RunReport rep = run(up, db, *xs, run_options(in));
    if (in.json) {
        emit(in, dump(to_json(rep)));
    } else {
        std::ostringstream os;
        os << "% semantics: " << to_string(rep.semantics) << "\n";
        os << "% status: " << to_string(rep.status) << "\n";
        os << "% policy: "
           << (rep.policy.kind == SelectionPolicy::Kind::Seeded ? "random seed " + std::to_string(rep.policy.seed)
                                                                 : std::string("lex"))
           << "\n";
        if (rep.family_stats) {
            const auto& s = *rep.family_stats;
            os << "% models: " << s.models << " (t-stable " << s.t_stable << ", m-stable " << s.m_stable
               << ", deterministic " << s.deterministic << "), eligible " << rep.eligible << "\n";
        }
        os << render(rep.output_db);
        emit(in, os.str());
    }
    return rep.status == RunStatus::Applied ? 0 : 2;
}

int cmd_compare(const Inputs& in) {
    UpdateProgram up = load_update_program(in);
    Database db = load_database(in);
    Comparison cmp = compare(up, db, run_options(in));
    if (in.json) {
        emit(in, dump(to_json(cmp)));
        return 0;
    }
    std::ostringstream os;
    for (const auto& row : cmp.rows) {
        os << to_string(row.semantics) << ": ";
        if (!row.report) {
            os << row.error << "\n";
            continue;
        }
        os << to_string(row.report->status) << " |";
        std::string db_text = render(row.report->output_db);
        if (!db_text.empty()) db_text.pop_back();
        for (char& ch : db_text)
            if (ch == '\n') ch = ' ';
        os << (db_text.empty() ? "" : " ") << db_text << "\n";
    }
    os << "% leq[i][j]: output i is below output j\n% " << std::string(6, ' ');
    for (const auto& row : cmp.rows) os << std::setw(6) << to_string(row.semantics);
    os << "\n";
    for (std::size_t i = 0; i < cmp.rows.size(); ++i) {
        os << "% " << std::left << std::setw(6) << to_string(cmp.rows[i].semantics) << std::right;
        for (const auto& v : cmp.leq[i]) os << std::setw(6) << (!v ? '-' : *v ? 'y' : 'n');
        os << "\n";
    }
    emit(in, os.str());
    return 0;
}

int cmd_selftest(const Inputs& in) {
    testing::SelftestOptions opts;
    if (!in.corpus.empty()) opts.corpus_dir = in.corpus;
    opts.seed = in.selftest_seed;
    return testing::selftest(opts, std::cout) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Declarative semantics for active database rules"};
    app.require_subcommand(1);
    Inputs in;

    auto add_io = [&](CLI::App* sub, bool need_program, bool with_db) {
        auto* p = sub->add_option("-p,--program", in.program, "program (.adl)")->check(CLI::ExistingFile);
        if (need_program) p->required();
        if (with_db) sub->add_option("-d,--db", in.db, "database (.adb)")->check(CLI::ExistingFile);
        sub->add_option("-u,--delta", in.delta, "input updates (.adu)")->check(CLI::ExistingFile);
        sub->add_flag("--json", in.json, "machine-readable output");
        sub->add_option("--out", in.out, "write output to a file");
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", in.mode, "rewriting: st or bm")->check(CLI::IsMember({"st", "bm"}));
    };
    auto add_cap = [&](CLI::App* sub) {
        sub->add_option("--cap", in.cap, "max atoms left undefined by the well-founded model before enumeration");
    };

    auto* rw = app.add_subcommand("rewrite", "print the rewritten standard program");
    add_io(rw, true, false);
    add_mode(rw);

    auto* gr = app.add_subcommand("ground", "print the ground program");
    add_io(gr, true, true);
    add_mode(gr);
    gr->add_flag("--full", in.full, "instantiate over all constants, no pruning");

    auto* wf = app.add_subcommand("wf", "print the well-founded model");
    add_io(wf, true, true);
    add_mode(wf);

    auto* md = app.add_subcommand("models", "list partial stable models with their classes");
    add_io(md, true, true);
    add_mode(md);
    add_cap(md);

    auto add_policy = [&](CLI::App* sub) {
        sub->add_option("--choose", in.choose, "model selection: lex or random")
            ->check(CLI::IsMember({"lex", "random"}));
        sub->add_option("--seed", in.seed, "seed for --choose random");
    };

    auto* ap = app.add_subcommand("apply", "apply an update program to a database");
    add_io(ap, true, true);
    ap->add_option("--semantics", in.semantics, "ws md twfs tmds uts ts ms mstt ws_bm")->required();
    add_policy(ap);
    add_cap(ap);

    auto* cp = app.add_subcommand("compare", "run every semantics on the same input");
    add_io(cp, true, true);
    add_cap(cp);

    auto* st = app.add_subcommand("selftest", "run the fixture corpus and property suites");
    st->add_option("--corpus", in.corpus, "corpus directory (default: embedded copy)");
    st->add_option("--seed", in.selftest_seed, "seed for the randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*rw) return cmd_rewrite(in);
        if (*gr) return cmd_ground(in);
        if (*wf) return cmd_wf(in);
        if (*md) return cmd_models(in);
        if (*ap) return cmd_apply(in);
        if (*cp) return cmd_compare(in);
        if (*st) return cmd_selftest(in);
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 3;
    } catch (const ResourceError& e) {
        std::cerr << "resource: " << e.what() << "\n";
        return 4;
    } catch (const InternalError& e) {
        std::cerr << "internal: " << e.what() << "\n";
        return 5;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
