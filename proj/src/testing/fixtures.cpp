#include "activedl/testing/fixtures.hpp"

#include <chrono>
#include <filesystem>
#include <json.hpp>

#include "activedl/parser.hpp"
#include "activedl/semantics.hpp"
#include "activedl/update.hpp"

namespace activedl::testing {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string diff_text(const std::string& expected, const std::string& actual) {
    return "expected:\n" + expected + (expected.ends_with('\n') ? "" : "\n") + "actual:\n" + actual +
           (actual.ends_with('\n') ? "" : "\n");
}

SourceText source(const Corpus& c, const std::string& path) { return SourceText(c.text(path), path); }

UpdateProgram load_update_program(const Corpus& c, const json& f) {
    UpdateProgram up;
    up.program = parse_program(source(c, f.at("program")));
    if (f.contains("delta")) up.delta = parse_delta(source(c, f.at("delta")));
    return up;
}

Database load_database(const Corpus& c, const json& f) {
    if (!f.contains("database")) return {};
    return parse_database(source(c, f.at("database")));
}

SelectionPolicy policy_of(const json& run) {
    if (run.value("choose", "lex") == "random") return SelectionPolicy::seeded(run.at("seed").get<std::uint64_t>());
    return SelectionPolicy::lexicographic();
}

void check_fixture(const Corpus& c, const json& f, std::vector<std::string>& failed) {
    const std::string name = f.at("name");
    UpdateProgram up = load_update_program(c, f);
    Database db = load_database(c, f);

    if (f.contains("rewrite")) {
        for (const auto& [mode, path] : f.at("rewrite").items()) {
            auto rm = mode == "bm" ? RewriteMode::Bm : RewriteMode::Standard;
            std::string got = render(rewrite(up, rm).program);
            const std::string& want = c.text(path);
            if (got != want) failed.push_back(name + ": " + mode + " rewrite differs from " + std::string(path) + "\n" + diff_text(want, got));
        }
    }

    if (f.contains("models")) {
        GroundProgram gp = ground(embed_database(up.program, db));
        ModelFamily fam = models(gp);
        json got = json::array();
        for (const auto& r : fam.records) {
            json flags = json::array();
            for (auto k : kAllModelClasses)
                if (r.flags.has(k)) flags.push_back(to_string(k));
            got.push_back({{"model", render(r.model)}, {"flags", flags}});
        }
        if (got != f.at("models"))
            failed.push_back(name + ": model family differs\n" + diff_text(f.at("models").dump(1), got.dump(1)));
        auto slow = enumerate_pstable_exhaustive(gp);
        std::vector<std::string> a, b;
        for (const auto& r : fam.records) a.push_back(render(r.model));
        for (const auto& r : slow.records) b.push_back(render(r.model));
        if (a != b) failed.push_back(name + ": exhaustive enumeration disagrees with search");
    }

    if (f.contains("runs")) {
        for (const auto& run_spec : f.at("runs")) {
            auto xs = parse_semantics(run_spec.at("semantics").get<std::string>());
            if (!xs) {
                failed.push_back(name + ": unknown semantics " + run_spec.at("semantics").dump());
                continue;
            }
            RunOptions ro;
            ro.policy = policy_of(run_spec);
            const std::string tag = name + " [" + run_spec.at("semantics").get<std::string>() +
                                    (ro.policy.kind == SelectionPolicy::Kind::Seeded
                                         ? " seed " + std::to_string(ro.policy.seed)
                                         : std::string()) +
                                    "]: ";
            if (run_spec.contains("error")) {
                try {
                    run(up, db, *xs, ro);
                    failed.push_back(tag + "expected " + run_spec.at("error").get<std::string>() + " error");
                } catch (const PreconditionError&) {
                    if (run_spec.at("error") != "precondition") failed.push_back(tag + "unexpected precondition error");
                }
                continue;
            }
            RunReport rep = run(up, db, *xs, ro);
            if (std::string(to_string(rep.status)) != run_spec.at("status").get<std::string>())
                failed.push_back(tag + "status " + std::string(to_string(rep.status)));
            std::string got = render(rep.output_db);
            const std::string want = run_spec.at("output");
            if (got != want) failed.push_back(tag + "output differs\n" + diff_text(want, got));
        }
    }
}

}  // namespace

Corpus Corpus::embedded() {
    Corpus c;
    c.origin_ = "<embedded>";
    for (const auto& f : embedded_corpus()) c.files_.emplace(std::string(f.path), std::string(f.text));
    return c;
}

Corpus Corpus::from_directory(const std::string& dir) {
    Corpus c;
    c.origin_ = dir;
    if (!fs::is_directory(dir)) throw Error("corpus directory not found: " + dir);
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        auto ext = e.path().extension().string();
        if (ext != ".adl" && ext != ".adb" && ext != ".adu" && ext != ".json") continue;
        auto rel = fs::relative(e.path(), dir).generic_string();
        c.files_.emplace(rel, read_source(e.path().string()).text);
    }
    return c;
}

const std::string& Corpus::text(const std::string& path) const {
    auto it = files_.find(path);
    if (it == files_.end()) throw Error("corpus file missing: " + path + " (in " + origin_ + ")");
    return it->second;
}

std::vector<std::string> Corpus::paths() const {
    std::vector<std::string> out;
    for (const auto& [p, t] : files_) out.push_back(p);
    return out;
}

SuiteResult fixture_suite(const Corpus& corpus) {
    auto start = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "fixtures";
    json manifest = json::parse(corpus.text("fixtures.json"));
    for (const auto& f : manifest.at("fixtures")) {
        std::vector<std::string> failed;
        try {
            check_fixture(corpus, f, failed);
        } catch (const std::exception& e) {
            failed.push_back(f.value("name", "?") + ": " + e.what());
        }
        ++res.cases;
        if (failed.empty()) continue;
        ++res.failures;
        if (res.first_failure.empty())
            for (const auto& s : failed) res.first_failure += s + "\n";
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

SuiteResult corpus_roundtrip_suite(const Corpus& corpus) {
    auto start = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "corpus-round-trip";
    for (const auto& path : corpus.paths()) {
        std::string err;
        try {
            SourceText src(corpus.text(path), path);
            if (path.ends_with(".adl")) {
                bool reserved = path.starts_with("golden/");
                Program p = parse_program(src, ParseOptions{reserved, true});
                std::string r = render(p);
                Program back = parse_program(SourceText(r, path), ParseOptions{reserved, true});
                if (!(back == p) || render(back) != r) err = "program does not round-trip";
            } else if (path.ends_with(".adb")) {
                Database d = parse_database(src);
                if (!(parse_database(SourceText(render(d))) == d)) err = "database does not round-trip";
            } else if (path.ends_with(".adu")) {
                DeltaSet d = parse_delta(src);
                if (!(parse_delta(SourceText(render(d))) == d)) err = "delta does not round-trip";
            } else {
                continue;
            }
        } catch (const std::exception& e) {
            err = e.what();
        }
        ++res.cases;
        if (err.empty()) continue;
        ++res.failures;
        if (res.first_failure.empty()) res.first_failure = path + ": " + err;
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

bool selftest(const SelftestOptions& opts, std::ostream& out) {
    Corpus corpus = opts.corpus_dir ? Corpus::from_directory(*opts.corpus_dir) : Corpus::embedded();
    SuiteOptions so;
    so.seed = opts.seed;
    std::vector<SuiteResult> results;
    results.push_back(corpus_roundtrip_suite(corpus));
    results.push_back(fixture_suite(corpus));
    results.push_back(oracle_equivalence_suite(so));
    results.push_back(search_equivalence_suite(so));
    results.push_back(update_property_suite(so));
    results.push_back(genericity_suite(so));
    results.push_back(roundtrip_suite(so));
    bool ok = true;
    out << "corpus: " << corpus.origin() << ", seed: " << opts.seed << "\n";
    for (const auto& r : results) {
        out << (r.ok() ? "PASS " : "FAIL ") << r.summary() << "\n";
        ok = ok && r.ok();
    }
    for (const auto& r : results)
        if (!r.ok() && !r.first_failure.empty()) out << "\n--- " << r.name << " first failure ---\n" << r.first_failure << "\n";
    return ok;
}

}  // namespace activedl::testing
