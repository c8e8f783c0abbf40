#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "activedl/parser.hpp"
#include "activedl/report.hpp"
#include "activedl/update.hpp"

namespace py = pybind11;
using namespace activedl;

namespace {

UpdateProgram update_program(const std::string& program, const std::string& delta) {
    UpdateProgram up;
    up.program = parse_program(SourceText(program, "<program>"));
    up.delta = parse_delta(SourceText(delta, "<delta>"));
    return up;
}

Database database(const std::string& text) { return parse_database(SourceText(text, "<database>")); }

GroundProgram ground_for(const std::string& program, const std::string& db, const std::string& delta, bool full) {
    UpdateProgram up = update_program(program, delta);
    Program p = (up.program.is_active() || !up.delta.empty()) ? rewrite_st(up).program : up.program;
    return ground(embed_database(p, database(db)), GroundOptions{!full, {}});
}

SemanticsId semantics(const std::string& name) {
    auto s = parse_semantics(name);
    if (!s) throw py::value_error("unknown semantics: " + name);
    return *s;
}

RunOptions run_options(std::optional<std::uint64_t> seed, std::size_t cap) {
    RunOptions ro;
    ro.policy = seed ? SelectionPolicy::seeded(*seed) : SelectionPolicy::lexicographic();
    ro.enumeration.cap = cap;
    return ro;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());

    m.def("parse_program", [](const std::string& text) { return render(parse_program(SourceText(text))); },
          py::arg("text"));
    m.def("parse_database", [](const std::string& text) { return render(database(text)); }, py::arg("text"));

    m.def(
        "rewrite",
        [](const std::string& program, const std::string& delta, const std::string& mode) {
            if (mode != "st" && mode != "bm") throw py::value_error("mode must be st or bm");
            UpdateProgram up = update_program(program, delta);
            return render((mode == "st" ? rewrite_st(up) : rewrite_bm(up)).program);
        },
        py::arg("program"), py::arg("delta") = "", py::arg("mode") = "st");

    m.def(
        "well_founded",
        [](const std::string& program, const std::string& db, const std::string& delta, bool full) {
            return render(well_founded(ground_for(program, db, delta, full)));
        },
        py::arg("program"), py::arg("database") = "", py::arg("delta") = "", py::arg("full") = false);

    m.def(
        "models",
        [](const std::string& program, const std::string& db, const std::string& delta, bool full, std::size_t cap) {
            return to_json(models(ground_for(program, db, delta, full), EnumerationOptions{cap})).dump();
        },
        py::arg("program"), py::arg("database") = "", py::arg("delta") = "", py::arg("full") = false,
        py::arg("cap") = EnumerationOptions{}.cap);

    m.def(
        "run",
        [](const std::string& program, const std::string& db, const std::string& delta, const std::string& sem,
           std::optional<std::uint64_t> seed, std::size_t cap) {
            return to_json(run(update_program(program, delta), database(db), semantics(sem), run_options(seed, cap)))
                .dump();
        },
        py::arg("program"), py::arg("database") = "", py::arg("delta") = "", py::arg("semantics") = "ws",
        py::arg("seed") = py::none(), py::arg("cap") = EnumerationOptions{}.cap);

    m.def(
        "compare",
        [](const std::string& program, const std::string& db, const std::string& delta, std::size_t cap) {
            return to_json(compare(update_program(program, delta), database(db), run_options(std::nullopt, cap)))
                .dump();
        },
        py::arg("program"), py::arg("database") = "", py::arg("delta") = "", py::arg("cap") = EnumerationOptions{}.cap);

    m.def(
        "info_leq", [](const std::string& a, const std::string& b) { return info_leq(database(a), database(b)); },
        py::arg("a"), py::arg("b"));
}
