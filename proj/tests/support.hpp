#pragma once

#include <string>

#include "activedl/parser.hpp"
#include "activedl/rewriter.hpp"
#include "activedl/semantics.hpp"
#include "activedl/update.hpp"

namespace t {

using namespace activedl;

inline Program prog(const std::string& s) { return parse_program(SourceText(s)); }
inline Database db(const std::string& s) { return parse_database(SourceText(s)); }
inline DeltaSet delta(const std::string& s) { return parse_delta(SourceText(s)); }
inline GroundProgram gp(const std::string& s) { return ground(prog(s)); }

inline Atom atom(const std::string& s) {
    return parse_program(SourceText(s + "."), ParseOptions{true, false}).rules.at(0).head.atom;
}

inline UpdateProgram up(const std::string& program, const std::string& delta_text = "") {
    UpdateProgram u;
    u.program = prog(program);
    u.delta = delta(delta_text);
    return u;
}

// Interpretation over g's universe; atoms not listed are undefined.
inline Interpretation interp(const GroundProgram& g, const std::string& literals) {
    Interpretation listed = parse_interpretation(SourceText(literals));
    Interpretation I(g.atoms);
    for (AtomId a = 0; a < listed.size(); ++a) {
        auto id = g.atoms->find(listed.universe().at(a));
        if (!id) throw UniverseError("not in program: " + render(listed.universe().at(a)));
        I.set(*id, listed[a]);
    }
    return I;
}

inline std::string str(const Interpretation& I) { return render(I); }

}  // namespace t
