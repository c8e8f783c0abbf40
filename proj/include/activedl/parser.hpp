#pragma once

// Text formats:
//
//   .adl  program    rule := head ":-" body "." | head "."
//                    head := atom | "+" atom | "-" atom
//                    literal := ["not"] ["+"|"-"] atom | term ("="|"!=") term
//   .adb  database   fact := atom "." | atom "?"      ('?' marks unknown)
//   .adu  delta      update := ("+"|"-") atom "."
//
// '%' starts a line comment. Variables start with an uppercase letter or
// '_'; constants start with a lowercase letter or digit, or are "quoted".
// Identifiers may continue with letters, digits, '_' and '\''.

#include <string>

#include "activedl/core.hpp"

namespace activedl {

struct SourceText {
    std::string text;
    std::string origin;  // file name used in diagnostics

    SourceText() = default;
    SourceText(std::string t, std::string o = "<input>") : text(std::move(t)), origin(std::move(o)) {}
};

SourceText read_source(const std::string& path);

struct ParseOptions {
    bool allow_reserved = false;
    bool validate = true;
};

Program parse_program(const SourceText& src, const ParseOptions& opts = {});
Database parse_database(const SourceText& src);
DeltaSet parse_delta(const SourceText& src);
/// Inverse of render(Interpretation): "a. not b. c?". The universe is the
/// set of listed atoms.
Interpretation parse_interpretation(const SourceText& src);

std::string render(const Term& t);
std::string render(const Atom& a);
std::string render(const UpdateAtom& u);
std::string render(const Literal& l);
std::string render(const Rule& r);
/// Canonical form: one rule per line, sorted by (head predicate, rule text).
std::string render(const Program& p);
/// One fact per line in atom order.
std::string render(const Database& d);
std::string render(const DeltaSet& d);
/// Space-separated literals in atom order: "a. not b. c?".
std::string render(const Interpretation& I);

}  // namespace activedl
