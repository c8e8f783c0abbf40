#pragma once

// Fixture corpus (embedded at build time or read from a directory), the
// manifest checks against it, and the self-test driver.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "activedl/testing/suites.hpp"

namespace activedl::testing {

struct CorpusFile {
    std::string_view path;  // relative to corpus/
    std::string_view text;
};

std::span<const CorpusFile> embedded_corpus();

class Corpus {
public:
    static Corpus embedded();
    static Corpus from_directory(const std::string& dir);

    /// Throws Error if missing.
    const std::string& text(const std::string& path) const;
    bool contains(const std::string& path) const { return files_.contains(path); }
    std::vector<std::string> paths() const;
    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::string> files_;
    std::string origin_;
};

/// Golden rewrites, model listings and run outcomes from fixtures.json.
SuiteResult fixture_suite(const Corpus& corpus);

/// parse and render are inverse on every corpus file.
SuiteResult corpus_roundtrip_suite(const Corpus& corpus);

struct SelftestOptions {
    std::optional<std::string> corpus_dir;
    std::uint64_t seed = SuiteOptions{}.seed;
};

/// Runs the corpus and every property suite; prints one line per suite and
/// the first counterexample of each failing suite. Returns true if all pass.
bool selftest(const SelftestOptions& opts, std::ostream& out);

}  // namespace activedl::testing
