#ifndef ODEKIT_CORPUS_HPP
#define ODEKIT_CORPUS_HPP

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "odekit/rational.hpp"

namespace odekit {

/// Malformed corpus file; line() is 1-based.
class CorpusError : public Error {
public:
    CorpusError(std::size_t line, const std::string &msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct ExpectedBranch {
    std::string p;
    std::string a0;
    std::vector<std::string> resonances;
    std::string direction;
    std::optional<std::string> verdict;
    std::size_t line = 0;
};

/// Expected coefficient a<index> of the series of the branch-th branch (1-based).
struct ExpectedSeries {
    std::size_t branch = 0;
    unsigned index = 0;
    std::string value;
    std::size_t line = 0;
};

struct CorpusEntry {
    std::string id;
    std::size_t line = 0;
    std::string equation;
    std::map<std::string, Rational> params;
    std::optional<std::string> dep;
    std::optional<std::string> indep;
    std::string notes;

    std::optional<unsigned> symmetry_degree;
    std::optional<std::size_t> symmetry_dim;
    std::vector<std::string> contains_generators;
    std::vector<std::string> non_generators;

    std::optional<unsigned> painleve_orders;
    bool painleve_lenient = false;
    std::optional<std::string> painleve_overall;
    std::optional<std::string> painleve_reason;
    std::vector<ExpectedBranch> branches;
    std::vector<ExpectedSeries> series;

    bool wants_symmetries() const {
        return symmetry_dim || !contains_generators.empty() || !non_generators.empty();
    }
    bool wants_painleve() const { return painleve_overall || painleve_reason || !branches.empty() || !series.empty(); }
};

std::vector<CorpusEntry> parse_corpus(std::istream &in);

struct EntryResult {
    std::string id;
    bool passed = true;
    std::vector<std::string> mismatches;
};

/// Evaluates every expectation of one entry. Analysis errors count as mismatches.
EntryResult check_entry(const CorpusEntry &entry, unsigned default_degree);

struct CorpusReport {
    std::vector<EntryResult> entries; ///< in file order
    std::size_t passed() const;
    std::size_t failed() const { return entries.size() - passed(); }
};

CorpusReport run_corpus(const std::vector<CorpusEntry> &entries, unsigned default_degree, unsigned threads = 0);

} // namespace odekit

#endif
