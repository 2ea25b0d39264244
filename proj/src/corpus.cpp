#include "odekit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "odekit/diff_poly.hpp"
#include "odekit/lie.hpp"
#include "odekit/parallel.hpp"
#include "odekit/singularity.hpp"
#include "odekit/symmetry_solver.hpp"

namespace odekit {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string strip_spaces(std::string s) {
    std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
    return s;
}

// Splits on commas outside (), {} and [].
std::vector<std::string> split_top(std::string_view s) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(' || c == '{' || c == '[') ++depth;
        if (c == ')' || c == '}' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

unsigned parse_count(const std::string &v, std::size_t line) {
    if (v.empty() || v.size() > 9 || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw CorpusError(line, "expected a nonnegative integer, found '" + v + "'");
    return static_cast<unsigned>(std::stoul(v));
}

std::string canonical_rational(const std::string &v, std::size_t line) {
    try {
        return Rational::parse(v).to_string();
    } catch (const Error &) {
        throw CorpusError(line, "malformed rational '" + v + "'");
    }
}

ExpectedBranch parse_branch(const std::string &v, std::size_t line) {
    ExpectedBranch b;
    b.line = line;
    std::set<std::string> seen;
    for (const auto &item : split_top(v)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw CorpusError(line, "branch field without '=': '" + item + "'");
        const std::string key = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
        if (!seen.insert(key).second) throw CorpusError(line, "duplicate branch field '" + key + "'");
        if (key == "p") {
            b.p = val.starts_with("unresolved") ? val : canonical_rational(val, line);
        } else if (key == "a0") {
            b.a0 = val == "arbitrary" || val.starts_with("unresolved") ? val : canonical_rational(val, line);
        } else if (key == "res") {
            if (val.size() < 2 || val.front() != '{' || val.back() != '}')
                throw CorpusError(line, "resonances must be written {r, ...}");
            const std::string inner = trim(std::string_view(val).substr(1, val.size() - 2));
            if (!inner.empty())
                for (const auto &r : split_top(inner)) b.resonances.push_back(canonical_rational(r, line));
        } else if (key == "dir") {
            if (val != "right" && val != "left" && val != "mixed" && val != "none")
                throw CorpusError(line, "direction must be right, left, mixed or none");
            b.direction = val;
        } else if (key == "verdict") {
            b.verdict = val;
        } else {
            throw CorpusError(line, "unknown branch field '" + key + "'");
        }
    }
    if (!seen.contains("p") || !seen.contains("a0")) throw CorpusError(line, "branch needs p and a0");
    if (!seen.contains("dir")) b.direction = "none";
    return b;
}

ExpectedSeries parse_series(const std::string &v, std::size_t line) {
    // "<branch>: a<i> = <value>"
    const auto colon = v.find(':');
    const auto eq = v.find('=');
    if (colon == std::string::npos || eq == std::string::npos || eq < colon)
        throw CorpusError(line, "series expectation must read '<branch>: a<i> = <value>'");
    ExpectedSeries s;
    s.line = line;
    s.branch = parse_count(trim(v.substr(0, colon)), line);
    const std::string name = trim(v.substr(colon + 1, eq - colon - 1));
    if (name.size() < 2 || name[0] != 'a') throw CorpusError(line, "expected a coefficient name a<i>");
    s.index = parse_count(name.substr(1), line);
    s.value = trim(v.substr(eq + 1));
    if (s.branch == 0) throw CorpusError(line, "branches are numbered from 1");
    return s;
}

} // namespace

std::vector<CorpusEntry> parse_corpus(std::istream &in) {
    std::vector<CorpusEntry> entries;
    std::set<std::string> ids;
    std::string raw;
    std::size_t line = 0;
    auto finish = [&] {
        if (!entries.empty() && entries.back().equation.empty())
            throw CorpusError(entries.back().line, "entry '" + entries.back().id + "' has no equation");
    };
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        if (text.front() == '[') {
            if (text.back() != ']' || !text.starts_with("[entry "))
                throw CorpusError(line, "expected '[entry <id>]'");
            const std::string id = trim(std::string_view(text).substr(7, text.size() - 8));
            if (id.empty() || id.find_first_of(" \t") != std::string::npos)
                throw CorpusError(line, "entry id must be a single word");
            if (!ids.insert(id).second) throw CorpusError(line, "duplicate entry id '" + id + "'");
            finish();
            entries.push_back({});
            entries.back().id = id;
            entries.back().line = line;
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw CorpusError(line, "expected 'key = value'");
        std::string key = trim(std::string_view(text).substr(0, eq));
        const std::string val = trim(std::string_view(text).substr(eq + 1));
        if (entries.empty()) throw CorpusError(line, "'" + key + "' outside an entry");
        CorpusEntry &e = entries.back();

        if (key.starts_with("param ")) {
            const std::string name = trim(std::string_view(key).substr(6));
            if (name.empty()) throw CorpusError(line, "parameter without a name");
            if (!e.params.emplace(name, Rational::parse(canonical_rational(val, line))).second)
                throw CorpusError(line, "duplicate parameter '" + name + "'");
        } else if (key == "equation") {
            if (!e.equation.empty()) throw CorpusError(line, "duplicate equation");
            if (val.empty()) throw CorpusError(line, "empty equation");
            e.equation = val;
        } else if (key == "dep") {
            e.dep = val;
        } else if (key == "indep") {
            e.indep = val;
        } else if (key == "notes") {
            e.notes += (e.notes.empty() ? "" : " ") + val;
        } else if (key == "expect.symmetry_degree") {
            e.symmetry_degree = parse_count(val, line);
        } else if (key == "expect.symmetry_dim") {
            e.symmetry_dim = parse_count(val, line);
        } else if (key == "expect.contains_generator") {
            e.contains_generators.push_back(val);
        } else if (key == "expect.not_generator") {
            e.non_generators.push_back(val);
        } else if (key == "expect.painleve.orders") {
            e.painleve_orders = parse_count(val, line);
        } else if (key == "expect.painleve.lenient") {
            if (val != "true" && val != "false") throw CorpusError(line, "expected true or false");
            e.painleve_lenient = val == "true";
        } else if (key == "expect.painleve.overall") {
            static const std::set<std::string> words{"passes", "weak", "fails", "inconclusive", "no-branches"};
            if (!words.contains(val)) throw CorpusError(line, "unknown overall verdict '" + val + "'");
            e.painleve_overall = val;
        } else if (key == "expect.painleve.reason") {
            e.painleve_reason = val;
        } else if (key == "expect.branch") {
            e.branches.push_back(parse_branch(val, line));
        } else if (key == "expect.series") {
            e.series.push_back(parse_series(val, line));
        } else {
            throw CorpusError(line, "unknown key '" + key + "'");
        }
    }
    finish();
    return entries;
}

namespace {

std::string describe(const Branch &b) {
    std::string res;
    for (const auto &r : b.resonances) res += (res.empty() ? "" : ",") + r.to_string();
    return "p=" + b.p_string() + ", a0=" + b.a0.to_string() + ", res={" + res +
           "}, dir=" + (b.direction ? to_string(*b.direction) : "none") + ", verdict=" + b.verdict.to_string();
}

bool matches(const ExpectedBranch &x, const Branch &b) {
    if (x.p != b.p_string() || x.a0 != b.a0.to_string()) return false;
    if (x.direction != (b.direction ? to_string(*b.direction) : "none")) return false;
    if (x.verdict && *x.verdict != b.verdict.to_string()) return false;
    std::vector<std::string> got;
    for (const auto &r : b.resonances) got.push_back(r.to_string());
    auto want = x.resonances;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    return got == want;
}

void check_symmetries(const CorpusEntry &e, const OdeProblem &ode, unsigned degree, EntryResult &r) {
    const auto basis = solve_point_symmetries(ode, e.symmetry_degree.value_or(degree), 1);
    if (e.symmetry_dim && *e.symmetry_dim != basis.dimension())
        r.mismatches.push_back("symmetry dimension " + std::to_string(basis.dimension()) + ", expected " +
                               std::to_string(*e.symmetry_dim));
    for (const auto &text : e.contains_generators)
        if (!span_contains(basis.fields, VectorField::parse(text)))
            r.mismatches.push_back("generator not in span: " + text);
    for (const auto &text : e.non_generators)
        if (is_symmetry(VectorField::parse(text), ode).holds)
            r.mismatches.push_back("field unexpectedly is a symmetry: " + text);
}

void check_painleve(const CorpusEntry &e, const OdeProblem &ode, EntryResult &r) {
    PainleveOptions opts;
    opts.orders = e.painleve_orders;
    opts.lenient = e.painleve_lenient;
    opts.threads = 1;
    const auto rep = painleve_test(ode, opts);
    if (e.painleve_overall && *e.painleve_overall != rep.overall)
        r.mismatches.push_back("overall " + rep.overall + ", expected " + *e.painleve_overall);
    if (e.painleve_reason && *e.painleve_reason != rep.reason)
        r.mismatches.push_back("reason '" + rep.reason + "', expected '" + *e.painleve_reason + "'");
    if (!e.branches.empty()) {
        std::vector<bool> used(rep.branches.size());
        for (const auto &x : e.branches) {
            bool found = false;
            for (std::size_t i = 0; i < rep.branches.size() && !found; ++i)
                if (!used[i] && matches(x, rep.branches[i])) used[i] = found = true;
            if (!found) r.mismatches.push_back("no branch matches line " + std::to_string(x.line));
        }
        for (std::size_t i = 0; i < used.size(); ++i)
            if (!used[i]) r.mismatches.push_back("unexpected branch " + describe(rep.branches[i]));
    }
    for (const auto &s : e.series) {
        const std::string where = "series line " + std::to_string(s.line);
        if (s.branch > rep.branches.size() || !rep.branches[s.branch - 1].series) {
            r.mismatches.push_back(where + ": branch has no series");
            continue;
        }
        const auto &coeffs = rep.branches[s.branch - 1].series->coefficients;
        if (s.index >= coeffs.size()) {
            r.mismatches.push_back(where + ": series stops at a" + std::to_string(coeffs.size() - 1));
            continue;
        }
        const std::string got = coeffs[s.index].to_string();
        if (strip_spaces(got) != strip_spaces(s.value))
            r.mismatches.push_back(where + ": a" + std::to_string(s.index) + " = " + got + ", expected " + s.value);
    }
}

} // namespace

EntryResult check_entry(const CorpusEntry &e, unsigned default_degree) {
    EntryResult r{e.id, true, {}};
    try {
        ExpandOptions opts;
        opts.dep = e.dep;
        if (e.indep) opts.indep = *e.indep;
        opts.params = e.params;
        const OdeProblem ode = make_problem(e.equation, opts);
        if (e.wants_symmetries()) check_symmetries(e, ode, default_degree, r);
        if (e.wants_painleve()) check_painleve(e, ode, r);
    } catch (const Error &ex) {
        r.mismatches.push_back(std::string("error: ") + ex.what());
    }
    r.passed = r.mismatches.empty();
    return r;
}

std::size_t CorpusReport::passed() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const EntryResult &r) { return r.passed; }));
}

CorpusReport run_corpus(const std::vector<CorpusEntry> &entries, unsigned default_degree, unsigned threads) {
    CorpusReport rep;
    rep.entries.resize(entries.size());
    parallel_for(entries.size(), threads, [&](std::size_t i) { rep.entries[i] = check_entry(entries[i], default_degree); });
    return rep;
}

} // namespace odekit
