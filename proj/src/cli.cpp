#include "odekit/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "odekit/corpus.hpp"
#include "odekit/diff_poly.hpp"
#include "odekit/lie.hpp"
#include "odekit/singularity.hpp"
#include "odekit/symmetry_solver.hpp"

namespace odekit {

namespace {

using json = nlohmann::ordered_json;

constexpr unsigned kDefaultDegree = 5;

// Bad input rather than a failed analysis.
struct UsageError : Error {
    using Error::Error;
};

struct Globals {
    std::string format = "text";
    std::string seed_order = "grlex";
    unsigned threads = 0;
};

OdeProblem read_equation(const std::string &text) {
    try {
        return make_problem(text);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
}

VectorField read_field(const std::string &text) {
    try {
        return VectorField::parse(text);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
}

Poly read_xy(const std::string &text) {
    try {
        return parse_xy_poly(text);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
}

unsigned default_degree() {
    const char *env = std::getenv("ODEKIT_DEGREE");
    if (!env || !*env) return kDefaultDegree;
    const std::string s(env);
    if (s.size() > 3 || s.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("ODEKIT_DEGREE must be a small nonnegative integer");
    return static_cast<unsigned>(std::stoul(s));
}

json field_json(const VectorField &g) { return {{"xi", g.xi.to_string()}, {"eta", g.eta.to_string()}}; }

json null_or(const std::string &s) { return s.empty() ? json(nullptr) : json(s); }

// ---------------------------------------------------------------------------
// Commands build a JSON document; text output is rendered from it so both
// formats carry the same content.

json symmetries_json(const OdeProblem &ode, unsigned degree, unsigned threads) {
    const auto basis = solve_point_symmetries(ode, degree, threads);
    json gens = json::array();
    for (const auto &g : basis.fields) {
        json j = field_json(g);
        j["verified"] = is_symmetry(g, ode).holds;
        gens.push_back(j);
    }
    std::string note;
    if (basis.dimension() == 0)
        note = "no point symmetries within the ansatz";
    else if (ode.equation.order() == 2 && basis.dimension() == 8)
        note = "eight point symmetries: the equation is linearizable by a point transformation";
    return {{"command", "symmetries"},
            {"equation", format(ode.equation)},
            {"order", ode.equation.order()},
            {"ansatz",
             {{"kind", "polynomial"},
              {"max_degree_x", degree},
              {"max_degree_y", degree},
              {"unknowns", basis.ansatz.unknown_count()}}},
            {"dimension", basis.dimension()},
            {"generators", gens},
            {"note", null_or(note)}};
}

void symmetries_text(const json &j, std::ostream &out) {
    const unsigned d = j["ansatz"]["max_degree_x"];
    out << "equation: " << j["equation"].get<std::string>() << " = 0\n";
    out << "ansatz: xi, eta polynomial with deg_x <= " << d << " and deg_y <= " << d << " ("
        << j["ansatz"]["unknowns"].get<std::size_t>() << " unknowns)\n";
    out << "dimension: " << j["dimension"].get<std::size_t>() << "\n";
    std::size_t i = 0;
    for (const auto &g : j["generators"])
        out << "G" << ++i << ": xi = " << g["xi"].get<std::string>() << ", eta = " << g["eta"].get<std::string>()
            << (g["verified"].get<bool>() ? "  [verified]" : "  [RESIDUAL NONZERO]") << "\n";
    if (!j["note"].is_null()) out << "note: " << j["note"].get<std::string>() << "\n";
}

json branch_json(const Branch &b, const OdeProblem &ode) {
    const auto terms = std::vector<std::pair<Monomial, Rational>>(ode.equation.poly().terms().begin(),
                                                                  ode.equation.poly().terms().end());
    json dom = json::array();
    for (std::size_t i : b.dominant_terms) dom.push_back(format(Poly::term(terms[i].first, 1), ode.equation.names()));
    json res = json::array();
    for (const auto &r : b.resonances) res.push_back(r.to_string());
    json series = nullptr;
    if (b.series) {
        json coeffs = json::array();
        for (const auto &c : b.series->coefficients) coeffs.push_back(c.to_string());
        series = {{"order", b.series->order()}, {"coefficients", coeffs}, {"free_levels", b.series->free_levels}};
    }
    const bool has_step = b.direction && *b.direction != Direction::mixed && !b.delta.is_zero();
    return {{"p", b.p_string()},
            {"a0", b.a0.to_string()},
            {"dominant_terms", dom},
            {"resonance_polynomial", b.resonance_poly.is_zero() ? json(nullptr) : json(b.resonance_poly.to_string())},
            {"resonances", res},
            {"direction", b.direction ? json(to_string(*b.direction)) : json(nullptr)},
            {"step", has_step ? json(b.delta.to_string()) : json(nullptr)},
            {"verdict", b.verdict.passing() ? b.verdict.to_string()
                                            : (b.verdict.kind == Verdict::Kind::fail ? "fail" : "inconclusive")},
            {"reason", null_or(b.verdict.reason)},
            {"arbitrary_constants", b.arbitrary_constants},
            {"series", series}};
}

json painleve_json(const OdeProblem &ode, const PainleveOptions &opts) {
    const auto rep = painleve_test(ode, opts);
    json branches = json::array();
    for (const auto &b : rep.branches) branches.push_back(branch_json(b, ode));
    return {{"command", "painleve"},
            {"equation", format(ode.equation)},
            {"order", ode.equation.order()},
            {"lenient", opts.lenient},
            {"branches", branches},
            {"generic_branch_found", rep.generic_branch_found},
            {"overall", rep.overall},
            {"reason", null_or(rep.reason)}};
}

std::string joined(const json &arr) {
    std::string s;
    for (const auto &v : arr) s += (s.empty() ? "" : ", ") + v.get<std::string>();
    return s;
}

void painleve_text(const json &j, std::ostream &out) {
    out << "equation: " << j["equation"].get<std::string>() << " = 0\n";
    std::size_t i = 0;
    for (const auto &b : j["branches"]) {
        out << "branch " << ++i << ": p = " << b["p"].get<std::string>() << ", a0 = " << b["a0"].get<std::string>()
            << "\n";
        out << "  dominant terms: " << joined(b["dominant_terms"]) << "\n";
        if (!b["resonance_polynomial"].is_null())
            out << "  resonance polynomial: " << b["resonance_polynomial"].get<std::string>() << "\n";
        if (!b["resonances"].empty()) out << "  resonances: " << joined(b["resonances"]) << "\n";
        if (!b["direction"].is_null()) {
            out << "  direction: " << b["direction"].get<std::string>();
            if (!b["step"].is_null()) out << ", step " << b["step"].get<std::string>();
            out << "\n";
        }
        if (!b["series"].is_null()) {
            const auto &s = b["series"];
            const auto &free = s["free_levels"];
            out << "  series through order " << s["order"].get<unsigned>() << ":\n";
            for (std::size_t k = 0; k < s["coefficients"].size(); ++k) {
                const bool is_free = std::find(free.begin(), free.end(), k) != free.end();
                out << "    a" << k << " = " << s["coefficients"][k].get<std::string>() << (is_free ? "  (free)" : "")
                    << "\n";
            }
            out << "  arbitrary constants (with x0): " << b["arbitrary_constants"].get<unsigned>() << "\n";
        }
        out << "  verdict: " << b["verdict"].get<std::string>();
        if (!b["reason"].is_null()) out << " (" << b["reason"].get<std::string>() << ")";
        out << "\n";
    }
    out << "generic branch: " << (j["generic_branch_found"].get<bool>() ? "yes" : "no") << "\n";
    out << "overall: " << j["overall"].get<std::string>();
    if (!j["reason"].is_null()) out << " (" << j["reason"].get<std::string>() << ")";
    if (j["lenient"].get<bool>()) out << " [lenient]";
    out << "\n";
}

json prolong_json(const VectorField &g, unsigned order) {
    const auto ext = prolong(g, order);
    json coeffs = json::array();
    for (unsigned k = 1; k <= order; ++k)
        coeffs.push_back({{"order", k}, {"eta", ext.coefficients[k - 1].to_string()}});
    return {{"command", "prolong"},
            {"xi", g.xi.to_string()},
            {"eta", g.eta.to_string()},
            {"order", order},
            {"coefficients", coeffs}};
}

void prolong_text(const json &j, std::ostream &out) {
    out << "xi = " << j["xi"].get<std::string>() << "\n";
    out << "eta = " << j["eta"].get<std::string>() << "\n";
    for (const auto &c : j["coefficients"])
        out << "eta[" << c["order"].get<unsigned>() << "] = " << c["eta"].get<std::string>() << "\n";
}

json bracket_json(const VectorField &g1, const VectorField &g2) {
    return {{"command", "bracket"},
            {"g1", field_json(g1)},
            {"g2", field_json(g2)},
            {"result", field_json(lie_bracket(g1, g2))}};
}

void bracket_text(const json &j, std::ostream &out) {
    out << j["result"]["xi"].get<std::string>() << ", " << j["result"]["eta"].get<std::string>() << "\n";
}

json classify_json(const VectorField &g1, const VectorField &g2) {
    const auto c = classify_pair(g1, g2);
    return {{"command", "classify"}, {"type", to_string(c.type)}, {"g1", field_json(c.g1)}, {"g2", field_json(c.g2)}};
}

void classify_text(const json &j, std::ostream &out) {
    out << "Type " << j["type"].get<std::string>() << "\n";
    out << "G1 = " << j["g1"]["xi"].get<std::string>() << ", " << j["g1"]["eta"].get<std::string>() << "\n";
    out << "G2 = " << j["g2"]["xi"].get<std::string>() << ", " << j["g2"]["eta"].get<std::string>() << "\n";
}

json corpus_json(const std::string &file, const CorpusReport &rep) {
    json entries = json::array();
    for (const auto &e : rep.entries)
        entries.push_back({{"id", e.id}, {"passed", e.passed}, {"mismatches", e.mismatches}});
    return {{"command", "corpus"},
            {"file", file},
            {"entries", entries},
            {"passed", rep.passed()},
            {"failed", rep.failed()}};
}

void corpus_text(const json &j, std::ostream &out) {
    for (const auto &e : j["entries"]) {
        out << (e["passed"].get<bool>() ? "PASS " : "FAIL ") << e["id"].get<std::string>() << "\n";
        for (const auto &m : e["mismatches"]) out << "  " << m.get<std::string>() << "\n";
    }
    out << j["passed"].get<std::size_t>() << " passed, " << j["failed"].get<std::size_t>() << " failed\n";
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Lie point symmetries and singularity analysis of polynomial ODEs", "odekit"};
    app.fallthrough();
    app.require_subcommand(1);

    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed-order", g.seed_order, "Term order for printing and elimination")
        ->check(CLI::IsMember({"grlex"}));
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

    std::string equation, xi, eta, f1, f2, file;
    std::optional<unsigned> degree, orders;
    unsigned order = 0;
    bool lenient = false;

    auto *sym = app.add_subcommand("symmetries", "Lie point symmetries within a polynomial ansatz");
    sym->add_option("equation", equation, "Equation, e.g. \"y'' + 3*y*y' + y^3\"")->required();
    sym->add_option("--degree", degree, "Maximum degree in x and in y of xi and eta");

    auto *pain = app.add_subcommand("painleve", "Leading orders, resonances and series consistency");
    pain->add_option("equation", equation, "Autonomous equation")->required();
    pain->add_option("--orders", orders, "Series truncation order");
    pain->add_flag("--lenient", lenient, "Pass when a generic passing branch exists");

    auto *pro = app.add_subcommand("prolong", "Extended coefficients of a point generator");
    pro->add_option("xi", xi, "xi(x, y)")->required();
    pro->add_option("eta", eta, "eta(x, y)")->required();
    pro->add_option("--order", order, "Extension order")->required();

    auto *br = app.add_subcommand("bracket", "Lie bracket of two fields given as \"xi,eta\"");
    br->add_option("f1", f1)->required();
    br->add_option("f2", f2)->required();

    auto *cl = app.add_subcommand("classify", "Type of the two-dimensional algebra spanned by two fields");
    cl->add_option("f1", f1)->required();
    cl->add_option("f2", f2)->required();

    auto *corpus = app.add_subcommand("corpus", "Fixture corpus");
    corpus->require_subcommand(1);
    auto *crun = corpus->add_subcommand("run", "Check every entry of a corpus file");
    crun->add_option("file", file)->required();

    std::vector<std::string> storage{"odekit"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    int code = kExitOk;
    json doc;
    void (*render)(const json &, std::ostream &) = nullptr;
    try {
        if (*sym) {
            const unsigned d = degree ? *degree : default_degree();
            doc = symmetries_json(read_equation(equation), d, g.threads);
            render = symmetries_text;
        } else if (*pain) {
            PainleveOptions opts;
            opts.orders = orders;
            opts.lenient = lenient;
            opts.threads = g.threads;
            const OdeProblem ode = read_equation(equation);
            if (!ode.equation.autonomous()) throw UsageError("autonomous equations only");
            doc = painleve_json(ode, opts);
            render = painleve_text;
        } else if (*pro) {
            doc = prolong_json(VectorField(read_xy(xi), read_xy(eta)), order);
            render = prolong_text;
        } else if (*br) {
            doc = bracket_json(read_field(f1), read_field(f2));
            render = bracket_text;
        } else if (*cl) {
            const VectorField a = read_field(f1), b = read_field(f2);
            doc = classify_json(a, b);
            render = classify_text;
        } else if (*crun) {
            std::ifstream in(file);
            if (!in) throw UsageError("cannot open corpus file '" + file + "'");
            std::vector<CorpusEntry> entries;
            try {
                entries = parse_corpus(in);
            } catch (const CorpusError &e) {
                throw UsageError(file + ": " + e.what());
            }
            const auto rep = run_corpus(entries, default_degree(), g.threads);
            doc = corpus_json(file, rep);
            render = corpus_text;
            if (rep.failed() > 0) code = kExitAnalysis;
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitAnalysis;
    }

    if (g.format == "json")
        out << doc.dump(2) << "\n";
    else
        render(doc, out);
    return code;
}

} // namespace odekit
