#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "class_graph.hpp"

namespace isogeny_atlas {

// Serializable snapshot of a classified isogeny class.
struct GraphReport {
    struct Vertex {
        std::array<Rat, 5> a;
        Rat j;
        std::string torsion;

        friend bool operator==(const Vertex &x, const Vertex &y)
        {
            return x.a == y.a && x.j == y.j && x.torsion == y.torsion;
        }
    };

    std::array<Rat, 5> input;
    std::vector<Vertex> vertices;
    std::vector<ClassEdge> edges;
    std::string shape;
    std::vector<std::string> config;
    std::vector<IsogenyCounts> counts;
    std::optional<CMRecord> cm;
    std::string table_row;

    friend bool operator==(const GraphReport &x, const GraphReport &y)
    {
        auto counts_eq = [](const IsogenyCounts &a, const IsogenyCounts &b) {
            return a.C == b.C && a.C_p == b.C_p && a.max_cyclic_degree == b.max_cyclic_degree;
        };
        if (!(x.input == y.input && x.vertices == y.vertices && x.edges == y.edges &&
              x.shape == y.shape && x.config == y.config && x.table_row == y.table_row))
            return false;
        if (x.counts.size() != y.counts.size())
            return false;
        for (size_t i = 0; i < x.counts.size(); ++i)
            if (!counts_eq(x.counts[i], y.counts[i]))
                return false;
        if (x.cm.has_value() != y.cm.has_value())
            return false;
        if (x.cm && (x.cm->j != y.cm->j || x.cm->disc_K != y.cm->disc_K))
            return false;
        return true;
    }
};

inline GraphReport make_report(const Curve &input, const ClassGraph &g)
{
    GraphReport r;
    r.input = input.a_invariants();
    for (const auto &v : g.vertices)
        r.vertices.push_back({v.model.a_invariants(), v.model.j_invariant(),
                              v.torsion.label()});
    r.edges = g.edges;
    r.shape = g.shape;
    r.config = g.config;
    for (size_t v = 0; v < g.vertices.size(); ++v)
        r.counts.push_back(isogeny_counts(g, static_cast<int>(v)));
    r.cm = g.cm;
    r.table_row = g.shape + "/" + g.table_row + "-class";
    return r;
}

// classify + report in one step
inline GraphReport run_classify(const Curve &e) { return make_report(e, classify(e)); }

namespace detail {

inline nlohmann::json rat_to_json(const Rat &q)
{
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

inline Rat rat_from_json_field(const nlohmann::json &j)
{
    return make_rat(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>()));
}

inline nlohmann::json a_to_json(const std::array<Rat, 5> &a)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &q : a)
        arr.push_back(to_string(q));
    return arr;
}

inline std::array<Rat, 5> a_from_json(const nlohmann::json &arr)
{
    if (!arr.is_array() || arr.size() != 5)
        throw unsupported_input("expected five a-invariants");
    std::array<Rat, 5> a;
    for (size_t i = 0; i < 5; ++i)
        a[i] = parse_rational(arr[i].get<std::string>());
    return a;
}

} // namespace detail

inline nlohmann::json to_json(const GraphReport &r)
{
    nlohmann::json j;
    j["input"] = {{"a", detail::a_to_json(r.input)}};
    j["vertices"] = nlohmann::json::array();
    for (const auto &v : r.vertices)
        j["vertices"].push_back({{"a", detail::a_to_json(v.a)},
                                 {"j", detail::rat_to_json(v.j)},
                                 {"torsion", v.torsion}});
    j["edges"] = nlohmann::json::array();
    for (const auto &e : r.edges)
        j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"ell", e.ell}});
    j["shape"] = r.shape;
    j["config"] = r.config;
    j["counts"] = nlohmann::json::array();
    for (const auto &c : r.counts) {
        nlohmann::json cp = nlohmann::json::object();
        for (const auto &[p, v] : c.C_p)
            cp[std::to_string(p)] = v;
        j["counts"].push_back(
            {{"C", c.C}, {"C_p", cp}, {"max_cyclic_degree", c.max_cyclic_degree}});
    }
    if (r.cm)
        j["cm"] = {{"j", detail::rat_to_json(r.cm->j)}, {"dK", r.cm->disc_K}};
    else
        j["cm"] = nullptr;
    j["table_row"] = r.table_row;
    return j;
}

inline GraphReport report_from_json(const nlohmann::json &j)
{
    GraphReport r;
    r.input = detail::a_from_json(j.at("input").at("a"));
    for (const auto &v : j.at("vertices"))
        r.vertices.push_back({detail::a_from_json(v.at("a")),
                              detail::rat_from_json_field(v.at("j")),
                              v.at("torsion").get<std::string>()});
    for (const auto &e : j.at("edges"))
        r.edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(), e.at("ell").get<long>()});
    r.shape = j.at("shape").get<std::string>();
    for (const auto &c : j.at("config"))
        r.config.push_back(c.get<std::string>());
    for (const auto &c : j.at("counts")) {
        IsogenyCounts counts;
        counts.C = c.at("C").get<long>();
        counts.max_cyclic_degree = c.at("max_cyclic_degree").get<long>();
        for (const auto &[key, value] : c.at("C_p").items())
            counts.C_p[std::stol(key)] = value.get<long>();
        r.counts.push_back(counts);
    }
    if (!j.at("cm").is_null())
        r.cm = CMRecord{detail::rat_from_json_field(j.at("cm").at("j")),
                        j.at("cm").at("dK").get<int>()};
    r.table_row = j.at("table_row").get<std::string>();
    return r;
}

// Undirected DOT rendering: torsion labels on vertices, primes on edges.
inline std::string emit_dot(const GraphReport &r)
{
    std::ostringstream os;
    os << "graph isogeny_class {\n";
    for (size_t i = 0; i < r.vertices.size(); ++i)
        os << "  v" << i << " [label=\"" << r.vertices[i].torsion << "\"];\n";
    for (const auto &e : r.edges)
        os << "  v" << e.u << " -- v" << e.v << " [label=\"" << e.ell << "\"];\n";
    os << "}\n";
    return os.str();
}

// Accepts "[a1,a2,a3,a4,a6]" or the short form "[A,B]", entries integers or
// fractions "p/q".
inline Curve parse_curve_input(const std::string &text)
{
    std::string body = text;
    auto strip = [&](char c) {
        body.erase(std::remove(body.begin(), body.end(), c), body.end());
    };
    strip(' ');
    strip('\t');
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw unsupported_input("curve input must look like [a1,a2,a3,a4,a6] or [A,B]");
    body = body.substr(1, body.size() - 2);
    std::vector<Rat> entries;
    std::stringstream ss(body);
    std::string piece;
    while (std::getline(ss, piece, ','))
        entries.push_back(parse_rational(piece));
    if (entries.size() == 2)
        return Curve::short_model_curve(entries[0], entries[1]);
    if (entries.size() == 5)
        return Curve::from_a_invariants({entries[0], entries[1], entries[2], entries[3],
                                         entries[4]});
    throw unsupported_input("expected 2 or 5 coefficients, got " +
                            std::to_string(entries.size()));
}

// One line of the fixture corpus.
struct FixtureEntry {
    std::string label;
    std::array<Rat, 5> a_invariants;
    std::string expected_shape;
    std::vector<std::string> expected_config;
    std::string source;
};

inline std::vector<FixtureEntry> load_fixtures(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open fixture file: " + path);
    std::vector<FixtureEntry> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error &err) {
            throw unsupported_input("fixture line " + std::to_string(lineno) + ": " +
                                    err.what());
        }
        FixtureEntry e;
        e.label = j.at("label").get<std::string>();
        e.a_invariants = detail::a_from_json(j.at("a_invariants"));
        e.expected_shape = j.at("expected_shape").get<std::string>();
        for (const auto &c : j.at("expected_config"))
            e.expected_config.push_back(c.get<std::string>());
        e.source = j.value("source", "");
        out.push_back(std::move(e));
    }
    return out;
}

struct VerifyResult {
    struct Entry {
        std::string label;
        bool pass = false;
        std::string expected, computed;
    };
    std::vector<Entry> entries;
    size_t passed = 0;

    bool all_passed() const { return passed == entries.size(); }
};

namespace detail {

inline std::string shape_config_str(const std::string &shape,
                                    const std::vector<std::string> &config)
{
    std::string s = shape + " (";
    for (size_t i = 0; i < config.size(); ++i)
        s += (i ? "," : "") + config[i];
    return s + ")";
}

} // namespace detail

// Classifies every fixture entry and compares with the expectations; entries
// are reported sorted by label.
inline VerifyResult run_verify_tables(const std::vector<FixtureEntry> &fixtures)
{
    VerifyResult result;
    for (const auto &fx : fixtures) {
        VerifyResult::Entry entry;
        entry.label = fx.label;
        entry.expected = detail::shape_config_str(fx.expected_shape, fx.expected_config);
        try {
            Curve e = Curve::from_a_invariants(fx.a_invariants);
            ClassGraph g = classify(e);
            entry.computed = detail::shape_config_str(g.shape, g.config);
            entry.pass = g.shape == fx.expected_shape && g.config == fx.expected_config;
        } catch (const std::exception &err) {
            entry.computed = std::string("error: ") + err.what();
            entry.pass = false;
        }
        result.entries.push_back(std::move(entry));
    }
    std::sort(result.entries.begin(), result.entries.end(),
              [](const auto &a, const auto &b) { return a.label < b.label; });
    for (const auto &e : result.entries)
        if (e.pass)
            ++result.passed;
    return result;
}

inline VerifyResult run_verify_tables(const std::string &path)
{
    return run_verify_tables(load_fixtures(path));
}

} // namespace isogeny_atlas
