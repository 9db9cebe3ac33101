#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "isogeny.hpp"

namespace isogeny_atlas {

struct ClassVertex {
    Curve model;
    TorsionGroup torsion;
};

struct ClassEdge {
    int u, v; // u < v
    long ell;

    friend bool operator<(const ClassEdge &a, const ClassEdge &b)
    {
        return std::tie(a.u, a.v, a.ell) < std::tie(b.u, b.v, b.ell);
    }
    friend bool operator==(const ClassEdge &a, const ClassEdge &b)
    {
        return a.u == b.u && a.v == b.v && a.ell == b.ell;
    }
};

struct IsogenyCounts {
    long C = 1;
    std::map<long, long> C_p;
    long max_cyclic_degree = 1;
};

// The isogeny graph of a Q-isogeny class: at most eight vertices, prime-
// labeled edges, plus the classification data filled in by classify().
struct ClassGraph {
    std::vector<ClassVertex> vertices;
    std::vector<ClassEdge> edges;
    std::string shape;               // one of the 26 isogeny-graph types
    std::vector<std::string> config; // canonical torsion tuple
    std::string table_row;           // label of the matching taxonomy row
    std::optional<CMRecord> cm;

    std::vector<int> neighbors(int v, long ell = 0) const
    {
        std::vector<int> out;
        for (const auto &e : edges) {
            if (ell != 0 && e.ell != ell)
                continue;
            if (e.u == v)
                out.push_back(e.v);
            else if (e.v == v)
                out.push_back(e.u);
        }
        return out;
    }

    int degree(int v, long ell = 0) const { return static_cast<int>(neighbors(v, ell).size()); }

    std::optional<long> edge_label(int u, int v) const
    {
        for (const auto &e : edges)
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u))
                return e.ell;
        return std::nullopt;
    }
};

// Breadth-first closure of E under all rational prime-degree isogenies,
// deduplicated up to Q-isomorphism. Torsion is attached per vertex; shape
// and configuration stay unset.
inline ClassGraph build_class(const Curve &e)
{
    ClassGraph g;
    g.vertices.push_back({e, torsion_structure(e)});
    g.cm = cm_lookup(e.j_invariant());

    std::set<ClassEdge> edge_set;
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int vi = frontier.front();
        frontier.pop_front();
        Curve model = g.vertices[vi].model;
        for (const auto &iso : all_prime_isogenies(model)) {
            int target = -1;
            for (size_t i = 0; i < g.vertices.size(); ++i)
                if (is_isomorphic(iso.codomain, g.vertices[i].model)) {
                    target = static_cast<int>(i);
                    break;
                }
            if (target < 0) {
                if (g.vertices.size() >= 8)
                    throw invariant_violation(
                        "isogeny class exceeds eight vertices (Kenku bound)");
                g.vertices.push_back({iso.codomain, torsion_structure(iso.codomain)});
                target = static_cast<int>(g.vertices.size()) - 1;
                frontier.push_back(target);
            }
            if (target == vi)
                throw invariant_violation("prime-degree self-isogeny encountered");
            ClassEdge edge{std::min(vi, target), std::max(vi, target), iso.kernel.ell};
            edge_set.insert(edge);
        }
    }
    g.edges.assign(edge_set.begin(), edge_set.end());
    return g;
}

namespace detail {

inline void shape_check(bool ok, const std::string &what)
{
    if (!ok)
        throw invariant_violation("unrecognized isogeny graph topology: " + what);
}

} // namespace detail

// Decision tree over the 26 possible graph shapes.
inline std::string classify_shape(const ClassGraph &g)
{
    const size_t n = g.vertices.size();
    std::set<long> labels;
    for (const auto &e : g.edges)
        labels.insert(e.ell);

    auto all_degrees = [&](long ell) {
        std::vector<int> d;
        for (size_t v = 0; v < n; ++v)
            d.push_back(g.degree(static_cast<int>(v), ell));
        std::sort(d.begin(), d.end());
        return d;
    };

    switch (n) {
    case 1:
        detail::shape_check(g.edges.empty(), "one vertex with edges");
        return "L1";
    case 2:
        detail::shape_check(g.edges.size() == 1, "two vertices");
        return "L2(" + std::to_string(g.edges[0].ell) + ")";
    case 3: {
        detail::shape_check(g.edges.size() == 2 && labels.size() == 1, "three vertices");
        long p = *labels.begin();
        detail::shape_check(p == 3 || p == 5, "L3 label");
        detail::shape_check(all_degrees(0) == std::vector<int>{1, 1, 2}, "L3 path");
        return "L3(" + std::to_string(p * p) + ")";
    }
    case 4: {
        if (g.edges.size() == 3 && labels == std::set<long>{2}) {
            detail::shape_check(all_degrees(0) == std::vector<int>{1, 1, 1, 3}, "T4 star");
            return "T4";
        }
        if (g.edges.size() == 3 && labels == std::set<long>{3}) {
            detail::shape_check(all_degrees(0) == std::vector<int>{1, 1, 2, 2}, "L4 path");
            return "L4";
        }
        detail::shape_check(g.edges.size() == 4 && labels.size() == 2, "four vertices");
        detail::shape_check(all_degrees(0) == std::vector<int>{2, 2, 2, 2}, "R4 cycle");
        long p = *labels.begin(), q = *labels.rbegin();
        // opposite edges carry the same label: every vertex sees both labels
        for (size_t v = 0; v < n; ++v) {
            detail::shape_check(g.degree(static_cast<int>(v), p) == 1 &&
                                    g.degree(static_cast<int>(v), q) == 1,
                                "R4 alternation");
        }
        long prod = p * q;
        detail::shape_check(prod == 6 || prod == 10 || prod == 14 || prod == 15 || prod == 21,
                            "R4 degree product");
        return "R4(" + std::to_string(prod) + ")";
    }
    case 6: {
        if (labels == std::set<long>{2}) {
            detail::shape_check(g.edges.size() == 5 &&
                                    all_degrees(0) == std::vector<int>{1, 1, 1, 1, 3, 3},
                                "T6 tree");
            return "T6";
        }
        detail::shape_check(g.edges.size() == 7 && labels == std::set<long>{2, 3}, "R6 edges");
        detail::shape_check(all_degrees(2) == std::vector<int>{1, 1, 1, 1, 1, 1} &&
                                all_degrees(3) == std::vector<int>{1, 1, 1, 1, 2, 2},
                            "R6 grid");
        return "R6";
    }
    case 8: {
        if (labels == std::set<long>{2}) {
            detail::shape_check(g.edges.size() == 7 &&
                                    all_degrees(0) == std::vector<int>{1, 1, 1, 1, 1, 3, 3, 3},
                                "T8 tree");
            return "T8";
        }
        detail::shape_check(g.edges.size() == 10 && labels == std::set<long>{2, 3}, "S edges");
        detail::shape_check(all_degrees(3) == std::vector<int>{1, 1, 1, 1, 1, 1, 1, 1} &&
                                all_degrees(2) == std::vector<int>{1, 1, 1, 1, 1, 1, 3, 3},
                            "S structure");
        return "S";
    }
    default:
        detail::shape_check(false, std::to_string(n) + " vertices");
    }
    return {};
}

namespace detail {

// Ranking for the canonical tuple: bicyclic groups precede cyclic ones, and
// larger groups precede smaller ones.
inline std::pair<int, long> label_rank(const std::string &label)
{
    bool bicyclic = label.find(',') != std::string::npos;
    long order;
    if (bicyclic) {
        long second = std::stol(label.substr(label.find(',') + 1));
        order = 2 * second;
    } else {
        order = std::stol(label.substr(1));
    }
    return {bicyclic ? 0 : 1, -order};
}

inline bool tuple_less(const std::vector<std::string> &a, const std::vector<std::string> &b)
{
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        auto ra = label_rank(a[i]), rb = label_rank(b[i]);
        if (ra != rb)
            return ra < rb;
    }
    return a.size() < b.size();
}

// All slot assignments (permutations of vertex indices) consistent with the
// shape's template and the graph's automorphisms.
inline std::vector<std::vector<int>> slot_assignments(const ClassGraph &g,
                                                      const std::string &shape)
{
    const int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<int>> out;

    auto find_by_degree = [&](int deg, long ell = 0) {
        std::vector<int> v;
        for (int i = 0; i < n; ++i)
            if (g.degree(i, ell) == deg)
                v.push_back(i);
        return v;
    };

    if (shape == "L1") {
        out.push_back({0});
    } else if (shape.starts_with("L2")) {
        out.push_back({0, 1});
        out.push_back({1, 0});
    } else if (shape.starts_with("L3")) {
        int mid = find_by_degree(2).at(0);
        auto ends = find_by_degree(1);
        out.push_back({ends[0], mid, ends[1]});
        out.push_back({ends[1], mid, ends[0]});
    } else if (shape == "L4") {
        auto ends = find_by_degree(1);
        for (int e : ends) {
            std::vector<int> path{e};
            int prev = -1, cur = e;
            while (path.size() < 4) {
                for (int nb : g.neighbors(cur))
                    if (nb != prev) {
                        prev = cur;
                        cur = nb;
                        path.push_back(nb);
                        break;
                    }
            }
            out.push_back(path);
        }
    } else if (shape == "T4") {
        int center = find_by_degree(3).at(0);
        std::vector<int> corners = g.neighbors(center);
        std::sort(corners.begin(), corners.end());
        do {
            out.push_back({center, corners[0], corners[1], corners[2]});
        } while (std::next_permutation(corners.begin(), corners.end()));
    } else if (shape == "T6") {
        auto hubs = find_by_degree(3);
        for (int flip = 0; flip < 2; ++flip) {
            int h1 = hubs[flip], h2 = hubs[1 - flip];
            std::vector<int> l1, l2;
            for (int nb : g.neighbors(h1))
                if (nb != h2)
                    l1.push_back(nb);
            for (int nb : g.neighbors(h2))
                if (nb != h1)
                    l2.push_back(nb);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    out.push_back({h1, l1[i], l1[1 - i], h2, l2[j], l2[1 - j]});
        }
    } else if (shape == "T8") {
        auto hubs = find_by_degree(3);
        // middle hub is adjacent to the two end hubs
        int mid = -1;
        for (int h : hubs) {
            int hub_neighbors = 0;
            for (int nb : g.neighbors(h))
                if (std::find(hubs.begin(), hubs.end(), nb) != hubs.end())
                    ++hub_neighbors;
            if (hub_neighbors == 2)
                mid = h;
        }
        shape_check(mid >= 0, "T8 middle hub");
        std::vector<int> ends;
        for (int h : hubs)
            if (h != mid)
                ends.push_back(h);
        int mid_leaf = -1;
        for (int nb : g.neighbors(mid))
            if (std::find(hubs.begin(), hubs.end(), nb) == hubs.end())
                mid_leaf = nb;
        shape_check(mid_leaf >= 0, "T8 middle leaf");
        for (int flip = 0; flip < 2; ++flip) {
            int e1 = ends[flip], e2 = ends[1 - flip];
            std::vector<int> l1, l2;
            for (int nb : g.neighbors(e1))
                if (nb != mid)
                    l1.push_back(nb);
            for (int nb : g.neighbors(e2))
                if (nb != mid)
                    l2.push_back(nb);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    out.push_back(
                        {e1, l1[i], l1[1 - i], mid, mid_leaf, e2, l2[j], l2[1 - j]});
        }
    } else if (shape.starts_with("R4")) {
        for (int e1 = 0; e1 < n; ++e1)
            for (int e2 : g.neighbors(e1)) {
                int e3 = -1, e4 = -1;
                for (int nb : g.neighbors(e1))
                    if (nb != e2)
                        e3 = nb;
                for (int i = 0; i < n; ++i)
                    if (i != e1 && i != e2 && i != e3)
                        e4 = i;
                // slots: E1-E2 and E3-E4 opposite edges, E1-E3 and E2-E4 too
                if (g.edge_label(e3, e4) == g.edge_label(e1, e2) &&
                    g.edge_label(e2, e4) == g.edge_label(e1, e3))
                    out.push_back({e1, e2, e3, e4});
            }
    } else if (shape == "R6") {
        // middle column: the two vertices with two 3-neighbors
        std::vector<int> mids;
        for (int i = 0; i < n; ++i)
            if (g.degree(i, 3) == 2)
                mids.push_back(i);
        shape_check(mids.size() == 2, "R6 middle column");
        for (int flip = 0; flip < 2; ++flip) {
            int mt = mids[flip], mb = mids[1 - flip];
            auto top_nbrs = g.neighbors(mt, 3);
            for (int side = 0; side < 2; ++side) {
                int lt = top_nbrs[side], rt = top_nbrs[1 - side];
                int lb = g.neighbors(lt, 2).at(0);
                int rb = g.neighbors(rt, 2).at(0);
                out.push_back({lt, lb, mt, mb, rt, rb});
            }
        }
    } else if (shape == "S") {
        std::vector<int> hubs;
        for (int i = 0; i < n; ++i)
            if (g.degree(i) == 4)
                hubs.push_back(i);
        shape_check(hubs.size() == 2, "S hubs");
        for (int flip = 0; flip < 2; ++flip) {
            int h1 = hubs[flip], h2 = hubs[1 - flip];
            std::vector<int> corners = g.neighbors(h1, 2);
            std::sort(corners.begin(), corners.end());
            do {
                std::vector<int> slots{h1, h2};
                for (int c : corners) {
                    slots.push_back(c);
                    slots.push_back(g.neighbors(c, 3).at(0));
                }
                out.push_back(slots);
            } while (std::next_permutation(corners.begin(), corners.end()));
        }
    } else {
        shape_check(false, "unknown shape tag " + shape);
    }
    return out;
}

struct TaxonomyRow {
    const char *shape;
    std::vector<const char *> config;
    const char *label;
};

// Tables of the 52 isogeny-torsion types, with one example class each.
inline const std::vector<TaxonomyRow> &taxonomy()
{
    static const std::vector<TaxonomyRow> rows = {
        {"L1", {"[1]"}, "37.a"},
        {"L2(2)", {"[2]", "[2]"}, "46.a"},
        {"L2(3)", {"[1]", "[1]"}, "196.a"},
        {"L2(3)", {"[3]", "[1]"}, "44.a"},
        {"L2(5)", {"[1]", "[1]"}, "75.c"},
        {"L2(5)", {"[5]", "[1]"}, "38.b"},
        {"L2(7)", {"[1]", "[1]"}, "208.d"},
        {"L2(7)", {"[7]", "[1]"}, "26.b"},
        {"L2(11)", {"[1]", "[1]"}, "121.a"},
        {"L2(13)", {"[1]", "[1]"}, "147.b"},
        {"L2(17)", {"[1]", "[1]"}, "14450.b"},
        {"L2(19)", {"[1]", "[1]"}, "361.a"},
        {"L2(37)", {"[1]", "[1]"}, "1225.b"},
        {"L2(43)", {"[1]", "[1]"}, "1849.b"},
        {"L2(67)", {"[1]", "[1]"}, "4489.b"},
        {"L2(163)", {"[1]", "[1]"}, "26569.b"},
        {"L3(9)", {"[1]", "[1]", "[1]"}, "175.b"},
        {"L3(9)", {"[3]", "[3]", "[1]"}, "19.a"},
        {"L3(9)", {"[9]", "[3]", "[1]"}, "54.b"},
        {"L3(25)", {"[1]", "[1]", "[1]"}, "99.d"},
        {"L3(25)", {"[5]", "[5]", "[1]"}, "11.a"},
        {"L4", {"[1]", "[1]", "[1]", "[1]"}, "432.e"},
        {"L4", {"[3]", "[3]", "[3]", "[1]"}, "27.a"},
        {"T4", {"[2,2]", "[2]", "[2]", "[2]"}, "120.a"},
        {"T4", {"[2,2]", "[4]", "[2]", "[2]"}, "33.a"},
        {"T4", {"[2,2]", "[4]", "[4]", "[2]"}, "17.a"},
        {"T6", {"[2,4]", "[4]", "[4]", "[2,2]", "[2]", "[2]"}, "24.a"},
        {"T6", {"[2,4]", "[8]", "[4]", "[2,2]", "[2]", "[2]"}, "21.a"},
        {"T6", {"[2,2]", "[2]", "[2]", "[2,2]", "[2]", "[2]"}, "126.a"},
        {"T6", {"[2,2]", "[4]", "[2]", "[2,2]", "[2]", "[2]"}, "63.a"},
        {"T8", {"[2,8]", "[8]", "[8]", "[2,4]", "[4]", "[2,2]", "[2]", "[2]"}, "210.e"},
        {"T8", {"[2,4]", "[4]", "[4]", "[2,4]", "[4]", "[2,2]", "[2]", "[2]"}, "195.a"},
        {"T8", {"[2,4]", "[4]", "[4]", "[2,4]", "[8]", "[2,2]", "[2]", "[2]"}, "15.a"},
        {"T8", {"[2,4]", "[8]", "[4]", "[2,4]", "[4]", "[2,2]", "[2]", "[2]"}, "1230.f"},
        {"T8", {"[2,2]", "[2]", "[2]", "[2,2]", "[2]", "[2,2]", "[2]", "[2]"}, "45.a"},
        {"T8", {"[2,2]", "[4]", "[2]", "[2,2]", "[2]", "[2,2]", "[2]", "[2]"}, "75.b"},
        {"R4(6)", {"[2]", "[2]", "[2]", "[2]"}, "80.b"},
        {"R4(6)", {"[6]", "[6]", "[2]", "[2]"}, "20.a"},
        {"R4(10)", {"[2]", "[2]", "[2]", "[2]"}, "150.a"},
        {"R4(10)", {"[10]", "[10]", "[2]", "[2]"}, "66.c"},
        {"R4(14)", {"[2]", "[2]", "[2]", "[2]"}, "49.a"},
        {"R4(15)", {"[1]", "[1]", "[1]", "[1]"}, "400.d"},
        {"R4(15)", {"[3]", "[3]", "[1]", "[1]"}, "50.a"},
        {"R4(15)", {"[5]", "[5]", "[1]", "[1]"}, "50.b"},
        {"R4(21)", {"[1]", "[1]", "[1]", "[1]"}, "1296.f"},
        {"R4(21)", {"[3]", "[3]", "[1]", "[1]"}, "162.b"},
        {"R6", {"[2]", "[2]", "[2]", "[2]", "[2]", "[2]"}, "98.a"},
        {"R6", {"[6]", "[6]", "[6]", "[6]", "[2]", "[2]"}, "14.a"},
        {"S", {"[2,2]", "[2,2]", "[2]", "[2]", "[2]", "[2]", "[2]", "[2]"}, "240.b"},
        {"S", {"[2,2]", "[2,2]", "[4]", "[4]", "[2]", "[2]", "[2]", "[2]"}, "150.b"},
        {"S", {"[2,6]", "[2,2]", "[6]", "[2]", "[6]", "[2]", "[6]", "[2]"}, "30.a"},
        {"S", {"[2,6]", "[2,2]", "[12]", "[4]", "[6]", "[2]", "[6]", "[2]"}, "90.c"},
    };
    return rows;
}

} // namespace detail

// Canonical torsion configuration for the assigned shape: the smallest tuple
// over all template-consistent vertex orderings (bicyclic before cyclic, then
// decreasing order), which must match a taxonomy row.
inline std::pair<std::vector<std::string>, std::string>
torsion_configuration(const ClassGraph &g, const std::string &shape)
{
    std::vector<std::string> labels;
    for (const auto &v : g.vertices)
        labels.push_back(v.torsion.label());

    std::optional<std::vector<std::string>> best;
    for (const auto &assignment : detail::slot_assignments(g, shape)) {
        std::vector<std::string> tuple;
        for (int idx : assignment)
            tuple.push_back(labels.at(idx));
        if (!best || detail::tuple_less(tuple, *best))
            best = tuple;
    }
    if (!best)
        throw invariant_violation("no slot assignment for shape " + shape);

    for (const auto &row : detail::taxonomy()) {
        if (row.shape != shape)
            continue;
        if (std::equal(best->begin(), best->end(), row.config.begin(), row.config.end(),
                       [](const std::string &a, const char *b) { return a == b; }) &&
            best->size() == row.config.size())
            return {*best, row.label};
    }
    std::string tuple_str;
    for (const auto &t : *best)
        tuple_str += t;
    throw invariant_violation("configuration " + tuple_str + " for shape " + shape +
                              " is not one of the 52 types");
}

// C_p(v) is the size of v's component in the subgraph of p-edges; the degree
// of the maximal cyclic isogeny comes from the shape.
inline IsogenyCounts isogeny_counts(const ClassGraph &g, int v)
{
    IsogenyCounts counts;
    std::set<long> primes;
    for (const auto &e : g.edges)
        primes.insert(e.ell);
    for (long p : primes) {
        // flood fill along p-edges
        std::set<int> seen{v};
        std::deque<int> todo{v};
        while (!todo.empty()) {
            int cur = todo.front();
            todo.pop_front();
            for (int nb : g.neighbors(cur, p))
                if (seen.insert(nb).second)
                    todo.push_back(nb);
        }
        counts.C_p[p] = static_cast<long>(seen.size());
        counts.C *= static_cast<long>(seen.size());
    }

    if (counts.C > 8 || counts.C == 5 || counts.C == 7)
        throw invariant_violation("C(E) = " + std::to_string(counts.C) +
                                  " violates Kenku's bounds");
    long c2 = counts.C_p.count(2) ? counts.C_p[2] : 1;
    if (c2 != 1 && c2 != 2 && c2 != 4 && c2 != 6 && c2 != 8)
        throw invariant_violation("C_2(E) = " + std::to_string(c2) + " is neither 1 nor even");

    const std::string &shape = g.shape;
    if (shape == "L1")
        counts.max_cyclic_degree = 1;
    else if (shape.starts_with("L2"))
        counts.max_cyclic_degree = std::stol(shape.substr(3));
    else if (shape.starts_with("L3"))
        counts.max_cyclic_degree = std::stol(shape.substr(3));
    else if (shape == "L4")
        counts.max_cyclic_degree = 27;
    else if (shape.starts_with("R4"))
        counts.max_cyclic_degree = std::stol(shape.substr(3));
    else if (shape == "R6")
        counts.max_cyclic_degree = 18;
    else if (shape == "T4")
        counts.max_cyclic_degree = 4;
    else if (shape == "T6")
        counts.max_cyclic_degree = 8;
    else if (shape == "T8")
        counts.max_cyclic_degree = 16;
    else if (shape == "S")
        counts.max_cyclic_degree = 12;
    return counts;
}

// Full pipeline: closure, shape, canonical configuration, table row.
inline ClassGraph classify(const Curve &e)
{
    ClassGraph g = build_class(e);
    g.shape = classify_shape(g);
    auto [config, row] = torsion_configuration(g, g.shape);
    g.config = config;
    g.table_row = row;
    return g;
}

} // namespace isogeny_atlas
