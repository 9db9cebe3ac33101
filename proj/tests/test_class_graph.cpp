#include <catch2/catch_amalgamated.hpp>

#include <isogeny_atlas/class_graph.hpp>

#include "support.hpp"

using namespace isogeny_atlas;

namespace {

Curve curve_17a2()
{
    return Curve::from_a_invariants(Rat(1), Rat(-1), Rat(1), Rat(-6), Rat(-4));
}

Curve curve_from_j(const Rat &j)
{
    // a (possibly large) short model with the given j-invariant, j != 0, 1728
    Rat A = 3 * j * (1728 - j);
    Rat B = 2 * j * (1728 - j) * (1728 - j);
    return Curve::short_model_curve(A, B);
}

} // namespace

TEST_CASE("build_class examples")
{
    SECTION("17.a: four vertices, three 2-edges, star-shaped")
    {
        ClassGraph g = build_class(curve_17a2());
        REQUIRE(g.vertices.size() == 4);
        REQUIRE(g.edges.size() == 3);
        for (const auto &e : g.edges) {
            CHECK(e.ell == 2);
            CHECK(e.u == 0); // the input curve is the center
        }
        CHECK(!g.cm.has_value());
    }
    SECTION("y^2 = x^3 + 16: a path of three 3-edges")
    {
        ClassGraph g = build_class(Curve::short_model_curve(Rat(0), Rat(16)));
        REQUIRE(g.vertices.size() == 4);
        REQUIRE(g.edges.size() == 3);
        for (const auto &e : g.edges)
            CHECK(e.ell == 3);
        std::multiset<int> degrees;
        for (int v = 0; v < 4; ++v)
            degrees.insert(g.degree(v));
        CHECK(degrees == std::multiset<int>{1, 1, 2, 2});
        REQUIRE(g.cm.has_value());
        CHECK(g.cm->disc_K == -3);
    }
    SECTION("a generic curve is alone in its class")
    {
        ClassGraph g = build_class(Curve::short_model_curve(Rat(3), Rat(5)));
        CHECK(g.vertices.size() == 1);
        CHECK(g.edges.empty());
    }
    SECTION("singular input rejected")
    {
        CHECK_THROWS_AS(Curve::short_model_curve(Rat(0), Rat(0)), singular_curve_error);
    }
}

TEST_CASE("classification examples")
{
    SECTION("17.a is T4 ([2,2],[4],[4],[2])")
    {
        ClassGraph g = classify(curve_17a2());
        CHECK(g.shape == "T4");
        CHECK(g.config == std::vector<std::string>{"[2,2]", "[4]", "[4]", "[2]"});
        CHECK(g.table_row == "17.a");
    }
    SECTION("27.a (y^2 = x^3 + 16) is L4 ([3],[3],[3],[1])")
    {
        ClassGraph g = classify(Curve::short_model_curve(Rat(0), Rat(16)));
        CHECK(g.shape == "L4");
        CHECK(g.config == std::vector<std::string>{"[3]", "[3]", "[3]", "[1]"});
        CHECK(g.table_row == "27.a");
    }
    SECTION("y^2 = x^3 - 11x + 14 is T4 ([2,2],[4],[4],[2])")
    {
        ClassGraph g = classify(Curve::short_model_curve(Rat(-11), Rat(14)));
        CHECK(g.shape == "T4");
        CHECK(g.config == std::vector<std::string>{"[2,2]", "[4]", "[4]", "[2]"});
        REQUIRE(g.cm.has_value());
        CHECK(g.cm->disc_K == -4);
    }
    SECTION("y^2 = x^3 + 1 is R4(6) ([6],[6],[2],[2])")
    {
        ClassGraph g = classify(Curve::short_model_curve(Rat(0), Rat(1)));
        CHECK(g.shape == "R4(6)");
        CHECK(g.config == std::vector<std::string>{"[6]", "[6]", "[2]", "[2]"});
    }
    SECTION("14.a is R6 ([6],[6],[6],[6],[2],[2])")
    {
        ClassGraph g =
            classify(Curve::from_a_invariants(Rat(1), Rat(0), Rat(1), Rat(4), Rat(-6)));
        CHECK(g.shape == "R6");
        CHECK(g.config ==
              std::vector<std::string>{"[6]", "[6]", "[6]", "[6]", "[2]", "[2]"});
        CHECK(g.table_row == "14.a");
    }
    SECTION("30.a is the special S graph")
    {
        ClassGraph g =
            classify(Curve::from_a_invariants(Rat(1), Rat(0), Rat(1), Rat(1), Rat(2)));
        CHECK(g.shape == "S");
        CHECK(g.config == std::vector<std::string>{"[2,6]", "[2,2]", "[6]", "[2]", "[6]",
                                                   "[2]", "[6]", "[2]"});
        CHECK(g.table_row == "30.a");
    }
    SECTION("a 21-isogeny class is R4(21) with torsion 0 or Z/3")
    {
        ClassGraph g = classify(curve_from_j(make_rat(3375, 2)));
        CHECK(g.shape == "R4(21)");
        for (const auto &v : g.vertices)
            CHECK((v.torsion.label() == "[1]" || v.torsion.label() == "[3]"));
    }
}

TEST_CASE("rebuilding from any vertex gives the same classification")
{
    std::vector<Curve> seeds{
        curve_17a2(),
        Curve::short_model_curve(Rat(0), Rat(16)),
        Curve::short_model_curve(Rat(0), Rat(1)),
        Curve::from_a_invariants(Rat(1), Rat(0), Rat(1), Rat(4), Rat(-6)),
        Curve::from_a_invariants(Rat(1), Rat(0), Rat(1), Rat(1), Rat(2)),
    };
    for (const Curve &seed : seeds) {
        ClassGraph g = classify(seed);
        for (const auto &v : g.vertices) {
            ClassGraph h = classify(v.model);
            CHECK(h.shape == g.shape);
            CHECK(h.config == g.config);
            CHECK(h.vertices.size() == g.vertices.size());
        }
    }
}

TEST_CASE("isogeny counts")
{
    SECTION("center of 17.a: C = C_2 = 4")
    {
        ClassGraph g = classify(curve_17a2());
        IsogenyCounts c = isogeny_counts(g, 0);
        CHECK(c.C == 4);
        CHECK(c.C_p.at(2) == 4);
        CHECK(c.max_cyclic_degree == 4);
    }
    SECTION("end of the L4 chain: C = C_3 = 4 with a 27-isogeny")
    {
        ClassGraph g = classify(Curve::short_model_curve(Rat(0), Rat(16)));
        for (int v = 0; v < 4; ++v) {
            IsogenyCounts c = isogeny_counts(g, v);
            CHECK(c.C == 4);
            CHECK(c.C_p.at(3) == 4);
            CHECK(c.max_cyclic_degree == 27);
        }
    }
    SECTION("R4(6) vertices: C = 4 = C_2 C_3")
    {
        ClassGraph g = classify(Curve::short_model_curve(Rat(0), Rat(1)));
        IsogenyCounts c = isogeny_counts(g, 0);
        CHECK(c.C == 4);
        CHECK(c.C_p.at(2) == 2);
        CHECK(c.C_p.at(3) == 2);
        CHECK(c.max_cyclic_degree == 6);
    }
}

TEST_CASE("class-level invariants on a random batch")
{
    auto rng = test_support::seeded_rng(31337);
    static const std::set<std::string> mazur{
        "[1]", "[2]", "[3]", "[4]", "[5]", "[6]", "[7]", "[8]",
        "[9]", "[10]", "[12]", "[2,2]", "[2,4]", "[2,6]", "[2,8]"};
    int done = 0;
    while (done < 25) {
        long a = static_cast<long>(rng() % 41) - 20;
        long b = static_cast<long>(rng() % 41) - 20;
        if (4 * a * a * a + 27 * b * b == 0)
            continue;
        ++done;
        ClassGraph g = classify(Curve::short_model_curve(Rat(a), Rat(b)));

        bool any_two_torsion = false, all_two_torsion = true;
        for (const auto &v : g.vertices) {
            CHECK(mazur.count(v.torsion.label()) == 1);
            bool has2 = v.torsion.order() % 2 == 0;
            any_two_torsion |= has2;
            all_two_torsion &= has2;
        }
        // a rational 2-torsion point on one vertex forces one on every vertex
        if (any_two_torsion)
            CHECK(all_two_torsion);

        for (size_t v = 0; v < g.vertices.size(); ++v) {
            IsogenyCounts c = isogeny_counts(g, static_cast<int>(v));
            CHECK(c.C <= 8);
            CHECK(c.C != 5);
            CHECK(c.C != 7);
            CHECK(static_cast<size_t>(c.C) == g.vertices.size());
        }
    }
}

TEST_CASE("L4 end vertices have the 27-isogeny j-invariant")
{
    for (long t : {1L, 2L}) {
        Curve e = Curve::short_model_curve(Rat(0), Rat(16 * t * t * t));
        ClassGraph g = classify(e);
        REQUIRE(g.shape == "L4");
        // ends = degree-1 vertices
        Rat expected(-12288000); // -2^15 * 3 * 5^3
        for (int v = 0; v < 4; ++v)
            if (g.degree(v) == 1)
                CHECK(g.vertices[v].model.j_invariant() == expected);
        // configuration per the t = 1 vs t != 1 split
        if (t == 1)
            CHECK(g.config == std::vector<std::string>{"[3]", "[3]", "[3]", "[1]"});
        else
            CHECK(g.config == std::vector<std::string>{"[1]", "[1]", "[1]", "[1]"});
    }
}

TEST_CASE("forbidden configurations are not in the taxonomy")
{
    auto forbidden1 = std::vector<std::string>{"[2,2]", "[2,2]", "[4]", "[4]",
                                               "[4]", "[4]", "[2]", "[2]"};
    auto forbidden2 = std::vector<std::string>{"[2,6]", "[2,2]", "[12]", "[4]",
                                               "[12]", "[4]", "[6]", "[2]"};
    auto forbidden3 = std::vector<std::string>{"[2,2]", "[4]", "[4]", "[4]"};
    for (const auto &row : detail::taxonomy()) {
        std::vector<std::string> cfg(row.config.begin(), row.config.end());
        CHECK(cfg != forbidden1);
        CHECK(cfg != forbidden2);
        CHECK(cfg != forbidden3);
    }
    CHECK(detail::taxonomy().size() == 52);
}
