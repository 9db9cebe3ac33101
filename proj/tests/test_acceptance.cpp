// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. The fixture corpus is data/fixtures.jsonl; expectations there cover
// every row of the taxonomy tables.
#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <iostream>

#include <isogeny_atlas/report.hpp>

#include "support.hpp"

using namespace isogeny_atlas;

namespace {

std::string fixtures_path()
{
#ifdef ISOGENY_ATLAS_DATA_DIR
    return std::string(ISOGENY_ATLAS_DATA_DIR) + "/fixtures.jsonl";
#else
    return "data/fixtures.jsonl";
#endif
}

void report(int criterion, const std::string &name, bool pass, const std::string &detail = "")
{
    std::cout << "[criterion " << criterion << "] " << (pass ? "PASS" : "FAIL") << " " << name
              << (detail.empty() ? "" : ": " + detail) << std::endl;
}

struct Forbidden {
    static const std::vector<std::vector<std::string>> &configs()
    {
        static const std::vector<std::vector<std::string>> c{
            {"[2,2]", "[2,2]", "[4]", "[4]", "[4]", "[4]", "[2]", "[2]"},
            {"[2,6]", "[2,2]", "[12]", "[4]", "[12]", "[4]", "[6]", "[2]"},
            {"[2,2]", "[4]", "[4]", "[4]"},
        };
        return c;
    }
};

// every configuration produced anywhere in this suite is checked against the
// two impossible S-configurations and the impossible T4 configuration
std::vector<std::vector<std::string>> &seen_configs()
{
    static std::vector<std::vector<std::string>> seen;
    return seen;
}

void record_config(const ClassGraph &g) { seen_configs().push_back(g.config); }

// edges collected for the dual-isogeny criterion: (domain model, codomain
// model, prime)
struct SeenEdge {
    Curve domain, codomain;
    long ell;
};
std::vector<SeenEdge> &seen_edges()
{
    static std::vector<SeenEdge> edges;
    return edges;
}

void record_edges(const ClassGraph &g)
{
    // cap the sample so criterion 7 stays fast but still covers every class
    int taken = 0;
    for (const auto &e : g.edges) {
        if (taken++ >= 4)
            break;
        seen_edges().push_back(
            {g.vertices[e.u].model, g.vertices[e.v].model, e.ell});
    }
}

} // namespace

TEST_CASE("criterion 1: table reproduction over the fixture corpus")
{
    auto start = std::chrono::steady_clock::now();
    auto fixtures = load_fixtures(fixtures_path());
    VerifyResult result = run_verify_tables(fixtures);

    // the corpus must witness every taxonomy row at least once
    std::set<std::string> rows_needed;
    for (const auto &row : detail::taxonomy())
        rows_needed.insert(std::string(row.shape) + "|" + row.label);
    std::set<std::string> rows_seen;
    size_t distinct_types = 0;
    {
        std::set<std::pair<std::string, std::vector<std::string>>> types;
        for (const auto &fx : fixtures)
            types.insert({fx.expected_shape, fx.expected_config});
        distinct_types = types.size();
    }

    for (const auto &entry : result.entries)
        if (!entry.pass)
            std::cout << "    mismatch " << entry.label << ": expected " << entry.expected
                      << ", computed " << entry.computed << std::endl;

    // collect classifications for criteria 5 and 7
    for (const auto &fx : fixtures) {
        try {
            ClassGraph g = classify(Curve::from_a_invariants(fx.a_invariants));
            record_config(g);
            record_edges(g);
        } catch (const std::exception &) {
        }
    }

    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = result.all_passed() && distinct_types >= 52;
    report(1, "verify-tables on the bundled corpus", pass,
           std::to_string(result.passed) + "/" + std::to_string(result.entries.size()) +
               " entries, " + std::to_string(distinct_types) +
               " distinct (shape, config) types, " + std::to_string(secs) + "s");
    CHECK(result.all_passed());
    CHECK(distinct_types >= 52);
    CHECK(secs < 600.0);
}

TEST_CASE("criterion 2: CM table models classify exactly")
{
    auto start = std::chrono::steady_clock::now();
    struct Row {
        const char *model;
        const char *shape;
        std::vector<std::string> config;
    };
    // the explicit models of the CM table (one t per parameterized family,
    // plus each fixed-j row through a verified representative)
    std::vector<Row> rows{
        {"[0,1]", "R4(6)", {"[6]", "[6]", "[2]", "[2]"}},                      // 36.a4
        {"[0,8]", "R4(6)", {"[2]", "[2]", "[2]", "[2]"}},                      // 144.a3
        {"[0,16]", "L4", {"[3]", "[3]", "[3]", "[1]"}},                        // 27.a3
        {"[0,128]", "L4", {"[1]", "[1]", "[1]", "[1]"}},                       // 432.e3
        {"[0,4]", "L2(3)", {"[3]", "[1]"}},                                    // 108.a2
        {"[0,5]", "L2(3)", {"[1]", "[1]"}},                                    // 225.c1
        {"[-15,22]", "R4(6)", {"[6]", "[6]", "[2]", "[2]"}},                   // 36.a1
        {"[-60,176]", "R4(6)", {"[2]", "[2]", "[2]", "[2]"}},                  // 144.a1
        {"[-38880,2950992]", "L4", {"[3]", "[3]", "[3]", "[1]"}},              // 27.a2
        {"[-155520,23607936]", "L4", {"[1]", "[1]", "[1]", "[1]"}},            // 432.e1
        {"[-1,0]", "T4", {"[2,2]", "[4]", "[4]", "[2]"}},                      // 32.a3
        {"[1,0]", "T4", {"[2,2]", "[4]", "[2]", "[2]"}},                       // 64.a3
        {"[9,0]", "T4", {"[2,2]", "[2]", "[2]", "[2]"}},                       // 288.d3
        {"[2,0]", "L2(2)", {"[2]", "[2]"}},                                    // 256.b1
        {"[-11,14]", "T4", {"[2,2]", "[4]", "[4]", "[2]"}},                    // 32.a2
        {"[-44,112]", "T4", {"[2,2]", "[4]", "[2]", "[2]"}},                   // 64.a1
        {"[-99,378]", "T4", {"[2,2]", "[2]", "[2]", "[2]"}},                   // 288.d1
        {"[-35,-98]", "R4(14)", {"[2]", "[2]", "[2]", "[2]"}},                 // 49.a2
        {"[0,4,0,2,0]", "L2(2)", {"[2]", "[2]"}},                              // 256.a1
        {"[0,-1,1,-7,10]", "L2(11)", {"[1]", "[1]"}},                          // 121.b1
        {"[0,0,1,-38,90]", "L2(19)", {"[1]", "[1]"}},                          // 361.a1
        {"[0,0,1,-860,9707]", "L2(43)", {"[1]", "[1]"}},                       // 1849.b1
        {"[0,0,1,-7370,243528]", "L2(67)", {"[1]", "[1]"}},                    // 4489.b1
        {"[0,0,1,-2174420,1234136692]", "L2(163)", {"[1]", "[1]"}},            // 26569.a1
    };
    // j = 16581375 (disc -7, second row) through its reduced model
    {
        Rat j(16581375);
        Rat A = 3 * j * (1728 - j), B = 2 * j * (1728 - j) * (1728 - j);
        ClassGraph g = classify(Curve::short_model_curve(A, B));
        bool ok = g.shape == "R4(14)" &&
                  g.config == std::vector<std::string>{"[2]", "[2]", "[2]", "[2]"};
        CHECK(ok);
        record_config(g);
        record_edges(g);
        if (!ok)
            std::cout << "    mismatch for j=16581375: " << g.shape << std::endl;
    }
    // j = 8000 via the 256.a1 model is in `rows`

    size_t passed = 0;
    for (const auto &row : rows) {
        ClassGraph g = classify(parse_curve_input(row.model));
        record_config(g);
        record_edges(g);
        bool ok = g.shape == row.shape && g.config == row.config;
        if (ok)
            ++passed;
        else
            std::cout << "    mismatch " << row.model << ": got " << g.shape << std::endl;
        CHECK(ok);
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(2, "CM-table models", passed == rows.size(),
           std::to_string(passed) + "/" + std::to_string(rows.size()) + " rows, " +
               std::to_string(secs) + "s");
    CHECK(secs < 10.0 * static_cast<double>(rows.size()));
}

TEST_CASE("criterion 3: entry-point independence")
{
    auto fixtures = load_fixtures(fixtures_path());
    size_t classes = 0, failures = 0;
    for (const auto &fx : fixtures) {
        ClassGraph g;
        try {
            g = classify(Curve::from_a_invariants(fx.a_invariants));
        } catch (const std::exception &) {
            continue; // criterion 1 already reports these
        }
        ++classes;
        for (const auto &v : g.vertices) {
            ClassGraph h = classify(v.model);
            if (h.shape != g.shape || h.config != g.config) {
                ++failures;
                std::cout << "    rebuild mismatch inside " << fx.label << std::endl;
            }
        }
    }
    report(3, "rebuild from every vertex", failures == 0,
           std::to_string(classes) + " classes, " + std::to_string(failures) + " failures");
    CHECK(failures == 0);
    CHECK(classes > 0);
}

TEST_CASE("criterion 4: Kenku invariant suite on random curves")
{
    auto start = std::chrono::steady_clock::now();
    auto rng = test_support::seeded_rng(0xACCE5);
    static const std::set<std::string> mazur{
        "[1]", "[2]", "[3]", "[4]", "[5]", "[6]", "[7]", "[8]",
        "[9]", "[10]", "[12]", "[2,2]", "[2,4]", "[2,6]", "[2,8]"};
    const std::set<std::string> shapes26 = [] {
        std::set<std::string> s;
        for (const auto &row : detail::taxonomy())
            s.insert(row.shape);
        return s;
    }();

    int done = 0, violations = 0;
    while (done < 300) {
        long a = static_cast<long>(rng() % 101) - 50;
        long b = static_cast<long>(rng() % 101) - 50;
        if (4 * a * a * a + 27 * b * b == 0)
            continue;
        ++done;
        ClassGraph g = classify(Curve::short_model_curve(Rat(a), Rat(b)));
        record_config(g);
        record_edges(g);

        if (!shapes26.count(g.shape))
            ++violations;
        bool row_found = false;
        for (const auto &row : detail::taxonomy())
            if (row.shape == g.shape &&
                std::vector<std::string>(row.config.begin(), row.config.end()) == g.config)
                row_found = true;
        if (!row_found)
            ++violations;
        for (const auto &v : g.vertices)
            if (!mazur.count(v.torsion.label()))
                ++violations;
        for (size_t v = 0; v < g.vertices.size(); ++v) {
            IsogenyCounts c = isogeny_counts(g, static_cast<int>(v));
            long c2 = c.C_p.count(2) ? c.C_p.at(2) : 1;
            if (c.C > 8 || c.C == 5 || c.C == 7 ||
                (c2 != 1 && c2 != 2 && c2 != 4 && c2 != 6 && c2 != 8))
                ++violations;
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(4, "300 random short models, |A|,|B| <= 50", violations == 0,
           std::to_string(violations) + " violations, " + std::to_string(secs) + "s");
    CHECK(violations == 0);
    CHECK(secs < 900.0);
}

TEST_CASE("criterion 5: the impossible configurations never appear")
{
    size_t occurrences = 0;
    for (const auto &cfg : seen_configs())
        for (const auto &bad : Forbidden::configs())
            if (cfg == bad)
                ++occurrences;
    report(5, "forbidden S and T4 configurations absent across criteria 1-4",
           occurrences == 0,
           std::to_string(seen_configs().size()) + " configurations checked");
    CHECK(occurrences == 0);
    CHECK(seen_configs().size() > 300);
}

TEST_CASE("criterion 6: torsion oracle equivalence")
{
    auto start = std::chrono::steady_clock::now();
    auto rng = test_support::seeded_rng(0x70AC);
    int done = 0, violations = 0, nontrivial = 0;
    while (done < 100) {
        long a = static_cast<long>(rng() % 41) - 20;
        long b = static_cast<long>(rng() % 41) - 20;
        if (4 * a * a * a + 27 * b * b == 0)
            continue;
        ++done;
        Curve e = Curve::short_model_curve(Rat(a), Rat(b));
        TorsionGroup t = torsion_structure(e);

        // reduction bound: |tors| divides #E(F_p) at three good odd primes
        Int disc_num = e.discriminant().get_num();
        long bound_gcd = 0;
        int used = 0;
        for (Int p = 3; used < 3 && p < 300; p = next_prime(p)) {
            if (mpz_divisible_p(disc_num.get_mpz_t(), p.get_mpz_t()))
                continue;
            ++used;
            long pl = p.get_si();
            long np = pl + 1 - trace_mod_p(Int(a), Int(b), pl);
            if (np % static_cast<long>(t.order()) != 0)
                ++violations;
            bound_gcd = bound_gcd == 0 ? np : std::gcd(bound_gcd, np);
        }

        // brute-force oracle on curves the reduction bound says may have
        // torsion: collect all integral points via the y^2 | lhs divisor walk
        if (bound_gcd > 1) {
            ++nontrivial;
            std::set<std::pair<std::string, std::string>> found; // x, y of torsion points
            Int disc16 = 16 * detail::abs_int(Int(4 * a * a * a + 27 * b * b));
            for (Int y = 0; y * y <= disc16; ++y) {
                if (y > 0 && !mpz_divisible_p(disc16.get_mpz_t(), Int(y * y).get_mpz_t()))
                    continue;
                // integer roots x of x^3 + ax + (b - y^2)
                Int c = Int(b) - y * y;
                std::vector<Int> roots;
                if (c == 0)
                    roots.push_back(0);
                for (const Int &d : divisors(c == 0 ? Int(1) : c))
                    for (int s : {1, -1}) {
                        Int x = s * d;
                        if (x * x * x + a * x + c == 0)
                            roots.push_back(x);
                    }
                for (const Int &x : roots) {
                    Point p(Rat(x), Rat(y));
                    if (!e.contains(p))
                        continue;
                    int order = point_order(e, p);
                    if (order > 0) {
                        found.insert({to_string(p.x), to_string(p.y)});
                        found.insert({to_string(p.x), to_string(Rat(-y))});
                    }
                }
            }
            // the found points, plus infinity, must be exactly the torsion group
            size_t group_size = found.size() + 1;
            if (group_size != t.order())
                ++violations;
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(6, "division-polynomial torsion vs brute force + reduction", violations == 0,
           std::to_string(nontrivial) + " nontrivial cases, " + std::to_string(violations) +
               " violations, " + std::to_string(secs) + "s");
    CHECK(violations == 0);
    CHECK(nontrivial > 5);
}

TEST_CASE("criterion 7: dual-isogeny symmetry for every recorded edge")
{
    auto start = std::chrono::steady_clock::now();
    size_t checked = 0, violations = 0;
    for (const auto &edge : seen_edges()) {
        ++checked;
        auto has_dual = [&](const Curve &from, const Curve &to) {
            std::vector<PrimeIsogeny> isos;
            auto [s, tau] = short_model(from);
            (void)tau;
            if (edge.ell == 2) {
                for (const auto &k : two_isogeny_kernels(s))
                    isos.push_back({s, k, velu_codomain(s, k)});
            } else if (edge.ell <= 13) {
                for (const auto &k : odd_kernel_polynomials(s, edge.ell))
                    isos.push_back({s, k, velu_codomain(s, k)});
            } else {
                isos = sporadic_isogenies(s);
            }
            for (const auto &iso : isos)
                if (iso.kernel.ell == edge.ell && is_isomorphic(iso.codomain, to))
                    return true;
            return false;
        };
        if (!has_dual(edge.codomain, edge.domain) || !has_dual(edge.domain, edge.codomain))
            ++violations;
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(7, "dual isogenies recover the domain", violations == 0,
           std::to_string(checked) + " edges, " + std::to_string(violations) +
               " violations, " + std::to_string(secs) + "s");
    CHECK(violations == 0);
    CHECK(checked > 50);
}
