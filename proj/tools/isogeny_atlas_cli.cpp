#include <iostream>

#include <CLI11.hpp>

#include <isogeny_atlas/report.hpp>

using namespace isogeny_atlas;

namespace {

// exit codes: 0 success, 1 usage error, 2 mathematical invariant violation,
// 3 I/O error
constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_invariant = 2;
constexpr int exit_io = 3;

Curve read_curve(const std::string &text, bool force_short)
{
    Curve e = parse_curve_input(text);
    if (force_short && !e.is_short())
        throw unsupported_input("--short expects input of the form [A,B]");
    return e;
}

void print_human_report(const GraphReport &r)
{
    std::cout << "curve:   " << Curve::from_a_invariants(r.input).str() << "\n";
    std::cout << "class:   " << r.vertices.size() << " curve(s), " << r.edges.size()
              << " isogeny edge(s)\n";
    std::cout << "shape:   " << r.shape << "\n";
    std::cout << "config:  (";
    for (size_t i = 0; i < r.config.size(); ++i)
        std::cout << (i ? "," : "") << r.config[i];
    std::cout << ")\n";
    std::cout << "row:     " << r.table_row << "\n";
    if (r.cm)
        std::cout << "cm:      j = " << to_string(r.cm->j) << ", dK = " << r.cm->disc_K
                  << "\n";
    for (size_t i = 0; i < r.vertices.size(); ++i) {
        const auto &v = r.vertices[i];
        std::cout << "  E" << i + 1 << ": "
                  << Curve::from_a_invariants(v.a).str() << "  torsion " << v.torsion
                  << "  j = " << to_string(v.j) << "  C = " << r.counts[i].C << "\n";
    }
    for (const auto &e : r.edges)
        std::cout << "  E" << e.u + 1 << " --" << e.ell << "-- E" << e.v + 1 << "\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"isogeny-atlas: Q-isogeny classes of elliptic curves over Q,\n"
                 "their torsion subgroups, and the isogeny-torsion graph taxonomy"};
    app.require_subcommand(1);

    std::string curve_text, format = "json", fixture_path;
    long ell_filter = 0;
    bool force_short = false, as_json = false;

    auto add_curve_opts = [&](CLI::App *cmd) {
        cmd->add_option("curve", curve_text, "curve as [a1,a2,a3,a4,a6] or [A,B]")
            ->required();
        cmd->add_flag("--short", force_short, "interpret input as a short model [A,B]");
    };

    CLI::App *classify_cmd = app.add_subcommand("classify", "classify the isogeny class");
    add_curve_opts(classify_cmd);
    classify_cmd->add_flag("--json", as_json, "emit the JSON report");

    CLI::App *graph_cmd = app.add_subcommand("graph", "emit the isogeny-torsion graph");
    add_curve_opts(graph_cmd);
    graph_cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "dot"}));

    CLI::App *torsion_cmd = app.add_subcommand("torsion", "rational torsion subgroup");
    add_curve_opts(torsion_cmd);
    torsion_cmd->add_flag("--json", as_json, "emit JSON");

    CLI::App *isog_cmd = app.add_subcommand("isogenies", "rational prime-degree isogenies");
    add_curve_opts(isog_cmd);
    isog_cmd->add_option("--ell", ell_filter, "restrict to one prime degree");
    isog_cmd->add_flag("--json", as_json, "emit JSON");

    CLI::App *verify_cmd =
        app.add_subcommand("verify-tables", "check a fixture corpus of expected types");
    verify_cmd->add_option("path", fixture_path, "fixture file (JSON lines)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (classify_cmd->parsed()) {
            GraphReport r = run_classify(read_curve(curve_text, force_short));
            if (as_json)
                std::cout << to_json(r).dump(2) << "\n";
            else
                print_human_report(r);
        } else if (graph_cmd->parsed()) {
            GraphReport r = run_classify(read_curve(curve_text, force_short));
            if (format == "dot")
                std::cout << emit_dot(r);
            else
                std::cout << to_json(r).dump(2) << "\n";
        } else if (torsion_cmd->parsed()) {
            Curve e = read_curve(curve_text, force_short);
            TorsionGroup t = torsion_structure(e);
            if (as_json) {
                nlohmann::json j;
                j["torsion"] = t.label();
                j["order"] = t.order();
                j["generators"] = nlohmann::json::array();
                for (const auto &p : t.generators)
                    j["generators"].push_back({{"x", to_string(p.x)}, {"y", to_string(p.y)}});
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << t.label() << "\n";
                for (const auto &p : t.generators)
                    std::cout << "  generator (" << to_string(p.x) << ", " << to_string(p.y)
                              << ")\n";
            }
        } else if (isog_cmd->parsed()) {
            Curve e = read_curve(curve_text, force_short);
            std::vector<PrimeIsogeny> isos;
            if (ell_filter == 0)
                isos = all_prime_isogenies(e);
            else if (ell_filter == 2)
                for (const auto &k : two_isogeny_kernels(e))
                    isos.push_back({short_model(e).first, k,
                                    velu_codomain(short_model(e).first, k)});
            else if (ell_filter == 3 || ell_filter == 5 || ell_filter == 7 ||
                     ell_filter == 13)
                for (const auto &k : odd_kernel_polynomials(e, ell_filter))
                    isos.push_back({short_model(e).first, k,
                                    velu_codomain(short_model(e).first, k)});
            else {
                for (const auto &iso : sporadic_isogenies(e))
                    if (iso.kernel.ell == ell_filter)
                        isos.push_back(iso);
            }
            if (as_json) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto &iso : isos) {
                    nlohmann::json j;
                    j["ell"] = iso.kernel.ell;
                    j["kernel_polynomial"] = iso.kernel.poly.str();
                    j["codomain"] = {{"A", to_string(iso.codomain.A())},
                                     {"B", to_string(iso.codomain.B())}};
                    arr.push_back(j);
                }
                std::cout << arr.dump(2) << "\n";
            } else {
                if (isos.empty())
                    std::cout << "no rational prime-degree isogenies\n";
                for (const auto &iso : isos)
                    std::cout << "degree " << iso.kernel.ell << ": kernel "
                              << iso.kernel.poly.str() << " -> y^2 = x^3 + ("
                              << to_string(iso.codomain.A()) << ")x + ("
                              << to_string(iso.codomain.B()) << ")\n";
            }
        } else if (verify_cmd->parsed()) {
            VerifyResult result = run_verify_tables(fixture_path);
            for (const auto &entry : result.entries)
                std::cout << (entry.pass ? "PASS " : "FAIL ") << entry.label
                          << "  expected " << entry.expected
                          << (entry.pass ? "" : "  computed " + entry.computed) << "\n";
            std::cout << result.passed << "/" << result.entries.size() << " entries match\n";
            if (!result.all_passed())
                return exit_invariant;
        }
    } catch (const invariant_violation &e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return exit_invariant;
    } catch (const unsupported_input &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::runtime_error &e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}
