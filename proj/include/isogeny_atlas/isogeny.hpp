#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "detail/sha256.hpp"
#include "torsion.hpp"

namespace isogeny_atlas {

// Prime degrees a rational isogeny can have.
inline const std::vector<long> &admissible_isogeny_degrees()
{
    static const std::vector<long> degs{2, 3, 5, 7, 11, 13, 17, 19, 37, 43, 67, 163};
    return degs;
}

// A rational cyclic subgroup of prime order, described by its monic kernel
// polynomial in the x of the short model it was computed on.
struct KernelDescriptor {
    long ell;
    QPoly poly; // degree 1 for ell = 2, (ell-1)/2 otherwise
};

struct PrimeIsogeny {
    Curve domain; // short model
    KernelDescriptor kernel;
    Curve codomain; // short model
};

namespace detail {

struct VeluData {
    QPoly num, den; // xi(x) = num/den
    Rat Aprime, Bprime;
};

// Velu's formulas from the kernel polynomial on y^2 = x^3 + Ax + B. The
// isogeny is (xi(x), y xi'(x)).
inline VeluData velu_from_kernel(const Rat &A, const Rat &B, const QPoly &f, long ell)
{
    VeluData v;
    QPoly rhs{B, A, Rat(0), Rat(1)};
    if (ell == 2) {
        Rat x0 = -f.coeff(0);
        Rat t = 3 * x0 * x0 + A;
        Rat w = x0 * t;
        v.Aprime = A - 5 * t;
        v.Bprime = B - 7 * w;
        v.num = QPoly{t, -x0, Rat(1)}; // x^2 - x0 x + t
        v.den = f;
        return v;
    }
    int d = f.degree();
    Rat e1 = -f.coeff(d - 1);
    Rat e2 = d >= 2 ? f.coeff(d - 2) : Rat(0);
    Rat e3 = d >= 3 ? -f.coeff(d - 3) : Rat(0);
    Rat p1 = e1;
    Rat p2 = e1 * e1 - 2 * e2;
    Rat p3 = e1 * e1 * e1 - 3 * e1 * e2 + 3 * e3;
    Rat t = 6 * p2 + 2 * A * d;
    Rat w = 10 * p3 + 6 * A * p1 + 4 * B * d;
    v.Aprime = A - 5 * t;
    v.Bprime = B - 7 * w;

    QPoly fp = f.derivative();
    QPoly fpp = fp.derivative();
    QPoly lead = QPoly{-2 * e1, Rat(2 * d + 1)}; // (2d+1)x - 2e1
    v.num = lead * f * f - 2 * QPoly{A, Rat(0), Rat(3)} * fp * f + 4 * rhs * (fp * fp - fpp * f);
    v.den = f * f;
    return v;
}

// gcd(f, g) = 1 certified by a single good prime; falls back to the exact
// subresultant gcd when no certificate turns up.
inline bool certified_coprime(const QPoly &f, const QPoly &g)
{
    auto [uf, zf] = clear_denominators(f);
    auto [ug, zg] = clear_denominators(g);
    (void)uf;
    (void)ug;
    Int p = 3;
    for (int tries = 0; tries < 25; ++tries) {
        p = next_prime(p);
        if (mpz_divisible_p(zf.leading().get_mpz_t(), p.get_mpz_t()) ||
            mpz_divisible_p(zg.leading().get_mpz_t(), p.get_mpz_t()))
            continue;
        if (gcd(ModPoly::from_zpoly(zf, p), ModPoly::from_zpoly(zg, p)).degree() == 0)
            return true;
    }
    return poly_gcd(f, g).degree() == 0;
}

} // namespace detail

// True iff the Velu maps built from f satisfy the codomain equation as an
// exact polynomial identity modulo y^2 = x^3 + Ax + B. False whenever the
// preconditions (monic, right degree, dividing psi_ell) fail.
inline bool validate_kernel(const Curve &e, const QPoly &f, long ell)
{
    auto [s, tau] = short_model(e);
    (void)tau;
    if (f.is_zero() || !f.is_monic())
        return false;
    int expected_deg = ell == 2 ? 1 : static_cast<int>((ell - 1) / 2);
    if (f.degree() != expected_deg)
        return false;

    QPoly rhs{s.B(), s.A(), Rat(0), Rat(1)};
    if (ell == 2) {
        if (!f.divides(rhs))
            return false;
    } else if (ell <= 13) {
        DivisionPolys dp(s);
        if (!f.divides(dp.psi(static_cast<unsigned>(ell))))
            return false;
    }
    // For the sporadic degrees psi_ell is out of reach (deg 13284 for 163);
    // the symbolic identity below is the certificate.

    auto v = detail::velu_from_kernel(s.A(), s.B(), f, ell);
    if (!detail::certified_coprime(v.num, f))
        return false; // xi must have degree exactly ell

    const QPoly &N = v.num, &D = v.den;
    QPoly Np = N.derivative(), Dp = D.derivative();
    QPoly wronskian = Np * D - N * Dp;
    QPoly lhs = rhs * wronskian * wronskian;
    QPoly rhs_poly = (N * N * N + v.Aprime * N * D * D + v.Bprime * D * D * D);
    return lhs == rhs_poly * D;
}

// Codomain by Velu's formulas; the kernel is validated first.
inline Curve velu_codomain(const Curve &e, const KernelDescriptor &k)
{
    auto [s, tau] = short_model(e);
    (void)tau;
    if (!validate_kernel(s, k.poly, k.ell))
        throw unsupported_input("velu_codomain: kernel fails validation");
    auto v = detail::velu_from_kernel(s.A(), s.B(), k.poly, k.ell);
    Curve out = Curve::short_model_curve(v.Aprime, v.Bprime); // throws if singular
    return out;
}

// One kernel per rational root of the short-model cubic: 0, 1 or 3 of them.
inline std::vector<KernelDescriptor> two_isogeny_kernels(const Curve &e)
{
    auto [s, tau] = short_model(e);
    (void)tau;
    QPoly rhs{s.B(), s.A(), Rat(0), Rat(1)};
    std::vector<KernelDescriptor> out;
    for (const Rat &x0 : rational_roots(rhs))
        out.push_back({2, QPoly{-x0, Rat(1)}});
    return out;
}

namespace detail {

// Sound negative test: a rational ell-isogeny forces the Frobenius
// characteristic polynomial to have a root mod ell at every good prime.
inline bool isogeny_possible(const Curve &s, long ell)
{
    Int den_lcm = 1;
    mpz_lcm(den_lcm.get_mpz_t(), s.A().get_den().get_mpz_t(), s.B().get_den().get_mpz_t());
    Int A = Rat(s.A() * detail::pow_int(den_lcm, 4)).get_num();
    Int B = Rat(s.B() * detail::pow_int(den_lcm, 6)).get_num();
    Int disc = 4 * A * A * A + 27 * B * B;

    int used = 0;
    for (Int p = 3; used < 14 && p < 300; p = next_prime(p)) {
        if (p == ell || mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t()))
            continue;
        ++used;
        long pl = p.get_si();
        long ap = trace_mod_p(A, B, pl);
        bool has_root = false;
        for (long r = 0; r < ell && !has_root; ++r)
            has_root = ((r * r - ap * r + pl) % ell + ell) % ell == 0;
        if (!has_root)
            return false;
    }
    return true;
}

} // namespace detail

// All rational cyclic subgroups of order ell in {3, 5, 7, 13}, found by
// factoring psi_ell and certifying degree-(ell-1)/2 factor products.
inline std::vector<KernelDescriptor> odd_kernel_polynomials(const Curve &e, long ell)
{
    if (ell != 3 && ell != 5 && ell != 7 && ell != 13)
        throw unsupported_input("odd_kernel_polynomials: ell must be 3, 5, 7 or 13");
    auto [s, tau] = short_model(e);
    (void)tau;
    if (!detail::isogeny_possible(s, ell))
        return {};

    DivisionPolys dp(s);
    auto fac = factor_over_q(dp.psi(static_cast<unsigned>(ell)));
    std::vector<QPoly> parts;
    for (const auto &[g, mult] : fac.factors) {
        if (mult != 1)
            throw invariant_violation("division polynomial not squarefree");
        parts.push_back(g.to_qpoly().monic());
    }

    const int target = static_cast<int>((ell - 1) / 2);
    std::vector<KernelDescriptor> out;
    // subsets of irreducible factors with total degree (ell-1)/2
    const size_t n = parts.size();
    std::vector<size_t> stack;
    auto recurse = [&](auto &&self, size_t from, int remaining) -> void {
        if (remaining == 0) {
            QPoly f{Rat(1)};
            for (size_t i : stack)
                f = f * parts[i];
            if (validate_kernel(s, f, ell))
                out.push_back({ell, f});
            return;
        }
        for (size_t i = from; i < n; ++i) {
            if (parts[i].degree() > remaining)
                continue;
            stack.push_back(i);
            self(self, i + 1, remaining - parts[i].degree());
            stack.pop_back();
        }
    };
    recurse(recurse, 0, target);

    std::sort(out.begin(), out.end(), [](const KernelDescriptor &a, const KernelDescriptor &b) {
        return a.poly.coeffs() < b.poly.coeffs();
    });

    size_t cap = (ell == 3 || ell == 5) ? 2 : 1; // Kenku's C_p bounds
    if (out.size() > cap)
        throw invariant_violation("too many rational " + std::to_string(ell) + "-isogenies");
    return out;
}

// Bundled data for the sporadic prime degrees 11, 17, 19, 37, 43, 67, 163.
struct SporadicRecord {
    long ell;
    Rat j;
    Curve model; // one short representative with this j
    ZPoly kernel_coeffs;
    Rat partner_j;
};

namespace detail {

inline std::string sporadic_data_path()
{
    if (const char *env = std::getenv("ISOGENY_ATLAS_SPORADIC_DATA"))
        return env;
#ifdef ISOGENY_ATLAS_DATA_DIR
    return std::string(ISOGENY_ATLAS_DATA_DIR) + "/sporadic_isogenies.json";
#else
    return "data/sporadic_isogenies.json";
#endif
}

// SHA-256 of the shipped data/sporadic_isogenies.json.
inline constexpr const char *sporadic_data_sha256 =
    "275421fef378f6b238413c5f84bbb91b47edec57b66822aaeea1e08a02bbbd7e";

inline Rat rat_from_json(const nlohmann::json &j)
{
    return make_rat(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>()));
}

inline std::vector<SporadicRecord> load_sporadic_records()
{
    std::string path = sporadic_data_path();
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open sporadic data file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    std::string digest = Sha256::digest(text);
    if (digest != sporadic_data_sha256)
        throw std::runtime_error("sporadic data file hash mismatch: got " + digest +
                                 ", expected " + std::string(sporadic_data_sha256));

    nlohmann::json doc = nlohmann::json::parse(text);
    std::vector<SporadicRecord> records;
    for (const auto &item : doc) {
        SporadicRecord rec{
            item.at("ell").get<long>(),
            rat_from_json(item.at("j")),
            Curve::short_model_curve(rat_from_json(item.at("model").at("A")),
                                     rat_from_json(item.at("model").at("B"))),
            ZPoly{},
            rat_from_json(item.at("partner_j")),
        };
        std::vector<Int> coeffs;
        for (const auto &c : item.at("kernel_coeffs"))
            coeffs.emplace_back(c.get<std::string>());
        rec.kernel_coeffs = ZPoly(std::move(coeffs));

        // load-time validation: the record must certify on its own model
        if (rec.model.j_invariant() != rec.j)
            throw invariant_violation("sporadic record model has wrong j-invariant");
        QPoly kernel = rec.kernel_coeffs.to_qpoly().monic();
        if (!validate_kernel(rec.model, kernel, rec.ell))
            throw invariant_violation("sporadic record kernel fails validation (ell = " +
                                      std::to_string(rec.ell) + ")");
        Curve cod = velu_codomain(rec.model, {rec.ell, kernel});
        if (cod.j_invariant() != rec.partner_j)
            throw invariant_violation("sporadic record partner j mismatch");
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace detail

inline const std::vector<SporadicRecord> &sporadic_table()
{
    static const std::vector<SporadicRecord> table = detail::load_sporadic_records();
    return table;
}

// Sporadic-degree isogenies from E: a table lookup on j(E), with the kernel
// polynomial transported along the quadratic twist onto E's short model.
inline std::vector<PrimeIsogeny> sporadic_isogenies(const Curve &e)
{
    auto [s, tau] = short_model(e);
    (void)tau;
    std::vector<PrimeIsogeny> out;
    for (const auto &rec : sporadic_table()) {
        if (rec.j != s.j_invariant())
            continue;
        // same j, j != 0, 1728: quadratic twist with x-scaling factor t
        Rat t = (s.B() * rec.model.A()) / (rec.model.B() * s.A());
        if (rec.model.A() * t * t != s.A() || rec.model.B() * t * t * t != s.B())
            throw invariant_violation("sporadic twist transport failed (j = " +
                                      to_string(rec.j) + ")");
        QPoly kernel = rec.kernel_coeffs.to_qpoly().compose_scale(Rat(1) / t).monic();
        if (!validate_kernel(s, kernel, rec.ell))
            throw invariant_violation("transported sporadic kernel fails validation");
        KernelDescriptor k{rec.ell, kernel};
        out.push_back({s, k, velu_codomain(s, k)});
    }
    return out;
}

// Every rational prime-degree isogeny from E, as isogenies of its short model.
inline std::vector<PrimeIsogeny> all_prime_isogenies(const Curve &e)
{
    auto [s, tau] = short_model(e);
    (void)tau;
    std::vector<PrimeIsogeny> out;
    for (const auto &k : two_isogeny_kernels(s))
        out.push_back({s, k, velu_codomain(s, k)});
    for (long ell : {3L, 5L, 7L, 13L})
        for (const auto &k : odd_kernel_polynomials(s, ell))
            out.push_back({s, k, velu_codomain(s, k)});
    for (auto &iso : sporadic_isogenies(s))
        out.push_back(std::move(iso));
    return out;
}

} // namespace isogeny_atlas
