#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "polynomial.hpp"

namespace isogeny_atlas {

namespace detail {

// Dense polynomial with coefficients reduced into [0, m). m is a prime for
// the base factorization and a prime power during Hensel lifting.
class ModPoly {
  public:
    ModPoly(Int modulus, std::vector<Int> coeffs) : m_(std::move(modulus)), c_(std::move(coeffs))
    {
        for (auto &z : c_)
            mod_into(z);
        normalize();
    }
    static ModPoly zero(const Int &m) { return ModPoly(m, {}); }
    static ModPoly from_zpoly(const ZPoly &f, const Int &m)
    {
        return ModPoly(m, f.coeffs());
    }

    const Int &modulus() const { return m_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Int coeff(size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
    const std::vector<Int> &coeffs() const { return c_; }

    ZPoly to_zpoly() const { return ZPoly(c_); }

    // Coefficients mapped into (-m/2, m/2].
    ZPoly to_symmetric() const
    {
        std::vector<Int> c(c_);
        Int half = m_ / 2;
        for (auto &z : c)
            if (z > half)
                z -= m_;
        return ZPoly(std::move(c));
    }

    friend ModPoly operator+(const ModPoly &a, const ModPoly &b)
    {
        std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) + b.coeff(i);
        return ModPoly(a.m_, std::move(c));
    }
    friend ModPoly operator-(const ModPoly &a, const ModPoly &b)
    {
        std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) - b.coeff(i);
        return ModPoly(a.m_, std::move(c));
    }
    friend ModPoly operator*(const ModPoly &a, const ModPoly &b)
    {
        if (a.is_zero() || b.is_zero())
            return zero(a.m_);
        std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        }
        return ModPoly(a.m_, std::move(c));
    }
    friend ModPoly operator*(const Int &s, const ModPoly &a)
    {
        std::vector<Int> c(a.c_);
        for (auto &z : c)
            z *= s;
        return ModPoly(a.m_, std::move(c));
    }
    friend bool operator==(const ModPoly &a, const ModPoly &b) { return a.c_ == b.c_; }

    ModPoly make_monic() const
    {
        if (is_zero())
            return *this;
        Int inv;
        if (!mpz_invert(inv.get_mpz_t(), c_.back().get_mpz_t(), m_.get_mpz_t()))
            throw invariant_violation("non-invertible leading coefficient mod m");
        return inv * *this;
    }

    // Quotient and remainder of a by b; lc(b) must be invertible mod m.
    friend std::pair<ModPoly, ModPoly> divrem(const ModPoly &a, const ModPoly &b)
    {
        if (b.is_zero())
            throw unsupported_input("mod-poly division by zero");
        Int inv;
        if (!mpz_invert(inv.get_mpz_t(), b.c_.back().get_mpz_t(), b.m_.get_mpz_t()))
            throw invariant_violation("non-invertible leading coefficient mod m");
        std::vector<Int> r(a.c_);
        int db = b.degree();
        std::vector<Int> q(std::max<int>(a.degree() - db + 1, 0), Int(0));
        for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
            Int f = r[i] * inv % a.m_;
            if (f < 0)
                f += a.m_;
            if (f == 0)
                continue;
            q[i - db] = f;
            for (int j = 0; j <= db; ++j) {
                r[i - db + j] -= f * b.c_[j];
                r[i - db + j] %= a.m_;
            }
        }
        r.resize(std::min<size_t>(r.size(), db));
        return {ModPoly(a.m_, std::move(q)), ModPoly(a.m_, std::move(r))};
    }

    friend ModPoly rem(const ModPoly &a, const ModPoly &b) { return divrem(a, b).second; }

    friend ModPoly gcd(ModPoly a, ModPoly b)
    {
        while (!b.is_zero()) {
            ModPoly r0 = rem(a, b);
            a = std::move(b);
            b = std::move(r0);
        }
        return a.is_zero() ? a : a.make_monic();
    }

    ModPoly derivative() const
    {
        if (c_.size() <= 1)
            return zero(m_);
        std::vector<Int> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = Int(static_cast<long>(i)) * c_[i];
        return ModPoly(m_, std::move(c));
    }

    friend ModPoly pow_mod(const ModPoly &base, const Int &e, const ModPoly &mod)
    {
        ModPoly r(mod.m_, {Int(1)});
        ModPoly b = rem(base, mod);
        for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
            r = rem(r * r, mod);
            if (mpz_tstbit(e.get_mpz_t(), i))
                r = rem(r * b, mod);
        }
        return r;
    }

  private:
    void mod_into(Int &z) const
    {
        z %= m_;
        if (z < 0)
            z += m_;
    }
    void normalize()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    Int m_;
    std::vector<Int> c_;
};

// Extended Euclid in F_p[x]: returns s with s*a = 1 mod (b, p); a, b coprime.
inline ModPoly invert_mod(const ModPoly &a, const ModPoly &b)
{
    ModPoly r0 = b, r1 = rem(a, b);
    ModPoly s0 = ModPoly::zero(b.modulus()), s1 = ModPoly(b.modulus(), {Int(1)});
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        ModPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0)
        throw invariant_violation("invert_mod: inputs not coprime");
    Int inv;
    mpz_invert(inv.get_mpz_t(), r0.coeffs()[0].get_mpz_t(), b.modulus().get_mpz_t());
    return rem(inv * s0, b);
}

// Cantor-Zassenhaus over F_p, p an odd prime; f monic squarefree.
inline std::vector<ModPoly> factor_mod_p(const ModPoly &f_in, const Int &p)
{
    std::vector<ModPoly> out;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<unsigned long>(f_in.degree()));

    auto random_poly = [&](int deg_below) {
        std::vector<Int> c(deg_below);
        for (auto &z : c)
            z = Int(static_cast<unsigned long>(rng())) % p;
        return ModPoly(p, std::move(c));
    };

    // equal-degree splitting: g is a product of irreducibles of degree d
    auto split_equal = [&](auto &&self, const ModPoly &g, int d) -> void {
        if (g.degree() == d) {
            out.push_back(g);
            return;
        }
        Int e = (detail::pow_int(p, d) - 1) / 2;
        while (true) {
            ModPoly a = random_poly(g.degree());
            if (a.degree() < 1)
                continue;
            ModPoly c = gcd(a, g);
            if (c.degree() == 0) {
                ModPoly w = pow_mod(a, e, g) - ModPoly(p, {Int(1)});
                c = gcd(w, g);
            }
            if (c.degree() > 0 && c.degree() < g.degree()) {
                self(self, c, d);
                self(self, divrem(g, c).first.make_monic(), d);
                return;
            }
        }
    };

    // distinct-degree decomposition
    ModPoly f = f_in.make_monic();
    ModPoly x = ModPoly(p, {Int(0), Int(1)});
    ModPoly h = x;
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            out.push_back(f);
            break;
        }
        h = pow_mod(h, p, f);
        ModPoly g = gcd(h - x, f);
        if (g.degree() > 0) {
            split_equal(split_equal, g, d);
            f = divrem(f, g).first.make_monic();
            h = rem(h, f);
        }
    }
    return out;
}

} // namespace detail

struct Factorization {
    Rat unit;                                     // f = unit * prod factors^mult
    std::vector<std::pair<ZPoly, unsigned>> factors; // primitive, irreducible, lc > 0
};

namespace detail {

// True certifies f squarefree over Q (sound one-sided check).
inline bool certified_squarefree(const ZPoly &f)
{
    if (f.degree() <= 1)
        return true;
    Int p = 3;
    for (int tries = 0; tries < 12; ++tries) {
        p = next_prime(p);
        if (mpz_divisible_p(f.leading().get_mpz_t(), p.get_mpz_t()))
            continue;
        ModPoly fp = ModPoly::from_zpoly(f, p);
        if (gcd(fp, fp.derivative()).degree() == 0)
            return true;
    }
    return false;
}

// Yun's squarefree decomposition, over Q, for primitive input.
inline std::vector<std::pair<ZPoly, unsigned>> squarefree_decompose(const ZPoly &f)
{
    if (certified_squarefree(f))
        return {{f, 1}};
    QPoly fq = f.to_qpoly();
    std::vector<std::pair<ZPoly, unsigned>> out;
    QPoly d = poly_gcd(fq, fq.derivative());
    QPoly w = fq / d;
    QPoly y = fq.derivative() / d;
    QPoly z = y - w.derivative();
    unsigned i = 1;
    while (w.degree() > 0) {
        QPoly g = poly_gcd(w, z);
        if (g.degree() > 0)
            out.emplace_back(clear_denominators(g).second, i);
        w = w / g;
        y = z / g;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

// Linear multifactor Hensel lifting of f = lc * prod(fi) from mod p to mod P.
inline std::vector<ZPoly> hensel_lift(const ZPoly &f, const std::vector<ModPoly> &base,
                                      const Int &p, const Int &P)
{
    const size_t r = base.size();
    const Int lc = f.leading();
    Int lcinv;
    mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), p.get_mpz_t());

    // si * prod_{j!=i} fj == 1 mod (fi, p)
    std::vector<ModPoly> s;
    s.reserve(r);
    for (size_t i = 0; i < r; ++i) {
        ModPoly g = ModPoly(p, {Int(1)});
        for (size_t j = 0; j < r; ++j)
            if (j != i)
                g = rem(g * base[j], base[i]);
        s.push_back(invert_mod(g, base[i]));
    }

    std::vector<ZPoly> F;
    F.reserve(r);
    for (const auto &b : base)
        F.push_back(b.to_zpoly());

    Int m = p;
    while (m < P) {
        Int m_next = m * p;
        // E = (f - lc * prod F) / m
        ZPoly prod{{Int(1)}};
        for (const auto &fi : F)
            prod = prod * fi;
        ZPoly diff = f - lc * prod;
        std::vector<Int> e(diff.coeffs().size());
        for (size_t i = 0; i < e.size(); ++i) {
            Int c = diff.coeff(i) % m_next;
            if (c < 0)
                c += m_next;
            assert(mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t()));
            e[i] = c / m;
        }
        ModPoly E(p, std::move(e));
        for (size_t i = 0; i < r; ++i) {
            ModPoly delta = rem(lcinv * (rem(E, base[i]) * s[i]), base[i]);
            if (delta.is_zero())
                continue;
            std::vector<Int> c(F[i].coeffs());
            for (size_t k = 0; k < c.size(); ++k) {
                Int add = delta.coeff(k);
                if (add != 0) {
                    c[k] += m * add;
                    c[k] %= m_next;
                    if (c[k] < 0)
                        c[k] += m_next;
                }
            }
            F[i] = ZPoly(std::move(c));
        }
        m = m_next;
    }
    return F;
}

inline ZPoly symmetric_mod(const ZPoly &f, const Int &P)
{
    std::vector<Int> c(f.coeffs());
    Int half = P / 2;
    for (auto &z : c) {
        z %= P;
        if (z < 0)
            z += P;
        if (z > half)
            z -= P;
    }
    return ZPoly(std::move(c));
}

// Zassenhaus recombination. Factors the primitive squarefree g.
inline std::vector<ZPoly> factor_squarefree(const ZPoly &g_in)
{
    ZPoly g = g_in;
    if (g.degree() == 1)
        return {g};

    // Smallest primes > 3 with squarefree reduction; among up to 25 of them
    // keep the one with the fewest modular factors.
    Int p_best = 0;
    std::vector<ModPoly> best;
    Int p = 3;
    int seen = 0;
    while (seen < 25) {
        p = next_prime(p);
        if (mpz_divisible_p(g.leading().get_mpz_t(), p.get_mpz_t()))
            continue;
        ModPoly gp = ModPoly::from_zpoly(g, p).make_monic();
        if (gcd(gp, gp.derivative()).degree() != 0)
            continue;
        ++seen;
        auto fac = factor_mod_p(gp, p);
        if (fac.size() == 1)
            return {g}; // irreducible over Q
        if (best.empty() || fac.size() < best.size()) {
            best = std::move(fac);
            p_best = p;
        }
    }
    p = p_best;

    // Lift to p^K beyond twice the factor coefficient bound.
    Int norm2 = 0;
    for (const auto &c : g.coeffs())
        norm2 += c * c;
    Int sq;
    mpz_sqrt(sq.get_mpz_t(), norm2.get_mpz_t());
    Int bound = (sq + 1) * detail::abs_int(g.leading());
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), g.degree() + 2);
    Int P = p;
    while (P <= bound)
        P *= p;

    std::vector<ZPoly> lifted = hensel_lift(g, best, p, P);

    std::vector<ZPoly> out;
    std::vector<size_t> active(lifted.size());
    for (size_t i = 0; i < active.size(); ++i)
        active[i] = i;

    size_t s = 1;
    while (2 * s <= active.size()) {
        // combinations of size s over positions in `active`
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i)
            idx[i] = i;
        bool restart = false;
        while (true) {
            int deg_sum = 0;
            for (size_t i : idx)
                deg_sum += lifted[active[i]].degree();
            if (2 * deg_sum <= g.degree()) {
                Int lc = g.leading();
                ZPoly h{{lc}};
                for (size_t i : idx)
                    h = symmetric_mod(h * lifted[active[i]], P);
                ZPoly hp = h.primitive();
                if (auto q = g.divide_exact(hp)) {
                    out.push_back(hp);
                    g = *q;
                    std::vector<size_t> next_active;
                    for (size_t pos = 0; pos < active.size(); ++pos)
                        if (std::find(idx.begin(), idx.end(), pos) == idx.end())
                            next_active.push_back(active[pos]);
                    active = std::move(next_active);
                    restart = true;
                    break;
                }
            }
            // next combination
            size_t k = s;
            while (k > 0 && idx[k - 1] == active.size() - s + (k - 1))
                --k;
            if (k == 0)
                break;
            ++idx[k - 1];
            for (size_t i = k; i < s; ++i)
                idx[i] = idx[i - 1] + 1;
        }
        if (restart)
            continue; // same size again with the reduced factor pool
        ++s;
    }
    if (g.degree() >= 1)
        out.push_back(g.primitive());
    return out;
}

} // namespace detail

// Factorization into primitive irreducible factors with positive leading
// coefficients: squarefree decomposition, factorization mod a small prime,
// Hensel lifting, subset recombination.
inline Factorization factor_over_q(const ZPoly &f)
{
    if (f.is_zero())
        throw unsupported_input("factor_over_q(0)");
    if (f.degree() > 200)
        throw unsupported_input("factor_over_q: degree > 200");

    Factorization out;
    Int cont = f.content();
    out.unit = Rat(f.leading() < 0 ? Int(-cont) : cont);
    ZPoly g = f.primitive();

    // powers of x
    size_t k = 0;
    while (k < g.coeffs().size() && g.coeffs()[k] == 0)
        ++k;
    if (k > 0) {
        std::vector<Int> c(g.coeffs().begin() + k, g.coeffs().end());
        g = ZPoly(std::move(c));
        out.factors.emplace_back(ZPoly{Int(0), Int(1)}, static_cast<unsigned>(k));
    }
    if (g.degree() < 1)
        return out;

    for (const auto &[block, mult] : detail::squarefree_decompose(g))
        for (const auto &irr : detail::factor_squarefree(block))
            out.factors.emplace_back(irr, mult);

    std::sort(out.factors.begin(), out.factors.end(), [](const auto &a, const auto &b) {
        if (a.first.degree() != b.first.degree())
            return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

inline Factorization factor_over_q(const QPoly &f)
{
    auto [unit, z] = clear_denominators(f);
    Factorization out = factor_over_q(z);
    out.unit *= unit;
    return out;
}

// The rational roots of f, each once.
inline std::vector<Rat> rational_roots(const ZPoly &f)
{
    if (f.is_zero())
        throw unsupported_input("rational_roots(0)");
    std::vector<Rat> roots;
    for (const auto &[fac, mult] : factor_over_q(f).factors) {
        (void)mult;
        if (fac.degree() == 1)
            roots.push_back(make_rat(-fac.coeff(0), fac.coeff(1)));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline std::vector<Rat> rational_roots(const QPoly &f)
{
    return rational_roots(clear_denominators(f).second);
}

} // namespace isogeny_atlas
