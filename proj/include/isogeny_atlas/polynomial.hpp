#pragma once

#include <cassert>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace isogeny_atlas {

// Dense univariate polynomial over Q. coeff[i] is the x^i coefficient; the
// zero polynomial has an empty coefficient vector and degree -1.
class QPoly {
  public:
    QPoly() = default;
    QPoly(std::initializer_list<Rat> ascending) : c_(ascending) { normalize(); }
    explicit QPoly(std::vector<Rat> ascending) : c_(std::move(ascending)) { normalize(); }
    explicit QPoly(const Rat &constant) : c_{constant} { normalize(); }

    static QPoly x() { return QPoly{Rat(0), Rat(1)}; }
    static QPoly monomial(const Rat &coeff, size_t deg)
    {
        std::vector<Rat> c(deg + 1, Rat(0));
        c[deg] = coeff;
        return QPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat> &coeffs() const { return c_; }

    Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const Rat &leading() const
    {
        assert(!c_.empty());
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend QPoly operator+(const QPoly &a, const QPoly &b)
    {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) + b.coeff(i);
        return QPoly(std::move(c));
    }
    friend QPoly operator-(const QPoly &a, const QPoly &b)
    {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) - b.coeff(i);
        return QPoly(std::move(c));
    }
    friend QPoly operator-(const QPoly &a)
    {
        std::vector<Rat> c(a.c_);
        for (auto &q : c)
            q = -q;
        return QPoly(std::move(c));
    }
    friend QPoly operator*(const QPoly &a, const QPoly &b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        }
        return QPoly(std::move(c));
    }
    friend QPoly operator*(const Rat &s, const QPoly &a)
    {
        if (s == 0)
            return {};
        std::vector<Rat> c(a.c_);
        for (auto &q : c)
            q *= s;
        return QPoly(std::move(c));
    }
    friend QPoly operator*(const QPoly &a, const Rat &s) { return s * a; }

    friend bool operator==(const QPoly &a, const QPoly &b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly &a, const QPoly &b) { return !(a == b); }

    QPoly pow(unsigned e) const
    {
        QPoly r{Rat(1)};
        QPoly b = *this;
        for (; e; e >>= 1) {
            if (e & 1)
                r = r * b;
            if (e > 1)
                b = b * b;
        }
        return r;
    }

    QPoly derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<Rat> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = Rat(static_cast<long>(i)) * c_[i];
        return QPoly(std::move(c));
    }

    Rat eval(const Rat &x) const
    {
        Rat r(0);
        for (size_t i = c_.size(); i-- > 0;)
            r = r * x + c_[i];
        return r;
    }

    // f(s*x) composed with a scalar, used to transport kernel polynomials
    // across quadratic twists.
    QPoly compose_scale(const Rat &s) const
    {
        std::vector<Rat> c(c_);
        Rat pw(1);
        for (size_t i = 1; i < c.size(); ++i) {
            pw *= s;
            c[i] *= pw;
        }
        return QPoly(std::move(c));
    }

    QPoly monic() const
    {
        if (is_zero())
            return {};
        return Rat(Rat(1) / leading()) * *this;
    }

    // Quotient and remainder; divisor must be nonzero.
    friend std::pair<QPoly, QPoly> divrem(const QPoly &a, const QPoly &b)
    {
        if (b.is_zero())
            throw unsupported_input("polynomial division by zero");
        std::vector<Rat> r(a.c_);
        int db = b.degree();
        if (a.degree() < db)
            return {QPoly{}, a};
        std::vector<Rat> q(a.degree() - db + 1, Rat(0));
        for (int i = a.degree(); i >= db; --i) {
            Rat f = r[i] / b.c_.back();
            if (f == 0)
                continue;
            q[i - db] = f;
            for (int j = 0; j <= db; ++j)
                r[i - db + j] -= f * b.c_[j];
        }
        return {QPoly(std::move(q)), QPoly(std::move(r))};
    }

    friend QPoly operator/(const QPoly &a, const QPoly &b)
    {
        auto [q, r] = divrem(a, b);
        if (!r.is_zero())
            throw invariant_violation("inexact polynomial division");
        return q;
    }

    bool divides(const QPoly &a) const
    {
        if (is_zero())
            return a.is_zero();
        return divrem(a, *this).second.is_zero();
    }

    std::string str(const std::string &var = "x") const;

  private:
    void normalize()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline QPoly operator*(long s, const QPoly &a) { return Rat(s) * a; }

// Dense univariate polynomial over Z.
class ZPoly {
  public:
    ZPoly() = default;
    ZPoly(std::initializer_list<Int> ascending) : c_(ascending) { normalize(); }
    explicit ZPoly(std::vector<Int> ascending) : c_(std::move(ascending)) { normalize(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Int> &coeffs() const { return c_; }
    Int coeff(size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
    const Int &leading() const
    {
        assert(!c_.empty());
        return c_.back();
    }

    friend ZPoly operator+(const ZPoly &a, const ZPoly &b)
    {
        std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) + b.coeff(i);
        return ZPoly(std::move(c));
    }
    friend ZPoly operator-(const ZPoly &a, const ZPoly &b)
    {
        std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) - b.coeff(i);
        return ZPoly(std::move(c));
    }
    friend ZPoly operator*(const ZPoly &a, const ZPoly &b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        }
        return ZPoly(std::move(c));
    }
    friend ZPoly operator*(const Int &s, const ZPoly &a)
    {
        std::vector<Int> c(a.c_);
        for (auto &z : c)
            z *= s;
        return ZPoly(std::move(c));
    }
    friend bool operator==(const ZPoly &a, const ZPoly &b) { return a.c_ == b.c_; }
    friend bool operator!=(const ZPoly &a, const ZPoly &b) { return !(a == b); }

    ZPoly derivative() const
    {
        if (c_.size() <= 1)
            return {};
        std::vector<Int> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = Int(static_cast<long>(i)) * c_[i];
        return ZPoly(std::move(c));
    }

    Int eval(const Int &x) const
    {
        Int r = 0;
        for (size_t i = c_.size(); i-- > 0;)
            r = r * x + c_[i];
        return r;
    }
    Rat eval(const Rat &x) const
    {
        Rat r = 0;
        for (size_t i = c_.size(); i-- > 0;)
            r = r * x + Rat(c_[i]);
        return r;
    }

    // gcd of coefficients, always >= 0; content of the zero polynomial is 0.
    Int content() const
    {
        Int g = 0;
        for (const auto &z : c_)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        return g;
    }

    // Primitive part with positive leading coefficient.
    ZPoly primitive() const
    {
        if (is_zero())
            return {};
        Int g = content();
        if (leading() < 0)
            g = -g;
        std::vector<Int> c(c_.size());
        for (size_t i = 0; i < c_.size(); ++i)
            c[i] = c_[i] / g;
        return ZPoly(std::move(c));
    }

    Int max_norm() const
    {
        Int m = 0;
        for (const auto &z : c_)
            if (detail::abs_int(z) > m)
                m = detail::abs_int(z);
        return m;
    }

    // Exact division attempt over Z.
    std::optional<ZPoly> divide_exact(const ZPoly &d) const
    {
        if (d.is_zero())
            throw unsupported_input("polynomial division by zero");
        if (is_zero())
            return ZPoly{};
        if (degree() < d.degree())
            return std::nullopt;
        std::vector<Int> r(c_);
        int dd = d.degree();
        std::vector<Int> q(degree() - dd + 1, Int(0));
        for (int i = degree(); i >= dd; --i) {
            if (r[i] == 0)
                continue;
            if (!mpz_divisible_p(r[i].get_mpz_t(), d.leading().get_mpz_t()))
                return std::nullopt;
            Int f = r[i] / d.leading();
            q[i - dd] = f;
            for (int j = 0; j <= dd; ++j)
                r[i - dd + j] -= f * d.c_[j];
        }
        for (const auto &z : r)
            if (z != 0)
                return std::nullopt;
        return ZPoly(std::move(q));
    }

    QPoly to_qpoly() const
    {
        std::vector<Rat> c(c_.size());
        for (size_t i = 0; i < c_.size(); ++i)
            c[i] = Rat(c_[i]);
        return QPoly(std::move(c));
    }

    std::string str(const std::string &var = "x") const { return to_qpoly().str(var); }

  private:
    void normalize()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    std::vector<Int> c_;
};

// Clears denominators: f = unit * primitive, unit in Q*, primitive in Z[x]
// with content 1 and positive leading coefficient.
inline std::pair<Rat, ZPoly> clear_denominators(const QPoly &f)
{
    if (f.is_zero())
        return {Rat(0), ZPoly{}};
    Int l = 1;
    for (const auto &q : f.coeffs())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Int> c(f.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) {
        Rat v = f.coeff(i) * Rat(l);
        c[i] = v.get_num();
    }
    ZPoly z(std::move(c));
    ZPoly prim = z.primitive();
    Int cont = z.content();
    if (z.leading() < 0)
        cont = -cont;
    return {make_rat(cont, l), prim};
}

namespace detail {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r. The trailing
// power of lc(b) is applied even when a degree step is skipped, so the
// subresultant divisions stay exact on sparse inputs.
inline ZPoly pseudo_rem(const ZPoly &a, const ZPoly &b)
{
    assert(!b.is_zero());
    ZPoly r = a;
    int db = b.degree();
    int scale_left = a.degree() - db + 1;
    while (!r.is_zero() && r.degree() >= db) {
        int shift = r.degree() - db;
        Int lead = r.leading();
        std::vector<Int> scaled(r.coeffs());
        for (auto &z : scaled)
            z *= b.leading();
        ZPoly rs{std::move(scaled)};
        std::vector<Int> sub(shift + db + 1, Int(0));
        for (int j = 0; j <= db; ++j)
            sub[shift + j] = lead * b.coeff(j);
        r = rs - ZPoly(std::move(sub));
        --scale_left;
        assert(r.degree() < shift + db);
    }
    if (scale_left > 0 && !r.is_zero()) {
        Int f = pow_int(b.leading(), scale_left);
        std::vector<Int> c(r.coeffs());
        for (auto &z : c)
            z *= f;
        r = ZPoly(std::move(c));
    }
    return r;
}

} // namespace detail

// Primitive gcd over Z via the subresultant PRS.
inline ZPoly zpoly_gcd(ZPoly a, ZPoly b)
{
    if (a.is_zero())
        return b.primitive();
    if (b.is_zero())
        return a.primitive();
    Int cont;
    mpz_gcd(cont.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    a = a.primitive();
    b = b.primitive();
    if (a.degree() < b.degree())
        std::swap(a, b);
    Int g = 1, h = 1;
    while (true) {
        int delta = a.degree() - b.degree();
        ZPoly r = detail::pseudo_rem(a, b);
        if (r.is_zero())
            break;
        if (r.degree() == 0) {
            b = ZPoly{Int(1)};
            break;
        }
        a = b;
        Int div = g * detail::pow_int(h, delta);
        {
            std::vector<Int> c(r.coeffs());
            for (auto &z : c) {
                assert(mpz_divisible_p(z.get_mpz_t(), div.get_mpz_t()));
                z /= div;
            }
            b = ZPoly(std::move(c));
        }
        g = a.leading();
        if (delta >= 1) {
            Int gd = detail::pow_int(g, delta);
            Int hd = detail::pow_int(h, delta - 1);
            h = gd / hd;
        } else {
            // delta == 0: h unchanged
        }
    }
    ZPoly res = b.primitive();
    return cont * res;
}

// Monic gcd over Q. gcd(f, 0) = monic(f); gcd(0, 0) = 0.
inline QPoly poly_gcd(const QPoly &f, const QPoly &g)
{
    if (f.is_zero() && g.is_zero())
        return {};
    if (f.is_zero())
        return g.monic();
    if (g.is_zero())
        return f.monic();
    auto [uf, zf] = clear_denominators(f);
    auto [ug, zg] = clear_denominators(g);
    (void)uf;
    (void)ug;
    return zpoly_gcd(zf, zg).to_qpoly().monic();
}

// Monic product of the distinct irreducible factors of f.
inline QPoly squarefree_part(const QPoly &f)
{
    if (f.is_zero())
        throw unsupported_input("squarefree_part of zero polynomial");
    if (f.degree() == 0)
        return QPoly{Rat(1)};
    QPoly g = poly_gcd(f, f.derivative());
    return (f / g).monic();
}

inline std::string QPoly::str(const std::string &var) const
{
    if (is_zero())
        return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rat &q = c_[i];
        if (q == 0)
            continue;
        std::string term;
        Rat a = q > 0 ? q : Rat(-q);
        if (i == 0)
            term = to_string(a);
        else {
            if (a != 1)
                term = to_string(a) + "*";
            term += var;
            if (i > 1)
                term += "^" + std::to_string(i);
        }
        if (out.empty())
            out = (q < 0 ? "-" : "") + term;
        else
            out += (q < 0 ? " - " : " + ") + term;
    }
    return out;
}

inline std::ostream &operator<<(std::ostream &os, const QPoly &f) { return os << f.str(); }

} // namespace isogeny_atlas
