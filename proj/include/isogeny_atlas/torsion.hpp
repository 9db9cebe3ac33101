#pragma once

#include <map>
#include <set>

#include "factorization.hpp"
#include "weierstrass.hpp"

namespace isogeny_atlas {

namespace detail {

// Element of Q[x, y] / (y^2 - x^3 - Ax - B), written p(x) + y*q(x). Division
// polynomials alternate between the two parts by parity of the index.
struct CurveRingElt {
    QPoly p, q;
};

} // namespace detail

// Division polynomials of the short model y^2 = x^3 + Ax + B, cached per
// curve. psi(n) for odd n is the classical x-polynomial of degree (n^2-1)/2;
// for even n psi_n = y * psi_y(n).
class DivisionPolys {
  public:
    DivisionPolys(Rat A, Rat B) : A_(std::move(A)), B_(std::move(B))
    {
        rhs_ = QPoly{B_, A_, Rat(0), Rat(1)}; // x^3 + Ax + B
    }
    explicit DivisionPolys(const Curve &short_curve)
        : DivisionPolys(short_curve.A(), short_curve.B())
    {
        if (!short_curve.is_short())
            throw unsupported_input("DivisionPolys expects a short model");
    }

    const QPoly &rhs() const { return rhs_; }

    // Odd n: psi_n itself. Even n: psi_n / y.
    const QPoly &psi(unsigned n)
    {
        if (n == 0)
            throw unsupported_input("division_polynomial: n = 0");
        auto it = cache_.find(n);
        if (it != cache_.end())
            return it->second;
        QPoly value = compute(n);
        if (n % 2 == 1 && value.degree() != static_cast<int>((n * n - 1) / 2))
            throw invariant_violation("division polynomial degree mismatch");
        return cache_.emplace(n, std::move(value)).first->second;
    }

    // Polynomial whose roots are exactly the x-coordinates of the nonzero
    // points of order dividing n.
    QPoly torsion_x_poly(unsigned n)
    {
        if (n % 2 == 1)
            return psi(n);
        return rhs_ * psi(n);
    }

  private:
    detail::CurveRingElt elt(unsigned n)
    {
        if (n % 2 == 1)
            return {psi(n), QPoly{}};
        return {QPoly{}, psi(n)};
    }

    detail::CurveRingElt mul(const detail::CurveRingElt &a, const detail::CurveRingElt &b)
    {
        // (p1 + y q1)(p2 + y q2) with y^2 = rhs
        return {a.p * b.p + rhs_ * (a.q * b.q), a.p * b.q + a.q * b.p};
    }

    QPoly compute(unsigned n)
    {
        switch (n) {
        case 1:
            return QPoly{Rat(1)};
        case 2:
            return QPoly{Rat(2)};
        case 3:
            return QPoly{-A_ * A_, 12 * B_, 6 * A_, Rat(0), Rat(3)};
        case 4: {
            // psi_4 / y = 4(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
            QPoly f{-8 * B_ * B_ - A_ * A_ * A_,
                    -4 * A_ * B_,
                    -5 * A_ * A_,
                    20 * B_,
                    5 * A_,
                    Rat(0),
                    Rat(1)};
            return 4 * f;
        }
        default:
            break;
        }
        unsigned m = n / 2;
        if (n % 2 == 1) {
            // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
            auto t1 = mul(elt(m + 2), mul(elt(m), mul(elt(m), elt(m))));
            auto t2 = mul(elt(m - 1), mul(elt(m + 1), mul(elt(m + 1), elt(m + 1))));
            detail::CurveRingElt res{t1.p - t2.p, t1.q - t2.q};
            if (!res.q.is_zero())
                throw invariant_violation("odd division polynomial has a y part");
            return res.p;
        }
        // psi_{2m} * 2y = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2)
        auto s1 = mul(elt(m + 2), mul(elt(m - 1), elt(m - 1)));
        auto s2 = mul(elt(m - 2), mul(elt(m + 1), elt(m + 1)));
        auto prod = mul(elt(m), {s1.p - s2.p, s1.q - s2.q});
        // result is psi_n = y * (...): dividing the pure parts by 2y
        if (!prod.p.is_zero()) {
            // prod = p with p divisible by rhs: psi_n / y = p / (2 rhs)
            if (!prod.q.is_zero())
                throw invariant_violation("even division polynomial parity failure");
            return prod.p / (2 * rhs_);
        }
        return Rat(make_rat(1, 2)) * prod.q;
    }

    Rat A_, B_;
    QPoly rhs_;
    std::map<unsigned, QPoly> cache_;
};

// Spec-facing wrapper: the division polynomial of E's short model.
inline QPoly division_polynomial(const Curve &e, unsigned n)
{
    auto [s, tau] = short_model(e);
    (void)tau;
    DivisionPolys dp(s);
    return dp.psi(n);
}

// One of Mazur's fifteen groups, with generator witnesses on the original
// model of the curve.
struct TorsionGroup {
    bool bicyclic = false; // false: Z/M; true: Z/2 x Z/2M
    unsigned M = 1;
    std::vector<Point> generators; // exact orders: {M} or {2, 2M}

    unsigned order() const { return bicyclic ? 4 * M : M; }

    std::string label() const
    {
        if (bicyclic)
            return "[2," + std::to_string(2 * M) + "]";
        return "[" + std::to_string(M) + "]";
    }

    friend bool operator==(const TorsionGroup &a, const TorsionGroup &b)
    {
        return a.bicyclic == b.bicyclic && a.M == b.M;
    }
};

namespace detail {

inline std::vector<Point> lift_points(const QPoly &rhs, const std::vector<Rat> &xs)
{
    std::vector<Point> pts;
    for (const auto &x : xs) {
        Rat w = rhs.eval(x);
        if (w == 0) {
            pts.emplace_back(x, Rat(0));
        } else if (auto y = exact_root(w, 2)) {
            pts.emplace_back(x, *y);
            pts.emplace_back(x, Rat(-*y));
        }
    }
    return pts;
}

} // namespace detail

// All rational points of exact order q on E, for the prime powers occurring
// inside Mazur's groups.
inline std::vector<Point> points_of_exact_order(const Curve &e, unsigned q)
{
    static const std::set<unsigned> allowed{2, 3, 4, 5, 7, 8, 9};
    if (!allowed.count(q))
        throw unsupported_input("points_of_exact_order: unsupported order " +
                                std::to_string(q));
    auto [s, tau] = short_model(e);
    DivisionPolys dp(s);

    QPoly target = dp.torsion_x_poly(q);
    std::vector<Rat> xs = rational_roots(target);
    // drop x-coordinates of lower order (q is a prime power, so the only
    // maximal proper divisor is q / p)
    unsigned p = (q % 2 == 0) ? 2 : (q % 3 == 0 ? 3 : q);
    if (q > p) {
        QPoly lower = dp.torsion_x_poly(q / p);
        std::erase_if(xs, [&](const Rat &x) { return lower.eval(x) == 0; });
    }

    std::vector<Point> out;
    for (Point pt : detail::lift_points(dp.rhs(), xs)) {
        Point back = tau.unmap(pt);
        if (!e.contains(back))
            throw invariant_violation("torsion witness off the curve");
        out.push_back(back);
    }
    return out;
}

namespace detail {

inline void verify_witness_order(const Curve &e, const Point &p, unsigned q)
{
    if (!multiply_point(e, Int(q), p).infinity)
        throw invariant_violation("witness order too large");
    for (unsigned d : {2u, 3u, 5u, 7u})
        if (q % d == 0 && multiply_point(e, Int(q / d), p).infinity)
            throw invariant_violation("witness order too small");
}

} // namespace detail

// E(Q)_tors as one of Mazur's fifteen groups, with verified generators.
inline TorsionGroup torsion_structure(const Curve &e)
{
    auto count = [&](unsigned q) { return points_of_exact_order(e, q).size(); };
    auto pick = [&](unsigned q) { return points_of_exact_order(e, q).front(); };

    // 2-primary part from the short cubic, then the maximal 2-power order
    unsigned n2 = static_cast<unsigned>(count(2)); // 0, 1 or 3
    bool full_two = n2 == 3;
    unsigned two_exp = 0; // cyclic part Z/2^two_exp
    std::optional<Point> gen2power;
    if (n2 > 0) {
        two_exp = 1;
        if (count(4) > 0) {
            two_exp = 2;
            if (count(8) > 0)
                two_exp = 3;
        }
    }

    // odd part: 3 or 9, 5, 7 (Mazur's theorem excludes everything else)
    unsigned odd = 1;
    if (count(3) > 0)
        odd = count(9) > 0 ? 9 : 3;
    if (count(5) > 0) {
        if (odd != 1)
            throw invariant_violation("torsion outside Mazur's list (15-torsion)");
        odd = 5;
    }
    if (count(7) > 0) {
        if (odd != 1)
            throw invariant_violation("torsion outside Mazur's list (odd part)");
        odd = 7;
    }

    TorsionGroup g;
    if (full_two) {
        g.bicyclic = true;
        unsigned half = (1u << (two_exp - 1)) * odd; // cyclic part is 2^e * odd
        g.M = half;
        if (!(g.M >= 1 && g.M <= 4))
            throw invariant_violation("torsion outside Mazur's list: [2," +
                                      std::to_string(2 * g.M) + "]");
    } else {
        g.M = (1u << two_exp) * odd;
        static const std::set<unsigned> cyclic_ok{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};
        if (!cyclic_ok.count(g.M))
            throw invariant_violation("torsion outside Mazur's list: [" +
                                      std::to_string(g.M) + "]");
    }

    // generator witnesses
    if (g.bicyclic) {
        unsigned cyc = 2 * g.M;
        unsigned two_part = 1u << two_exp;
        Point big = pick(two_part);
        if (odd > 1)
            big = add_points(e, big, pick(odd));
        detail::verify_witness_order(e, big, cyc);
        // a 2-torsion point outside <big>
        Point inside = multiply_point(e, Int(cyc / 2), big);
        Point other = Point::at_infinity();
        for (const Point &t : points_of_exact_order(e, 2))
            if (t != inside) {
                other = t;
                break;
            }
        detail::verify_witness_order(e, other, 2);
        g.generators = {other, big};
    } else if (g.M > 1) {
        Point gen = Point::at_infinity();
        if (two_exp > 0)
            gen = pick(1u << two_exp);
        if (odd > 1)
            gen = gen.infinity ? pick(odd) : add_points(e, gen, pick(odd));
        detail::verify_witness_order(e, gen, g.M);
        g.generators = {gen};
    }
    (void)gen2power;
    return g;
}

} // namespace isogeny_atlas
