#pragma once

#include <array>
#include <optional>
#include <ostream>

#include "numeric.hpp"

namespace isogeny_atlas {

struct Point {
    bool infinity = true;
    Rat x, y;

    Point() = default;
    Point(Rat px, Rat py) : infinity(false), x(std::move(px)), y(std::move(py)) {}
    static Point at_infinity() { return Point(); }

    friend bool operator==(const Point &a, const Point &b)
    {
        if (a.infinity || b.infinity)
            return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point &a, const Point &b) { return !(a == b); }
};

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
// the usual derived quantities cached.
class Curve {
  public:
    static Curve from_a_invariants(const std::array<Rat, 5> &a) { return Curve(a); }
    static Curve from_a_invariants(Rat a1, Rat a2, Rat a3, Rat a4, Rat a6)
    {
        return Curve({std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)});
    }
    // y^2 = x^3 + Ax + B
    static Curve short_model_curve(Rat A, Rat B)
    {
        return Curve({Rat(0), Rat(0), Rat(0), std::move(A), std::move(B)});
    }

    const Rat &a1() const { return a_[0]; }
    const Rat &a2() const { return a_[1]; }
    const Rat &a3() const { return a_[2]; }
    const Rat &a4() const { return a_[3]; }
    const Rat &a6() const { return a_[4]; }
    const std::array<Rat, 5> &a_invariants() const { return a_; }

    const Rat &b2() const { return b2_; }
    const Rat &b4() const { return b4_; }
    const Rat &b6() const { return b6_; }
    const Rat &b8() const { return b8_; }
    const Rat &c4() const { return c4_; }
    const Rat &c6() const { return c6_; }
    const Rat &discriminant() const { return disc_; }
    const Rat &j_invariant() const { return j_; }

    bool is_short() const { return a_[0] == 0 && a_[1] == 0 && a_[2] == 0; }
    const Rat &A() const { return a_[3]; }
    const Rat &B() const { return a_[4]; }

    bool contains(const Point &p) const
    {
        if (p.infinity)
            return true;
        Rat lhs = p.y * p.y + a1() * p.x * p.y + a3() * p.y;
        Rat rhs = ((p.x + a2()) * p.x + a4()) * p.x + a6();
        return lhs == rhs;
    }

    friend bool operator==(const Curve &e1, const Curve &e2) { return e1.a_ == e2.a_; }
    friend bool operator!=(const Curve &e1, const Curve &e2) { return !(e1 == e2); }

    std::string str() const
    {
        std::string s = "[" + to_string(a_[0]);
        for (int i = 1; i < 5; ++i)
            s += "," + to_string(a_[i]);
        return s + "]";
    }

  private:
    explicit Curve(std::array<Rat, 5> a) : a_(std::move(a))
    {
        b2_ = a_[0] * a_[0] + 4 * a_[1];
        b4_ = 2 * a_[3] + a_[0] * a_[2];
        b6_ = a_[2] * a_[2] + 4 * a_[4];
        b8_ = a_[0] * a_[0] * a_[4] + 4 * a_[1] * a_[4] - a_[0] * a_[2] * a_[3] +
              a_[1] * a_[2] * a_[2] - a_[3] * a_[3];
        c4_ = b2_ * b2_ - 24 * b4_;
        c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
        disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
        if (disc_ == 0)
            throw singular_curve_error("singular curve " + str() + " (discriminant = 0)");
        j_ = c4_ * c4_ * c4_ / disc_;
    }

    std::array<Rat, 5> a_;
    Rat b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_;
};

inline std::ostream &operator<<(std::ostream &os, const Curve &e) { return os << e.str(); }

// Coordinate change x = u^2 X + r, y = u^3 Y + s u^2 X + t turning a curve E
// in (x, y) into a curve E' in (X, Y).
struct Isom {
    Rat u{1}, r{0}, s{0}, t{0};

    static Isom identity() { return {}; }
    static Isom scaling(const Rat &u) { return {u, Rat(0), Rat(0), Rat(0)}; }

    bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }

    Curve apply(const Curve &e) const
    {
        Rat u2 = u * u, u3 = u2 * u;
        Rat na1 = (e.a1() + 2 * s) / u;
        Rat na2 = (e.a2() - s * e.a1() + 3 * r - s * s) / u2;
        Rat na3 = (e.a3() + r * e.a1() + 2 * t) / u3;
        Rat na4 =
            (e.a4() - s * e.a3() + 2 * r * e.a2() - (t + r * s) * e.a1() + 3 * r * r - 2 * s * t) /
            (u2 * u2);
        Rat na6 = (e.a6() + r * e.a4() + r * r * e.a2() + r * r * r - t * e.a3() - t * t -
                   r * t * e.a1()) /
                  (u3 * u3);
        return Curve::from_a_invariants(na1, na2, na3, na4, na6);
    }

    Point map(const Point &p) const
    {
        if (p.infinity)
            return p;
        Rat X = (p.x - r) / (u * u);
        Rat Y = (p.y - s * (p.x - r) - t) / (u * u * u);
        return Point(X, Y);
    }

    Point unmap(const Point &p) const
    {
        if (p.infinity)
            return p;
        Rat x = u * u * p.x + r;
        Rat y = u * u * u * p.y + s * u * u * p.x + t;
        return Point(x, y);
    }

    // first *this (E -> E'), then next (E' -> E'')
    Isom then(const Isom &next) const
    {
        Isom c;
        c.u = u * next.u;
        c.r = u * u * next.r + r;
        c.s = s + u * next.s;
        c.t = u * u * u * next.t + s * u * u * next.r + t;
        return c;
    }

    Isom inverse() const
    {
        Isom inv;
        inv.u = Rat(1) / u;
        inv.r = -r / (u * u);
        inv.s = -s / u;
        inv.t = (s * r - t) / (u * u * u);
        return inv;
    }

    friend bool operator==(const Isom &a, const Isom &b)
    {
        return a.u == b.u && a.r == b.r && a.s == b.s && a.t == b.t;
    }
};

// Short model Y^2 = X^3 - 27 c4 X - 54 c6 together with the coordinate change
// onto it; short inputs are returned unchanged.
inline std::pair<Curve, Isom> short_model(const Curve &e)
{
    if (e.is_short())
        return {e, Isom::identity()};
    Isom tau;
    tau.s = -e.a1() / 2;
    tau.r = -e.b2() / 12;
    tau.t = -(e.a3() + tau.r * e.a1()) / 2;
    tau = tau.then(Isom::scaling(make_rat(1, 6)));
    Curve s = tau.apply(e);
    return {s, tau};
}

inline Point negate_point(const Curve &e, const Point &p)
{
    if (p.infinity)
        return p;
    return Point(p.x, -p.y - e.a1() * p.x - e.a3());
}

// Chord-tangent addition on the long model.
inline Point add_points(const Curve &e, const Point &p, const Point &q)
{
    if (!e.contains(p) || !e.contains(q))
        throw unsupported_input("add_points: point not on curve");
    if (p.infinity)
        return q;
    if (q.infinity)
        return p;
    if (p.x == q.x && p.y + q.y + e.a1() * q.x + e.a3() == 0)
        return Point::at_infinity();

    Rat lambda, nu;
    if (p.x != q.x) {
        lambda = (q.y - p.y) / (q.x - p.x);
        nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
    } else {
        Rat den = 2 * p.y + e.a1() * p.x + e.a3();
        lambda = (3 * p.x * p.x + 2 * e.a2() * p.x + e.a4() - e.a1() * p.y) / den;
        nu = (-p.x * p.x * p.x + e.a4() * p.x + 2 * e.a6() - e.a3() * p.y) / den;
    }
    Rat x3 = lambda * lambda + e.a1() * lambda - e.a2() - p.x - q.x;
    Rat y3 = -(lambda + e.a1()) * x3 - nu - e.a3();
    return Point(x3, y3);
}

inline Point multiply_point(const Curve &e, Int n, const Point &p)
{
    Point base = p;
    if (n < 0) {
        base = negate_point(e, base);
        n = -n;
    }
    Point acc = Point::at_infinity();
    while (n > 0) {
        if (mpz_tstbit(n.get_mpz_t(), 0))
            acc = add_points(e, acc, base);
        n >>= 1;
        if (n > 0)
            base = add_points(e, base, base);
    }
    return acc;
}

// Order of a torsion point, or 0 if the order exceeds the cap. Mazur's bound
// makes 12 the largest point order that can occur over Q.
inline int point_order(const Curve &e, const Point &p, int cap = 12)
{
    Point acc = p;
    for (int n = 1; n <= cap; ++n) {
        if (acc.infinity)
            return n;
        acc = add_points(e, acc, p);
    }
    return 0;
}

// Q-isomorphism test, decided on short models. The witness maps e1's equation
// to e2's exactly.
inline std::optional<Isom> is_isomorphic(const Curve &e1, const Curve &e2)
{
    if (e1.j_invariant() != e2.j_invariant())
        return std::nullopt;
    auto [s1, t1] = short_model(e1);
    auto [s2, t2] = short_model(e2);
    const Rat &A1 = s1.A(), &B1 = s1.B();
    const Rat &A2 = s2.A(), &B2 = s2.B();

    std::optional<Rat> u;
    if (A1 != 0 && B1 != 0) {
        // j != 0, 1728: u^2 is forced
        Rat u2 = (A1 * B2) / (A2 * B1);
        if (u2 * u2 * A1 == A2 && u2 * u2 * u2 * B1 == B2)
            u = exact_root(u2, 2);
    } else if (B1 == 0 && B2 == 0) {
        // j = 1728: u^4 = A2/A1
        u = exact_root(Rat(A2 / A1), 4);
    } else if (A1 == 0 && A2 == 0) {
        // j = 0: u^6 = B2/B1
        u = exact_root(Rat(B2 / B1), 6);
    }
    if (!u)
        return std::nullopt;
    // x_2 = x_1 / u^2: the scaling step is Isom(1/u)
    Isom tau = t1.then(Isom::scaling(Rat(1) / *u)).then(t2.inverse());
    return tau;
}

struct CMRecord {
    Rat j;
    int disc_K;
};

// The thirteen rational CM j-invariants.
inline std::optional<CMRecord> cm_lookup(const Rat &j)
{
    static const std::vector<CMRecord> table = [] {
        auto e = [](long base, unsigned long exp) { return detail::pow_int(Int(base), exp); };
        std::vector<CMRecord> t;
        t.push_back({Rat(0), -3});
        t.push_back({Rat(e(2, 4) * e(3, 3) * e(5, 3)), -3});                      // 54000
        t.push_back({Rat(-e(2, 15) * 3 * e(5, 3)), -3});                          // -12288000
        t.push_back({Rat(e(2, 6) * e(3, 3)), -4});                                // 1728
        t.push_back({Rat(e(2, 3) * e(3, 3) * e(11, 3)), -4});                     // 287496
        t.push_back({Rat(-e(3, 3) * e(5, 3)), -7});                               // -3375
        t.push_back({Rat(e(3, 3) * e(5, 3) * e(17, 3)), -7});                     // 16581375
        t.push_back({Rat(e(2, 6) * e(5, 3)), -8});                                // 8000
        t.push_back({Rat(-e(2, 15)), -11});                                       // -32768
        t.push_back({Rat(-e(2, 15) * e(3, 3)), -19});                             // -884736
        t.push_back({Rat(-e(2, 18) * e(3, 3) * e(5, 3)), -43});                   // -884736000
        t.push_back({Rat(-e(2, 15) * e(3, 3) * e(5, 3) * e(11, 3)), -67});        // -147197952000
        t.push_back({Rat(-e(2, 18) * e(3, 3) * e(5, 3) * e(23, 3) * e(29, 3)), -163});
        return t;
    }();
    for (const auto &rec : table)
        if (rec.j == j)
            return rec;
    return std::nullopt;
}

// Trace of Frobenius a_p = p + 1 - #E(F_p) by direct point count; the model
// must reduce to a nonsingular curve mod p (checked by the caller).
inline long trace_mod_p(const Int &A, const Int &B, long p)
{
    std::vector<int> legendre(p, 0);
    for (long i = 1; i < p; ++i)
        legendre[(i * i) % p] = 1;
    auto chi = [&](long v) -> long {
        v %= p;
        if (v < 0)
            v += p;
        if (v == 0)
            return 0;
        return legendre[v] ? 1 : -1;
    };
    long a = Int(A % p).get_si();
    long b = Int(B % p).get_si();
    long sum = 0;
    for (long x = 0; x < p; ++x)
        sum += chi(((x * x % p) * x + a * x + b) % p);
    return -sum;
}

} // namespace isogeny_atlas
