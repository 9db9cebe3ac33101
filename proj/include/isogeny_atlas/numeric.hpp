#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace isogeny_atlas {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when a mathematically impossible state is reached; the classification
// theorems make these unreachable on valid inputs.
class invariant_violation : public std::logic_error {
  public:
    explicit invariant_violation(const std::string &what) : std::logic_error(what) {}
};

class singular_curve_error : public std::invalid_argument {
  public:
    explicit singular_curve_error(const std::string &what) : std::invalid_argument(what) {}
};

class unsupported_input : public std::invalid_argument {
  public:
    explicit unsupported_input(const std::string &what) : std::invalid_argument(what) {}
};

inline Rat make_rat(const Int &num, const Int &den)
{
    if (den == 0)
        throw unsupported_input("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline std::string to_string(const Int &n) { return n.get_str(); }

inline std::string to_string(const Rat &q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "n" or "n/d" with optional sign.
inline Rat parse_rational(const std::string &text)
{
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw unsupported_input("malformed rational: '" + text + "'");
    if (q.get_den() == 0)
        throw unsupported_input("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::optional<Int> exact_root(const Int &n, unsigned long k)
{
    if (k == 0)
        throw unsupported_input("zeroth root");
    if (n < 0 && k % 2 == 0)
        return std::nullopt;
    Int r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    if (!exact)
        return std::nullopt;
    return r;
}

// Exact k-th root of a rational, if one exists in Q.
inline std::optional<Rat> exact_root(const Rat &q, unsigned long k)
{
    auto num = exact_root(Int(q.get_num()), k);
    if (!num)
        return std::nullopt;
    auto den = exact_root(Int(q.get_den()), k);
    if (!den)
        return std::nullopt;
    return make_rat(*num, *den);
}

inline bool is_square(const Rat &q) { return exact_root(q, 2).has_value(); }

namespace detail {

inline Int abs_int(const Int &n) { return n < 0 ? Int(-n) : n; }

inline Int pow_int(const Int &b, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline bool is_probable_prime(const Int &n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Brent's cycle variant of Pollard rho; returns a nontrivial factor of odd composite n.
inline Int pollard_brent(const Int &n)
{
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1, q = 1, ys = y;
        long r = 1;
        auto step = [&](Int &v) { v = (v * v + c) % n; };
        while (d == 1) {
            x = y;
            for (long i = 0; i < r; ++i)
                step(y);
            for (long k = 0; k < r && d == 1; k += 128) {
                ys = y;
                long lim = std::min<long>(128, r - k);
                for (long i = 0; i < lim; ++i) {
                    step(y);
                    q = q * abs_int(x - y) % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (d == n) {
            // backtrack one step at a time
            d = 1;
            while (d == 1) {
                step(ys);
                mpz_gcd(d.get_mpz_t(), Int(abs_int(x - ys)).get_mpz_t(), n.get_mpz_t());
            }
        }
        if (d != n)
            return d;
    }
}

inline void factor_into(Int n, std::vector<std::pair<Int, unsigned>> &out)
{
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        for (auto &[p, e] : out)
            if (p == n) {
                ++e;
                return;
            }
        out.emplace_back(n, 1);
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(Int(n / d), out);
}

} // namespace detail

// Factorization of a nonzero integer into primes: trial division to 10^6, then
// Brent-rho on what is left. Pairs (p, e) sorted by p; sign ignored.
inline std::vector<std::pair<Int, unsigned>> factor_integer(const Int &n_in)
{
    if (n_in == 0)
        throw unsupported_input("factor_integer(0)");
    Int n = detail::abs_int(n_in);
    std::vector<std::pair<Int, unsigned>> out;
    auto strip = [&](const Int &p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e)
            out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Int p = 5; p <= 1000000 && p * p <= n; p += (p % 6 == 5) ? 2 : 4)
        strip(p);
    if (n > 1)
        detail::factor_into(n, out);
    std::sort(out.begin(), out.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

// Largest squarefree d with n = d * m^2 (sign preserved).
inline Int squarefree_part(const Int &n)
{
    if (n == 0)
        return 0;
    Int d = n < 0 ? -1 : 1;
    for (const auto &[p, e] : factor_integer(n))
        if (e % 2)
            d *= p;
    return d;
}

// All positive divisors, ascending.
inline std::vector<Int> divisors(const Int &n)
{
    std::vector<Int> out{1};
    for (const auto &[p, e] : factor_integer(n)) {
        size_t sz = out.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Int next_prime(const Int &n)
{
    Int p;
    mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
    return p;
}

} // namespace isogeny_atlas
