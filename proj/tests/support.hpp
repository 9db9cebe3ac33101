#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <random>
#include <vector>

#include <isogeny_atlas/polynomial.hpp>

namespace test_support {

using isogeny_atlas::Int;
using isogeny_atlas::Rat;
using isogeny_atlas::ZPoly;

// Resultant via fraction-free Gaussian elimination (Bareiss) on the Sylvester
// matrix. Deliberately does not reuse the library's PRS code.
inline Int sylvester_resultant(const ZPoly &f, const ZPoly &g)
{
    int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0)
        return 0;
    int size = m + n;
    if (size == 0)
        return 1;
    std::vector<std::vector<Int>> a(size, std::vector<Int>(size, Int(0)));
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k)
            a[row][row + (m - k)] = f.coeff(k);
    for (int row = 0; row < m; ++row)
        for (int k = 0; k <= n; ++k)
            a[n + row][row + (n - k)] = g.coeff(k);

    Int sign = 1, prev = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < size; ++i)
                if (a[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0)
                return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i)
            for (int j = k + 1; j < size; ++j) {
                Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = num / prev;
            }
        prev = a[k][k];
    }
    return sign * a[size - 1][size - 1];
}

inline std::mt19937_64 seeded_rng(unsigned long long salt)
{
    return std::mt19937_64(0x5eedULL * 2654435761ULL + salt);
}

inline ZPoly random_zpoly(std::mt19937_64 &rng, int degree, long coeff_bound)
{
    std::uniform_int_distribution<long> dist(-coeff_bound, coeff_bound);
    std::vector<Int> c(degree + 1);
    for (auto &z : c)
        z = dist(rng);
    while (c.back() == 0)
        c.back() = dist(rng);
    return ZPoly(std::move(c));
}

} // namespace test_support
