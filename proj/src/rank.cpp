#include "liegrowth/rank.hpp"

#include <algorithm>

namespace liegrowth {

int rank_q(IntMatrix a) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    mpz_class prev = 1;
    int rank = 0;
    mpz_class t, u;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r) {
            if (a[r][c] != 0) { piv = r; break; }
        }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        // Bareiss step: all divisions below are exact.
        for (int r = rank + 1; r < rows; ++r) {
            for (int cc = c + 1; cc < cols; ++cc) {
                t = a[rank][c] * a[r][cc];
                u = a[r][c] * a[rank][cc];
                t -= u;
                mpz_divexact(a[r][cc].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

int rank_gfp(const IntMatrix& m, long p) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    std::vector<std::vector<long>> a(rows, std::vector<long>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            long v = mpz_fdiv_ui(m[r][c].get_mpz_t(), static_cast<unsigned long>(p));
            a[r][c] = v;
        }
    auto inv_mod = [p](long x) {
        // Fermat: p prime.
        long result = 1, base = x % p, e = p - 2;
        while (e) {
            if (e & 1) result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return result;
    };
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r) {
            if (a[r][c] % p != 0) { piv = r; break; }
        }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        const long inv = inv_mod(a[rank][c]);
        for (int r = rank + 1; r < rows; ++r) {
            if (a[r][c] % p == 0) continue;
            const long f = a[r][c] * inv % p;
            for (int cc = c; cc < cols; ++cc) {
                a[r][cc] = ((a[r][cc] - f * a[rank][cc]) % p + p) % p;
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<mpq_class>> nullspace_q(const IntMatrix& m, std::size_t ncols) {
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(ncols);
    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols && c < static_cast<int>(m[r].size()); ++c)
            a[r][c] = mpq_class(m[r][c]);

    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r) {
            if (a[r][c] != 0) { piv = r; break; }
        }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        const mpq_class pv = a[rank][c];
        for (int cc = c; cc < cols; ++cc) a[rank][cc] /= pv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const mpq_class f = a[r][c];
            for (int cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
        }
        pivot_col.push_back(c);
        ++rank;
    }

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<mpq_class>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<mpq_class> v(cols);
        v[free] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace liegrowth
