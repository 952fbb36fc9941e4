#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "liegrowth/rank.hpp"
#include "liegrowth/series.hpp"
#include "liegrowth/words.hpp"

namespace liegrowth {

// Coefficient field for the rank problems.  Characteristic 2 is excluded
// (commutator antisymmetry degenerates there).
struct FieldDescriptor {
    bool rational = true;
    long p = 0;

    static FieldDescriptor Q() { return FieldDescriptor{true, 0}; }
    static FieldDescriptor GF(long p);  // odd prime required

    std::string name() const { return rational ? "Q" : "GF(" + std::to_string(p) + ")"; }
};

// Rows span the degree-n commutators [u, v] = uv - vu over the basis F(n).
// `upper_only` keeps one row per unordered pair (u < v lexicographically);
// the mirrored rows are exact negatives.
IntMatrix commutator_matrix(const FactorLanguage& lang, std::size_t n, bool upper_only);

// dim([A,A] ∩ A(n)) as an exact rank.  Over GF(p) the value is a certified
// lower bound for the rank over Q; over Q it is exact.
int commutator_dim(const FactorLanguage& lang, std::size_t n, const FieldDescriptor& field);

// One degree of the quarter bound, with the intermediate split facts.
struct QuarterBoundReport {
    std::size_t n = 0;
    std::size_t dim_A_nm2 = 0;   // dim A(n-2)
    int comm_dim = 0;
    bool pass = false;           // 4 * comm_dim >= dim A(n-2)
    mpq_class margin;            // comm_dim - dim A(n-2)/4

    char pigeon_letter = '0';    // the side x_i S_i chosen by pigeonhole
    std::size_t side_dim = 0;    // dim x_i S_i
    std::size_t dim_A_nm1 = 0;   // = c(n-1)
    bool pigeonhole_ok = false;  // 2 * side_dim >= c(n-1)
    std::size_t kernel_dim[2] = {0, 0};  // dim(Ker ad_{x_j} ∩ x_i S_i), j = x, y
    bool kernel_ok = false;      // 2 * min_j kernel_dim[j] <= side_dim
};
QuarterBoundReport verify_quarter_bound(const FactorLanguage& lang, std::size_t n,
                                        const FieldDescriptor& field);

// proxy(n) = sum_{m=3}^{n} commutator_dim(m) for 2 <= n <= N, with the
// graded sandwich (1/4) sum_{m<=n-2} c(m) <= proxy(n) <= sum_{m<=n} c(m).
struct ProxyRow {
    long n = 0;
    mpz_class lower_sum;   // sum_{m<=n-2} c(m); bound is this divided by 4
    mpz_class proxy;
    mpz_class upper_sum;   // sum_{m<=n} c(m)
};
struct ProxyReport {
    GrowthSeries proxy;
    std::vector<ProxyRow> rows;
    bool sandwich_ok = true;
};
ProxyReport lie_growth_proxy(const FactorLanguage& lang, std::size_t N,
                             const FieldDescriptor& field);

}  // namespace liegrowth
