#include "liegrowth/liecomm.hpp"

#include <algorithm>

#include "liegrowth/errors.hpp"

namespace liegrowth {

FieldDescriptor FieldDescriptor::GF(long p) {
    if (p < 3) throw ValidationError("prime field needs an odd prime > 2");
    if (p % 2 == 0) throw ValidationError("characteristic 2 is not supported");
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw ValidationError(std::to_string(p) + " is not prime");
    return FieldDescriptor{false, p};
}

IntMatrix commutator_matrix(const FactorLanguage& lang, std::size_t n, bool upper_only) {
    if (n < 2) throw ValidationError("commutators need degree >= 2");
    if (n > lang.horizon())
        throw StageError("liecomm", "degree " + std::to_string(n) + " beyond horizon " +
                                        std::to_string(lang.horizon()),
                         "raise the language horizon");
    const auto& target = lang.at(n);
    IntMatrix rows;
    for (std::size_t a = 1; a + 1 <= n; ++a) {
        std::size_t b = n - a;
        for (const auto& u : lang.at(a)) {
            for (const auto& v : lang.at(b)) {
                if (upper_only && !(u < v)) continue;
                auto uv = lang.index_of(u + v);
                auto vu = lang.index_of(v + u);
                if (uv < 0 && vu < 0) continue;
                std::vector<mpz_class> row(target.size(), 0);
                if (uv >= 0) row[static_cast<std::size_t>(uv)] += 1;
                if (vu >= 0) row[static_cast<std::size_t>(vu)] -= 1;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

int commutator_dim(const FactorLanguage& lang, std::size_t n, const FieldDescriptor& field) {
    if (!field.rational && field.p % 2 == 0)
        throw ValidationError("characteristic 2 is not supported");
    IntMatrix m = commutator_matrix(lang, n, /*upper_only=*/true);
    return field.rational ? rank_q(std::move(m)) : rank_gfp(m, field.p);
}

QuarterBoundReport verify_quarter_bound(const FactorLanguage& lang, std::size_t n,
                                        const FieldDescriptor& field) {
    if (n <= 2) throw ValidationError("quarter bound needs n > 2");
    QuarterBoundReport rep;
    rep.n = n;
    rep.dim_A_nm2 = lang.complexity(n - 2);
    rep.comm_dim = commutator_dim(lang, n, field);
    rep.pass = 4 * static_cast<std::size_t>(rep.comm_dim) >= rep.dim_A_nm2;
    rep.margin = mpq_class(rep.comm_dim) - mpq_class(static_cast<long>(rep.dim_A_nm2), 4);

    // Split A(n-1) = x S1 ⊕ y S2 by leading letter; pigeonhole picks the
    // larger side (ties go to the first letter).
    const std::string& letters = lang.letters();
    rep.dim_A_nm1 = lang.complexity(n - 1);
    std::size_t side[2] = {0, 0};
    for (const auto& f : lang.at(n - 1)) {
        if (f[0] == letters[0]) ++side[0];
        else ++side[1];
    }
    int pick = side[1] > side[0] ? 1 : 0;
    rep.pigeon_letter = letters[static_cast<std::size_t>(pick)];
    rep.side_dim = side[pick];
    rep.pigeonhole_ok = 2 * rep.side_dim >= rep.dim_A_nm1;

    // dim(Ker ad_{x_j} ∩ x_i S_i): kernel of u -> x_j u - u x_j on the chosen
    // side, inside A(n).
    const auto& target = lang.at(n);
    for (int j = 0; j < 2; ++j) {
        IntMatrix m(target.size(), std::vector<mpz_class>(rep.side_dim, 0));
        std::size_t col = 0;
        for (const auto& f : lang.at(n - 1)) {
            if (f[0] != rep.pigeon_letter) continue;
            auto left = lang.index_of(letters[static_cast<std::size_t>(j)] + f);
            auto right = lang.index_of(f + letters[static_cast<std::size_t>(j)]);
            if (left >= 0) m[static_cast<std::size_t>(left)][col] += 1;
            if (right >= 0) m[static_cast<std::size_t>(right)][col] -= 1;
            ++col;
        }
        int rk = field.rational ? rank_q(std::move(m)) : rank_gfp(m, field.p);
        rep.kernel_dim[j] = rep.side_dim - static_cast<std::size_t>(rk);
    }
    rep.kernel_ok = 2 * std::min(rep.kernel_dim[0], rep.kernel_dim[1]) <= rep.side_dim;
    return rep;
}

ProxyReport lie_growth_proxy(const FactorLanguage& lang, std::size_t N,
                             const FieldDescriptor& field) {
    if (N < 2) throw ValidationError("proxy needs N >= 2");
    if (N > lang.horizon())
        throw StageError("liecomm", "proxy horizon beyond language horizon");
    ProxyReport rep;
    rep.proxy = GrowthSeries("lie-proxy-" + lang.source_name());
    mpz_class proxy_acc = 0, comp_sum = 0;
    std::vector<mpz_class> cumulative(N + 1, 0);  // cumulative[n] = sum_{m<=n} c(m)
    for (std::size_t m = 1; m <= N; ++m) {
        comp_sum += static_cast<long>(lang.complexity(m));
        cumulative[m] = comp_sum;
    }
    for (std::size_t n = 2; n <= N; ++n) {
        if (n >= 3) proxy_acc += commutator_dim(lang, n, field);
        rep.proxy.set_value(static_cast<long>(n), proxy_acc);
        ProxyRow row;
        row.n = static_cast<long>(n);
        row.lower_sum = cumulative[n - 2];
        row.proxy = proxy_acc;
        row.upper_sum = cumulative[n];
        if (row.lower_sum > 4 * row.proxy || row.proxy > row.upper_sum)
            rep.sandwich_ok = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace liegrowth
