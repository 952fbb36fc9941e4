#include "liegrowth/monomial.hpp"

#include <algorithm>

#include "liegrowth/errors.hpp"
#include "liegrowth/rank.hpp"

namespace liegrowth {

namespace {

// Rows of the map z -> [z, g] restricted to A(n) -> A(n+1) for one letter g:
// column j is the image of the j-th basis factor of length n.
IntMatrix ad_letter_matrix(const FactorLanguage& lang, std::size_t n, char g) {
    const auto& basis = lang.at(n);
    const auto& target = lang.at(n + 1);
    IntMatrix m(target.size(), std::vector<mpz_class>(basis.size(), 0));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        std::string right = basis[j] + g;   // z*g
        std::string left = g + basis[j];    // g*z
        auto ri = lang.index_of(right);
        auto li = lang.index_of(left);
        if (ri >= 0) m[static_cast<std::size_t>(ri)][j] += 1;
        if (li >= 0) m[static_cast<std::size_t>(li)][j] -= 1;
    }
    return m;
}

IntMatrix stacked_center_matrix(const FactorLanguage& lang, std::size_t n) {
    IntMatrix m;
    for (char g : lang.letters()) {
        IntMatrix part = ad_letter_matrix(lang, n, g);
        m.insert(m.end(), part.begin(), part.end());
    }
    return m;
}

}  // namespace

std::size_t MonomialAlgebra::dim_component(std::size_t n) const {
    if (n == 0) return 1;
    return lang_.complexity(n);
}

std::optional<std::string> MonomialAlgebra::multiply(const std::string& u,
                                                     const std::string& v) const {
    if (!u.empty() && !lang_.is_factor(u))
        throw ValidationError("'" + u + "' is not a basis monomial");
    if (!v.empty() && !lang_.is_factor(v))
        throw ValidationError("'" + v + "' is not a basis monomial");
    if (u.size() + v.size() > horizon())
        throw StageError("monomial", "product degree " + std::to_string(u.size() + v.size()) +
                                         " exceeds horizon " + std::to_string(horizon()),
                         "rebuild the factor language with a larger N");
    std::string uv = u + v;
    if (uv.empty() || lang_.is_factor(uv)) return uv;
    return std::nullopt;
}

std::size_t MonomialAlgebra::nilpotency_degree(char letter) const {
    if (lang_.letters().find(letter) == std::string::npos)
        throw ValidationError(std::string("letter '") + letter + "' is not a generator");
    std::string power;
    for (std::size_t t = 1; t <= horizon(); ++t) {
        power.push_back(letter);
        if (!lang_.is_factor(power)) return t;
    }
    throw StageError("monomial",
                     std::string("'") + letter + "' is not nilpotent up to horizon " +
                         std::to_string(horizon()),
                     "periodic-looking word, or raise N");
}

std::size_t MonomialAlgebra::center_component(std::size_t n) const {
    if (n < 1) throw ValidationError("center_component needs n >= 1");
    if (n + 1 > horizon())
        throw StageError("monomial", "center at n=" + std::to_string(n) +
                                         " needs factors of length n+1",
                         "raise the language horizon");
    IntMatrix m = stacked_center_matrix(lang_, n);
    return lang_.complexity(n) - static_cast<std::size_t>(rank_q(m));
}

std::size_t MonomialAlgebra::kernel_intersection_dim(std::size_t n) const {
    if (n < 1 || n + 1 > horizon())
        throw StageError("monomial", "kernel intersection needs 1 <= n < horizon");
    // Nullspace of ad_x, then the rank of ad_y restricted to it.
    const std::string& letters = lang_.letters();
    auto ker_x = nullspace_q(ad_letter_matrix(lang_, n, letters[0]), lang_.complexity(n));
    if (ker_x.empty()) return 0;
    IntMatrix ad_y = ad_letter_matrix(lang_, n, letters[1]);
    // Columns: images of the kernel basis vectors under ad_y, cleared to
    // integers (kernel vectors come out of RREF with rational entries).
    IntMatrix restricted(ad_y.size(), std::vector<mpz_class>(ker_x.size(), 0));
    for (std::size_t j = 0; j < ker_x.size(); ++j) {
        mpz_class denom = 1;
        for (const auto& c : ker_x[j]) denom = lcm(denom, c.get_den());
        for (std::size_t r = 0; r < ad_y.size(); ++r) {
            mpq_class acc = 0;
            for (std::size_t c = 0; c < ker_x[j].size(); ++c)
                if (ad_y[r][c] != 0) acc += ker_x[j][c] * ad_y[r][c];
            acc *= denom;
            restricted[r][j] = acc.get_num();  // exact: denominator cleared
        }
    }
    return ker_x.size() - static_cast<std::size_t>(rank_q(restricted));
}

std::vector<std::vector<mpq_class>> MonomialAlgebra::center_basis(std::size_t n) const {
    if (n < 1 || n + 1 > horizon())
        throw StageError("monomial", "center basis needs 1 <= n < horizon");
    return nullspace_q(stacked_center_matrix(lang_, n), lang_.complexity(n));
}

GrowthSeries algebra_growth(const MonomialAlgebra& alg, std::size_t n_max, bool with_unit) {
    if (n_max > alg.horizon())
        throw StageError("monomial", "growth horizon exceeds language horizon");
    GrowthSeries s(std::string("gamma-") + alg.language().source_name() +
                   (with_unit ? "-unital" : ""));
    mpz_class acc = with_unit ? 1 : 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        acc += static_cast<long>(alg.dim_component(n));
        s.set_value(static_cast<long>(n), acc);
    }
    return s;
}

}  // namespace liegrowth
