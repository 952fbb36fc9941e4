#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liegrowth/series.hpp"
#include "liegrowth/words.hpp"

namespace liegrowth {

// The graded algebra spanned by the factors of a word: basis of degree n is
// F(n), products of non-factors vanish.  Unital; the unit is the empty word.
class MonomialAlgebra {
public:
    explicit MonomialAlgebra(FactorLanguage lang) : lang_(std::move(lang)) {}

    const FactorLanguage& language() const { return lang_; }
    std::size_t horizon() const { return lang_.horizon(); }

    std::size_t dim_component(std::size_t n) const;  // = c(n); n=0 -> 1

    // Product of basis monomials; nullopt encodes zero.  Degree must stay
    // within the horizon.
    std::optional<std::string> multiply(const std::string& u, const std::string& v) const;

    // Smallest t with letter^t not a factor; StageError when every power up
    // to the horizon is a factor.
    std::size_t nilpotency_degree(char letter) const;

    // dim(Z(A) ∩ A(n)) via the nullspace of z -> ([z,x],[z,y]).  Needs n+1
    // within the horizon.
    std::size_t center_component(std::size_t n) const;

    // Same dimension computed the other way: dim(Ker ad_x ∩ Ker ad_y ∩ A(n)).
    std::size_t kernel_intersection_dim(std::size_t n) const;

    // Rational basis of the degree-n center component (coefficient vectors
    // over the sorted factor basis).
    std::vector<std::vector<mpq_class>> center_basis(std::size_t n) const;

private:
    FactorLanguage lang_;
};

// gamma(n) = sum_{1<=m<=n} c(m), optionally counting the unit.
GrowthSeries algebra_growth(const MonomialAlgebra& alg, std::size_t n_max, bool with_unit);

}  // namespace liegrowth
