#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liegrowth/words.hpp"

namespace liegrowth {

using Coord = long;

// Finitely many coordinate constraints on subshift points; the empty map is
// the whole unit space.
struct CylinderPattern {
    std::map<Coord, char> constraints;

    bool empty() const { return constraints.empty(); }
    Coord lo() const { return constraints.begin()->first; }
    Coord hi() const { return constraints.rbegin()->first; }
    std::size_t window_len() const {
        return empty() ? 0 : static_cast<std::size_t>(hi() - lo() + 1);
    }
};

// A shift germ restricted to a cylinder.  The zero element is represented at
// the call sites by an absent optional / empty element, never by a Bisection.
struct Bisection {
    long shift = 0;
    CylinderPattern pattern;
};

// Value key for dedup maps: (shift, sorted constraint list).
using BisectionKey = std::pair<long, std::vector<std::pair<Coord, char>>>;
BisectionKey bisection_key(const Bisection& b);
Bisection bisection_from_key(const BisectionKey& k);

// Finite rational combination of bisections, kept in canonical form: per
// shift class either the single empty pattern or pairwise-distinct full words
// over one common window.
struct GroupoidElement {
    std::map<BisectionKey, mpq_class> terms;
    bool is_zero() const { return terms.empty(); }
};

// Refined coordinates of one canonical basis vector: (shift, window lo, word).
using CanonicalLabel = std::tuple<long, Coord, std::string>;

// Per-level outcome of the filtration enumeration.
struct FiltrationResult {
    std::vector<std::size_t> dims;  // dims[0..N], dims[0] = 1
    std::optional<int> sandwich_c;  // smallest C <= cmax satisfying the sandwich
    // Rows (n, dim, lower, upper) for the found C; empty when absent.
    struct Row {
        std::size_t n, dim, lower, upper;
    };
    std::vector<Row> rows;
    std::size_t bisections_seen = 0;
};

// Convolution-algebra arithmetic over the subshift of a fixed word, with
// emptiness decided against its factor language.
class GroupoidAlgebra {
public:
    explicit GroupoidAlgebra(FactorLanguage lang) : lang_(std::move(lang)) {}

    const FactorLanguage& language() const { return lang_; }

    // Generators.
    static Bisection unit() { return {0, {}}; }
    static Bisection shift_fwd() { return {1, {}}; }    // T
    static Bisection shift_back() { return {-1, {}}; }  // T^{-1}
    Bisection letter_projection(char letter) const;     // D_letter, constrains coord 0

    // True iff some point of the subshift satisfies the constraints.  Window
    // beyond the language horizon is a StageError asking for a larger one.
    bool pattern_nonempty(const CylinderPattern& p) const;

    // Set product: (m_a + m_b, constraints of a merged with b's shifted by
    // +m_a).  nullopt encodes zero (conflict or infeasible pattern).
    std::optional<Bisection> bisection_product(const Bisection& a, const Bisection& b) const;

    // Elements and arithmetic; results are always canonical.
    GroupoidElement element(const Bisection& b) const;
    GroupoidElement add(const GroupoidElement& a, const GroupoidElement& b) const;
    GroupoidElement sub(const GroupoidElement& a, const GroupoidElement& b) const;
    GroupoidElement scale(const GroupoidElement& a, const mpq_class& c) const;
    GroupoidElement multiply(const GroupoidElement& a, const GroupoidElement& b) const;
    GroupoidElement canonicalize(const GroupoidElement& e) const;
    bool equal(const GroupoidElement& a, const GroupoidElement& b) const;

    // phi(v) = prod_i D_{v[i]} T; zero iff v is not a factor.
    GroupoidElement phi(const std::string& v) const;

    // Exact rank of {phi(v) : v in F(n)} equals c(n).
    bool phi_injectivity_check(std::size_t n) const;

    // dim span{[phi(u), phi(v)] : |u|+|v| = n}.
    int commutator_span_dim(std::size_t n) const;

    // Span dimensions of products of length <= n of {1, D_x, D_y, T, T^{-1}}
    // and the sandwich constant search.  Needs horizon >= max(2N+1, cmax*N).
    FiltrationResult filtration_growth(std::size_t N, int cmax = 16,
                                       std::size_t budget = 2'000'000) const;

    // dim{e in filtration level n : e commutes with D_x, D_y, T} minus the
    // scalar line.
    std::size_t truncated_center_check(std::size_t level) const;

    // Canonical debug dump, one term per line.
    std::string dump(const GroupoidElement& e) const;

private:
    // Expand an element over fixed per-shift windows into canonical-basis
    // coordinates.  Windows must cover every constrained coordinate.
    std::map<CanonicalLabel, mpq_class> refine_onto(
        const GroupoidElement& e, const std::map<long, std::pair<Coord, Coord>>& windows) const;
    std::map<long, std::pair<Coord, Coord>> union_windows(
        const std::vector<const GroupoidElement*>& es) const;

    // Enumerate level-by-level; returns independent representatives per level.
    struct BfsOutcome {
        std::vector<std::size_t> dims;
        std::vector<Bisection> independent;
        std::size_t seen = 0;
    };
    BfsOutcome enumerate_filtration(std::size_t N, std::size_t budget) const;

    FactorLanguage lang_;
};

}  // namespace liegrowth
