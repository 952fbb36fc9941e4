#include "liegrowth/groupoid.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "liegrowth/errors.hpp"
#include "liegrowth/rank.hpp"

namespace liegrowth {

BisectionKey bisection_key(const Bisection& b) {
    std::vector<std::pair<Coord, char>> cs(b.pattern.constraints.begin(),
                                           b.pattern.constraints.end());
    return {b.shift, std::move(cs)};
}

Bisection bisection_from_key(const BisectionKey& k) {
    Bisection b;
    b.shift = k.first;
    for (const auto& [c, ch] : k.second) b.pattern.constraints.emplace(c, ch);
    return b;
}

Bisection GroupoidAlgebra::letter_projection(char letter) const {
    if (lang_.letters().find(letter) == std::string::npos)
        throw ValidationError(std::string("letter '") + letter + "' is not in the alphabet");
    Bisection b;
    b.pattern.constraints.emplace(0, letter);
    return b;
}

bool GroupoidAlgebra::pattern_nonempty(const CylinderPattern& p) const {
    if (p.empty()) return true;
    std::size_t len = p.window_len();
    if (len > lang_.horizon())
        throw StageError("groupoid",
                         "pattern window length " + std::to_string(len) +
                             " exceeds language horizon " + std::to_string(lang_.horizon()),
                         "rebuild the factor language with a larger N");
    Coord lo = p.lo();
    if (p.constraints.size() == len) {
        std::string w(len, '?');
        for (const auto& [c, ch] : p.constraints) w[static_cast<std::size_t>(c - lo)] = ch;
        return lang_.is_factor(w);
    }
    for (const auto& f : lang_.at(len)) {
        bool ok = true;
        for (const auto& [c, ch] : p.constraints)
            if (f[static_cast<std::size_t>(c - lo)] != ch) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

std::optional<Bisection> GroupoidAlgebra::bisection_product(const Bisection& a,
                                                            const Bisection& b) const {
    Bisection out;
    out.shift = a.shift + b.shift;
    out.pattern = a.pattern;
    for (const auto& [c, ch] : b.pattern.constraints) {
        auto [it, inserted] = out.pattern.constraints.emplace(c + a.shift, ch);
        if (!inserted && it->second != ch) return std::nullopt;  // conflicting letters
    }
    if (!pattern_nonempty(out.pattern)) return std::nullopt;
    return out;
}

GroupoidElement GroupoidAlgebra::element(const Bisection& b) const {
    if (!pattern_nonempty(b.pattern)) return {};
    GroupoidElement e;
    e.terms.emplace(bisection_key(b), 1);
    return canonicalize(e);
}

GroupoidElement GroupoidAlgebra::add(const GroupoidElement& a, const GroupoidElement& b) const {
    GroupoidElement raw = a;
    for (const auto& [k, c] : b.terms) {
        auto [it, inserted] = raw.terms.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) raw.terms.erase(it);
        }
    }
    return canonicalize(raw);
}

GroupoidElement GroupoidAlgebra::sub(const GroupoidElement& a, const GroupoidElement& b) const {
    return add(a, scale(b, -1));
}

GroupoidElement GroupoidAlgebra::scale(const GroupoidElement& a, const mpq_class& c) const {
    if (c == 0) return {};
    GroupoidElement out = a;  // scaling keeps canonical form
    for (auto& [k, v] : out.terms) v *= c;
    return out;
}

GroupoidElement GroupoidAlgebra::multiply(const GroupoidElement& a,
                                          const GroupoidElement& b) const {
    GroupoidElement raw;
    for (const auto& [ka, ca] : a.terms) {
        Bisection ba = bisection_from_key(ka);
        for (const auto& [kb, cb] : b.terms) {
            auto p = bisection_product(ba, bisection_from_key(kb));
            if (!p) continue;
            auto key = bisection_key(*p);
            auto [it, inserted] = raw.terms.emplace(key, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second == 0) raw.terms.erase(it);
            }
        }
    }
    return canonicalize(raw);
}

GroupoidElement GroupoidAlgebra::canonicalize(const GroupoidElement& e) const {
    // Group terms by shift class.
    std::map<long, std::vector<std::pair<const BisectionKey*, mpq_class>>> by_shift;
    for (const auto& [k, c] : e.terms) by_shift[k.first].emplace_back(&k, c);

    GroupoidElement out;
    for (const auto& [m, terms] : by_shift) {
        mpq_class full_coeff = 0;  // terms with no constraints
        Coord lo = 0, hi = -1;
        bool have_window = false;
        for (const auto& [k, c] : terms) {
            if (k->second.empty()) {
                full_coeff += c;
                continue;
            }
            Coord tlo = k->second.front().first, thi = k->second.back().first;
            if (!have_window) {
                lo = tlo;
                hi = thi;
                have_window = true;
            } else {
                lo = std::min(lo, tlo);
                hi = std::max(hi, thi);
            }
        }
        if (!have_window) {
            if (full_coeff != 0)
                out.terms.emplace(BisectionKey{m, {}}, full_coeff);
            continue;
        }
        std::size_t len = static_cast<std::size_t>(hi - lo + 1);
        if (len > lang_.horizon())
            throw StageError("groupoid",
                             "canonical window length " + std::to_string(len) +
                                 " exceeds language horizon",
                             "rebuild the factor language with a larger N");

        // Refine every term to full words over the union window.
        std::map<std::string, mpq_class> words;
        for (const auto& f : lang_.at(len)) {
            mpq_class acc = full_coeff;
            for (const auto& [k, c] : terms) {
                if (k->second.empty()) continue;
                bool match = true;
                for (const auto& [coord, ch] : k->second)
                    if (f[static_cast<std::size_t>(coord - lo)] != ch) {
                        match = false;
                        break;
                    }
                if (match) acc += c;
            }
            if (acc != 0) words.emplace(f, std::move(acc));
        }
        if (words.empty()) continue;

        // Shrink the window from either end while the refined function does
        // not depend on the dropped coordinate: each boundary group must have
        // one common coefficient and carry every language completion.
        const std::string& alphabet = lang_.letters();
        for (;;) {
            if (len == 0) break;
            auto try_drop = [&](bool drop_hi) -> bool {
                std::map<std::string, std::pair<mpq_class, std::set<char>>> groups;
                for (const auto& [w, c] : words) {
                    std::string stem = drop_hi ? w.substr(0, len - 1) : w.substr(1);
                    char edge = drop_hi ? w.back() : w.front();
                    auto [it, inserted] = groups.emplace(stem, std::make_pair(c, std::set<char>{edge}));
                    if (!inserted) {
                        if (it->second.first != c) return false;
                        it->second.second.insert(edge);
                    }
                }
                for (const auto& [stem, data] : groups) {
                    std::set<char> completions;
                    for (char a : alphabet) {
                        std::string probe = drop_hi ? stem + a : a + stem;
                        if (lang_.is_factor(probe)) completions.insert(a);
                    }
                    if (completions != data.second) return false;
                }
                std::map<std::string, mpq_class> next;
                for (auto& [stem, data] : groups) next.emplace(stem, std::move(data.first));
                words = std::move(next);
                if (drop_hi) --hi; else ++lo;
                --len;
                return true;
            };
            if (try_drop(true)) continue;
            if (try_drop(false)) continue;
            break;
        }

        for (const auto& [w, c] : words) {
            BisectionKey k{m, {}};
            for (std::size_t i = 0; i < w.size(); ++i)
                k.second.emplace_back(lo + static_cast<Coord>(i), w[i]);
            out.terms.emplace(std::move(k), c);
        }
    }
    return out;
}

bool GroupoidAlgebra::equal(const GroupoidElement& a, const GroupoidElement& b) const {
    return sub(a, b).is_zero();
}

GroupoidElement GroupoidAlgebra::phi(const std::string& v) const {
    for (char ch : v)
        if (lang_.letters().find(ch) == std::string::npos)
            throw ValidationError(std::string("phi: letter '") + ch + "' not in alphabet");
    if (v.size() > lang_.horizon())
        throw StageError("groupoid", "phi argument longer than horizon",
                         "rebuild the factor language with a larger N");
    GroupoidElement e = element(unit());
    for (char ch : v) {
        e = multiply(e, element(letter_projection(ch)));
        e = multiply(e, element(shift_fwd()));
    }
    if (!v.empty() && e.is_zero() != !lang_.is_factor(v))
        throw InvariantError("phi image zero-ness disagrees with factor membership for '" + v +
                             "'");
    for (const auto& [k, c] : e.terms)
        if (k.first != static_cast<long>(v.size()))
            throw InvariantError("phi image violates the shift grading for '" + v + "'");
    return e;
}

std::map<long, std::pair<Coord, Coord>> GroupoidAlgebra::union_windows(
    const std::vector<const GroupoidElement*>& es) const {
    std::map<long, std::pair<Coord, Coord>> windows;
    for (const GroupoidElement* e : es) {
        for (const auto& [k, c] : e->terms) {
            auto [it, inserted] = windows.emplace(k.first, std::make_pair<Coord, Coord>(0, -1));
            if (k.second.empty()) continue;
            Coord tlo = k.second.front().first, thi = k.second.back().first;
            if (it->second.first > it->second.second) {
                it->second = {tlo, thi};
            } else {
                it->second.first = std::min(it->second.first, tlo);
                it->second.second = std::max(it->second.second, thi);
            }
        }
    }
    return windows;
}

std::map<CanonicalLabel, mpq_class> GroupoidAlgebra::refine_onto(
    const GroupoidElement& e, const std::map<long, std::pair<Coord, Coord>>& windows) const {
    std::map<CanonicalLabel, mpq_class> out;
    for (const auto& [k, coeff] : e.terms) {
        auto wit = windows.find(k.first);
        if (wit == windows.end())
            throw InvariantError("refine_onto: no window for shift " + std::to_string(k.first));
        auto [lo, hi] = wit->second;
        if (hi < lo) {
            if (!k.second.empty())
                throw InvariantError("refine_onto: empty window with constraints");
            auto& slot = out[CanonicalLabel{k.first, lo, ""}];
            slot += coeff;
            if (slot == 0) out.erase(CanonicalLabel{k.first, lo, ""});
            continue;
        }
        std::size_t len = static_cast<std::size_t>(hi - lo + 1);
        if (!k.second.empty() && (k.second.front().first < lo || k.second.back().first > hi))
            throw InvariantError("refine_onto: window does not cover the pattern");
        for (const auto& f : lang_.at(len)) {
            bool match = true;
            for (const auto& [coord, ch] : k.second)
                if (f[static_cast<std::size_t>(coord - lo)] != ch) {
                    match = false;
                    break;
                }
            if (!match) continue;
            CanonicalLabel lab{k.first, lo, f};
            auto& slot = out[lab];
            slot += coeff;
            if (slot == 0) out.erase(lab);
        }
    }
    return out;
}

bool GroupoidAlgebra::phi_injectivity_check(std::size_t n) const {
    if (n == 0) return true;
    if (n > lang_.horizon())
        throw StageError("groupoid", "injectivity degree beyond horizon");
    std::map<long, std::pair<Coord, Coord>> windows{
        {static_cast<long>(n), {0, static_cast<Coord>(n) - 1}}};
    Echelon<CanonicalLabel> ech;
    int rank = 0;
    for (const auto& v : lang_.at(n)) {
        GroupoidElement img = phi(v);
        if (ech.add(refine_onto(img, windows))) ++rank;
    }
    return rank == static_cast<int>(lang_.complexity(n));
}

int GroupoidAlgebra::commutator_span_dim(std::size_t n) const {
    if (n < 2) throw ValidationError("commutator span needs degree >= 2");
    std::map<long, std::pair<Coord, Coord>> windows{
        {static_cast<long>(n), {0, static_cast<Coord>(n) - 1}}};
    Echelon<CanonicalLabel> ech;
    int rank = 0;
    for (std::size_t a = 1; a + 1 <= n; ++a) {
        for (const auto& u : lang_.at(a)) {
            for (const auto& v : lang_.at(n - a)) {
                if (!(u < v)) continue;  // mirrored brackets are negatives
                GroupoidElement bracket = sub(multiply(phi(u), phi(v)), multiply(phi(v), phi(u)));
                if (bracket.is_zero()) continue;
                if (ech.add(refine_onto(bracket, windows))) ++rank;
            }
        }
    }
    return rank;
}

GroupoidAlgebra::BfsOutcome GroupoidAlgebra::enumerate_filtration(std::size_t N,
                                                                  std::size_t budget) const {
    BfsOutcome out;
    out.dims.assign(N + 1, 0);
    out.dims[0] = 1;
    if (N == 0) return out;

    const Coord w = static_cast<Coord>(N);
    if (2 * N + 1 > lang_.horizon())
        throw StageError("groupoid",
                         "filtration depth " + std::to_string(N) + " needs horizon >= " +
                             std::to_string(2 * N + 1),
                         "rebuild the factor language with a larger N");
    std::map<long, std::pair<Coord, Coord>> windows;
    for (long m = -w - 1; m <= w + 1; ++m) windows.emplace(m, std::make_pair(-w, w));

    Echelon<CanonicalLabel> ech;
    std::set<BisectionKey> seen;
    std::vector<Bisection> frontier;
    std::size_t products = 0;

    auto try_add = [&](const Bisection& b, std::vector<Bisection>& next) {
        auto key = bisection_key(b);
        if (!seen.insert(key).second) return;
        next.push_back(b);
        ++out.seen;
        GroupoidElement single;
        single.terms.emplace(std::move(key), 1);
        if (ech.add(refine_onto(single, windows))) out.independent.push_back(b);
    };

    std::vector<Bisection> gens{letter_projection(lang_.letters()[0]),
                                letter_projection(lang_.letters()[1]), shift_fwd(),
                                shift_back()};
    std::vector<Bisection> level1 = gens;
    level1.insert(level1.begin(), unit());
    std::vector<Bisection> next;
    for (const auto& b : level1) try_add(b, next);
    frontier = std::move(next);
    out.dims[1] = static_cast<std::size_t>(ech.rank());

    for (std::size_t k = 2; k <= N; ++k) {
        std::vector<Bisection> fresh;
        for (const auto& b : frontier) {
            for (const auto& g : gens) {
                if (++products > budget)
                    throw StageError("groupoid",
                                     "bisection budget exhausted at level " + std::to_string(k),
                                     "raise the budget or lower N");
                auto p = bisection_product(g, b);
                if (p) try_add(*p, fresh);
            }
        }
        frontier = std::move(fresh);
        out.dims[k] = static_cast<std::size_t>(ech.rank());
    }
    return out;
}

FiltrationResult GroupoidAlgebra::filtration_growth(std::size_t N, int cmax,
                                                    std::size_t budget) const {
    if (N < 1) throw ValidationError("filtration needs N >= 1");
    BfsOutcome bfs = enumerate_filtration(N, budget);
    FiltrationResult res;
    res.dims = bfs.dims;
    res.bisections_seen = bfs.seen;
    for (int c = 1; c <= cmax; ++c) {
        bool ok = true;
        std::vector<FiltrationResult::Row> rows;
        for (std::size_t n = 1; n <= N; ++n) {
            std::size_t fl = n / static_cast<std::size_t>(c);
            std::size_t lower = fl == 0 ? 0 : fl * lang_.complexity(fl);
            std::size_t upper = static_cast<std::size_t>(c) * n *
                                lang_.complexity(static_cast<std::size_t>(c) * n);
            if (lower > res.dims[n] || res.dims[n] > upper) {
                ok = false;
                break;
            }
            rows.push_back({n, res.dims[n], lower, upper});
        }
        if (ok) {
            res.sandwich_c = c;
            res.rows = std::move(rows);
            break;
        }
    }
    return res;
}

std::size_t GroupoidAlgebra::truncated_center_check(std::size_t level) const {
    if (level == 0) return 0;
    BfsOutcome bfs = enumerate_filtration(level, 2'000'000);
    const auto& basis = bfs.independent;
    if (basis.empty()) throw InvariantError("empty filtration basis");

    const Coord w = static_cast<Coord>(level) + 1;
    std::map<long, std::pair<Coord, Coord>> windows;
    for (long m = -w - 1; m <= w + 1; ++m) windows.emplace(m, std::make_pair(-w, w));

    std::vector<Bisection> gens{letter_projection(lang_.letters()[0]),
                                letter_projection(lang_.letters()[1]), shift_fwd()};

    // Rows: refined coordinates of [b_i, g] stacked over the three
    // generators; columns: the independent basis.  Center = nullspace.
    std::map<std::pair<std::size_t, CanonicalLabel>, std::size_t> row_index;
    std::vector<std::vector<mpz_class>> matrix;
    auto row_of = [&](const std::pair<std::size_t, CanonicalLabel>& key) -> std::vector<mpz_class>& {
        auto [it, inserted] = row_index.emplace(key, matrix.size());
        if (inserted) matrix.emplace_back(basis.size(), mpz_class(0));
        return matrix[it->second];
    };

    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            GroupoidElement raw;
            if (auto p = bisection_product(basis[i], gens[gi]))
                raw.terms[bisection_key(*p)] += 1;
            if (auto p = bisection_product(gens[gi], basis[i]))
                raw.terms[bisection_key(*p)] -= 1;
            for (auto it = raw.terms.begin(); it != raw.terms.end();) {
                if (it->second == 0) it = raw.terms.erase(it);
                else ++it;
            }
            if (raw.is_zero()) continue;
            for (const auto& [lab, c] : refine_onto(raw, windows))
                row_of({gi, lab})[i] = c.get_num();  // coefficients are integers here
        }
    }
    std::size_t rank = matrix.empty() ? 0 : static_cast<std::size_t>(rank_q(matrix));
    std::size_t nullity = basis.size() - rank;
    if (nullity == 0) throw InvariantError("scalars missing from the truncated center");
    return nullity - 1;
}

std::string GroupoidAlgebra::dump(const GroupoidElement& e) const {
    std::ostringstream os;
    for (const auto& [k, c] : e.terms) {
        os << k.first << " | window ";
        if (k.second.empty()) {
            os << "[] | *";
        } else {
            os << "[" << k.second.front().first << "," << k.second.back().first << "] | ";
            for (const auto& [coord, ch] : k.second) os << ch;
        }
        os << " | " << c.get_str() << "\n";
    }
    return os.str();
}

}  // namespace liegrowth
