#include "liegrowth/words.hpp"

#include <algorithm>
#include <set>

#include "liegrowth/cache.hpp"
#include "liegrowth/errors.hpp"

namespace liegrowth {

std::string prefix(const WordSource& src, std::size_t n) {
    std::string w = src.prefix_fn(n);
    if (w.size() != n)
        throw InvariantError("word source '" + src.name + "' returned wrong prefix length");
    return w;
}

WordSource substitution_source(const std::map<char, std::string>& rules, char seed,
                               const std::string& name) {
    auto it = rules.find(seed);
    if (it == rules.end() || it->second.size() < 2 || it->second[0] != seed)
        throw ValidationError("substitution not prolongable on seed '" +
                              std::string(1, seed) + "'");
    std::string letters;
    for (const auto& [c, img] : rules) {
        letters += c;
        for (char d : img)
            if (!rules.count(d))
                throw ValidationError("substitution image uses letter without a rule: " +
                                      std::string(1, d));
    }
    WordSource src;
    src.name = name;
    src.letters = letters;
    src.prefix_fn = [rules, seed, name](std::size_t n) {
        std::string w(1, seed);
        while (w.size() < n) {
            std::string next;
            next.reserve(w.size() * 2);
            for (char c : w) {
                next += rules.at(c);
                if (next.size() >= n) break;  // enough; prefix property holds
            }
            if (next.size() <= w.size())
                throw ValidationError("substitution does not grow from seed (word '" +
                                      name + "')");
            w = std::move(next);
        }
        w.resize(n);
        return w;
    };
    return src;
}

WordSource explicit_prefix_source(const std::string& w, const std::string& name) {
    std::set<char> uniq(w.begin(), w.end());
    std::string letters(uniq.begin(), uniq.end());
    WordSource src;
    src.name = name;
    src.letters = letters.empty() ? "0" : letters;
    src.prefix_fn = [w, name](std::size_t n) {
        if (n > w.size())
            throw StageError("prefix", "explicit word '" + name + "' has only " +
                                           std::to_string(w.size()) + " letters, need " +
                                           std::to_string(n),
                             "supply a longer prefix");
        return w.substr(0, n);
    };
    return src;
}

std::vector<std::string> library_word_names() {
    return {"fibonacci", "thue-morse", "period-doubling", "chacon",
            "tribonacci", "periodic01", "constant0"};
}

WordSource library_word(const std::string& name) {
    if (name == "fibonacci")
        return substitution_source({{'0', "01"}, {'1', "0"}}, '0', name);
    if (name == "thue-morse")
        return substitution_source({{'0', "01"}, {'1', "10"}}, '0', name);
    if (name == "period-doubling")
        return substitution_source({{'0', "01"}, {'1', "00"}}, '0', name);
    if (name == "chacon")
        return substitution_source({{'0', "0010"}, {'1', "1"}}, '0', name);
    if (name == "tribonacci")
        return substitution_source({{'0', "01"}, {'1', "02"}, {'2', "0"}}, '0', name);
    if (name == "periodic01") {
        WordSource src;
        src.name = name;
        src.letters = "01";
        src.prefix_fn = [](std::size_t n) {
            std::string w;
            w.reserve(n);
            for (std::size_t i = 0; i < n; ++i) w += (i % 2 ? '1' : '0');
            return w;
        };
        return src;
    }
    if (name == "constant0") {
        WordSource src;
        src.name = name;
        src.letters = "0";
        src.prefix_fn = [](std::size_t n) { return std::string(n, '0'); };
        return src;
    }
    throw ValidationError("unknown library word '" + name + "'");
}

WordSource sigma_reduce(const WordSource& base) {
    WordSource src;
    src.name = "sigma(" + base.name + ")";
    src.letters = "01";
    // Letter index j contributes j+2 output letters.  Start from the fewest
    // base letters that could cover n and grow until the image does; finite
    // sources are then never asked for more than the image truly needs.
    std::string base_letters = base.letters;
    auto base_fn = base.prefix_fn;
    std::string base_name = base.name;
    src.prefix_fn = [base_fn, base_letters, base_name](std::size_t n) {
        if (n == 0) return std::string();
        const std::size_t widest = base_letters.size() + 1;  // longest letter image
        std::string out;
        out.reserve(2 * n);
        for (std::size_t need = (n + widest - 1) / widest;; ) {
            std::string w = base_fn(need);
            out.clear();
            for (char c : w) {
                auto pos = base_letters.find(c);
                if (pos == std::string::npos)
                    throw InvariantError("letter outside alphabet in '" + base_name + "'");
                out += '0';
                out.append(pos + 1, '1');
                if (out.size() >= n) break;
            }
            if (out.size() >= n) break;
            need += std::max<std::size_t>(1, (n - out.size() + widest - 1) / widest);
        }
        out.resize(n);
        return out;
    };
    return src;
}

FactorLanguage::FactorLanguage(std::string source_name, std::string letters,
                               std::size_t prefix_len,
                               std::vector<std::vector<std::string>> factors)
    : source_name_(std::move(source_name)),
      letters_(std::move(letters)),
      prefix_len_(prefix_len),
      factors_(std::move(factors)) {}

const std::vector<std::string>& FactorLanguage::at(std::size_t n) const {
    if (n >= factors_.size())
        throw StageError("factor_language",
                         "length " + std::to_string(n) + " beyond horizon " +
                             std::to_string(horizon()),
                         "raise N");
    return factors_[n];
}

bool FactorLanguage::is_factor(std::string_view u) const {
    return index_of(u) >= 0;
}

std::ptrdiff_t FactorLanguage::index_of(std::string_view u) const {
    const auto& fs = at(u.size());
    auto it = std::lower_bound(fs.begin(), fs.end(), u);
    if (it == fs.end() || *it != u) return -1;
    return it - fs.begin();
}

static std::vector<std::vector<std::string>> scan_factors(const std::string& w,
                                                          std::size_t N) {
    std::vector<std::vector<std::string>> factors(N + 1);
    factors[0] = {""};
    for (std::size_t n = 1; n <= N; ++n) {
        if (w.size() < n) break;
        std::set<std::string> fs;
        for (std::size_t i = 0; i + n <= w.size(); ++i) fs.insert(w.substr(i, n));
        factors[n].assign(fs.begin(), fs.end());
    }
    return factors;
}

FactorLanguage factor_language(const WordSource& src, std::size_t N, std::size_t L) {
    if (N < 1 || L < N)
        throw ValidationError("factor_language requires L >= N >= 1 (got N=" +
                              std::to_string(N) + ", L=" + std::to_string(L) + ")");
    if (auto cached = cache_load(src.name, N, L)) {
        return FactorLanguage(src.name, src.letters, L, std::move(*cached));
    }
    auto factors = scan_factors(prefix(src, L), N);
    cache_store(src.name, N, L, factors);
    return FactorLanguage(src.name, src.letters, L, std::move(factors));
}

bool l_stable(const WordSource& src, std::size_t N, std::size_t L) {
    return factor_language(src, N, L) == factor_language(src, N, 2 * L);
}

// Smallest C such that every length-C window of a fixed finite word contains
// u; std::nullopt if even C = |w| fails (u absent).
static std::optional<std::size_t> window_constant(const std::string& w,
                                                  const std::string& u) {
    std::vector<std::size_t> occ;
    for (std::size_t i = 0; (i = w.find(u, i)) != std::string::npos; ++i) occ.push_back(i);
    if (occ.empty()) return std::nullopt;
    // A window [j, j+C-1] contains u iff some occurrence i has j <= i <= j+C-|u|.
    // The binding constraints are the start, the largest inter-occurrence gap,
    // and the tail after the last occurrence.
    std::size_t C = occ.front() + u.size();
    for (std::size_t k = 0; k + 1 < occ.size(); ++k)
        C = std::max(C, occ[k + 1] - occ[k] - 1 + u.size());
    C = std::max(C, w.size() - occ.back());
    return C;
}

std::optional<std::size_t> recurrence_constant(const WordSource& src, const std::string& u,
                                               std::size_t L) {
    if (u.empty()) throw ValidationError("recurrence_constant: empty factor");
    std::string w = prefix(src, L);
    if (w.find(u) == std::string::npos)
        throw ValidationError("recurrence_constant: '" + u + "' is not a factor of prefix(" +
                              std::to_string(L) + ")");
    auto full = window_constant(w, u);
    if (!full || *full > L) return std::nullopt;
    if (u.size() > L / 2) return full;  // stability not checkable, report as-is
    auto half = window_constant(w.substr(0, L / 2), u);
    if (!half || *half != *full) return std::nullopt;  // not L-stable: no evidence
    return full;
}

BiInfiniteApprox biinfinite_extend(const WordSource& src, int steps, std::size_t L) {
    if (steps < 1) throw ValidationError("biinfinite_extend: steps must be >= 1");
    std::string w = prefix(src, L);
    BiInfiniteApprox out;
    out.u.push_back(w.substr(0, 1));  // u_1 = w[1,1]
    out.anchor = 0;
    for (int t = 1; t < steps; ++t) {
        const std::string& u = out.u.back();
        const std::size_t c = u.size();
        // First step allows l >= 2 (u_1 is a single letter); later steps need
        // the recurrence strictly beyond the current center: l >= 2|u_t|+1.
        const std::size_t lmin = (t == 1) ? 2 : 2 * c + 1;
        std::size_t l = 0;  // 1-based
        for (std::size_t cand = lmin; cand + c - 1 <= w.size(); ++cand) {
            if (w.compare(cand - 1, c, u) == 0) { l = cand; break; }
        }
        if (l == 0)
            throw StageError("biinfinite_extend",
                             "insufficient prefix at step " + std::to_string(t) +
                                 " (no recurrence of u_" + std::to_string(t) + " within L=" +
                                 std::to_string(L) + ")",
                             "raise L");
        if (2 * l + c - 2 > w.size())
            throw StageError("biinfinite_extend",
                             "insufficient prefix at step " + std::to_string(t),
                             "raise L");
        std::string p = w.substr(0, l - 1);
        std::string q = w.substr(l + c - 1, l - 1);
        std::string next = w.substr(0, 2 * l + c - 2);
        if (next != p + u + q)
            throw InvariantError("biinfinite_extend: u_{t+1} != p u_t q at step " +
                                 std::to_string(t));
        out.anchor += p.size();
        out.p.push_back(std::move(p));
        out.q.push_back(std::move(q));
        out.l.push_back(l);
        out.u.push_back(std::move(next));
    }
    return out;
}

}  // namespace liegrowth
