#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace liegrowth {

// Deterministic generator of prefixes of an infinite word.  prefix(n) must be
// a prefix of prefix(m) for n <= m; all sources here satisfy that by
// construction.
struct WordSource {
    std::string name;     // stable description; doubles as the cache key
    std::string letters;  // ordered alphabet, one char per letter
    std::function<std::string(std::size_t)> prefix_fn;
};

std::string prefix(const WordSource& src, std::size_t n);

// Fixed point of a substitution prolongable on `seed` (rule for seed starts
// with seed and has length >= 2).  Throws ValidationError otherwise.
WordSource substitution_source(const std::map<char, std::string>& rules, char seed,
                               const std::string& name);

// Escape hatch: a literal finite prefix.  prefix(n) beyond the stored length
// is a StageError.
WordSource explicit_prefix_source(const std::string& w, const std::string& name);

// Built-in library: fibonacci, thue-morse, period-doubling, chacon,
// tribonacci, periodic01, constant0.  Throws ValidationError on unknown name.
WordSource library_word(const std::string& name);
std::vector<std::string> library_word_names();

// Reduction to the binary alphabet: the letter with 0-based index j maps to
// x y^{j+1}, written over {0,1} with x=0, y=1.
WordSource sigma_reduce(const WordSource& src);

// Factor sets F(1..N) of prefix(L), plus F(0) = {""}.  Exact for the infinite
// word only when L dominates the recurrence constants; carries L so callers
// can re-run and compare.
class FactorLanguage {
public:
    FactorLanguage() = default;
    FactorLanguage(std::string source_name, std::string letters, std::size_t prefix_len,
                   std::vector<std::vector<std::string>> factors);

    std::size_t horizon() const { return factors_.empty() ? 0 : factors_.size() - 1; }
    std::size_t prefix_len() const { return prefix_len_; }
    const std::string& source_name() const { return source_name_; }
    const std::string& letters() const { return letters_; }

    // Sorted factor list of length n; n <= horizon or StageError.
    const std::vector<std::string>& at(std::size_t n) const;
    std::size_t complexity(std::size_t n) const { return at(n).size(); }
    bool is_factor(std::string_view u) const;
    // Position of u in at(|u|), or -1.
    std::ptrdiff_t index_of(std::string_view u) const;

    bool operator==(const FactorLanguage& o) const { return factors_ == o.factors_; }

private:
    std::string source_name_;
    std::string letters_;
    std::size_t prefix_len_ = 0;
    std::vector<std::vector<std::string>> factors_;  // [0..N], each sorted
};

// Window scan of prefix(L).  Uses the disk cache when LIEGROWTH_CACHE_DIR is
// set.  Pre: L >= N >= 1.
FactorLanguage factor_language(const WordSource& src, std::size_t N, std::size_t L);

// True when doubling the scanned prefix does not change the factor sets.
bool l_stable(const WordSource& src, std::size_t N, std::size_t L);

// Smallest C such that every length-C window of prefix(L) contains u, gated
// on stability: the same C must come out of the half prefix (skipped when u
// is longer than L/2).  absent = no stable C, evidence against uniform
// recurrence at this L.
std::optional<std::size_t> recurrence_constant(const WordSource& src, const std::string& u,
                                               std::size_t L);

// The nested bi-infinite approximation:
//   u_1 = w[1,1];  u_{t+1} = w[1, 2l+c-2] = p_{t+1} u_t q_{t+1}
// with l the smallest admissible recurrence position of u_t (l >= 2 at the
// first step, l >= 2|u_t|+1 afterwards) and |p| = |q| = l-1.
// Indices are 1-based as in the reports.
struct BiInfiniteApprox {
    std::vector<std::string> u;   // u[0] = u_1, ...
    std::vector<std::string> p;   // p[i] belongs to step i+2
    std::vector<std::string> q;
    std::vector<std::size_t> l;   // 1-based positions, step i+2
    std::size_t anchor = 0;       // 0-based index of original w[1] inside u.back()
};

BiInfiniteApprox biinfinite_extend(const WordSource& src, int steps, std::size_t L);

}  // namespace liegrowth
