// Acceptance suite: nine end-to-end criteria, one pass/fail line each.
// Exit status is the number of failed criteria.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "liegrowth/errors.hpp"
#include "liegrowth/groupoid.hpp"
#include "liegrowth/liecomm.hpp"
#include "liegrowth/monomial.hpp"
#include "liegrowth/qdim.hpp"
#include "liegrowth/regularize.hpp"
#include "liegrowth/words.hpp"

namespace fs = std::filesystem;
using namespace liegrowth;

namespace {

constexpr std::size_t kScan = 10000;

FactorLanguage lang_of(const char* name, std::size_t N) {
    return factor_language(library_word(name), N, kScan);
}

std::string fail(const std::string& what) { return what; }

// ---------------------------------------------------------------------------
// 1. Factor complexity against closed forms and an independent oracle.
std::string criterion_complexity() {
    FactorLanguage fib = lang_of("fibonacci", 30);
    for (std::size_t n = 1; n <= 30; ++n)
        if (fib.complexity(n) != n + 1)
            return fail("fibonacci c(" + std::to_string(n) + ") != n+1");

    // Independent Thue-Morse oracle: letter i is the bit-parity of i.
    std::string tm_word(1 << 14, '0');
    for (std::size_t i = 0; i < tm_word.size(); ++i)
        tm_word[i] = static_cast<char>('0' + (__builtin_popcountll(i) & 1));
    FactorLanguage tm = lang_of("thue-morse", 20);
    const std::size_t frozen[20] = {2,  4,  6,  10, 12, 16, 20, 22, 24, 28,
                                    32, 36, 40, 42, 44, 46, 48, 52, 56, 60};
    for (std::size_t n = 1; n <= 20; ++n) {
        std::set<std::string> seen;
        for (std::size_t i = 0; i + n <= tm_word.size(); ++i)
            seen.insert(tm_word.substr(i, n));
        if (tm.complexity(n) != seen.size())
            return fail("thue-morse c(" + std::to_string(n) + ") disagrees with the oracle");
        if (tm.complexity(n) != frozen[n - 1])
            return fail("thue-morse c(" + std::to_string(n) + ") drifted from the pinned value");
    }
    if (!l_stable(library_word("fibonacci"), 30, kScan)) return fail("fibonacci not L-stable");
    if (!l_stable(library_word("thue-morse"), 20, kScan)) return fail("thue-morse not L-stable");
    return {};
}

// ---------------------------------------------------------------------------
// 2. Quarter bound with split facts, certified over Q and cross-checked in
//    a large prime characteristic.
std::string criterion_quarter() {
    FieldDescriptor q = FieldDescriptor::Q();
    FieldDescriptor gf = FieldDescriptor::GF(32003);
    for (const char* name : {"fibonacci", "thue-morse"}) {
        FactorLanguage lang = lang_of(name, 12);
        for (std::size_t n = 4; n <= 12; ++n) {
            QuarterBoundReport rep = verify_quarter_bound(lang, n, q);
            if (!rep.pass || !rep.pigeonhole_ok || !rep.kernel_ok)
                return fail(std::string(name) + " quarter bound failed at n=" +
                            std::to_string(n));
        }
        for (std::size_t n = 2; n <= 12; ++n)
            if (commutator_dim(lang, n, gf) != commutator_dim(lang, n, q))
                return fail(std::string(name) + " GF(32003) rank != Q rank at n=" +
                            std::to_string(n));
    }
    return {};
}

// ---------------------------------------------------------------------------
// 3. Graded centers: trivial for the aperiodic words, nontrivial for the
//    periodic one.
std::string criterion_centers() {
    for (const char* name : {"fibonacci", "thue-morse"}) {
        MonomialAlgebra alg(lang_of(name, 9));
        for (std::size_t n = 1; n <= 8; ++n) {
            if (alg.center_component(n) != 0)
                return fail(std::string(name) + " has central elements at n=" +
                            std::to_string(n));
            if (alg.kernel_intersection_dim(n) != 0)
                return fail(std::string(name) + " kernel intersection nonzero at n=" +
                            std::to_string(n));
        }
    }
    MonomialAlgebra per(lang_of("periodic01", 5));
    bool found = false;
    for (std::size_t n = 1; n <= 4 && !found; ++n) found = per.center_component(n) > 0;
    if (!found) return fail("periodic01 shows no central element for n <= 4");
    return {};
}

// ---------------------------------------------------------------------------
// 4. Complexity transfer under the binary-alphabet reduction.
std::string criterion_sigma() {
    struct Case {
        const char* name;
        std::size_t d;      // largest letter index
        std::size_t n_max;
    };
    for (const Case& c : {Case{"tribonacci", 2, 15}, Case{"fibonacci", 1, 20}}) {
        WordSource src = library_word(c.name);
        WordSource red = sigma_reduce(src);
        std::size_t up = c.d + 1;
        FactorLanguage lw = factor_language(src, c.n_max + 2 * c.d + 2, kScan);
        FactorLanguage lr = factor_language(red, up * c.n_max, kScan);
        for (std::size_t n = 1; n <= c.n_max; ++n) {
            if (lw.complexity(n) > lr.complexity(up * n))
                return fail(std::string(c.name) + ": c(n) > c'( (d+1)n ) at n=" +
                            std::to_string(n));
            std::size_t sum = 0;
            for (std::size_t p = 0; p <= 2 * c.d + 2; ++p) sum += lw.complexity(n + p);
            if (lr.complexity(n) > up * up * sum)
                return fail(std::string(c.name) + ": c'(n) > (d+1)^2 sum at n=" +
                            std::to_string(n));
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// 5. Regularization of ceil(n^{ln n}): exponent selection and the three
//    conditions on the dyadic grid up to 2^30.
std::string criterion_regularize() {
    GrowthSeries f = formula_npowlogn();
    SelectT sel = select_t(f, 1, 128);
    if (sel.t != 1) return fail("selected t=" + std::to_string(sel.t) + ", expected 1");
    if (sel.onset > 64) return fail("doubling onset " + std::to_string(sel.onset) + " > 64");

    RealSeries fp = f_prime_dyadic(f, 1, 1, 30);
    ConditionsReport rep = check_conditions(fp, 1e-9, 1e-6);
    if (rep.a_onset < 1 || rep.a_onset > 64 || !rep.a_onset_in_first_half)
        return fail("condition (a) onset " + std::to_string(rep.a_onset));
    if (!rep.a_decay_ok) return fail("condition (a) ratio decay failed");
    if (rep.b_strong_onset < 0) return fail("condition (b) strong bound never sets in");
    if (!rep.c_converged || rep.c_stable_from < 0)
        return fail("condition (c) product not Cauchy at 1e-6");
    const double pinned = 1.4844268986133244;
    if (std::abs(rep.c_product - pinned) > 1e-9 * pinned)
        return fail("condition (c) product drifted: " + std::to_string(rep.c_product));
    return {};
}

// ---------------------------------------------------------------------------
// 6. Convolution algebra: exact identities, multiplicativity with zeros,
//    injectivity, filtration sandwich, trivial truncated centers.
std::string criterion_groupoid() {
    GroupoidAlgebra g(lang_of("fibonacci", 21));
    GroupoidElement one = g.element(GroupoidAlgebra::unit());
    GroupoidElement d0 = g.element(g.letter_projection('0'));
    GroupoidElement d1 = g.element(g.letter_projection('1'));
    GroupoidElement t = g.element(GroupoidAlgebra::shift_fwd());
    GroupoidElement tinv = g.element(GroupoidAlgebra::shift_back());
    if (!g.equal(g.add(d0, d1), one)) return fail("letter projections do not resolve 1");
    if (!g.equal(g.multiply(t, tinv), one) || !g.equal(g.multiply(tinv, t), one))
        return fail("shifts do not invert");
    if (!g.equal(g.add(g.phi("0"), g.phi("1")), t)) return fail("phi letter sum is not T");

    std::vector<std::string> words{""};
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].size() == 8) continue;
        words.push_back(words[i] + '0');
        words.push_back(words[i] + '1');
    }
    for (const auto& u : words)
        for (const auto& v : words) {
            if (u.size() + v.size() > 8) continue;
            if (!g.equal(g.multiply(g.phi(u), g.phi(v)), g.phi(u + v)))
                return fail("phi not multiplicative at '" + u + "','" + v + "'");
        }

    for (std::size_t n = 1; n <= 8; ++n)
        if (!g.phi_injectivity_check(n))
            return fail("phi images dependent at n=" + std::to_string(n));

    FiltrationResult filt = g.filtration_growth(10, 8);
    if (!filt.sandwich_c) return fail("no sandwich constant up to 8");
    if (*filt.sandwich_c > 8) return fail("sandwich constant too large");
    for (const auto& row : filt.rows)
        if (row.lower > row.dim || row.dim > row.upper)
            return fail("sandwich violated at n=" + std::to_string(row.n));

    for (std::size_t level = 1; level <= 6; ++level)
        if (std::size_t z = g.truncated_center_check(level); z != 0)
            return fail("truncated center dimension " + std::to_string(z) + " at level " +
                        std::to_string(level));
    return {};
}

// ---------------------------------------------------------------------------
// 7. The two commutator models agree degree by degree.
std::string criterion_commutator_models() {
    for (const char* name : {"fibonacci", "thue-morse"}) {
        FactorLanguage lang = lang_of(name, 9);
        GroupoidAlgebra g(lang);
        for (std::size_t n = 2; n <= 8; ++n) {
            int a = g.commutator_span_dim(n);
            int b = commutator_dim(lang, n, FieldDescriptor::Q());
            if (a != b)
                return fail(std::string(name) + " span " + std::to_string(a) + " != rank " +
                            std::to_string(b) + " at n=" + std::to_string(n));
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// 8. Hierarchy numerics: inversion round-trip, doubling onsets, the
//    between-layers traces, and the layer gap.
std::string criterion_hierarchy() {
    for (int q : {2, 3, 4, 5}) {
        int k_lo = q == 4 ? 2 : (q == 5 ? 4 : 1);
        for (double alpha : {0.25, 0.5, 1.0, 2.0}) {
            LogSeries s = phi_log_series(q, alpha, k_lo, 24);
            for (const auto& smp : s.samples) {
                AlphaHat ah = alpha_hat_log(q, smp.ln_n, smp.ln_f);
                if (ah.status != AlphaHat::Status::ok ||
                    std::abs(ah.value - alpha) > 1e-9 * alpha)
                    return fail("round-trip failed at q=" + std::to_string(q) +
                                " alpha=" + std::to_string(alpha));
            }
        }
    }

    struct Onset {
        int q;
        double sigma;
        long k;
    };
    std::map<std::pair<int, int>, CorollariesReport> reports;
    for (const Onset& o : {Onset{3, 0.5, 17}, Onset{3, 0.9, 9}, Onset{4, 0.5, 9},
                           Onset{4, 0.9, 4}, Onset{5, 0.5, 4}, Onset{5, 0.9, 4}}) {
        CorollariesReport rep = verify_corollaries(o.q, o.sigma);
        if (!rep.doubling_holds_to_end || rep.doubling_onset != o.k)
            return fail("doubling onset " + std::to_string(rep.doubling_onset) + " at q=" +
                        std::to_string(o.q) + " sigma=" + std::to_string(o.sigma) +
                        ", expected " + std::to_string(o.k));
        reports.emplace(std::make_pair(o.q, static_cast<int>(o.sigma * 10)), std::move(rep));
    }

    CorollariesReport two = verify_corollaries(2, 1.0);
    for (const CorollariesReport* rep :
         {&two, &reports.at({3, 5}), &reports.at({4, 5})}) {
        if (!rep->family_applicable || !rep->family_doubling_holds_to_end)
            return fail("family doubling failed at q=" + std::to_string(rep->q));
        if (!rep->diverging.passed)
            return fail("level-q trace not diverging at q=" + std::to_string(rep->q));
        if (!rep->vanishing.passed)
            return fail("level-(q+1) trace not vanishing at q=" + std::to_string(rep->q));
    }

    LayerGapReport gap = layer_gap_demo();
    if (!gap.pass)
        return fail("layer gap: dim2=" + std::to_string(gap.dim2) +
                    " dim3=" + std::to_string(gap.dim3));
    return {};
}

// ---------------------------------------------------------------------------
// 9. The command-line pipeline is deterministic: two runs, byte-equal
//    artifacts.
std::string criterion_cli_determinism() {
    fs::path base = fs::temp_directory_path() / "liegrowth-acceptance";
    fs::remove_all(base);
    fs::path a = base / "run-a", b = base / "run-b";
    for (const fs::path& dir : {a, b}) {
        std::string cmd = std::string(LIEGROWTH_CLI_PATH) + " pipeline --out " + dir.string() +
                          " >/dev/null 2>&1";
        int status = std::system(cmd.c_str());
        int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        if (code != 0)
            return fail("pipeline exited with " + std::to_string(code) + " for " +
                        dir.string());
    }
    std::set<std::string> names_a, names_b;
    for (const auto& e : fs::directory_iterator(a)) names_a.insert(e.path().filename());
    for (const auto& e : fs::directory_iterator(b)) names_b.insert(e.path().filename());
    if (names_a != names_b) return fail("the two runs produced different file sets");
    if (names_a.count("summary.json") == 0) return fail("summary.json missing");
    if (names_a.size() < 8) return fail("expected at least 8 artifacts, found " +
                                        std::to_string(names_a.size()));
    for (const auto& name : names_a) {
        std::ifstream fa(a / name, std::ios::binary), fb(b / name, std::ios::binary);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        if (sa.str() != sb.str()) return fail(name + " differs between runs");
        if (sa.str().empty()) return fail(name + " is empty");
    }
    return {};
}

struct Criterion {
    int id;
    const char* label;
    double limit_s;  // 0 = no explicit limit
    std::function<std::string()> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "factor complexity and L-stability", 5.0, criterion_complexity},
        {2, "quarter bound over Q and GF(32003)", 120.0, criterion_quarter},
        {3, "graded centers", 30.0, criterion_centers},
        {4, "complexity transfer under the alphabet reduction", 0.0, criterion_sigma},
        {5, "regularization of ceil(n^ln n)", 0.0, criterion_regularize},
        {6, "convolution algebra structure", 300.0, criterion_groupoid},
        {7, "commutator model agreement", 0.0, criterion_commutator_models},
        {8, "hierarchy inversion, doubling, and traces", 0.0, criterion_hierarchy},
        {9, "pipeline determinism", 0.0, criterion_cli_determinism},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = c.body();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (detail.empty() && c.limit_s > 0 && secs > c.limit_s) {
            std::ostringstream os;
            os << "exceeded the " << c.limit_s << "s budget";
            detail = os.str();
        }
        bool pass = detail.empty();
        failures += pass ? 0 : 1;
        std::printf("criterion %d %s (%.1fs): %s\n", c.id, pass ? "PASS" : "FAIL", secs,
                    pass ? c.label : detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
