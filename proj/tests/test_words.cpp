#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "liegrowth/errors.hpp"
#include "liegrowth/words.hpp"

using namespace liegrowth;

namespace {

constexpr std::size_t kScan = 10000;

FactorLanguage lang_of(const char* name, std::size_t N, std::size_t L = kScan) {
    return factor_language(library_word(name), N, L);
}

}  // namespace

TEST_CASE("library word prefixes") {
    CHECK(prefix(library_word("fibonacci"), 13) == "0100101001001");
    CHECK(prefix(library_word("thue-morse"), 16) == "0110100110010110");
    CHECK(prefix(library_word("period-doubling"), 8) == "01000101");
    CHECK(prefix(library_word("tribonacci"), 13) == "0102010010201");
    CHECK(prefix(library_word("chacon"), 13) == "0010001010010");
    CHECK(prefix(library_word("periodic01"), 6) == "010101");
    CHECK(prefix(library_word("constant0"), 4) == "0000");
    CHECK_THROWS_AS(library_word("nosuchword"), ValidationError);

    auto names = library_word_names();
    for (const char* n : {"fibonacci", "thue-morse", "period-doubling", "chacon",
                          "tribonacci", "periodic01", "constant0"})
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
}

TEST_CASE("prefixes nest") {
    for (const auto& name : library_word_names()) {
        WordSource src = library_word(name);
        std::string big = prefix(src, 300);
        for (std::size_t n : {1u, 7u, 100u, 299u})
            CHECK(big.substr(0, n) == prefix(src, n));
    }
}

TEST_CASE("complexity oracles") {
    SUBCASE("fibonacci: c(n) = n + 1") {
        FactorLanguage lang = lang_of("fibonacci", 30);
        for (std::size_t n = 1; n <= 30; ++n) CHECK(lang.complexity(n) == n + 1);
    }
    SUBCASE("thue-morse") {
        const std::size_t expect[] = {2,  4,  6,  10, 12, 16, 20, 22, 24, 28,
                                      32, 36, 40, 42, 44, 46, 48, 52, 56, 60};
        FactorLanguage lang = lang_of("thue-morse", 20);
        for (std::size_t n = 1; n <= 20; ++n) CHECK(lang.complexity(n) == expect[n - 1]);
    }
    SUBCASE("tribonacci: c(n) = 2n + 1") {
        FactorLanguage lang = lang_of("tribonacci", 23);
        for (std::size_t n = 1; n <= 23; ++n) CHECK(lang.complexity(n) == 2 * n + 1);
    }
    SUBCASE("period-doubling") {
        const std::size_t expect[] = {2, 3, 5, 6, 8, 10, 11, 12, 14, 16};
        FactorLanguage lang = lang_of("period-doubling", 10);
        for (std::size_t n = 1; n <= 10; ++n) CHECK(lang.complexity(n) == expect[n - 1]);
    }
    SUBCASE("chacon: c(n) = 2n - 1 for n >= 2") {
        const std::size_t expect[] = {2, 3, 5, 7, 9, 11, 13, 15, 17, 19};
        FactorLanguage lang = lang_of("chacon", 10);
        for (std::size_t n = 1; n <= 10; ++n) CHECK(lang.complexity(n) == expect[n - 1]);
    }
    SUBCASE("periodic01 and constant0 flatline") {
        FactorLanguage p = lang_of("periodic01", 12);
        FactorLanguage c = lang_of("constant0", 12);
        for (std::size_t n = 1; n <= 12; ++n) {
            CHECK(p.complexity(n) == 2);
            CHECK(c.complexity(n) == 1);
        }
    }
}

TEST_CASE("factor language structure") {
    FactorLanguage lang = lang_of("fibonacci", 12);
    CHECK(lang.horizon() == 12);
    CHECK(lang.at(0) == std::vector<std::string>{""});
    CHECK(lang.letters() == "01");

    SUBCASE("closure under subwords and right extension") {
        for (std::size_t n = 2; n <= 12; ++n)
            for (const auto& f : lang.at(n)) {
                CHECK(lang.is_factor(f.substr(0, n - 1)));
                CHECK(lang.is_factor(f.substr(1)));
            }
        for (std::size_t n = 1; n < 12; ++n)
            for (const auto& f : lang.at(n)) {
                bool extends = false;
                for (char a : lang.letters()) extends = extends || lang.is_factor(f + a);
                CHECK(extends);
            }
    }
    SUBCASE("lists are sorted and duplicate-free") {
        for (std::size_t n = 1; n <= 12; ++n) {
            const auto& v = lang.at(n);
            CHECK(std::is_sorted(v.begin(), v.end()));
            CHECK(std::set<std::string>(v.begin(), v.end()).size() == v.size());
        }
    }
    SUBCASE("index_of agrees with is_factor") {
        CHECK(lang.index_of("010") >= 0);
        CHECK(lang.index_of("11") == -1);
        CHECK(lang.is_factor("00100"));
        CHECK_FALSE(lang.is_factor("000"));
    }
    SUBCASE("horizon overflow is a stage error") {
        CHECK_THROWS_AS(lang.at(13), StageError);
    }
}

TEST_CASE("l-stability") {
    CHECK(l_stable(library_word("fibonacci"), 30, kScan));
    CHECK(l_stable(library_word("thue-morse"), 20, kScan));
    // Two windows of length 12 in a 13-letter prefix cannot be complete.
    CHECK_FALSE(l_stable(library_word("fibonacci"), 12, 13));
}

TEST_CASE("letter reduction") {
    SUBCASE("image of a 3-letter prefix") {
        // 1 -> 011, 0 -> 01, 2 -> 0111 concatenated over "102".
        WordSource src = sigma_reduce(explicit_prefix_source("102", "w"));
        CHECK(prefix(src, 9) == "011010111");
        CHECK(src.letters == "01");
    }
    SUBCASE("complexity bounds, 3-letter word, n <= 15") {
        WordSource trib = library_word("tribonacci");
        WordSource red = sigma_reduce(trib);
        const std::size_t d = 2;  // largest letter index
        FactorLanguage orig = factor_language(trib, 15 + 2 * d + 2, kScan);
        FactorLanguage image = factor_language(red, (d + 1) * 15, 4 * kScan);
        for (std::size_t n = 1; n <= 15; ++n) {
            CHECK(orig.complexity(n) <= image.complexity((d + 1) * n));
            std::size_t sum = 0;
            for (std::size_t p = 0; p <= 2 * d + 2; ++p) sum += orig.complexity(n + p);
            CHECK(image.complexity(n) <= (d + 1) * (d + 1) * sum);
        }
    }
    SUBCASE("complexity bounds, 2-letter word, n <= 20") {
        WordSource fib = library_word("fibonacci");
        WordSource red = sigma_reduce(fib);
        const std::size_t d = 1;
        FactorLanguage orig = factor_language(fib, 20 + 2 * d + 2, kScan);
        FactorLanguage image = factor_language(red, (d + 1) * 20, 3 * kScan);
        for (std::size_t n = 1; n <= 20; ++n) {
            CHECK(orig.complexity(n) <= image.complexity((d + 1) * n));
            std::size_t sum = 0;
            for (std::size_t p = 0; p <= 2 * d + 2; ++p) sum += orig.complexity(n + p);
            CHECK(image.complexity(n) <= (d + 1) * (d + 1) * sum);
        }
    }
}

TEST_CASE("recurrence constants") {
    WordSource fib = library_word("fibonacci");
    CHECK(recurrence_constant(fib, "0", kScan) == 2);
    CHECK(recurrence_constant(fib, "1", kScan) == 3);
    CHECK(recurrence_constant(fib, "010", kScan) == 5);
    WordSource tm = library_word("thue-morse");
    CHECK(recurrence_constant(tm, "0", kScan) == 3);
    CHECK(recurrence_constant(tm, "01101001", kScan) == 23);
}

TEST_CASE("bi-infinite approximation") {
    SUBCASE("fibonacci, three steps") {
        BiInfiniteApprox b = biinfinite_extend(library_word("fibonacci"), 3, kScan);
        REQUIRE(b.u.size() == 3);
        CHECK(b.u[0] == "0");
        CHECK(b.u[1] == "01001");
        CHECK(b.u[2] == "0100101001001010010100100101001");
        REQUIRE(b.p.size() == 2);
        CHECK(b.l[0] == 3);
        CHECK(b.p[0] == "01");
        CHECK(b.q[0] == "01");
        CHECK(b.l[1] == 14);
        CHECK(b.p[1] == "0100101001001");
        CHECK(b.q[1] == "0100100101001");
        CHECK(b.anchor == 2 + 13);
        // Each step wraps the previous one in the middle.
        for (std::size_t i = 0; i + 1 < b.u.size(); ++i)
            CHECK(b.u[i + 1] == b.p[i] + b.u[i] + b.q[i]);
    }
    SUBCASE("constant word") {
        BiInfiniteApprox b = biinfinite_extend(library_word("constant0"), 2, kScan);
        CHECK(b.u[1] == "000");
        CHECK(b.l[0] == 2);
        CHECK(b.p[0] == "0");
        CHECK(b.q[0] == "0");
    }
    SUBCASE("every u_t is a factor starting at the anchor's window") {
        BiInfiniteApprox b = biinfinite_extend(library_word("fibonacci"), 4, kScan);
        std::string w = prefix(library_word("fibonacci"), kScan);
        for (const auto& u : b.u) CHECK(w.substr(0, u.size()) == u);
    }
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(factor_language(library_word("fibonacci"), 10, 5), ValidationError);
    CHECK_THROWS_AS(substitution_source({{'0', "10"}, {'1', "0"}}, '0', "bad"),
                    ValidationError);
    WordSource fin = explicit_prefix_source("0101", "fin");
    CHECK(prefix(fin, 4) == "0101");
    CHECK_THROWS_AS(prefix(fin, 5), StageError);
}
