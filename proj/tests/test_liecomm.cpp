#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "liegrowth/errors.hpp"
#include "liegrowth/liecomm.hpp"
#include "liegrowth/words.hpp"

using namespace liegrowth;

namespace {

constexpr std::size_t kScan = 10000;

FactorLanguage lang_of(const char* name, std::size_t N) {
    return factor_language(library_word(name), N, kScan);
}

void check_dims(const char* name, std::size_t first_n, const std::vector<int>& expected) {
    FactorLanguage lang = lang_of(name, first_n + expected.size() - 1);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CAPTURE(name);
        CAPTURE(first_n + i);
        CHECK(commutator_dim(lang, first_n + i, FieldDescriptor::Q()) == expected[i]);
    }
}

}  // namespace

TEST_CASE("field descriptors") {
    CHECK(FieldDescriptor::Q().name() == "Q");
    CHECK(FieldDescriptor::GF(32003).name() == "GF(32003)");
    CHECK(FieldDescriptor::GF(3).p == 3);
    CHECK_THROWS_AS(FieldDescriptor::GF(2), ValidationError);
    CHECK_THROWS_AS(FieldDescriptor::GF(4), ValidationError);
    CHECK_THROWS_AS(FieldDescriptor::GF(9), ValidationError);
}

TEST_CASE("commutator span dimensions") {
    check_dims("fibonacci", 2, {1, 3, 4, 5, 6, 8, 8, 10, 10, 12, 13});
    check_dims("thue-morse", 2, {1, 4, 8, 12, 14, 20, 21, 24, 28, 32, 34});
    check_dims("period-doubling", 2, {1, 3, 4, 8, 8, 11, 10, 14, 16});
    check_dims("chacon", 2, {1, 3, 5, 8, 11, 13, 14, 16, 18});
    check_dims("periodic01", 2, {1, 2, 1, 2, 1});

    FactorLanguage fib = lang_of("fibonacci", 4);
    CHECK_THROWS_AS(commutator_dim(fib, 1, FieldDescriptor::Q()), ValidationError);
    CHECK_THROWS_AS(commutator_dim(fib, 5, FieldDescriptor::Q()), StageError);
}

TEST_CASE("mirrored commutator rows change no rank") {
    FactorLanguage fib = lang_of("fibonacci", 6);
    CHECK(rank_q(commutator_matrix(fib, 6, false)) ==
          rank_q(commutator_matrix(fib, 6, true)));
    FactorLanguage tm = lang_of("thue-morse", 5);
    CHECK(rank_q(commutator_matrix(tm, 5, false)) ==
          rank_q(commutator_matrix(tm, 5, true)));
}

TEST_CASE("prime-field ranks match the rational ranks") {
    FieldDescriptor gf = FieldDescriptor::GF(32003);
    FieldDescriptor q = FieldDescriptor::Q();
    FactorLanguage fib = lang_of("fibonacci", 10);
    for (std::size_t n = 2; n <= 10; ++n)
        CHECK(commutator_dim(fib, n, gf) == commutator_dim(fib, n, q));
    FactorLanguage tm = lang_of("thue-morse", 8);
    for (std::size_t n = 2; n <= 8; ++n)
        CHECK(commutator_dim(tm, n, gf) == commutator_dim(tm, n, q));
}

TEST_CASE("quarter bound with split facts") {
    FieldDescriptor q = FieldDescriptor::Q();
    for (const char* name : {"fibonacci", "thue-morse"}) {
        FactorLanguage lang = lang_of(name, 12);
        for (std::size_t n = 4; n <= 12; ++n) {
            CAPTURE(name);
            CAPTURE(n);
            QuarterBoundReport rep = verify_quarter_bound(lang, n, q);
            CHECK(rep.n == n);
            CHECK(rep.dim_A_nm2 == lang.complexity(n - 2));
            CHECK(rep.pass);
            CHECK(rep.margin >= 0);
            CHECK(4 * static_cast<std::size_t>(rep.comm_dim) >= rep.dim_A_nm2);
            // pigeonhole: the chosen side holds at least half of A(n-1)
            CHECK(rep.dim_A_nm1 == lang.complexity(n - 1));
            CHECK(rep.side_dim <= rep.dim_A_nm1);
            CHECK(rep.pigeonhole_ok);
            CHECK(2 * rep.side_dim >= rep.dim_A_nm1);
            // at least one adjoint generator has small kernel on that side
            CHECK(rep.kernel_ok);
            CHECK(2 * std::min(rep.kernel_dim[0], rep.kernel_dim[1]) <= rep.side_dim);
        }
    }
    FactorLanguage fib = lang_of("fibonacci", 12);
    CHECK_THROWS_AS(verify_quarter_bound(fib, 2, q), ValidationError);

    QuarterBoundReport r5 = verify_quarter_bound(fib, 5, q);
    CHECK(r5.pass == (r5.margin >= 0));
    CHECK(r5.margin == mpq_class(5) - mpq_class(4, 4));  // comm_dim 5, c(3) = 4
}

TEST_CASE("growth proxy with sandwich") {
    FactorLanguage fib = lang_of("fibonacci", 10);
    ProxyReport rep = lie_growth_proxy(fib, 10, FieldDescriptor::Q());
    CHECK(rep.sandwich_ok);
    CHECK(rep.proxy.tag() == "lie-proxy-fibonacci");
    REQUIRE(rep.rows.size() == 9);  // n = 2..10

    // proxy(n) accumulates the degree >= 3 commutator dimensions; for the
    // golden word c(m) = m + 1 so the cumulative sums are m(m+3)/2.
    const ProxyRow& last = rep.rows.back();
    CHECK(last.n == 10);
    CHECK(last.lower_sum == 44);
    CHECK(last.proxy == 54);
    CHECK(last.upper_sum == 65);
    CHECK(rep.rows.front().proxy == 0);  // nothing below degree 3

    mpz_class prev = -1;
    for (const ProxyRow& row : rep.rows) {
        CHECK(row.proxy >= prev);
        CHECK(row.lower_sum <= 4 * row.proxy);
        CHECK(row.proxy <= row.upper_sum);
        CHECK(row.proxy == rep.proxy.at(row.n));
        prev = row.proxy;
    }

    CHECK_THROWS_AS(lie_growth_proxy(fib, 1, FieldDescriptor::Q()), ValidationError);
    CHECK_THROWS_AS(lie_growth_proxy(fib, 11, FieldDescriptor::Q()), StageError);
}
