#include <doctest.h>

#include <random>
#include <thread>

#include "clinger/exact_radix.hpp"
#include "oracles.hpp"

using namespace clinger;
using clinger::testing::oracle_best;
using clinger::testing::oracle_candidates;
using clinger::testing::oracle_value;

namespace {

DigitString ds(const std::string& text, unsigned base, DigitOrder order) {
    return parse_digit_string(text, Radix(base), order);
}

}  // namespace

TEST_CASE("digit string values") {
    CHECK(value_lsd(ds("1", 10, DigitOrder::LSD_FIRST)) == 1);
    CHECK(value_lsd(ds("321", 10, DigitOrder::LSD_FIRST)) == 123);
    CHECK(value_lsd(ds("1000", 2, DigitOrder::LSD_FIRST)) == 1);

    CHECK(value_msd(ds("1000", 2, DigitOrder::MSD_FIRST)) == 8);
    CHECK(value_msd(ds("321", 10, DigitOrder::MSD_FIRST)) == 321);
    CHECK(value_msd(ds("", 10, DigitOrder::MSD_FIRST)) == 0);

    CHECK_THROWS_AS(value_lsd(ds("1", 10, DigitOrder::MSD_FIRST)),
                    std::invalid_argument);
    CHECK_THROWS_AS(value_msd(ds("1", 10, DigitOrder::LSD_FIRST)),
                    std::invalid_argument);
    CHECK_THROWS_AS(ds("91", 8, DigitOrder::LSD_FIRST), std::invalid_argument);
}

TEST_CASE("repeat_digit") {
    CHECK(digits_to_string(repeat_digit(0, 3, Radix(10), DigitOrder::MSD_FIRST)) ==
          "000");
    CHECK(repeat_digit(1, 0, Radix(2), DigitOrder::LSD_FIRST).digits.empty());
    CHECK(digits_to_string(repeat_digit(7, 2, Radix(10), DigitOrder::MSD_FIRST)) ==
          "77");
    CHECK_THROWS_AS(repeat_digit(10, 1, Radix(10), DigitOrder::MSD_FIRST),
                    std::invalid_argument);
}

TEST_CASE("reversal duality") {
    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        const unsigned base = 2 + rng() % 15;
        const std::size_t len = rng() % 12;
        std::vector<unsigned> digits(len);
        for (auto& dgt : digits) dgt = rng() % base;
        const DigitString z(digits, Radix(base), DigitOrder::LSD_FIRST);
        CHECK(value_lsd(z) == value_msd(reverse(z)));
    }
}

TEST_CASE("commensurability") {
    const auto w1 = is_commensurable(Radix(2), Radix(8));
    REQUIRE(w1.has_value());
    CHECK(w1->p == 3);
    CHECK(w1->q == 1);

    const auto w2 = is_commensurable(Radix(4), Radix(8));
    REQUIRE(w2.has_value());
    CHECK(w2->p == 3);
    CHECK(w2->q == 2);
    CHECK(pow_nat(4, w2->p) == pow_nat(8, w2->q));

    CHECK_FALSE(is_commensurable(Radix(10), Radix(2)).has_value());

    const auto w3 = is_commensurable(Radix(6), Radix(6));
    REQUIRE(w3.has_value());
    CHECK(w3->p == 1);
    CHECK(w3->q == 1);

    // Cross-check every small pair against exhaustive exponent search.
    for (unsigned d = 2; d <= 16; ++d) {
        for (unsigned D = 2; D <= 16; ++D) {
            const auto w = is_commensurable(Radix(d), Radix(D));
            bool found = false;
            unsigned long best_p = 0, best_q = 0;
            for (unsigned long p = 1; p <= 24 && !found; ++p)
                for (unsigned long q = 1; q <= 24 && !found; ++q)
                    if (pow_nat(d, p) == pow_nat(D, q)) {
                        found = true;
                        best_p = p;
                        best_q = q;
                    }
            if (found) {
                REQUIRE_MESSAGE(w.has_value(), "d=", d, " D=", D);
                CHECK(w->p == best_p);
                CHECK(w->q == best_q);
            } else {
                CHECK_FALSE(w.has_value());
            }
        }
    }
}

TEST_CASE("best_approx pinned cases") {
    SUBCASE("value 1") {
        const auto r = best_approx({Int(1), 0, Radix(2)}, Radix(10), 1);
        CHECK(r.m == 1);
        CHECK(r.q == 0);
        CHECK(r.tie == Tie::NONE);
    }
    SUBCASE("1024 to one decimal digit") {
        const auto r = best_approx({Int(1), 10, Radix(2)}, Radix(10), 1);
        CHECK(r.m == 1);
        CHECK(r.q == 3);
    }
    SUBCASE("half distance resolves to even") {
        // 10 is equidistant from 8 = 2*2^2 and 12 = 3*2^2
        const auto r = best_approx({Int(1), 1, Radix(10)}, Radix(2), 2);
        CHECK(r.m == 2);
        CHECK(r.q == 2);
        CHECK(r.tie == Tie::HALF_RESOLVED_TO_EVEN);
    }
    SUBCASE("boundary rule admits the low significand") {
        // 0.97 = (1 - 0.03) * 1 with -0.03 >= -1/20
        const auto r = best_approx({Int(97), -2, Radix(10)}, Radix(10), 1);
        CHECK(r.m == 1);
        CHECK(r.q == 0);
    }
    SUBCASE("negative exponents") {
        const auto r = best_approx({Int(1), -10, Radix(2)}, Radix(10), 2);
        // 1/1024 = 0.0009765625 -> 98 * 10^-5
        CHECK(r.m == 98);
        CHECK(r.q == -5);
    }
}

TEST_CASE("best_approx agrees with the enumeration oracle (sampled)") {
    const unsigned radices[] = {2, 3, 10, 16};
    for (unsigned f = 1; f <= 20; ++f)
        for (long e = -8; e <= 8; ++e)
            for (unsigned D : radices)
                for (unsigned d : radices)
                    for (unsigned n = 1; n <= 3; ++n) {
                        const Rat r = oracle_value(f, e, D);
                        std::size_t count = 0;
                        const auto expect = oracle_best(r, d, n, &count);
                        REQUIRE((count == 1 || count == 2));
                        const auto got = best_approx({Int(f), e, Radix(D)}, Radix(d), n);
                        REQUIRE_MESSAGE(got.m == expect.m, "f=", f, " e=", e, " D=", D,
                                        " d=", d, " n=", n);
                        REQUIRE(got.q == expect.q);
                        REQUIRE((got.tie == Tie::HALF_RESOLVED_TO_EVEN) == (count == 2));
                    }
}

TEST_CASE("scaling invariance") {
    std::mt19937 rng(11);
    for (int round = 0; round < 400; ++round) {
        const unsigned f = 1 + rng() % 100;
        const long e = static_cast<long>(rng() % 31) - 15;
        const unsigned D = 2 + rng() % 15;
        const unsigned d = 2 + rng() % 15;
        const unsigned n = 1 + rng() % 4;
        const auto a = best_approx({Int(f), e, Radix(D)}, Radix(d), n);
        const auto b = best_approx({Int(f) * D, e - 1, Radix(D)}, Radix(d), n);
        CHECK(a.m == b.m);
        CHECK(a.q == b.q);
        CHECK(a.tie == b.tie);
    }
}

TEST_CASE("commensurable radices give exact approximations") {
    // d = 2, D = 8: every 8^e is exactly representable with >= 3 binary digits
    for (long e = 1; e <= 10; ++e)
        for (unsigned n = 3; n <= 6; ++n) {
            const auto r = best_approx({Int(1), e, Radix(8)}, Radix(2), n);
            const Rat value = oracle_value(1, e, 8);
            CHECK(Rat(r.m) * pow_rat(2, r.q) == value);
            CHECK(r.tie == Tie::NONE);
        }
}

TEST_CASE("language membership") {
    SUBCASE("L membership uses the LSD value") {
        LanguageSpec spec{LanguageKind::L, Radix(10), Radix(2), Radix(10), 1, Int(1)};
        // "01" LSD-first has value 10; 2^10 = 1024 has significand 1
        CHECK(language_member(ds("01", 10, DigitOrder::LSD_FIRST), spec));
        // 2^4 = 16 has significand 2
        CHECK_FALSE(language_member(ds("4", 10, DigitOrder::LSD_FIRST), spec));
        spec.target = 2;
        CHECK(language_member(ds("4", 10, DigitOrder::LSD_FIRST), spec));
    }
    SUBCASE("M membership uses the MSD value") {
        LanguageSpec spec{LanguageKind::M, Radix(10), Radix(2), Radix(10), 1, Int(1)};
        CHECK(language_member(ds("10", 10, DigitOrder::MSD_FIRST), spec));
        CHECK_THROWS_AS(
            language_member(ds("10", 10, DigitOrder::LSD_FIRST), spec),
            std::invalid_argument);
    }
    SUBCASE("P membership") {
        LanguageSpec spec{LanguageKind::P, Radix(10), Radix(2), Radix(10), 1, Int(2)};
        CHECK(language_member(ds("1", 10, DigitOrder::MSD_FIRST), spec));   // e=1 -> 2
        CHECK_FALSE(language_member(ds("10", 10, DigitOrder::MSD_FIRST), spec));  // e=10 -> 1024
        spec.target = 1;
        CHECK(language_member(ds("10", 10, DigitOrder::MSD_FIRST), spec));
    }
    SUBCASE("malformed P patterns are rejected, not false") {
        LanguageSpec spec{LanguageKind::P, Radix(10), Radix(2), Radix(10), 1, Int(2)};
        CHECK_THROWS_AS(language_member(ds("2", 10, DigitOrder::MSD_FIRST), spec),
                        MalformedPatternError);
        CHECK_THROWS_AS(language_member(ds("11", 10, DigitOrder::MSD_FIRST), spec),
                        MalformedPatternError);
        CHECK_THROWS_AS(language_member(ds("", 10, DigitOrder::MSD_FIRST), spec),
                        MalformedPatternError);
    }
    SUBCASE("binary output radix tests the two-digit significand") {
        LanguageSpec spec{LanguageKind::L, Radix(10), Radix(10), Radix(2), 2, Int(1)};
        // 10^2 = 100 = 3.125 * 2^5 -> significand 3 = binary 11
        CHECK(language_member(ds("2", 10, DigitOrder::LSD_FIRST), spec));
        // 10^0 = 1 -> significand 2 = binary 10
        CHECK_FALSE(language_member(ds("0", 10, DigitOrder::LSD_FIRST), spec));
    }
    SUBCASE("spec validation") {
        CHECK_THROWS_AS(
            language_member(ds("1", 10, DigitOrder::MSD_FIRST),
                            LanguageSpec{LanguageKind::P, Radix(10), Radix(2),
                                         Radix(10), 1, Int(10)}),
            std::invalid_argument);
        CHECK_THROWS_AS(
            language_member(ds("1", 10, DigitOrder::LSD_FIRST),
                            LanguageSpec{LanguageKind::L, Radix(10), Radix(2),
                                         Radix(10), 2, Int(1)}),
            std::invalid_argument);
        CHECK_THROWS_AS(
            language_member(ds("1", 2, DigitOrder::LSD_FIRST),
                            LanguageSpec{LanguageKind::L, Radix(10), Radix(2),
                                         Radix(10), 1, Int(1)}),
            std::invalid_argument);
    }
}

TEST_CASE("membership partitions") {
    SUBCASE("every P pattern lands in exactly one class") {
        for (unsigned long p = 0; p <= 10; ++p) {
            const auto z = [&] {
                std::vector<unsigned> digits{1};
                digits.insert(digits.end(), p, 0);
                return DigitString(digits, Radix(2), DigitOrder::MSD_FIRST);
            }();
            int hits = 0;
            for (int m = 1; m <= 9; ++m) {
                LanguageSpec spec{LanguageKind::P, Radix(2), Radix(2), Radix(10), 1,
                                  Int(m)};
                if (language_member(z, spec)) ++hits;
            }
            CHECK(hits == 1);
        }
    }
    SUBCASE("oversized exponents fail loudly") {
        LanguageSpec spec{LanguageKind::P, Radix(10), Radix(2), Radix(10), 1, Int(2)};
        const auto z = [&] {
            std::vector<unsigned> digits{1};
            digits.insert(digits.end(), 12, 0);
            return DigitString(digits, Radix(10), DigitOrder::MSD_FIRST);
        }();
        CHECK_THROWS_AS(language_member(z, spec), ResourceLimitError);
    }
    SUBCASE("every exponent string lands in exactly one L class") {
        for (long e = 0; e <= 40; ++e) {
            const auto z = [&] {
                std::vector<unsigned> digits;
                long v = e;
                do {
                    digits.push_back(static_cast<unsigned>(v % 10));
                    v /= 10;
                } while (v > 0);
                return DigitString(digits, Radix(10), DigitOrder::LSD_FIRST);
            }();
            int hits = 0;
            for (int t = 1; t <= 9; ++t) {
                LanguageSpec spec{LanguageKind::L, Radix(10), Radix(2), Radix(10), 1,
                                  Int(t)};
                if (language_member(z, spec)) ++hits;
            }
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("concurrent evaluation is safe on immutable inputs") {
    std::vector<std::thread> workers;
    std::array<std::vector<Int>, 4> results;
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([t, &results] {
            for (unsigned f = 1; f <= 50; ++f)
                for (long e = -5; e <= 5; ++e)
                    results[static_cast<std::size_t>(t)].push_back(
                        best_approx({Int(f), e, Radix(10)}, Radix(2), 3).m);
        });
    }
    for (auto& w : workers) w.join();
    for (int t = 1; t < 4; ++t)
        CHECK(results[static_cast<std::size_t>(t)] == results[0]);
}

TEST_CASE("clinger_inequality") {
    CHECK(clinger_inequality(Radix(10), Radix(2), 5));   // 11.1 < 22.2
    CHECK_FALSE(clinger_inequality(Radix(10), Radix(2), 1));  // 11.1 > 1.39
    CHECK(clinger_inequality(Radix(2), Radix(10), 1));   // 4 < 4.6

    // rational log path: b = d = 2, n = 2 gives exactly 4 < 4, i.e. false
    CHECK_FALSE(clinger_inequality(Radix(2), Radix(2), 2, LogKind::BASE_B));
    CHECK(clinger_inequality(Radix(2), Radix(2), 3, LogKind::BASE_B));  // 4 < 8
    // irrational base-b log: b=10, d=2, n=5: 11.1 < 32*log10(2)=9.6 is false
    CHECK_FALSE(clinger_inequality(Radix(10), Radix(2), 5, LogKind::BASE_10));
    CHECK(clinger_inequality(Radix(10), Radix(2), 6, LogKind::BASE_10));  // 19.3
}
