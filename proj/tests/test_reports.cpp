#include <doctest.h>

#include "clinger/json_io.hpp"

using namespace clinger;
using nlohmann::json;

namespace {

template <typename T>
void check_round_trip(const T& value) {
    const json j = value;
    const json reparsed = json::parse(j.dump());
    const T back = reparsed.get<T>();
    CHECK(back == value);
    // serialized form is stable too
    CHECK(json(back).dump() == j.dump());
}

}  // namespace

TEST_CASE("reports round-trip through JSON") {
    SUBCASE("best approximation") {
        BestApprox v;
        v.m = Int("123456789012345678901234567890");
        v.q = -42;
        v.n = 4;
        v.tie = Tie::HALF_RESOLVED_TO_EVEN;
        const json j = v;
        const BestApprox back = j.get<BestApprox>();
        CHECK(back.m == v.m);
        CHECK(back.q == v.q);
        CHECK(back.n == v.n);
        CHECK(back.tie == v.tie);
    }
    SUBCASE("density") {
        check_round_trip(kronecker_density(AngleTheta::sqrt_nat(2), 500, 16));
    }
    SUBCASE("window") {
        check_round_trip(
            window_witnesses(AngleTheta::log_ratio(Radix(10), Radix(2)), Int(10), 8));
    }
    SUBCASE("bracket") {
        check_round_trip(bracket_search(AngleTheta::rational(Rat(5, 12)), Int(2), 20,
                                        5, 3));
    }
    SUBCASE("shift") {
        std::vector<AnglePoint> alphas{{Rat(9, 10), Int(0)}};
        std::vector<AnglePoint> betas{{Rat(1, 2), Int(0)}};
        check_round_trip(
            normalize_shift(AngleTheta::sqrt_nat(2), alphas, betas, 10));
    }
    SUBCASE("mixing") {
        check_round_trip(mixing_bound(AngleTheta::sqrt_nat(2), Rat(1, 20), Rat(1, 5),
                                      Rat(4, 5), 5, 100000, 11));
    }
    SUBCASE("pumping") {
        check_round_trip(pumping_search(Radix(2), Radix(2), Radix(10), 1, 8, 3));
        // unknown entries survive the trip
        check_round_trip(pumping_search(Radix(10), Radix(2), Radix(10), 1, 12, 2));
    }
}

TEST_CASE("trace JSON lines") {
    const auto prog = parse_program(".class TCM\ninc c1\ndec c1\nhalt\n");
    Configuration start;
    start.c[0] = 1;
    const auto res = run(prog, start);
    const std::string lines = trace_json_lines(res.trace);

    std::istringstream in(lines);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        const json j = json::parse(line);
        CHECK(j.contains("step"));
        CHECK(j.contains("state"));
        CHECK(j.contains("c1"));
        CHECK(j.contains("c2"));
        CHECK(j.contains("consumed"));
        ++count;
    }
    CHECK(count == res.trace.steps.size());

    const auto mp = parse_program(".class MP1RM\nadd 3\nhalt\n");
    const auto mp_res = run(mp, Configuration{});
    const std::string mp_lines = trace_json_lines(mp_res.trace);
    CHECK(mp_lines.find("\"r\"") != std::string::npos);
    CHECK(mp_lines.find("\"c1\"") == std::string::npos);
}
