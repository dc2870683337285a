// End-to-end checks of the clingerlab binary and the shipped machine files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "clinger/builtins.hpp"
#include "clinger/json_io.hpp"

#ifndef CLINGERLAB_BIN
#error "CLINGERLAB_BIN must point at the built binary"
#endif
#ifndef MACHINES_DIR
#error "MACHINES_DIR must point at the shipped machines"
#endif

using namespace clinger;
using nlohmann::json;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    const std::string command = std::string(CLINGERLAB_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult result;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string machine_path(const std::string& name) {
    return std::string(MACHINES_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("shipped machines are the generators' own output") {
    CHECK(read_file(machine_path("reverse10.tcmi")) ==
          emit_program(reverse_counter_tcmi(Radix(10))));
    CHECK(read_file(machine_path("reverse2.tcmi")) ==
          emit_program(reverse_counter_tcmi(Radix(2))));
    CHECK(read_file(machine_path("reverse3.tcmi")) ==
          emit_program(reverse_counter_tcmi(Radix(3))));
    CHECK(read_file(machine_path("clinger_b10_D2_d10_n1.reg")) ==
          emit_register_program(
              clinger_register_program(Radix(10), Radix(2), Radix(10), 1)));
    CHECK(read_file(machine_path("clinger_b10_D2_d3_n1.reg")) ==
          emit_register_program(
              clinger_register_program(Radix(10), Radix(2), Radix(3), 1)));
    // and they parse
    CHECK_NOTHROW(parse_program(read_file(machine_path("halt.tcm"))));
    CHECK_NOTHROW(parse_program(read_file(machine_path("drain.tcm"))));
    CHECK_NOTHROW(
        parse_register_program(read_file(machine_path("clinger_b10_D2_d10_n1.reg"))));
}

TEST_CASE("convert outputs") {
    auto res = run_cli("convert --f 1 --e 10 --D 2 --d 10 --n 1");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "m=1 q=3\n");

    res = run_cli("convert --f 1 --e 0 --D 2 --d 10 --n 1");
    CHECK(res.output == "m=1 q=0\n");

    res = run_cli("convert --f 1 --e 1 --D 10 --d 2 --n 2");
    CHECK(res.output == "m=2 q=2 tie=even\n");
}

TEST_CASE("member command") {
    auto res = run_cli("member --kind L --z 01 --order lsd --b 10 --D 2 --d 10 --n 1 --target 1");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "member=true\n");

    res = run_cli("member --kind P --z 10 --order msd --b 10 --D 2 --d 10 --n 1 --target 2");
    CHECK(res.output == "member=false\n");

    // malformed P patterns are an error, not false
    res = run_cli("member --kind P --z 21 --order msd --b 10 --D 2 --d 10 --n 1 --target 2");
    CHECK(res.exit_code == 2);
}

TEST_CASE("machine run over the shipped files") {
    auto res = run_cli("machine run " + machine_path("reverse10.tcmi") + " --input 102");
    CHECK(res.exit_code == 0);
    CHECK(res.output.rfind("c1=102 c2=0 online=true", 0) == 0);

    res = run_cli("machine run " + machine_path("halt.tcm"));
    CHECK(res.output.rfind("c1=0 c2=0", 0) == 0);

    res = run_cli("machine run " + machine_path("reverse2.tcmi") +
                  " --input 11 --accelerate");
    CHECK(res.output.rfind("c1=3 c2=0 online=true", 0) == 0);
}

TEST_CASE("machine analyze emits the loop report") {
    const auto res =
        run_cli("machine analyze " + machine_path("drain.tcm") + " --start 50,50 --json");
    CHECK(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(j["report"]["loop"]["omega1"] == -1);
    CHECK(j["report"]["loop"]["omega2"] == 2);
    CHECK(j["report"]["stages"].is_array());
}

TEST_CASE("compile round trip through the CLI") {
    const std::string out = "/tmp/clingerlab_test_compiled.tcmi";
    auto res = run_cli("compile " + machine_path("clinger_b10_D2_d3_n1.reg") +
                       " --primes 13,17,11,2,3,5,7 -o " + out);
    REQUIRE(res.exit_code == 0);
    CHECK_NOTHROW(parse_program(read_file(out)));

    res = run_cli("machine run " + out +
                  " --input 2 --accelerate --max-steps "
                  "1000000000000000000000000000000000000 --json");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(j["report"]["status"] == "halted");
    CHECK(j["report"]["online"] == true);
    // c1 decodes to registers (e=2, digits=1, significand=1)
    CHECK(j["report"]["final"]["c1"] == "31603");  // 13^2 * 17 * 11
    std::remove(out.c_str());
}

TEST_CASE("exit codes are stable") {
    CHECK(run_cli("convert --f 1 --e 0").exit_code == 2);          // missing flags
    CHECK(run_cli("no-such-command").exit_code == 2);              // usage
    CHECK(run_cli("machine run /nonexistent.tcm").exit_code == 2); // unopenable

    // program-parse errors carry line diagnostics and exit 3
    const std::string bad = "/tmp/clingerlab_test_bad.tcm";
    {
        std::ofstream out(bad);
        out << ".class TCM\njmp NOWHERE\n";
    }
    const auto res = run_cli("machine run " + bad);
    CHECK(res.exit_code == 3);
    CHECK(res.output.find("line 2") != std::string::npos);
    CHECK(res.output.find("NOWHERE") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("lab commands") {
    auto res = run_cli("lab window --theta log 10 2 --C 10 --mmax 12");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("witnesses: 0 ") != std::string::npos);

    res = run_cli("lab kronecker --theta sqrt2 --N 1 --bins 2");
    CHECK(res.output.find("occupied=1/2") != std::string::npos);

    res = run_cli("lab pumping --b 2 --D 2 --d 10 --n 1 --pmax 6 --dmax 2");
    CHECK(res.output.find("p=1 significand=4") != std::string::npos);
    CHECK(res.output.find("delta=1 diverges at p=0,1,") != std::string::npos);
}

TEST_CASE("the precision ceiling env var forces certification failures") {
    const std::string command =
        std::string("CLINGER_PRECISION_CEILING=64 ") + CLINGERLAB_BIN +
        " lab mixing --theta sqrt2 --eps 1/20 --a 1/5 --b 4/5 --trials 2 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), got);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 4);
    CHECK(output.find("certification failure") != std::string::npos);
    CHECK(output.find("sqrt2") != std::string::npos);  // the failing query is named
}

TEST_CASE("identical invocations produce byte-identical JSON") {
    const std::string cmd =
        "lab mixing --theta sqrt2 --eps 1/20 --a 1/5 --b 4/5 --trials 10 --seed 3 "
        "--json";
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    const json j = json::parse(first.output);
    CHECK(j["seed"] == 3);

    const auto window1 = run_cli("lab window --theta log 10 2 --C 10 --mmax 9 --json");
    const auto window2 = run_cli("lab window --theta log 10 2 --C 10 --mmax 9 --json");
    CHECK(window1.output == window2.output);
}

TEST_CASE("trace emission is one JSON object per step") {
    const auto res =
        run_cli("machine run " + machine_path("drain.tcm") + " --start 3,0 --trace");
    CHECK(res.exit_code == 0);
    std::istringstream in(res.output);
    std::string line;
    std::size_t json_lines = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != '{') continue;
        const json j = json::parse(line);
        CHECK(j.contains("step"));
        CHECK(j.contains("state"));
        CHECK(j.contains("c1"));
        ++json_lines;
    }
    CHECK(json_lines >= 10);
}
