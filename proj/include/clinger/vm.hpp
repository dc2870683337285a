#pragma once

#include <array>
#include <optional>
#include <vector>

#include "clinger/machine.hpp"
#include "clinger/numeric.hpp"

namespace clinger {

struct Configuration {
    int pc = 0;
    std::array<Int, 2> c{};  // counters; the register classes use c[0] as r
    std::size_t cursor = 0;

    const Int& min_counter() const { return c[0] <= c[1] ? c[0] : c[1]; }
    const Int& max_counter() const { return c[0] <= c[1] ? c[1] : c[0]; }
    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.pc == b.pc && a.c == b.c && a.cursor == b.cursor;
    }
};

struct RunLimits {
    Int max_steps = Int(1) << 62;
    bool accelerate = false;
    bool record_trace = true;        // ignored under acceleration
    bool record_zero_events = false;
};

enum class RunStatus {
    HALTED,               // reached an explicit or implicit halt
    INPUT_EXHAUSTED,      // resting at a wait state with all input consumed
    STEP_LIMIT,           // budget ran out; the result is a partial view
    ZERO_DECREMENT_FAULT  // dec on a zero counter
};

struct TraceStep {
    unsigned long long step = 0;  // entry 0 is the initial configuration
    Configuration config;
    int consumed = kNoSymbol;  // symbol consumed by this step, if any
};

struct Trace {
    MachineClass cls = MachineClass::TCM;
    std::vector<TraceStep> steps;
    std::optional<std::size_t> stop_index;  // trace position of the stop-consuming step
};

struct RunResult {
    Configuration final_config;
    RunStatus status = RunStatus::HALTED;
    Int steps = 0;     // naive-equivalent step count
    Int work_ops = 0;  // operations actually performed (jump = one op)
    std::optional<bool> online;  // set once the stop marker is consumed
    Trace trace;
    std::vector<Configuration> zero_events;  // configurations with a zero counter
};

// Appends the stop marker to a digit sequence.
std::vector<int> make_input(const std::vector<unsigned>& digits);

/// Deterministic execution. The input overload serves TCMI/MP1RMI and
/// requires exactly one trailing stop marker; the configuration overload
/// serves TCM/MP1RM. With limits.accelerate set, repeated loop bodies are
/// fast-forwarded in whole cycles with bit-identical results; trace
/// recording is only available in naive mode.
RunResult run(const MachineProgram& prog, const std::vector<int>& input,
              const RunLimits& limits = {});
RunResult run(const MachineProgram& prog, const Configuration& start,
              const RunLimits& limits = {});

RunResult run_accelerated(const MachineProgram& prog, const std::vector<int>& input,
                          RunLimits limits = {});
RunResult run_accelerated(const MachineProgram& prog, const Configuration& start,
                          RunLimits limits = {});

// True when no counter (or register) value changes at or after the step
// that consumed the stop marker. The trace must contain that step.
bool is_online_run(const Trace& trace);

}  // namespace clinger
