#include "clinger/vm.hpp"

#include <climits>

namespace clinger {

std::vector<int> make_input(const std::vector<unsigned>& digits) {
    std::vector<int> symbols(digits.begin(), digits.end());
    symbols.push_back(kStopSymbol);
    return symbols;
}

namespace {

void validate_limits(const RunLimits& limits) {
    if (limits.max_steps < 1)
        throw std::invalid_argument("max_steps must be >= 1");
}

void validate_input(const MachineProgram& prog, const std::vector<int>& input) {
    if (input.empty() || input.back() != kStopSymbol)
        throw std::invalid_argument("input must end with the stop marker");
    for (std::size_t i = 0; i + 1 < input.size(); ++i) {
        const int sym = input[i];
        if (sym == kStopSymbol)
            throw std::invalid_argument("stop marker appears before the end of input");
        if (sym < 0 || sym >= static_cast<int>(prog.alphabet_radix))
            throw std::invalid_argument("input symbol " + std::to_string(sym) +
                                        " outside the alphabet");
    }
}

struct Snapshot {
    unsigned long long epoch = 0;
    unsigned long long step = 0;
    Int c0, c1;
};

RunResult execute(const MachineProgram& prog, Configuration conf,
                  const std::vector<int>* input, const RunLimits& limits) {
    RunResult out;
    out.trace.cls = prog.cls;

    const bool counters = prog.counter_based();
    // Loop acceleration is additive-delta reasoning; it applies to the
    // counter classes only (MP1RM cycles may multiply or divide).
    const bool accel = limits.accelerate && counters;
    const bool tracing = limits.record_trace && !limits.accelerate;
    const Int margin = static_cast<unsigned long>(prog.state_count());

    unsigned long long naive = 0;  // naive steps executed
    Int jumped = 0;                // steps covered by whole-cycle jumps

    auto naive_limit = [&]() -> unsigned long long {
        const Int remaining = limits.max_steps - jumped;
        if (remaining <= 0) return 0;
        if (!remaining.fits_ulong_p()) return ULLONG_MAX;
        const unsigned long v = remaining.get_ui();
        return v;
    };
    unsigned long long budget = naive_limit();

    bool stop_seen = false;
    bool changed_after_stop = false;

    std::vector<Snapshot> snaps(accel ? prog.code.size() : 0);
    unsigned long long epoch = 1;

    auto note_zero = [&]() {
        if (!counters) return;
        if (sgn(conf.c[0]) == 0 || sgn(conf.c[1]) == 0) {
            ++epoch;
            if (limits.record_zero_events) out.zero_events.push_back(conf);
        }
    };

    if (tracing) out.trace.steps.push_back({0, conf, kNoSymbol});
    note_zero();

    for (;;) {
        if (conf.pc < 0 || conf.pc >= static_cast<int>(prog.code.size())) {
            out.status = RunStatus::HALTED;
            break;
        }
        const Instruction& ins = prog.code[static_cast<std::size_t>(conf.pc)];

        if (ins.op == OpCode::HALT) {
            out.status = RunStatus::HALTED;
            break;
        }
        if (ins.op == OpCode::WAIT && conf.cursor >= input->size()) {
            out.status = RunStatus::INPUT_EXHAUSTED;
            break;
        }
        if (naive >= budget) {
            out.status = RunStatus::STEP_LIMIT;
            break;
        }

        if (accel && conf.c[0] > margin && conf.c[1] > margin) {
            Snapshot& snap = snaps[static_cast<std::size_t>(conf.pc)];
            if (snap.epoch == epoch) {
                const unsigned long long cycle = naive - snap.step;
                const Int d0 = conf.c[0] - snap.c0;
                const Int d1 = conf.c[1] - snap.c1;
                // Largest whole number of cycles that keeps both counters
                // above the margin and respects the step budget.
                Int k = (limits.max_steps - jumped - static_cast<unsigned long>(naive)) / Int(static_cast<unsigned long>(cycle));
                if (d0 < 0) {
                    const Int cap = (conf.c[0] - margin - 1) / (-d0);
                    if (cap < k) k = cap;
                }
                if (d1 < 0) {
                    const Int cap = (conf.c[1] - margin - 1) / (-d1);
                    if (cap < k) k = cap;
                }
                if (k > 0) {
                    conf.c[0] += k * d0;
                    conf.c[1] += k * d1;
                    jumped += k * Int(static_cast<unsigned long>(cycle));
                    ++out.work_ops;
                    if (stop_seen && (sgn(d0) != 0 || sgn(d1) != 0))
                        changed_after_stop = true;
                    ++epoch;
                    budget = naive_limit();
                    continue;
                }
            } else {
                snap = {epoch, naive, conf.c[0], conf.c[1]};
            }
        }

        int consumed = kNoSymbol;
        bool faulted = false;
        Int pre0, pre1;
        if (stop_seen) {
            pre0 = conf.c[0];
            pre1 = conf.c[1];
        }

        switch (ins.op) {
            case OpCode::INC:
                ++conf.c[ins.counter];
                ++conf.pc;
                break;
            case OpCode::DEC:
                if (sgn(conf.c[ins.counter]) == 0) {
                    out.status = RunStatus::ZERO_DECREMENT_FAULT;
                    faulted = true;
                    break;
                }
                --conf.c[ins.counter];
                ++conf.pc;
                break;
            case OpCode::JZ:
                conf.pc = sgn(conf.c[ins.counter]) == 0 ? ins.target : conf.pc + 1;
                break;
            case OpCode::JMP:
                conf.pc = ins.target;
                break;
            case OpCode::ADD:
                conf.c[0] += ins.k;
                ++conf.pc;
                break;
            case OpCode::MUL:
                conf.c[0] *= ins.k;
                ++conf.pc;
                break;
            case OpCode::DECJZ:
                if (sgn(conf.c[0]) == 0) {
                    conf.pc = ins.target;
                } else {
                    --conf.c[0];
                    ++conf.pc;
                }
                break;
            case OpCode::DIVMOD: {
                Int quot, rem;
                mpz_fdiv_qr_ui(quot.get_mpz_t(), rem.get_mpz_t(),
                               conf.c[0].get_mpz_t(),
                               static_cast<unsigned long>(ins.k));
                conf.c[0] = quot;
                conf.pc = ins.dispatch[rem.get_ui()];
                break;
            }
            case OpCode::WAIT: {
                const int sym = (*input)[conf.cursor];
                int target = -1;
                for (const auto& arm : ins.arms)
                    if (arm.first == sym) {
                        target = arm.second;
                        break;
                    }
                ++conf.cursor;
                conf.pc = target;
                consumed = sym;
                ++epoch;
                break;
            }
            case OpCode::HALT:
                break;  // unreachable
        }
        if (faulted) break;

        ++naive;
        ++out.work_ops;

        if (stop_seen && (conf.c[0] != pre0 || conf.c[1] != pre1))
            changed_after_stop = true;
        if (consumed == kStopSymbol) {
            stop_seen = true;
            if (tracing) out.trace.stop_index = out.trace.steps.size();
        }

        if (tracing) out.trace.steps.push_back({naive, conf, consumed});
        note_zero();
    }

    out.final_config = conf;
    out.steps = jumped + Int(static_cast<unsigned long>(naive));
    if (stop_seen) out.online = !changed_after_stop;
    return out;
}

}  // namespace

RunResult run(const MachineProgram& prog, const std::vector<int>& input,
              const RunLimits& limits) {
    if (!prog.has_input())
        throw std::invalid_argument("class " + class_name(prog.cls) +
                                    " takes a start configuration, not input");
    validate_limits(limits);
    validate_input(prog, input);
    return execute(prog, Configuration{}, &input, limits);
}

RunResult run(const MachineProgram& prog, const Configuration& start,
              const RunLimits& limits) {
    if (prog.has_input())
        throw std::invalid_argument("class " + class_name(prog.cls) +
                                    " takes an input sequence");
    validate_limits(limits);
    if (start.c[0] < 0 || start.c[1] < 0)
        throw std::invalid_argument("counters are naturals; negative start value");
    return execute(prog, start, nullptr, limits);
}

RunResult run_accelerated(const MachineProgram& prog, const std::vector<int>& input,
                          RunLimits limits) {
    limits.accelerate = true;
    return run(prog, input, limits);
}

RunResult run_accelerated(const MachineProgram& prog, const Configuration& start,
                          RunLimits limits) {
    limits.accelerate = true;
    return run(prog, start, limits);
}

bool is_online_run(const Trace& trace) {
    if (!trace.stop_index.has_value())
        throw std::invalid_argument("is_online_run: trace never consumed the stop marker");
    for (std::size_t i = *trace.stop_index; i < trace.steps.size(); ++i) {
        if (i == 0) continue;
        if (trace.steps[i].config.c != trace.steps[i - 1].config.c) return false;
    }
    return true;
}

}  // namespace clinger
