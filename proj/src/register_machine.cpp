#include "clinger/register_machine.hpp"

#include <climits>
#include <map>
#include <set>
#include <sstream>

#include "asm_common.hpp"

namespace clinger {

using asm_detail::AsmLine;
using asm_detail::lower;
using asm_detail::parse_long;

bool RegisterProgram::has_wait() const {
    for (const auto& ins : code)
        if (ins.op == RegOp::WAIT) return true;
    return false;
}

namespace {

int parse_register(const std::string& tok, int line) {
    const std::string t = lower(tok);
    long idx = 0;
    if (t.size() < 2 || t[0] != 'r' || !parse_long(t.substr(1), &idx) || idx < 1)
        throw ParseError(line, "expected a register r1, r2, ..., got '" + tok + "'");
    return static_cast<int>(idx - 1);
}

}  // namespace

RegisterProgram parse_register_program(const std::string& text) {
    const auto lines = asm_detail::split_lines(text);

    RegisterProgram prog;
    bool have_class = false;
    bool explicit_count = false;
    int max_reg = -1;
    std::map<std::string, std::size_t> label_at;
    struct Fixup {
        std::size_t instr;
        bool arm;
        std::size_t slot;
        std::string name;
        int line;
    };
    std::vector<Fixup> fixups;
    bool open_wait = false;
    std::vector<std::string> pending_labels;
    int pending_line = 0;

    auto define_label = [&](const std::string& name, std::size_t index, int line) {
        if (name.empty()) return;
        if (label_at.count(name))
            throw ParseError(line, "duplicate label '" + name + "'");
        label_at[name] = index;
        if (prog.labels.size() <= index) prog.labels.resize(index + 1);
        if (prog.labels[index].empty()) prog.labels[index] = name;
    };

    for (const auto& raw_line : lines) {
        AsmLine line = raw_line;
        if (line.tokens.empty()) {
            pending_labels.push_back(line.label);
            pending_line = line.number;
            continue;
        }
        const std::string& mnemonic = line.tokens[0];

        if (mnemonic == ".class" || mnemonic == ".alphabet" ||
            mnemonic == ".registers") {
            if (!line.label.empty())
                throw ParseError(line.number, "directives cannot carry labels");
            if (!prog.code.empty())
                throw ParseError(line.number, "directives must precede instructions");
            if (line.tokens.size() != 2)
                throw ParseError(line.number, mnemonic + " takes one operand");
            if (mnemonic == ".class") {
                if (lower(line.tokens[1]) != "reg")
                    throw ParseError(line.number,
                                     "expected .class REG, got '" + line.tokens[1] + "'");
                have_class = true;
            } else if (mnemonic == ".alphabet") {
                long v = 0;
                if (!parse_long(line.tokens[1], &v) || v < 2)
                    throw ParseError(line.number, "alphabet radix must be >= 2");
                prog.alphabet_radix = static_cast<unsigned>(v);
            } else {
                long v = 0;
                if (!parse_long(line.tokens[1], &v) || v < 1)
                    throw ParseError(line.number, "register count must be >= 1");
                prog.register_count = static_cast<unsigned>(v);
                explicit_count = true;
            }
            continue;
        }

        if (!have_class) throw ParseError(line.number, "missing .class header");

        if (mnemonic == "on") {
            if (prog.alphabet_radix == 0)
                throw ParseError(line.number, "wait state requires an .alphabet header");
            if (line.tokens.size() != 4 || lower(line.tokens[2]) != "goto")
                throw ParseError(line.number, "expected: on SYM goto LABEL");
            int sym;
            if (lower(line.tokens[1]) == "stop") {
                sym = kStopSymbol;
            } else {
                long v = 0;
                if (!parse_long(line.tokens[1], &v) || v < 0 ||
                    v >= static_cast<long>(prog.alphabet_radix))
                    throw ParseError(line.number, "input symbol '" + line.tokens[1] +
                                                      "' outside the alphabet");
                sym = static_cast<int>(v);
            }

            if (open_wait && line.label.empty() && pending_labels.empty()) {
                RegisterInstruction& wait = prog.code.back();
                for (const auto& arm : wait.arms)
                    if (arm.first == sym)
                        throw ParseError(line.number, "duplicate wait arm for symbol '" +
                                                          line.tokens[1] + "'");
                wait.arms.emplace_back(sym, -1);
                fixups.push_back({prog.code.size() - 1, true, wait.arms.size() - 1,
                                  line.tokens[3], line.number});
            } else {
                if (open_wait && (!line.label.empty() || !pending_labels.empty()))
                    throw ParseError(line.number, "label lands inside a wait state");
                RegisterInstruction wait;
                wait.op = RegOp::WAIT;
                wait.line = line.number;
                wait.arms.emplace_back(sym, -1);
                for (const auto& name : pending_labels)
                    define_label(name, prog.code.size(), line.number);
                pending_labels.clear();
                define_label(line.label, prog.code.size(), line.number);
                prog.code.push_back(std::move(wait));
                fixups.push_back({prog.code.size() - 1, true, 0, line.tokens[3],
                                  line.number});
            }
            open_wait = true;
            continue;
        }
        open_wait = false;

        RegisterInstruction ins;
        ins.line = line.number;
        auto need = [&](std::size_t count) {
            if (line.tokens.size() != count + 1)
                throw ParseError(line.number, "'" + mnemonic + "' takes " +
                                                  std::to_string(count) + " operand(s)");
        };

        if (mnemonic == "inc") {
            need(1);
            ins.op = RegOp::INC;
            ins.reg = parse_register(line.tokens[1], line.number);
        } else if (mnemonic == "decjz") {
            need(2);
            ins.op = RegOp::DECJZ;
            ins.reg = parse_register(line.tokens[1], line.number);
            fixups.push_back({prog.code.size(), false, 0, line.tokens[2], line.number});
        } else if (mnemonic == "jmp") {
            need(1);
            ins.op = RegOp::JMP;
            fixups.push_back({prog.code.size(), false, 0, line.tokens[1], line.number});
        } else if (mnemonic == "halt") {
            need(0);
            ins.op = RegOp::HALT;
        } else {
            throw ParseError(line.number, "unknown mnemonic '" + mnemonic + "'");
        }
        if (ins.reg > max_reg) max_reg = ins.reg;

        for (const auto& name : pending_labels)
            define_label(name, prog.code.size(), line.number);
        pending_labels.clear();
        define_label(line.label, prog.code.size(), line.number);
        prog.code.push_back(std::move(ins));
    }

    if (!have_class) throw ParseError(0, "missing .class header");
    if (!pending_labels.empty())
        throw ParseError(pending_line, "label '" + pending_labels.front() +
                                           "' does not precede an instruction");
    prog.labels.resize(prog.code.size());

    if (explicit_count) {
        if (max_reg >= static_cast<int>(prog.register_count))
            throw ParseError(0, "register r" + std::to_string(max_reg + 1) +
                                    " exceeds the declared count");
    } else {
        prog.register_count = static_cast<unsigned>(max_reg + 1);
    }
    if (prog.register_count == 0) prog.register_count = 1;

    for (const auto& fix : fixups) {
        const auto it = label_at.find(fix.name);
        if (it == label_at.end())
            throw ParseError(fix.line, "undefined label '" + fix.name + "'");
        const int target = static_cast<int>(it->second);
        if (fix.arm)
            prog.code[fix.instr].arms[fix.slot].second = target;
        else
            prog.code[fix.instr].target = target;
    }

    for (const auto& ins : prog.code) {
        if (ins.op != RegOp::WAIT) continue;
        std::set<int> seen;
        for (const auto& arm : ins.arms) seen.insert(arm.first);
        for (int sym = 0; sym < static_cast<int>(prog.alphabet_radix); ++sym)
            if (!seen.count(sym))
                throw ParseError(ins.line, "incomplete wait state: missing symbol " +
                                               std::to_string(sym));
        if (!seen.count(kStopSymbol))
            throw ParseError(ins.line, "incomplete wait state: missing stop arm");
    }

    return prog;
}

std::string emit_register_program(const RegisterProgram& prog) {
    std::vector<std::string> names = prog.labels;
    names.resize(prog.code.size());
    std::set<std::string> used(names.begin(), names.end());
    used.erase("");

    std::vector<bool> needed(prog.code.size() + 1, false);
    for (const auto& ins : prog.code) {
        if (ins.target >= 0) needed[static_cast<std::size_t>(ins.target)] = true;
        for (const auto& arm : ins.arms)
            if (arm.second >= 0) needed[static_cast<std::size_t>(arm.second)] = true;
    }
    for (std::size_t i = 0; i < prog.code.size(); ++i) {
        if (!needed[i] || !names[i].empty()) continue;
        std::string candidate = "L" + std::to_string(i);
        while (used.count(candidate)) candidate += "_";
        names[i] = candidate;
        used.insert(candidate);
    }
    auto name_of = [&](int t) { return names[static_cast<std::size_t>(t)]; };

    std::ostringstream out;
    out << ".class REG\n";
    out << ".registers " << prog.register_count << "\n";
    if (prog.alphabet_radix != 0) out << ".alphabet " << prog.alphabet_radix << "\n";
    for (std::size_t i = 0; i < prog.code.size(); ++i) {
        const RegisterInstruction& ins = prog.code[i];
        const std::string prefix =
            names[i].empty() ? std::string("        ") : names[i] + ": ";
        switch (ins.op) {
            case RegOp::INC:
                out << prefix << "inc r" << (ins.reg + 1) << "\n";
                break;
            case RegOp::DECJZ:
                out << prefix << "decjz r" << (ins.reg + 1) << " " << name_of(ins.target)
                    << "\n";
                break;
            case RegOp::JMP:
                out << prefix << "jmp " << name_of(ins.target) << "\n";
                break;
            case RegOp::HALT:
                out << prefix << "halt\n";
                break;
            case RegOp::WAIT: {
                bool first = true;
                for (const auto& arm : ins.arms) {
                    out << (first ? prefix : std::string("        ")) << "on "
                        << (arm.first == kStopSymbol ? std::string("stop")
                                                     : std::to_string(arm.first))
                        << " goto " << name_of(arm.second) << "\n";
                    first = false;
                }
                break;
            }
        }
    }
    return out.str();
}

namespace {

struct RegSnapshot {
    unsigned long long epoch = 0;
    unsigned long long step = 0;
    std::vector<Int> regs;
};

}  // namespace

RegisterRunResult run_register(const RegisterProgram& prog,
                               const std::vector<int>& input,
                               const RunLimits& limits, std::vector<Int> initial) {
    const bool wants_input = prog.has_wait();
    if (wants_input) {
        if (input.empty() || input.back() != kStopSymbol)
            throw std::invalid_argument("input must end with the stop marker");
        for (std::size_t i = 0; i + 1 < input.size(); ++i)
            if (input[i] < 0 || input[i] >= static_cast<int>(prog.alphabet_radix))
                throw std::invalid_argument("input symbol outside the alphabet");
    } else if (!input.empty()) {
        throw std::invalid_argument("program has no wait states but input was given");
    }

    RegisterRunResult out;
    out.registers.assign(prog.register_count, Int(0));
    for (std::size_t i = 0; i < initial.size() && i < out.registers.size(); ++i)
        out.registers[i] = std::move(initial[i]);

    std::vector<Int>& regs = out.registers;
    int pc = 0;
    std::size_t cursor = 0;

    const bool accel = limits.accelerate;
    const bool tracing = limits.record_trace && !limits.accelerate;
    const Int margin = static_cast<unsigned long>(prog.state_count());

    unsigned long long naive = 0;
    Int jumped = 0;
    auto naive_limit = [&]() -> unsigned long long {
        const Int remaining = limits.max_steps - jumped;
        if (remaining <= 0) return 0;
        if (!remaining.fits_ulong_p()) return ULLONG_MAX;
        return remaining.get_ui();
    };
    unsigned long long budget = naive_limit();

    bool stop_seen = false;
    bool changed_after_stop = false;

    std::vector<RegSnapshot> snaps(accel ? prog.code.size() : 0);
    unsigned long long epoch = 1;
    // naive-step stamp of the most recent zero test per register
    std::vector<unsigned long long> tested_at(prog.register_count, 0);

    if (tracing) out.trace.push_back({0, pc, regs, kNoSymbol});

    for (;;) {
        if (pc < 0 || pc >= static_cast<int>(prog.code.size())) {
            out.status = RunStatus::HALTED;
            break;
        }
        const RegisterInstruction& ins = prog.code[static_cast<std::size_t>(pc)];
        if (ins.op == RegOp::HALT) {
            out.status = RunStatus::HALTED;
            break;
        }
        if (ins.op == RegOp::WAIT && cursor >= input.size()) {
            out.status = RunStatus::INPUT_EXHAUSTED;
            break;
        }
        if (naive >= budget) {
            out.status = RunStatus::STEP_LIMIT;
            break;
        }

        if (accel) {
            RegSnapshot& snap = snaps[static_cast<std::size_t>(pc)];
            if (snap.epoch == epoch) {
                const unsigned long long cycle = naive - snap.step;
                // Only registers zero-tested inside the cycle constrain the
                // jump; untested registers are inc-only there.
                bool eligible = true;
                Int k = (limits.max_steps - jumped - static_cast<unsigned long>(naive)) / Int(static_cast<unsigned long>(cycle));
                for (unsigned r = 0; r < prog.register_count && eligible; ++r) {
                    if (tested_at[r] <= snap.step) continue;  // untested in cycle
                    if (regs[r] <= margin) {
                        eligible = false;
                        break;
                    }
                    const Int delta = regs[r] - snap.regs[r];
                    if (delta < 0) {
                        const Int cap = (regs[r] - margin - 1) / (-delta);
                        if (cap < k) k = cap;
                    }
                }
                if (eligible && k > 0) {
                    bool any_change = false;
                    for (unsigned r = 0; r < prog.register_count; ++r) {
                        const Int delta = regs[r] - snap.regs[r];
                        if (sgn(delta) != 0) {
                            regs[r] += k * delta;
                            any_change = true;
                        }
                    }
                    jumped += k * Int(static_cast<unsigned long>(cycle));
                    ++out.work_ops;
                    if (stop_seen && any_change) changed_after_stop = true;
                    ++epoch;
                    budget = naive_limit();
                    continue;
                }
            } else {
                snap.epoch = epoch;
                snap.step = naive;
                snap.regs = regs;
            }
        }

        int consumed = kNoSymbol;
        switch (ins.op) {
            case RegOp::INC:
                ++regs[static_cast<std::size_t>(ins.reg)];
                ++pc;
                if (stop_seen) changed_after_stop = true;
                break;
            case RegOp::DECJZ: {
                Int& r = regs[static_cast<std::size_t>(ins.reg)];
                tested_at[static_cast<std::size_t>(ins.reg)] = naive + 1;
                if (sgn(r) == 0) {
                    pc = ins.target;
                    ++epoch;  // zero branch invalidates recorded cycles
                } else {
                    --r;
                    ++pc;
                    if (stop_seen) changed_after_stop = true;
                }
                break;
            }
            case RegOp::JMP:
                pc = ins.target;
                break;
            case RegOp::WAIT: {
                const int sym = input[cursor];
                int target = -1;
                for (const auto& arm : ins.arms)
                    if (arm.first == sym) {
                        target = arm.second;
                        break;
                    }
                ++cursor;
                pc = target;
                consumed = sym;
                ++epoch;
                if (sym == kStopSymbol) stop_seen = true;
                break;
            }
            case RegOp::HALT:
                break;  // unreachable
        }

        ++naive;
        ++out.work_ops;
        if (tracing) out.trace.push_back({naive, pc, regs, consumed});
    }

    out.pc = pc;
    out.steps = jumped + Int(static_cast<unsigned long>(naive));
    if (stop_seen) out.online = !changed_after_stop;
    return out;
}

}  // namespace clinger
