#include "clinger/machine.hpp"

#include <map>
#include <set>
#include <sstream>

#include "asm_common.hpp"

namespace clinger {

using asm_detail::AsmLine;
using asm_detail::lower;
using asm_detail::parse_long;

std::string class_name(MachineClass cls) {
    switch (cls) {
        case MachineClass::TCM: return "TCM";
        case MachineClass::TCMI: return "TCMI";
        case MachineClass::MP1RM: return "MP1RM";
        case MachineClass::MP1RMI: return "MP1RMI";
    }
    return "?";
}

namespace {

struct Fixup {
    std::size_t instr;
    enum Field { TARGET, DISPATCH, ARM } field;
    std::size_t slot;
    std::string name;
    int line;
};

int parse_counter(const std::string& tok, int line) {
    const std::string t = lower(tok);
    if (t == "c1") return 0;
    if (t == "c2") return 1;
    throw ParseError(line, "expected c1 or c2, got '" + tok + "'");
}

int parse_symbol(const std::string& tok, unsigned radix, int line) {
    if (lower(tok) == "stop") return kStopSymbol;
    long v = 0;
    if (!parse_long(tok, &v) || v < 0 || v >= static_cast<long>(radix))
        throw ParseError(line, "input symbol '" + tok + "' outside alphabet 0.." +
                                   std::to_string(radix - 1) + "/stop");
    return static_cast<int>(v);
}

}  // namespace

MachineProgram parse_program(const std::string& text) {
    const auto lines = asm_detail::split_lines(text);

    MachineProgram prog;
    bool have_class = false;
    std::map<std::string, std::size_t> label_at;
    std::vector<Fixup> fixups;
    bool open_wait = false;  // the previous instruction line was an `on` arm
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
        if (line.tokens.empty()) {  // label on a line of its own
            pending_labels.push_back(line.label);
            pending_line = line.number;
            continue;
        }
        const std::string& mnemonic = line.tokens[0];

        if (mnemonic == ".class" || mnemonic == ".alphabet") {
            if (!line.label.empty())
                throw ParseError(line.number, "directives cannot carry labels");
            if (!prog.code.empty())
                throw ParseError(line.number, "directives must precede instructions");
            if (line.tokens.size() != 2)
                throw ParseError(line.number, mnemonic + " takes one operand");
            if (mnemonic == ".class") {
                const std::string name = lower(line.tokens[1]);
                if (name == "tcm") prog.cls = MachineClass::TCM;
                else if (name == "tcmi") prog.cls = MachineClass::TCMI;
                else if (name == "mp1rm") prog.cls = MachineClass::MP1RM;
                else if (name == "mp1rmi") prog.cls = MachineClass::MP1RMI;
                else throw ParseError(line.number, "unknown machine class '" + line.tokens[1] + "'");
                have_class = true;
            } else {
                long v = 0;
                if (!parse_long(line.tokens[1], &v) || v < 2)
                    throw ParseError(line.number, "alphabet radix must be >= 2");
                prog.alphabet_radix = static_cast<unsigned>(v);
            }
            continue;
        }

        if (!have_class)
            throw ParseError(line.number, "missing .class header");

        const bool counter_cls = prog.counter_based();

        if (mnemonic == "on") {
            if (!prog.has_input())
                throw ParseError(line.number, "input branch in class " + class_name(prog.cls));
            if (prog.alphabet_radix == 0)
                throw ParseError(line.number, "wait state requires an .alphabet header");
            if (line.tokens.size() != 4 || lower(line.tokens[2]) != "goto")
                throw ParseError(line.number, "expected: on SYM goto LABEL");
            const int sym = parse_symbol(line.tokens[1], prog.alphabet_radix, line.number);

            if (open_wait && line.label.empty() && pending_labels.empty()) {
                Instruction& wait = prog.code.back();
                for (const auto& arm : wait.arms)
                    if (arm.first == sym)
                        throw ParseError(line.number, "duplicate wait arm for symbol '" +
                                                          line.tokens[1] + "'");
                wait.arms.emplace_back(sym, -1);
                fixups.push_back({prog.code.size() - 1, Fixup::ARM,
                                  wait.arms.size() - 1, line.tokens[3], line.number});
            } else {
                if (open_wait && (!line.label.empty() || !pending_labels.empty()))
                    throw ParseError(line.number, "label lands inside a wait state");
                Instruction wait;
                wait.op = OpCode::WAIT;
                wait.line = line.number;
                wait.arms.emplace_back(sym, -1);
                for (const auto& name : pending_labels)
                    define_label(name, prog.code.size(), line.number);
                pending_labels.clear();
                define_label(line.label, prog.code.size(), line.number);
                prog.code.push_back(std::move(wait));
                fixups.push_back({prog.code.size() - 1, Fixup::ARM, 0, line.tokens[3],
                                  line.number});
            }
            open_wait = true;
            continue;
        }
        open_wait = false;

        Instruction ins;
        ins.line = line.number;
        auto need = [&](std::size_t count) {
            if (line.tokens.size() != count + 1)
                throw ParseError(line.number,
                                 "'" + mnemonic + "' takes " + std::to_string(count) +
                                     " operand(s)");
        };
        auto counters_only = [&] {
            if (!counter_cls)
                throw ParseError(line.number, "counter instruction '" + mnemonic +
                                                  "' in class " + class_name(prog.cls));
        };
        auto register_only = [&] {
            if (counter_cls)
                throw ParseError(line.number, "register instruction '" + mnemonic +
                                                  "' in class " + class_name(prog.cls));
        };

        if (mnemonic == "inc" || mnemonic == "dec") {
            counters_only();
            need(1);
            ins.op = mnemonic == "inc" ? OpCode::INC : OpCode::DEC;
            ins.counter = parse_counter(line.tokens[1], line.number);
        } else if (mnemonic == "jz") {
            counters_only();
            need(2);
            ins.op = OpCode::JZ;
            ins.counter = parse_counter(line.tokens[1], line.number);
            fixups.push_back({prog.code.size(), Fixup::TARGET, 0, line.tokens[2],
                              line.number});
        } else if (mnemonic == "jmp") {
            need(1);
            ins.op = OpCode::JMP;
            fixups.push_back({prog.code.size(), Fixup::TARGET, 0, line.tokens[1],
                              line.number});
        } else if (mnemonic == "halt") {
            need(0);
            ins.op = OpCode::HALT;
        } else if (mnemonic == "add" || mnemonic == "mul") {
            register_only();
            need(1);
            ins.op = mnemonic == "add" ? OpCode::ADD : OpCode::MUL;
            if (!parse_long(line.tokens[1], &ins.k) || ins.k < 0)
                throw ParseError(line.number, "constant must be a natural number");
        } else if (mnemonic == "decjz") {
            register_only();
            need(1);
            ins.op = OpCode::DECJZ;
            fixups.push_back({prog.code.size(), Fixup::TARGET, 0, line.tokens[1],
                              line.number});
        } else if (mnemonic == "divmod") {
            register_only();
            ins.op = OpCode::DIVMOD;
            if (line.tokens.size() < 3)
                throw ParseError(line.number, "expected: divmod K L0 ... L(K-1)");
            if (!parse_long(line.tokens[1], &ins.k) || ins.k < 1)
                throw ParseError(line.number, "divmod constant must be >= 1");
            if (line.tokens.size() != 2 + static_cast<std::size_t>(ins.k))
                throw ParseError(line.number, "divmod " + std::to_string(ins.k) +
                                                  " needs exactly " +
                                                  std::to_string(ins.k) + " labels");
            ins.dispatch.assign(static_cast<std::size_t>(ins.k), -1);
            for (long i = 0; i < ins.k; ++i)
                fixups.push_back({prog.code.size(), Fixup::DISPATCH,
                                  static_cast<std::size_t>(i),
                                  line.tokens[2 + static_cast<std::size_t>(i)],
                                  line.number});
        } else {
            throw ParseError(line.number, "unknown mnemonic '" + mnemonic + "'");
        }

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
    if (prog.has_input() && prog.alphabet_radix == 0)
        throw ParseError(0, "class " + class_name(prog.cls) +
                                " requires an .alphabet header");
    prog.labels.resize(prog.code.size());

    for (const auto& fix : fixups) {
        const auto it = label_at.find(fix.name);
        if (it == label_at.end())
            throw ParseError(fix.line, "undefined label '" + fix.name + "'");
        const int target = static_cast<int>(it->second);
        Instruction& ins = prog.code[fix.instr];
        switch (fix.field) {
            case Fixup::TARGET: ins.target = target; break;
            case Fixup::DISPATCH: ins.dispatch[fix.slot] = target; break;
            case Fixup::ARM: ins.arms[fix.slot].second = target; break;
        }
    }

    // Wait states must cover the whole alphabet plus the stop marker.
    for (const auto& ins : prog.code) {
        if (ins.op != OpCode::WAIT) continue;
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

std::string emit_program(const MachineProgram& prog) {
    // Every jump target needs a printable name.
    std::vector<std::string> names = prog.labels;
    names.resize(prog.code.size());
    std::set<std::string> used(names.begin(), names.end());
    used.erase("");

    std::vector<bool> needed(prog.code.size() + 1, false);
    auto mark = [&](int target) {
        if (target >= 0) needed[static_cast<std::size_t>(target)] = true;
    };
    for (const auto& ins : prog.code) {
        mark(ins.target);
        for (int t : ins.dispatch) mark(t);
        for (const auto& arm : ins.arms) mark(arm.second);
    }
    for (std::size_t i = 0; i < prog.code.size(); ++i) {
        if (!needed[i] || !names[i].empty()) continue;
        std::string candidate = "L" + std::to_string(i);
        while (used.count(candidate)) candidate += "_";
        names[i] = candidate;
        used.insert(candidate);
    }

    auto name_of = [&](int target) -> std::string {
        return names[static_cast<std::size_t>(target)];
    };
    auto sym_name = [](int sym) {
        return sym == kStopSymbol ? std::string("stop") : std::to_string(sym);
    };

    std::ostringstream out;
    out << ".class " << class_name(prog.cls) << "\n";
    if (prog.alphabet_radix != 0) out << ".alphabet " << prog.alphabet_radix << "\n";

    for (std::size_t i = 0; i < prog.code.size(); ++i) {
        const Instruction& ins = prog.code[i];
        const std::string prefix =
            names[i].empty() ? std::string("        ") : names[i] + ": ";
        switch (ins.op) {
            case OpCode::INC:
                out << prefix << "inc c" << (ins.counter + 1) << "\n";
                break;
            case OpCode::DEC:
                out << prefix << "dec c" << (ins.counter + 1) << "\n";
                break;
            case OpCode::JZ:
                out << prefix << "jz c" << (ins.counter + 1) << " "
                    << name_of(ins.target) << "\n";
                break;
            case OpCode::JMP:
                out << prefix << "jmp " << name_of(ins.target) << "\n";
                break;
            case OpCode::HALT:
                out << prefix << "halt\n";
                break;
            case OpCode::ADD:
                out << prefix << "add " << ins.k << "\n";
                break;
            case OpCode::MUL:
                out << prefix << "mul " << ins.k << "\n";
                break;
            case OpCode::DECJZ:
                out << prefix << "decjz " << name_of(ins.target) << "\n";
                break;
            case OpCode::DIVMOD: {
                out << prefix << "divmod " << ins.k;
                for (int t : ins.dispatch) out << " " << name_of(t);
                out << "\n";
                break;
            }
            case OpCode::WAIT: {
                bool first = true;
                for (const auto& arm : ins.arms) {
                    out << (first ? prefix : std::string("        ")) << "on "
                        << sym_name(arm.first) << " goto " << name_of(arm.second)
                        << "\n";
                    first = false;
                }
                break;
            }
        }
    }
    return out.str();
}

}  // namespace clinger
