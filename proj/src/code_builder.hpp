#pragma once

// Internal instruction-list builder with symbolic labels.

#include <string>
#include <vector>

#include "clinger/machine.hpp"

namespace clinger::build {

class CodeBuilder {
public:
    int fresh_label() {
        positions_.push_back(-1);
        return static_cast<int>(positions_.size()) - 1;
    }

    // Binds a label to the next emitted instruction.
    void place(int label) { positions_[static_cast<std::size_t>(label)] = next_pc(); }

    int placed_label(const std::string& name = "") {
        const int label = fresh_label();
        place(label);
        if (!name.empty()) pending_name_ = name;
        return label;
    }

    void name_next(const std::string& name) { pending_name_ = name; }

    void inc(int counter) { push(make(OpCode::INC, counter)); }
    void dec(int counter) { push(make(OpCode::DEC, counter)); }
    void jz(int counter, int label) {
        Instruction ins = make(OpCode::JZ, counter);
        push(ins, label);
    }
    void jmp(int label) { push(make(OpCode::JMP, 0), label); }
    void halt() { push(make(OpCode::HALT, 0)); }
    void wait(const std::vector<std::pair<int, int>>& arms_by_label) {
        Instruction ins = make(OpCode::WAIT, 0);
        for (const auto& [sym, label] : arms_by_label) {
            ins.arms.emplace_back(sym, -1);
            arm_fixups_.push_back(
                {static_cast<std::size_t>(next_pc()), ins.arms.size() - 1, label});
        }
        push_raw(std::move(ins));
    }

    MachineProgram finish(MachineClass cls, unsigned alphabet) {
        MachineProgram prog;
        prog.cls = cls;
        prog.alphabet_radix = alphabet;
        prog.code = std::move(code_);
        prog.labels = std::move(names_);
        prog.labels.resize(prog.code.size());
        for (const auto& [index, label] : target_fixups_)
            prog.code[index].target = resolve(label);
        for (const auto& fix : arm_fixups_)
            prog.code[fix.instr].arms[fix.slot].second = resolve(fix.label);
        return prog;
    }

private:
    struct ArmFixup {
        std::size_t instr;
        std::size_t slot;
        int label;
    };

    int next_pc() const { return static_cast<int>(code_.size()); }

    static Instruction make(OpCode op, int counter) {
        Instruction ins;
        ins.op = op;
        ins.counter = counter;
        return ins;
    }

    int resolve(int label) const {
        const int pos = positions_[static_cast<std::size_t>(label)];
        if (pos < 0) throw std::logic_error("unplaced label in generated code");
        return pos;
    }

    void push_raw(Instruction ins) {
        names_.resize(code_.size() + 1);
        if (!pending_name_.empty()) {
            names_[code_.size()] = pending_name_;
            pending_name_.clear();
        }
        code_.push_back(std::move(ins));
    }

    void push(Instruction ins) { push_raw(std::move(ins)); }
    void push(Instruction ins, int label) {
        target_fixups_.emplace_back(code_.size(), label);
        push_raw(std::move(ins));
    }

    std::vector<Instruction> code_;
    std::vector<std::string> names_;
    std::vector<int> positions_;
    std::vector<std::pair<std::size_t, int>> target_fixups_;
    std::vector<ArmFixup> arm_fixups_;
    std::string pending_name_;
};

}  // namespace clinger::build
