#include "clinger/analysis.hpp"

#include <map>

namespace clinger {

namespace {

StageBoundary boundary_from_status(RunStatus status) {
    switch (status) {
        case RunStatus::HALTED: return StageBoundary::HALT;
        case RunStatus::INPUT_EXHAUSTED: return StageBoundary::INPUT_EXHAUSTED;
        case RunStatus::STEP_LIMIT: return StageBoundary::STEP_LIMIT;
        case RunStatus::ZERO_DECREMENT_FAULT: return StageBoundary::FAULT;
    }
    return StageBoundary::HALT;
}

bool has_zero_counter(const Configuration& conf) {
    return sgn(conf.c[0]) == 0 || sgn(conf.c[1]) == 0;
}

}  // namespace

std::vector<StageRecord> segment_stages(const Trace& trace, RunStatus status) {
    if (trace.steps.empty())
        throw std::invalid_argument("segment_stages: empty trace");
    if (trace.cls == MachineClass::MP1RM || trace.cls == MachineClass::MP1RMI)
        throw std::invalid_argument("segment_stages: stages are a two-counter notion");

    const std::size_t last = trace.steps.size() - 1;
    std::vector<std::size_t> cuts;
    cuts.push_back(0);
    for (std::size_t i = 1; i < last; ++i)
        if (has_zero_counter(trace.steps[i].config)) cuts.push_back(i);
    cuts.push_back(last);

    std::vector<StageRecord> stages;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        StageRecord rec;
        rec.start_step = cuts[k];
        rec.end_step = cuts[k + 1];
        rec.start_config = trace.steps[cuts[k]].config;
        rec.end_config = trace.steps[cuts[k + 1]].config;
        rec.start_kind = k == 0 ? StageBoundary::INITIAL : StageBoundary::ZERO_COUNTER;
        rec.end_kind = k + 2 < cuts.size() ? StageBoundary::ZERO_COUNTER
                                           : boundary_from_status(status);
        stages.push_back(std::move(rec));
    }
    if (stages.empty()) {  // single-configuration trace
        StageRecord rec;
        rec.start_config = trace.steps[0].config;
        rec.end_config = trace.steps[0].config;
        rec.end_kind = boundary_from_status(status);
        stages.push_back(std::move(rec));
    }
    return stages;
}

LoopSummary extract_loop(const MachineProgram& prog, const Configuration& start,
                         unsigned long long budget) {
    if (!prog.counter_based())
        throw std::invalid_argument("extract_loop: counter classes only");
    const Int bound = static_cast<unsigned long>(prog.state_count() + 1);
    if (start.c[0] <= bound || start.c[1] <= bound)
        throw std::invalid_argument(
            "extract_loop: both counters must exceed the state count + 1");

    RunLimits limits;
    limits.max_steps = static_cast<unsigned long>(budget);
    const auto res = run(prog, start, limits);

    LoopSummary out;
    std::map<std::pair<int, std::size_t>, std::size_t> seen;
    for (std::size_t i = 0; i < res.trace.steps.size(); ++i) {
        const Configuration& conf = res.trace.steps[i].config;
        const auto key = std::make_pair(conf.pc, conf.cursor);
        const auto it = seen.find(key);
        if (it != seen.end()) {
            const Configuration& first = res.trace.steps[it->second].config;
            out.kind = LoopSummary::Kind::CYCLE;
            out.entry_length = res.trace.steps[it->second].step;
            out.cycle_length = res.trace.steps[i].step - out.entry_length;
            out.loop_head_pc = conf.pc;
            out.delta1 = Int(conf.c[0] - first.c[0]).get_si();
            out.delta2 = Int(conf.c[1] - first.c[1]).get_si();
            return out;
        }
        seen.emplace(key, i);
    }

    if (res.status == RunStatus::HALTED) {
        out.kind = LoopSummary::Kind::STRAIGHT_LINE;
        out.residue1 = Int(res.final_config.c[0] - start.c[0]).get_si();
        out.residue2 = Int(res.final_config.c[1] - start.c[1]).get_si();
        return out;
    }
    out.kind = LoopSummary::Kind::INCONCLUSIVE;
    out.note = "no repeated state and no halt within the budget";
    return out;
}

StageEndPrediction predict_stage_end(const MachineProgram& prog,
                                     const LoopSummary& summary,
                                     const Configuration& start) {
    StageEndPrediction out;
    if (!prog.counter_based())
        throw std::invalid_argument("predict_stage_end: counter classes only");

    const Int bound = static_cast<unsigned long>(prog.state_count() + 1);
    if (summary.kind == LoopSummary::Kind::INCONCLUSIVE) {
        out.refusal = "loop summary is inconclusive";
        return out;
    }
    if (start.c[0] <= bound || start.c[1] <= bound) {
        out.refusal = "start counters must exceed the state count + 1";
        return out;
    }

    if (summary.kind == LoopSummary::Kind::STRAIGHT_LINE) {
        RunLimits limits;
        limits.max_steps = static_cast<unsigned long>(prog.state_count() + 2);
        const auto res = run(prog, start, limits);
        if (res.status != RunStatus::HALTED) {
            out.refusal = "straight-line summary did not halt from this start";
            return out;
        }
        out.predicted = true;
        out.config = res.final_config;
        out.steps = res.steps;
        return out;
    }

    if (summary.delta1 >= 0 && summary.delta2 >= 0) {
        out.refusal = "cycle never empties a counter";
        return out;
    }

    // Whole-cycle fast-forward with naive entry and boundary regions; the
    // first zero-counter configuration is observed, not extrapolated.
    RunLimits limits;
    limits.accelerate = true;
    limits.record_zero_events = true;
    limits.record_trace = false;
    const auto res = run(prog, start, limits);
    if (res.zero_events.empty()) {
        if (res.status == RunStatus::HALTED) {
            out.predicted = true;
            out.config = res.final_config;
            out.steps = res.steps;
            return out;
        }
        out.refusal = "no zero-counter configuration was reached";
        return out;
    }
    out.predicted = true;
    out.config = res.zero_events.front();
    out.steps = res.steps;

    // Residues relative to the pure-delta extrapolation, for bound checks.
    const int drained = out.config.c[0] <= out.config.c[1] ? 0 : 1;
    const int survivor = 1 - drained;
    const long deltas[2] = {summary.delta1, summary.delta2};
    if (deltas[drained] < 0) {
        const Int cycles = start.c[drained] / static_cast<unsigned long>(-deltas[drained]);
        const Int extrapolated =
            start.c[survivor] + deltas[survivor] * cycles;
        const Int r = out.config.c[survivor] - extrapolated;
        if (survivor == 0)
            out.observed_residue1 = r.fits_slong_p() ? r.get_si() : 0;
        else
            out.observed_residue2 = r.fits_slong_p() ? r.get_si() : 0;
    }
    return out;
}

AffineFitResult fit_affine_map(const MachineProgram& prog, int which_counter,
                               const Int& base, const Int& step, unsigned count) {
    AffineFitResult out;
    if (!prog.counter_based())
        throw std::invalid_argument("fit_affine_map: counter classes only");
    if (which_counter < 0 || which_counter > 1)
        throw std::invalid_argument("fit_affine_map: counter index must be 0 or 1");
    if (count < 4) {
        out.detail = "need at least 4 family members";
        return out;
    }
    if (step < 1 || base < 1) {
        out.detail = "family base and step must be positive";
        return out;
    }

    // Run every member; members must halt and share their stage states.
    std::vector<std::vector<int>> signatures;
    for (unsigned i = 0; i < count; ++i) {
        Configuration start;
        start.c[static_cast<std::size_t>(which_counter)] = base + Int(i) * step;
        RunLimits limits;
        limits.accelerate = true;
        limits.record_zero_events = true;
        limits.record_trace = false;
        const auto res = run(prog, start, limits);
        if (res.status != RunStatus::HALTED) {
            out.detail = "family member " + std::to_string(i) + " did not halt";
            return out;
        }
        std::vector<int> sig;
        for (const auto& conf : res.zero_events) sig.push_back(conf.pc);
        sig.push_back(res.final_config.pc);
        signatures.push_back(std::move(sig));
        out.inputs.push_back(start.c[static_cast<std::size_t>(which_counter)]);
        out.outputs.push_back(res.final_config.max_counter());
    }
    for (unsigned i = 1; i < count; ++i)
        if (signatures[i] != signatures[0]) {
            out.detail = "family members do not share a stage-state sequence";
            return out;
        }

    const unsigned fit_count = count / 2 < 2 ? 2 : count / 2;

    // Outputs must be arithmetic over the progression.
    const Int dy = out.outputs[1] - out.outputs[0];
    for (unsigned i = 1; i < fit_count; ++i)
        if (out.outputs[i] - out.outputs[i - 1] != dy) {
            out.detail = "outputs are not arithmetic over the family";
            return out;
        }

    // Q must divide the progression step, else floor(x/Q) does not advance
    // uniformly and no single map can reproduce the family.
    for (Int q = 1; q <= step; ++q) {
        if (step % q != 0) continue;
        const Int scaled = dy * q;
        if (scaled % step != 0) continue;
        AffineStageMap map;
        map.Q = q;
        map.P = scaled / step;
        map.R = out.outputs[0] - map.P * (out.inputs[0] / q);
        map.D = step;
        bool valid = true;
        for (unsigned i = 0; i < count && valid; ++i)
            valid = out.outputs[i] == map.P * (out.inputs[i] / map.Q) + map.R;
        if (valid) {
            out.consistent = true;
            out.map = map;
            return out;
        }
    }
    out.detail = "no divisor of the step reproduces the outputs";
    return out;
}

}  // namespace clinger
