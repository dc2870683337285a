#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clinger/vm.hpp"

namespace clinger {

enum class StageBoundary {
    INITIAL,
    ZERO_COUNTER,
    HALT,
    INPUT_EXHAUSTED,
    STEP_LIMIT,
    FAULT
};

/// A maximal trace segment whose interior keeps both counters positive.
/// Consecutive stages share their boundary configuration.
struct StageRecord {
    std::size_t start_step = 0;
    std::size_t end_step = 0;
    Configuration start_config;
    Configuration end_config;
    StageBoundary start_kind = StageBoundary::INITIAL;
    StageBoundary end_kind = StageBoundary::HALT;
};

// Contiguous, exhaustive partition of a counter-machine trace at
// zero-counter events; the last stage ends with whatever ended the run.
std::vector<StageRecord> segment_stages(const Trace& trace, RunStatus status);

/// Behaviour of a program from a configuration with both counters large:
/// either it halts within s steps with bounded per-counter residues, or it
/// enters a loop with fixed per-cycle counter deltas.
struct LoopSummary {
    enum class Kind { CYCLE, STRAIGHT_LINE, INCONCLUSIVE };
    Kind kind = Kind::INCONCLUSIVE;
    // CYCLE
    unsigned long long entry_length = 0;  // steps before the loop head recurs
    unsigned long long cycle_length = 0;
    long delta1 = 0;
    long delta2 = 0;
    int loop_head_pc = -1;
    // STRAIGHT_LINE
    long residue1 = 0;
    long residue2 = 0;
    std::string note;
};

// Requires both start counters > s+1 (s = state count). Detection keys on
// repeated program position at equal input cursor; counter values change
// monotonically inside the loop and are not part of the key.
LoopSummary extract_loop(const MachineProgram& prog, const Configuration& start,
                         unsigned long long budget = 1u << 20);

struct StageEndPrediction {
    bool predicted = false;
    std::string refusal;  // set when the side conditions fail
    Configuration config;
    Int steps = 0;
    long observed_residue1 = 0;  // against the pure-delta extrapolation
    long observed_residue2 = 0;
};

// First configuration with an empty counter (or the halt configuration),
// reached from `start` by running the summary's loop in whole cycles and
// stepping the entry and boundary regions; exact, never a guess. Refuses
// when the summary does not apply or a counter is too small.
StageEndPrediction predict_stage_end(const MachineProgram& prog,
                                     const LoopSummary& summary,
                                     const Configuration& start);

/// m_out = P * floor(m_in / Q) + R for start configurations in an
/// arithmetic progression (one counter zero, the other varying by D).
struct AffineStageMap {
    Int P = 1;
    Int Q = 1;
    Int R = 0;
    Int D = 1;
};

struct AffineFitResult {
    bool consistent = false;
    std::string detail;
    AffineStageMap map;
    std::vector<Int> inputs;
    std::vector<Int> outputs;
};

// Fits the map on the first half of the family and verifies it on the rest;
// an inconsistent family is reported, never silently approximated.
// Family members start at `start`; member i sets the nonzero counter to
// base + i*step. Every member must halt and march through the same stage
// states.
AffineFitResult fit_affine_map(const MachineProgram& prog, int which_counter,
                               const Int& base, const Int& step, unsigned count);

}  // namespace clinger
