#pragma once

#include <cstdint>
#include <vector>

#include "splice/alphabet.hpp"
#include "splice/energy.hpp"

namespace splice {

// The deletion operations, in the variants the engine supports.
enum class DeletionKind {
    BracketedStep,
    BracketedStepGreedy,
    BracketedClosure,
    BracketedClosureGreedy,
    LariatOneStep,
    LariatParallel,
};

bool kind_is_greedy(DeletionKind k);
bool kind_is_lariat(DeletionKind k);

// Everything a lariat deletion depends on besides the word itself.
struct LariatParams {
    EnergyModel model;
    int64_t gap = 0;
    ContextSet contexts;
    Involution theta;
};

// One recorded deletion. `begin`/`end` index the word the step was applied
// to: the current word for sequential steps, the original word when several
// disjoint spans are removed at once.
struct DeletionEvent {
    size_t begin = 0;
    size_t end = 0;
    size_t context = 0;  // index into the ContextSet
};

struct DerivationTrace {
    std::vector<DeletionEvent> steps;
};

struct StepResult {
    Word word;
    DerivationTrace trace;
};

// A single-step removable factor w[begin..end) = alpha z beta.
struct BracketedSpan {
    size_t begin = 0;
    size_t end = 0;
    size_t context = 0;
};

// A lariat-removable factor w[begin..end) = alpha x l theta(alpha x) z beta,
// where the hairpin part is w[begin..hairpin_end).
struct LariatSpan {
    size_t begin = 0;
    size_t end = 0;
    size_t context = 0;
    size_t hairpin_end = 0;
};

// All factors alpha z beta removable in one bracketed step. In greedy mode
// beta must be the first occurrence after alpha is fully read: beta does not
// occur in z beta before its final position.
std::vector<BracketedSpan> bracketed_spans(const Word& w, const ContextSet& contexts, bool greedy);

// All factors removable in one lariat step: the span must decompose into a
// stable hairpin starting with alpha (stem at least |alpha|), a gap z with
// |z| <= params.gap, and a closing beta.
std::vector<LariatSpan> lariat_spans(const Word& w, const LariatParams& params);

// Words reachable by exactly one bracketed deletion, length-lex sorted and
// deduplicated; each keeps the first deriving deletion in scan order.
std::vector<StepResult> bracketed_step(const Word& w, const ContextSet& contexts, bool greedy);

// Reflexive-transitive closure of bracketed deletion (BFS to fixpoint).
// Includes w itself with an empty trace.
std::vector<StepResult> bracketed_closure(const Word& w, const ContextSet& contexts, bool greedy,
                                          size_t budget = 1u << 20);

// Words reachable by exactly one lariat deletion.
std::vector<StepResult> lariat_one_step(const Word& w, const LariatParams& params);

// Words reachable by removing one or more pairwise disjoint lariat factors
// in a single parallel step. The unmodified w is not included.
std::vector<StepResult> lariat_parallel(const Word& w, const LariatParams& params,
                                        size_t budget = 1u << 22);

// Remove pairwise disjoint spans (sorted by begin) from w.
Word remove_spans(const Word& w, const std::vector<std::pair<size_t, size_t>>& spans);

}  // namespace splice
