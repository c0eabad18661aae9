#pragma once

#include <optional>
#include <vector>

#include "splice/derivsets.hpp"

namespace splice {

// An instance of the template problems: a finite target set R, a context set
// C, the deletion operation, and (depending on the problem) a candidate
// template or a length bound. For lariat operations `lariat` must be set and
// its context set must equal `contexts`.
struct ProblemInstance {
    AlphabetPtr alphabet;
    std::vector<Word> targets;
    ContextSet contexts;
    DeletionKind op = DeletionKind::BracketedClosure;
    std::optional<LariatParams> lariat;
    std::optional<Word> template_word;  // template verification
    std::optional<size_t> bound;        // bounded search

    static ProblemInstance bracketed(AlphabetPtr alphabet, std::vector<Word> targets,
                                     ContextSet contexts, DeletionKind op);
    static ProblemInstance lariat_op(AlphabetPtr alphabet, std::vector<Word> targets,
                                     LariatParams params, DeletionKind op);
};

// A shortest-common-supersequence-with-bound instance over a base alphabet.
struct ScseInstance {
    AlphabetPtr alphabet;
    std::vector<Word> words;
    size_t k = 0;
};

// Result of checking a fixed template against the target set.
struct VerifyResult {
    bool ok = false;
    std::vector<char> member;                           // per-target membership
    std::vector<std::optional<DerivationTrace>> traces; // per-target replay, when found
};

// Decide R ⊆ [t]_op. Membership is decided against the derivation-set
// automaton for closure and lariat kinds and against the exact one-step
// result set for the step kinds; traces are recovered by replaying the
// rewrite engine and may be absent when a replay budget runs out even though
// membership holds.
VerifyResult verify_template(const ProblemInstance& inst);

enum class ExactStatus {
    Found,             // the unique longest word generates exactly R
    AmbiguousLongest,  // two longest words of equal length: no template can exist
    MissingTarget,     // some target is not derivable from the candidate
    ExtraWord,         // the candidate derives a word outside R
};

struct ExactResult {
    ExactStatus status = ExactStatus::MissingTarget;
    std::optional<Word> template_word;   // set when status == Found
    std::optional<Word> counterexample;  // missing target / extra derived word
};

// Decide whether some t has [t]_op exactly R. Any such t must be the unique
// longest word of R (the closure is reflexive and deletions strictly
// shorten), so the check is: candidate uniqueness, R ⊆ [t] by membership,
// and [t] ⊆ R by emptiness of [t] ∩ complement(R). Valid only for the
// closure kinds: for the step and lariat kinds [t] need not contain t and
// the candidate argument breaks down, so those throw std::invalid_argument.
ExactResult exact_constructability(const ProblemInstance& inst);

enum class SearchStatus { Found, NoneWithinBound, BudgetExceeded };

struct SearchResult {
    SearchStatus status = SearchStatus::NoneWithinBound;
    std::optional<Word> template_word;
    size_t nodes = 0;  // explored search transitions, for reporting
};

constexpr size_t kDefaultSearchBudget = size_t{1} << 28;

// Complete bounded search for a template: some t with |t| ≤ k and R ⊆ [t]_op,
// or the certainty that none exists within the bound. Deepens over template
// lengths, extending candidates letter by letter while tracking, for every
// target, all ways the prefix could embed it: kept letters must follow the
// target in order, and every skipped stretch must be deletable. For
// single-letter contexts under iterated deletion, and for all step and
// lariat kinds, the deletable-stretch condition is tracked exactly;
// otherwise it relaxes to the subsequence condition and candidates are
// confirmed against the derivation-set automaton before being returned.
// The returned template has minimum length among all valid ones and is
// lexicographically least among those. Candidate letters are the letters
// occurring in R and C.
SearchResult constructability_search(const ProblemInstance& inst,
                                     size_t node_budget = kDefaultSearchBudget);

// Encode a supersequence instance as a bracketed template-search instance:
// each word maps to a run of #s·letter·#e blocks, C = {(#s, #e)}, and the
// length bound becomes 3k. The instance alphabet gains the two marker
// symbols after the base letters.
ProblemInstance scse_encode_bracketed(const ScseInstance& inst);

// Lariat variant: blocks are #s·letter·#e·#e, the involution swaps the
// markers and fixes base letters, and the gap bound is 0. Parallel deletion
// removes at least one factor, so a template must strictly contain every
// target; the length bound is therefore 4k + 3, leaving room for one
// removable three-letter #s#e#e block but never for a full extra
// letter-block. The energy model should keep single blocks deletable while
// forbidding wide hairpins; con(1), lin(1,1,0) and log(1,1,0) all do.
ProblemInstance scse_encode_lariat(const ScseInstance& inst, const EnergyModel& model);

// Exhaustive supersequence decision over words built from the letters of W.
bool scse_brute(const ScseInstance& inst, size_t budget = size_t{1} << 24);

}  // namespace splice
