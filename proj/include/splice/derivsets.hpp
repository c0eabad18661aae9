#pragma once

#include <optional>

#include "splice/nfa.hpp"
#include "splice/rewrite.hpp"
#include "splice/ultimately_periodic.hpp"

namespace splice {

enum class LariatMode { OneStep, Parallel };

// NFA for the iterated bracketed-deletion closure of {w}: saturate state
// pairs with epsilon edges wherever a removable-pattern word labels a path,
// then eliminate epsilons; repeats until a fixpoint.
Nfa bracketed_closure_nfa(const AlphabetPtr& alphabet, const Word& w, const ContextSet& contexts,
                          bool greedy, size_t state_budget = kDefaultStateBudget);

// Same saturation applied to an arbitrary epsilon-free automaton.
Nfa regular_closure_bracketed(const Nfa& a, const ContextSet& contexts, bool greedy,
                              size_t state_budget = kDefaultStateBudget);

// NFA for the words reachable from w by lariat deletion: skip edges over the
// removable factors, with a phase bit enforcing at least one deletion.
// OneStep allows exactly one skip edge, Parallel any increasing sequence.
// include_source additionally accepts the unmodified word.
Nfa lariat_set_nfa(const Word& w, const LariatParams& params, LariatMode mode,
                   bool include_source = false);

// Does some word of the shape alpha x l theta(alpha x) z beta — with a stable
// hairpin, stem starting with alpha, |z| <= gap — label a path from p to q?
// Decided exactly for all three energy models via a synchronous stem walker
// over state pairs and the ultimately periodic walk-length sets.
bool hairpin_reachability(const Nfa& a, int p, int q, const Context& ctx,
                          const LariatParams& params, size_t state_budget = kDefaultStateBudget);

// Lariat deletion lifted to a regular language: deletion edges between all
// state pairs passing hairpin_reachability for some context, with the same
// phase construction as lariat_set_nfa.
Nfa regular_closure_lariat(const Nfa& a, const LariatParams& params, LariatMode mode,
                           bool include_source = false,
                           size_t state_budget = kDefaultStateBudget);

// Length bound within which a true Log-model reachability decision is
// expected to have a concrete witness word.
size_t log_witness_bound(int num_states, const Context& ctx, const LariatParams& params);

// Exhaustive bounded search for a witness word of the removable shape from p
// to q: enumerates hairpin decompositions through the pair graph, rebuilds
// explicit words, and certifies each against the direct decomposition test
// and a membership run before returning the shortest one within max_len.
std::optional<Word> lariat_witness_search(const Nfa& a, int p, int q, const Context& ctx,
                                          const LariatParams& params, size_t max_len,
                                          size_t state_budget = kDefaultStateBudget);

}  // namespace splice
