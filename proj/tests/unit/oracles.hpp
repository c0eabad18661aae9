#pragma once

// Brute-force reference implementations used only by tests. Everything here
// is written directly from the operation definitions, with no shortcuts, so
// the library results can be checked against an independent computation.

#include <set>
#include <vector>

#include "splice/alphabet.hpp"
#include "splice/energy.hpp"
#include "splice/rewrite.hpp"

namespace splice::testing {

// Stability decided by explicit big-integer arithmetic (repeated squaring is
// deliberately avoided; plain repeated multiplication keeps it dead simple).
bool brute_stable(const EnergyModel& model, size_t stem, size_t loop);

// Is w[from..to) removable by one bracketed step? Tries every alpha/beta
// placement directly.
bool brute_bracketed_factor(const Word& w, size_t from, size_t to, const Context& ctx, bool greedy);

// Is u removable by one lariat step (as a complete factor)? Tries every stem
// length explicitly, not just the maximal one.
bool brute_lariat_factor(const Word& u, const Context& ctx, const EnergyModel& model, int64_t gap,
                         const Involution& theta);

std::set<Word> brute_bracketed_step(const Word& w, const ContextSet& contexts, bool greedy);
std::set<Word> brute_bracketed_closure(const Word& w, const ContextSet& contexts, bool greedy);
std::set<Word> brute_lariat_one_step(const Word& w, const LariatParams& params);
std::set<Word> brute_lariat_parallel(const Word& w, const LariatParams& params);

std::set<Word> result_words(const std::vector<StepResult>& results);

}  // namespace splice::testing
