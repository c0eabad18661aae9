#include "splice/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

namespace splice {

bool kind_is_greedy(DeletionKind k) {
    return k == DeletionKind::BracketedStepGreedy || k == DeletionKind::BracketedClosureGreedy;
}

bool kind_is_lariat(DeletionKind k) {
    return k == DeletionKind::LariatOneStep || k == DeletionKind::LariatParallel;
}

Word remove_spans(const Word& w, const std::vector<std::pair<size_t, size_t>>& spans) {
    Word out;
    out.reserve(w.size());
    size_t pos = 0;
    for (auto [b, e] : spans) {
        for (size_t i = pos; i < b; ++i) out.push_back(w[i]);
        pos = e;
    }
    for (size_t i = pos; i < w.size(); ++i) out.push_back(w[i]);
    return out;
}

std::vector<BracketedSpan> bracketed_spans(const Word& w, const ContextSet& contexts, bool greedy) {
    std::vector<BracketedSpan> spans;
    for (size_t k = 0; k < contexts.size(); ++k) {
        const Word& alpha = contexts[k].left;
        const Word& beta = contexts[k].right;
        auto alphas = factor_occurrences(w, alpha);
        auto betas = factor_occurrences(w, beta);
        for (size_t i : alphas) {
            size_t z_start = i + alpha.size();
            for (size_t j : betas) {
                if (j < z_start) continue;
                // greedy: no occurrence of beta strictly inside z beta
                if (greedy && j > z_start && occurs_within(w, beta, z_start, j - 1 + beta.size())) continue;
                spans.push_back({i, j + beta.size(), k});
                if (greedy) break;  // occurrences ascend, the first match is the only one
            }
        }
    }
    std::sort(spans.begin(), spans.end(), [](const BracketedSpan& a, const BracketedSpan& b) {
        return std::tie(a.begin, a.end, a.context) < std::tie(b.begin, b.end, b.context);
    });
    return spans;
}

std::vector<LariatSpan> lariat_spans(const Word& w, const LariatParams& params) {
    const ContextSet& contexts = params.contexts;
    std::vector<LariatSpan> spans;
    size_t gap = params.gap < 0 ? 0 : static_cast<size_t>(params.gap);
    for (size_t k = 0; k < contexts.size(); ++k) {
        const Word& alpha = contexts[k].left;
        const Word& beta = contexts[k].right;
        auto alphas = factor_occurrences(w, alpha);
        auto betas = factor_occurrences(w, beta);
        for (size_t a : alphas) {
            for (size_t b : betas) {
                if (b < a) continue;
                size_t h_lo = b > gap ? std::max(a, b - gap) : a;
                for (size_t h_end = h_lo; h_end <= b; ++h_end) {
                    Word h(w.begin() + static_cast<ptrdiff_t>(a), w.begin() + static_cast<ptrdiff_t>(h_end));
                    if (is_stable_hairpin(h, params.model, params.theta, alpha.size()))
                        spans.push_back({a, b + beta.size(), k, h_end});
                }
            }
        }
    }
    std::sort(spans.begin(), spans.end(), [](const LariatSpan& a, const LariatSpan& b) {
        return std::tie(a.begin, a.end, a.context, a.hairpin_end) <
               std::tie(b.begin, b.end, b.context, b.hairpin_end);
    });
    // several contexts or stem splits may justify the same span; keep the first
    spans.erase(std::unique(spans.begin(), spans.end(),
                            [](const LariatSpan& a, const LariatSpan& b) {
                                return a.begin == b.begin && a.end == b.end;
                            }),
                spans.end());
    return spans;
}

namespace {

std::vector<StepResult> finalize(std::map<Word, DerivationTrace, decltype(&length_lex_less)>&& found) {
    std::vector<StepResult> out;
    out.reserve(found.size());
    for (auto& [word, trace] : found) out.push_back({word, std::move(trace)});
    return out;
}

template <typename Span>
std::vector<StepResult> one_step_results(const Word& w, const std::vector<Span>& spans) {
    std::map<Word, DerivationTrace, decltype(&length_lex_less)> found(&length_lex_less);
    for (const Span& s : spans) {
        Word result = remove_spans(w, {{s.begin, s.end}});
        if (!found.count(result)) found.emplace(result, DerivationTrace{{{s.begin, s.end, s.context}}});
    }
    return finalize(std::move(found));
}

}  // namespace

std::vector<StepResult> bracketed_step(const Word& w, const ContextSet& contexts, bool greedy) {
    return one_step_results(w, bracketed_spans(w, contexts, greedy));
}

std::vector<StepResult> bracketed_closure(const Word& w, const ContextSet& contexts, bool greedy,
                                          size_t budget) {
    std::map<Word, DerivationTrace, decltype(&length_lex_less)> found(&length_lex_less);
    std::deque<Word> queue;
    found.emplace(w, DerivationTrace{});
    queue.push_back(w);
    while (!queue.empty()) {
        Word cur = std::move(queue.front());
        queue.pop_front();
        DerivationTrace base = found.at(cur);
        for (const StepResult& r : bracketed_step(cur, contexts, greedy)) {
            if (found.count(r.word)) continue;
            if (found.size() >= budget)
                throw ResourceError("bracketed closure exceeded the word budget");
            DerivationTrace t = base;
            t.steps.push_back(r.trace.steps.front());
            found.emplace(r.word, std::move(t));
            queue.push_back(r.word);
        }
    }
    return finalize(std::move(found));
}

std::vector<StepResult> lariat_one_step(const Word& w, const LariatParams& params) {
    return one_step_results(w, lariat_spans(w, params));
}

std::vector<StepResult> lariat_parallel(const Word& w, const LariatParams& params,
                                        size_t budget) {
    auto spans = lariat_spans(w, params);
    // Removing an empty factor never changes the word, so one such span makes
    // w itself a result and none of them need to enter the suffix walk below.
    std::optional<DeletionEvent> empty_span;
    std::vector<std::vector<LariatSpan>> by_start(w.size() + 1);
    for (const LariatSpan& s : spans) {
        if (s.begin == s.end) {
            if (!empty_span) empty_span = DeletionEvent{s.begin, s.end, s.context};
        } else {
            by_start[s.begin].push_back(s);
        }
    }

    // suffix[i] = every word derivable from w[i..) using at least one deleted
    // factor, with the first deriving trace; deduplication keeps the result
    // set (not the choice tree) as the size driver.
    using Results = std::map<Word, DerivationTrace, decltype(&length_lex_less)>;
    size_t entries = 0;
    std::vector<Results> suffix(w.size() + 1, Results(&length_lex_less));
    auto insert = [&](Results& into, Word word, DerivationTrace trace) {
        if (into.count(word)) return;
        if (++entries > budget)
            throw ResourceError("parallel lariat deletion exceeded the search budget");
        into.emplace(std::move(word), std::move(trace));
    };
    for (size_t i = w.size() + 1; i-- > 0;) {
        auto& results = suffix[i];
        if (i < w.size()) {
            for (const auto& [word, trace] : suffix[i + 1]) {
                Word kept{w[i]};
                kept.insert(kept.end(), word.begin(), word.end());
                insert(results, std::move(kept), trace);
            }
        }
        for (const LariatSpan& s : by_start[i]) {
            Word rest(w.begin() + static_cast<long>(s.end), w.end());
            insert(results, std::move(rest), DerivationTrace{{{s.begin, s.end, s.context}}});
            for (const auto& [word, trace] : suffix[s.end]) {
                DerivationTrace t{{{s.begin, s.end, s.context}}};
                t.steps.insert(t.steps.end(), trace.steps.begin(), trace.steps.end());
                insert(results, word, std::move(t));
            }
        }
    }
    auto found = std::move(suffix[0]);
    if (empty_span && !found.count(w)) found.emplace(w, DerivationTrace{{*empty_span}});
    return finalize(std::move(found));
}

}  // namespace splice
