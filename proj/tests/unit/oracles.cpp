#include "oracles.hpp"

#include <deque>
#include <gmpxx.h>

namespace splice::testing {
namespace {

Word erase_span(const Word& w, size_t from, size_t to) {
    Word out(w.begin(), w.begin() + static_cast<long>(from));
    out.insert(out.end(), w.begin() + static_cast<long>(to), w.end());
    return out;
}

}  // namespace

bool brute_stable(const EnergyModel& model, size_t stem, size_t loop) {
    switch (model.kind) {
        case ModelKind::Con:
            return static_cast<int64_t>(loop) <= model.c;
        case ModelKind::Lin:
            return model.d1 * static_cast<int64_t>(loop) - model.d2 * static_cast<int64_t>(stem) <=
                   model.d;
        case ModelKind::Log: {
            int64_t e = model.d + model.d2 * static_cast<int64_t>(stem);
            if (loop == 0) return model.d1 > 0 || e >= 0;
            mpz_class lhs = 1;
            for (int64_t i = 0; i < model.d1; ++i) lhs *= static_cast<unsigned long>(loop);
            if (e < 0) return lhs <= 0;
            mpz_class rhs = 1;
            for (int64_t i = 0; i < e; ++i) rhs *= 2;
            return lhs <= rhs;
        }
    }
    return false;
}

bool brute_bracketed_factor(const Word& w, size_t from, size_t to, const Context& ctx,
                            bool greedy) {
    const Word& alpha = ctx.left;
    const Word& beta = ctx.right;
    const size_t len = to - from;
    if (len < alpha.size() + beta.size()) return false;
    for (size_t i = 0; i < alpha.size(); ++i) {
        if (w[from + i] != alpha[i]) return false;
    }
    for (size_t i = 0; i < beta.size(); ++i) {
        if (w[to - beta.size() + i] != beta[i]) return false;
    }
    if (greedy && len > alpha.size() + beta.size()) {
        // beta may not occur inside the factor before its final position
        for (size_t s = alpha.size(); s + beta.size() + 1 <= len; ++s) {
            bool match = true;
            for (size_t i = 0; i < beta.size() && match; ++i) {
                if (w[from + s + i] != beta[i]) match = false;
            }
            if (match) return false;
        }
    }
    return true;
}

bool brute_lariat_factor(const Word& u, const Context& ctx, const EnergyModel& model, int64_t gap,
                         const Involution& theta) {
    const Word& alpha = ctx.left;
    const Word& beta = ctx.right;
    if (u.size() < beta.size()) return false;
    for (size_t i = 0; i < beta.size(); ++i) {
        if (u[u.size() - beta.size() + i] != beta[i]) return false;
    }
    for (int64_t zl = 0; zl <= gap; ++zl) {
        if (u.size() < beta.size() + static_cast<size_t>(zl)) break;
        size_t hlen = u.size() - beta.size() - static_cast<size_t>(zl);
        if (hlen < 2 * alpha.size()) continue;
        Word h(u.begin(), u.begin() + static_cast<long>(hlen));
        bool has_alpha = true;
        for (size_t i = 0; i < alpha.size() && has_alpha; ++i) {
            if (h[i] != alpha[i]) has_alpha = false;
        }
        if (!has_alpha) continue;
        for (size_t stem = alpha.size(); 2 * stem <= hlen; ++stem) {
            Word prefix(h.begin(), h.begin() + static_cast<long>(stem));
            Word suffix(h.end() - static_cast<long>(stem), h.end());
            if (theta(prefix) != suffix) continue;
            if (brute_stable(model, stem, hlen - 2 * stem)) return true;
        }
    }
    return false;
}

std::set<Word> brute_bracketed_step(const Word& w, const ContextSet& contexts, bool greedy) {
    std::set<Word> out;
    for (size_t from = 0; from <= w.size(); ++from) {
        for (size_t to = from; to <= w.size(); ++to) {
            for (size_t k = 0; k < contexts.size(); ++k) {
                if (brute_bracketed_factor(w, from, to, contexts[k], greedy)) {
                    out.insert(erase_span(w, from, to));
                }
            }
        }
    }
    return out;
}

std::set<Word> brute_bracketed_closure(const Word& w, const ContextSet& contexts, bool greedy) {
    std::set<Word> seen{w};
    std::deque<Word> queue{w};
    while (!queue.empty()) {
        Word cur = queue.front();
        queue.pop_front();
        for (const Word& next : brute_bracketed_step(cur, contexts, greedy)) {
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return seen;
}

std::set<Word> brute_lariat_one_step(const Word& w, const LariatParams& params) {
    std::set<Word> out;
    for (size_t from = 0; from <= w.size(); ++from) {
        for (size_t to = from; to <= w.size(); ++to) {
            Word factor(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(to));
            for (size_t k = 0; k < params.contexts.size(); ++k) {
                if (brute_lariat_factor(factor, params.contexts[k], params.model, params.gap,
                                        params.theta)) {
                    out.insert(erase_span(w, from, to));
                }
            }
        }
    }
    return out;
}

std::set<Word> brute_lariat_parallel(const Word& w, const LariatParams& params) {
    std::vector<std::pair<size_t, size_t>> spans;
    for (size_t from = 0; from <= w.size(); ++from) {
        for (size_t to = from; to <= w.size(); ++to) {
            Word factor(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(to));
            for (size_t k = 0; k < params.contexts.size(); ++k) {
                if (brute_lariat_factor(factor, params.contexts[k], params.model, params.gap,
                                        params.theta)) {
                    spans.push_back({from, to});
                    break;
                }
            }
        }
    }
    std::set<Word> out;
    bool any_empty = false;
    std::vector<std::pair<size_t, size_t>> proper;
    for (const auto& s : spans) {
        if (s.first == s.second) {
            any_empty = true;  // deleting an empty factor keeps w unchanged
        } else {
            proper.push_back(s);
        }
    }
    if (any_empty) out.insert(w);
    // suffix sets over proper spans only, with at least one deletion
    std::vector<std::set<Word>> suffix(w.size() + 1);
    for (size_t i = w.size() + 1; i-- > 0;) {
        if (i < w.size()) {
            for (const Word& v : suffix[i + 1]) {
                Word kept{w[i]};
                kept.insert(kept.end(), v.begin(), v.end());
                suffix[i].insert(kept);
            }
        }
        for (const auto& [a, b] : proper) {
            if (a != i) continue;
            suffix[i].insert(Word(w.begin() + static_cast<long>(b), w.end()));
            for (const Word& v : suffix[b]) suffix[i].insert(v);
        }
    }
    out.insert(suffix[0].begin(), suffix[0].end());
    return out;
}

std::set<Word> result_words(const std::vector<StepResult>& results) {
    std::set<Word> out;
    for (const auto& r : results) out.insert(r.word);
    return out;
}

}  // namespace splice::testing
