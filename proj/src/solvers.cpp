#include "splice/solvers.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace splice {
namespace {

void require_word_over(const AlphabetPtr& alphabet, const Word& w, const char* what) {
    for (Letter a : w) {
        if (a < 0 || static_cast<size_t>(a) >= alphabet->size()) {
            throw std::invalid_argument(std::string(what) + " uses a letter outside the alphabet");
        }
    }
}

void validate_instance(const ProblemInstance& inst) {
    if (!inst.alphabet) throw std::invalid_argument("instance has no alphabet");
    if (inst.targets.empty()) throw std::invalid_argument("instance has no targets");
    for (const Word& w : inst.targets) require_word_over(inst.alphabet, w, "target");
    for (const Context& c : inst.contexts.items()) {
        require_word_over(inst.alphabet, c.left, "context");
        require_word_over(inst.alphabet, c.right, "context");
    }
    if (kind_is_lariat(inst.op)) {
        if (!inst.lariat) throw std::invalid_argument("lariat operation without lariat parameters");
        if (!(inst.lariat->contexts.items() == inst.contexts.items())) {
            throw std::invalid_argument("instance contexts differ from the lariat parameters");
        }
        if (!(*inst.lariat->theta.alphabet() == *inst.alphabet)) {
            throw std::invalid_argument("involution is over a different alphabet");
        }
    }
    if (inst.template_word) require_word_over(inst.alphabet, *inst.template_word, "template");
}

LariatMode mode_of(DeletionKind k) {
    return k == DeletionKind::LariatOneStep ? LariatMode::OneStep : LariatMode::Parallel;
}

// Membership in the derivation set of one fixed source word: the exact
// one-step result list for the step kinds, the derivation automaton
// otherwise.
class DerivedSet {
public:
    DerivedSet(const ProblemInstance& inst, const Word& t) {
        switch (inst.op) {
            case DeletionKind::BracketedStep:
            case DeletionKind::BracketedStepGreedy:
                for (auto& r : bracketed_step(t, inst.contexts, kind_is_greedy(inst.op))) {
                    words_.insert(std::move(r.word));
                }
                finite_ = true;
                break;
            case DeletionKind::BracketedClosure:
            case DeletionKind::BracketedClosureGreedy:
                nfa_.emplace(bracketed_closure_nfa(inst.alphabet, t, inst.contexts,
                                                   kind_is_greedy(inst.op)));
                break;
            case DeletionKind::LariatOneStep:
            case DeletionKind::LariatParallel:
                nfa_.emplace(lariat_set_nfa(t, *inst.lariat, mode_of(inst.op)));
                break;
        }
    }

    bool contains(const Word& w) const {
        if (finite_) return words_.count(w) > 0;
        return accepts(*nfa_, w);
    }

private:
    bool finite_ = false;
    std::set<Word> words_;
    std::optional<Nfa> nfa_;
};

// Derivations word -> trace from the rewrite engine. A budget overrun leaves
// the map partial; membership is decided elsewhere.
std::map<Word, DerivationTrace> replay_traces(const ProblemInstance& inst, const Word& t,
                                              bool& complete) {
    std::map<Word, DerivationTrace> out;
    complete = true;
    std::vector<StepResult> results;
    try {
        switch (inst.op) {
            case DeletionKind::BracketedStep:
            case DeletionKind::BracketedStepGreedy:
                results = bracketed_step(t, inst.contexts, kind_is_greedy(inst.op));
                break;
            case DeletionKind::BracketedClosure:
            case DeletionKind::BracketedClosureGreedy:
                results = bracketed_closure(t, inst.contexts, kind_is_greedy(inst.op));
                break;
            case DeletionKind::LariatOneStep:
                results = lariat_one_step(t, *inst.lariat);
                break;
            case DeletionKind::LariatParallel:
                results = lariat_parallel(t, *inst.lariat);
                break;
        }
    } catch (const ResourceError&) {
        complete = false;
    }
    for (auto& r : results) out.emplace(std::move(r.word), std::move(r.trace));
    return out;
}

}  // namespace

ProblemInstance ProblemInstance::bracketed(AlphabetPtr alphabet, std::vector<Word> targets,
                                           ContextSet contexts, DeletionKind op) {
    if (kind_is_lariat(op)) throw std::invalid_argument("bracketed instance with a lariat kind");
    ProblemInstance inst;
    inst.alphabet = std::move(alphabet);
    inst.targets = std::move(targets);
    inst.contexts = std::move(contexts);
    inst.op = op;
    return inst;
}

ProblemInstance ProblemInstance::lariat_op(AlphabetPtr alphabet, std::vector<Word> targets,
                                           LariatParams params, DeletionKind op) {
    if (!kind_is_lariat(op)) throw std::invalid_argument("lariat instance with a bracketed kind");
    ProblemInstance inst;
    inst.alphabet = std::move(alphabet);
    inst.targets = std::move(targets);
    inst.contexts = params.contexts;
    inst.op = op;
    inst.lariat = std::move(params);
    return inst;
}

VerifyResult verify_template(const ProblemInstance& inst) {
    validate_instance(inst);
    if (!inst.template_word) throw std::invalid_argument("verification without a template");
    const Word& t = *inst.template_word;

    DerivedSet derived(inst, t);
    bool replay_complete = false;
    auto traces = replay_traces(inst, t, replay_complete);

    VerifyResult res;
    res.ok = true;
    res.member.resize(inst.targets.size(), 0);
    res.traces.resize(inst.targets.size());
    for (size_t i = 0; i < inst.targets.size(); ++i) {
        const bool in = derived.contains(inst.targets[i]);
        res.member[i] = in ? 1 : 0;
        if (!in) res.ok = false;
        auto it = traces.find(inst.targets[i]);
        if (it != traces.end()) {
            if (!in) throw std::logic_error("rewrite replay contradicts the derivation set");
            res.traces[i] = it->second;
        } else if (in && replay_complete) {
            throw std::logic_error("derivation set accepts a word the rewrite engine cannot reach");
        }
    }
    return res;
}

ExactResult exact_constructability(const ProblemInstance& inst) {
    validate_instance(inst);
    if (inst.op != DeletionKind::BracketedClosure &&
        inst.op != DeletionKind::BracketedClosureGreedy) {
        throw std::invalid_argument("exact constructability needs an iterated bracketed kind");
    }

    std::vector<Word> targets = inst.targets;
    std::sort(targets.begin(), targets.end(), length_lex_less);
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    const size_t longest = targets.back().size();
    size_t at_longest = 0;
    for (const Word& w : targets) {
        if (w.size() == longest) ++at_longest;
    }
    if (at_longest > 1) return {ExactStatus::AmbiguousLongest, std::nullopt, std::nullopt};

    const Word& t = targets.back();
    Nfa closure = bracketed_closure_nfa(inst.alphabet, t, inst.contexts, kind_is_greedy(inst.op));
    for (const Word& w : targets) {
        if (!accepts(closure, w)) return {ExactStatus::MissingTarget, std::nullopt, w};
    }
    Nfa outside = product_intersect(closure, complement(finite_language_nfa(inst.alphabet, targets)));
    if (!is_empty(outside)) {
        std::vector<Word> extra = enumerate_language(outside, t.size());
        if (extra.empty()) throw std::logic_error("nonempty difference without a short witness");
        return {ExactStatus::ExtraWord, std::nullopt, std::move(extra.front())};
    }
    return {ExactStatus::Found, t, std::nullopt};
}

namespace {

// ---------------------------------------------------------------------------
// Bounded template search.
//
// Candidates are grown letter by letter, shortest length first and letters in
// ascending order, so the first hit is a shortest template and
// lexicographically least among those. For every target the search keeps the
// set of ways the candidate prefix could embed it: a progress pointer into
// the target plus the state of the current stretch of skipped letters, which
// must eventually be consumable by the deletion operation. Items are packed
// into one machine word; frontiers are sorted deduplicated vectors.
// ---------------------------------------------------------------------------

struct BudgetStop {};

struct SearchCounters {
    size_t nodes = 0;
    size_t budget = 0;

    void tick() {
        if (++nodes > budget) throw BudgetStop{};
    }
};

using Item = uint64_t;

// Exhaust the epsilon moves produced by `expand`, deduplicating via a seen
// set; leaves `items` sorted.
template <class F>
void saturate(std::vector<Item>& items, F&& expand) {
    std::set<Item> seen(items.begin(), items.end());
    std::vector<Item> work(seen.begin(), seen.end());
    while (!work.empty()) {
        Item it = work.back();
        work.pop_back();
        expand(it, [&](Item next) {
            if (seen.insert(next).second) work.push_back(next);
        });
    }
    items.assign(seen.begin(), seen.end());
}

// Iterated plain bracketed deletion with every context side at most one
// letter. A skipped stretch is erasable iff it splits into blocks
// alpha_i ... beta_i: a deletion step erases an innermost block, and any word
// erasable to nothing splits this way, because inserting a factor into an
// erasable word lands either inside a block interior (arbitrary) or between
// blocks (a new block). Item: p | phase, phase 0 between blocks, 1 + ctx
// inside block ctx.
class BlockTracker {
public:
    BlockTracker(const ContextSet& contexts, const Word& tau) : ctxs_(&contexts), tau_(&tau) {}

    static Item pack(size_t p, size_t phase) { return (static_cast<Item>(p) << 16) | phase; }
    static size_t item_p(Item it) { return static_cast<size_t>(it >> 16); }
    static size_t item_phase(Item it) { return static_cast<size_t>(it & 0xffff); }

    void init(std::vector<Item>& items, size_t total) const {
        items.assign(1, pack(0, 0));
        close(items, total);
    }

    void step(const std::vector<Item>& in, Letter c, const Word&, size_t, size_t remaining,
              std::vector<Item>& out) const {
        out.clear();
        for (Item it : in) {
            const size_t p = item_p(it);
            const size_t phase = item_phase(it);
            if (phase == 0) {
                if (p < tau_->size() && (*tau_)[p] == c) out.push_back(pack(p + 1, 0));
                for (size_t k = 0; k < ctxs_->size(); ++k) {
                    const Word& left = (*ctxs_)[k].left;
                    if (left.size() == 1 && left[0] == c) out.push_back(pack(p, 1 + k));
                }
            } else {
                out.push_back(it);  // block interiors absorb anything
                const Word& right = (*ctxs_)[phase - 1].right;
                if (right.size() == 1 && right[0] == c) out.push_back(pack(p, 0));
            }
        }
        close(out, remaining);
    }

    bool accepts(Item it) const { return item_p(it) == tau_->size() && item_phase(it) == 0; }

private:
    void close(std::vector<Item>& items, size_t remaining) const {
        saturate(items, [&](Item it, auto&& push) {
            const size_t p = item_p(it);
            const size_t phase = item_phase(it);
            if (phase == 0) {
                for (size_t k = 0; k < ctxs_->size(); ++k) {
                    if ((*ctxs_)[k].left.empty()) push(pack(p, 1 + k));
                }
            } else if ((*ctxs_)[phase - 1].right.empty()) {
                push(pack(p, 0));
            }
        });
        std::erase_if(items, [&](Item it) {
            size_t cost = tau_->size() - item_p(it);
            if (item_phase(it) != 0 && !(*ctxs_)[item_phase(it) - 1].right.empty()) cost += 1;
            return cost > remaining;
        });
    }

    const ContextSet* ctxs_;
    const Word* tau_;
};

// One bracketed deletion step. Phases: before the block, inside alpha,
// inside z, inside beta, after the block. In greedy mode a prefix-function
// monitor over beta kills any item whose stretch shows beta ending before
// the end of the block.
struct StepConfig {
    const ContextSet* ctxs = nullptr;
    bool greedy = false;
    std::vector<std::vector<size_t>> fail;  // per-context prefix function of beta
    bool empty_ok = false;                  // the empty factor is removable
    size_t min_block = SIZE_MAX;            // least letters a block must add

    StepConfig(const ContextSet& contexts, bool greedy_mode) : ctxs(&contexts), greedy(greedy_mode) {
        for (const Context& c : contexts.items()) {
            min_block = std::min(min_block, c.left.size() + c.right.size());
            if (c.left.empty() && c.right.empty()) empty_ok = true;
            const Word& b = c.right;
            std::vector<size_t> f(b.size() + 1, 0);
            for (size_t i = 1; i < b.size(); ++i) {
                size_t j = f[i];
                while (j > 0 && b[i] != b[j]) j = f[j];
                f[i + 1] = (b[i] == b[j]) ? j + 1 : 0;
            }
            fail.push_back(std::move(f));
        }
    }

    size_t kmp_step(size_t ctx, size_t state, Letter c) const {
        const Word& b = (*ctxs)[ctx].right;
        size_t j = state;
        while (j > 0 && (j == b.size() || b[j] != c)) j = fail[ctx][j];
        if (j < b.size() && b[j] == c) ++j;
        return j;
    }
};

class StepTracker {
public:
    enum Phase : size_t { Before = 0, Alpha = 1, Mid = 2, Beta = 3, After = 4 };

    StepTracker(const StepConfig& cfg, const Word& tau) : cfg_(&cfg), tau_(&tau) {}

    static Item pack(size_t p, size_t phase, size_t ctx, size_t j, size_t kmp) {
        return (static_cast<Item>(p) << 40) | (static_cast<Item>(phase) << 32) |
               (static_cast<Item>(ctx) << 24) | (static_cast<Item>(j) << 12) | kmp;
    }
    static size_t item_p(Item it) { return static_cast<size_t>(it >> 40); }
    static size_t item_phase(Item it) { return static_cast<size_t>((it >> 32) & 0xff); }
    static size_t item_ctx(Item it) { return static_cast<size_t>((it >> 24) & 0xff); }
    static size_t item_j(Item it) { return static_cast<size_t>((it >> 12) & 0xfff); }
    static size_t item_kmp(Item it) { return static_cast<size_t>(it & 0xfff); }

    void init(std::vector<Item>& items, size_t total) const {
        items.assign(1, pack(0, Before, 0, 0, 0));
        close(items, total);
    }

    void step(const std::vector<Item>& in, Letter c, const Word&, size_t, size_t remaining,
              std::vector<Item>& out) const {
        out.clear();
        for (Item it : in) {
            const size_t p = item_p(it);
            const size_t ctx = item_ctx(it);
            const size_t j = item_j(it);
            switch (item_phase(it)) {
                case Before:
                    if (p < tau_->size() && (*tau_)[p] == c) {
                        out.push_back(pack(p + 1, Before, 0, 0, 0));
                    }
                    break;
                case Alpha: {
                    const Word& a = (*cfg_->ctxs)[ctx].left;
                    if (j < a.size() && a[j] == c) out.push_back(pack(p, Alpha, ctx, j + 1, 0));
                    break;
                }
                case Mid:
                    if (cfg_->greedy) {
                        const size_t nk = cfg_->kmp_step(ctx, item_kmp(it), c);
                        if (nk == (*cfg_->ctxs)[ctx].right.size()) break;  // beta closed early
                        out.push_back(pack(p, Mid, ctx, 0, nk));
                    } else {
                        out.push_back(it);
                    }
                    break;
                case Beta: {
                    const Word& b = (*cfg_->ctxs)[ctx].right;
                    if (j < b.size() && b[j] == c) {
                        if (cfg_->greedy) {
                            const size_t nk = cfg_->kmp_step(ctx, item_kmp(it), c);
                            if (nk == b.size() && j + 1 < b.size()) break;
                            out.push_back(pack(p, Beta, ctx, j + 1, nk));
                        } else {
                            out.push_back(pack(p, Beta, ctx, j + 1, 0));
                        }
                    }
                    break;
                }
                case After:
                    if (p < tau_->size() && (*tau_)[p] == c) {
                        out.push_back(pack(p + 1, After, 0, 0, 0));
                    }
                    break;
            }
        }
        close(out, remaining);
    }

    bool accepts(Item it) const {
        if (item_p(it) != tau_->size()) return false;
        const size_t phase = item_phase(it);
        return phase == After || (phase == Before && cfg_->empty_ok);
    }

private:
    void close(std::vector<Item>& items, size_t remaining) const {
        saturate(items, [&](Item it, auto&& push) {
            const size_t p = item_p(it);
            const size_t ctx = item_ctx(it);
            switch (item_phase(it)) {
                case Before:
                    for (size_t k = 0; k < cfg_->ctxs->size(); ++k) {
                        push(pack(p, Alpha, k, 0, 0));
                    }
                    break;
                case Alpha:
                    if (item_j(it) == (*cfg_->ctxs)[ctx].left.size()) {
                        if (cfg_->greedy && (*cfg_->ctxs)[ctx].right.empty()) {
                            push(pack(p, Beta, ctx, 0, 0));  // greedy forces z to be empty
                        } else {
                            push(pack(p, Mid, ctx, 0, 0));
                        }
                    }
                    break;
                case Mid:
                    push(pack(p, Beta, ctx, 0, item_kmp(it)));
                    break;
                case Beta:
                    if (item_j(it) == (*cfg_->ctxs)[ctx].right.size()) {
                        push(pack(p, After, 0, 0, 0));
                    }
                    break;
                default:
                    break;
            }
        });
        std::erase_if(items, [&](Item it) {
            size_t cost = tau_->size() - item_p(it);
            const size_t ctx = item_ctx(it);
            switch (item_phase(it)) {
                case Before:
                    if (!cfg_->empty_ok) {
                        if (cfg_->min_block == SIZE_MAX) return true;
                        cost += cfg_->min_block;
                    }
                    break;
                case Alpha:
                    cost += (*cfg_->ctxs)[ctx].left.size() - item_j(it) +
                            (*cfg_->ctxs)[ctx].right.size();
                    break;
                case Mid:
                    cost += (*cfg_->ctxs)[ctx].right.size();
                    break;
                case Beta:
                    cost += (*cfg_->ctxs)[ctx].right.size() - item_j(it);
                    break;
                default:
                    break;
            }
            return cost > remaining;
        });
    }

    const StepConfig* cfg_;
    const Word* tau_;
};

// Lariat deletion, one-step or parallel. A skipped stretch must split into
// removable factors alpha x l theta(alpha x) z beta; the tracker walks each
// factor's phases, matching the mirror letterwise against the already built
// prefix through theta and bounding the loop by the exact per-stem
// threshold. Fields: target progress p, phase, context, stem start s, stem
// end ex, intra-phase progress j, and whether a factor has closed yet.
struct LariatConfig {
    const LariatParams* params = nullptr;
    bool one_step = false;
    bool empty_ok = false;
    size_t min_block = SIZE_MAX;
    std::vector<LoopBound> thresholds;  // indexed by stem length

    LariatConfig(const LariatParams& p, bool single, size_t max_len) : params(&p), one_step(single) {
        thresholds.reserve(max_len + 2);
        for (size_t s = 0; s <= max_len + 1; ++s) thresholds.push_back(loop_threshold(p.model, s));
        for (const Context& c : p.contexts.items()) {
            if (c.left.empty() && c.right.empty() && loop_admissible(p.model, 0, 0)) {
                empty_ok = true;
            }
            // least letters a factor with this context can occupy: grow the
            // stem past alpha until the empty loop becomes admissible
            for (size_t extra = 0; c.left.size() + extra <= max_len + 1; ++extra) {
                const size_t stem = c.left.size() + extra;
                if (loop_admissible(p.model, stem, 0)) {
                    min_block = std::min(min_block, 2 * stem + c.right.size());
                    break;
                }
            }
        }
    }

    bool loop_viable(size_t stem, size_t loop) const {
        const LoopBound& b = thresholds[stem];
        if (b.kind == LoopBound::Kind::None) return false;
        if (b.kind == LoopBound::Kind::Infinite) return true;
        return b.admits(loop);
    }
};

class LariatTracker {
public:
    enum Phase : size_t { Keep = 0, Alpha = 1, Stem = 2, Loop = 3, Mirror = 4, Gap = 5, Beta = 6 };

    LariatTracker(const LariatConfig& cfg, const Word& tau) : cfg_(&cfg), tau_(&tau) {}

    static Item pack(size_t p, size_t phase, size_t ctx, size_t s, size_t ex, size_t j,
                     size_t used) {
        return (static_cast<Item>(p) << 36) | (static_cast<Item>(phase) << 33) |
               (static_cast<Item>(ctx) << 25) | (static_cast<Item>(s) << 17) |
               (static_cast<Item>(ex) << 9) | (static_cast<Item>(j) << 1) | used;
    }
    static size_t item_p(Item it) { return static_cast<size_t>(it >> 36); }
    static size_t item_phase(Item it) { return static_cast<size_t>((it >> 33) & 0x7); }
    static size_t item_ctx(Item it) { return static_cast<size_t>((it >> 25) & 0xff); }
    static size_t item_s(Item it) { return static_cast<size_t>((it >> 17) & 0xff); }
    static size_t item_ex(Item it) { return static_cast<size_t>((it >> 9) & 0xff); }
    static size_t item_j(Item it) { return static_cast<size_t>((it >> 1) & 0xff); }
    static size_t item_used(Item it) { return static_cast<size_t>(it & 1); }

    void init(std::vector<Item>& items, size_t total) const {
        items.assign(1, pack(0, Keep, 0, 0, 0, 0, 0));
        close(items, 0, total);
    }

    void step(const std::vector<Item>& in, Letter c, const Word& path, size_t depth_after,
              size_t remaining, std::vector<Item>& out) const {
        const ContextSet& ctxs = cfg_->params->contexts;
        const Involution& theta = cfg_->params->theta;
        out.clear();
        for (Item it : in) {
            const size_t p = item_p(it);
            const size_t ctx = item_ctx(it);
            const size_t s = item_s(it);
            const size_t ex = item_ex(it);
            const size_t j = item_j(it);
            const size_t used = item_used(it);
            switch (item_phase(it)) {
                case Keep:
                    if (p < tau_->size() && (*tau_)[p] == c) {
                        out.push_back(pack(p + 1, Keep, 0, 0, 0, 0, used));
                    }
                    break;
                case Alpha: {
                    const Word& a = ctxs[ctx].left;
                    if (j < a.size() && a[j] == c) {
                        out.push_back(pack(p, Alpha, ctx, s, 0, j + 1, used));
                    }
                    break;
                }
                case Stem:
                    out.push_back(it);  // letter extends x
                    break;
                case Loop:
                    if (cfg_->loop_viable(ex - s, depth_after - ex)) out.push_back(it);
                    break;
                case Mirror:
                    if (j < ex - s && theta(path[ex - 1 - j]) == c) {
                        out.push_back(pack(p, Mirror, ctx, s, ex, j + 1, used));
                    }
                    break;
                case Gap:
                    if (j < static_cast<size_t>(std::max<int64_t>(cfg_->params->gap, 0))) {
                        out.push_back(pack(p, Gap, ctx, s, ex, j + 1, used));
                    }
                    break;
                case Beta: {
                    const Word& b = ctxs[ctx].right;
                    if (j < b.size() && b[j] == c) {
                        out.push_back(pack(p, Beta, ctx, s, ex, j + 1, used));
                    }
                    break;
                }
            }
        }
        close(out, depth_after, remaining);
    }

    bool accepts(Item it) const {
        return item_p(it) == tau_->size() && item_phase(it) == Keep &&
               (item_used(it) == 1 || cfg_->empty_ok);
    }

private:
    void close(std::vector<Item>& items, size_t depth, size_t remaining) const {
        const ContextSet& ctxs = cfg_->params->contexts;
        saturate(items, [&](Item it, auto&& push) {
            const size_t p = item_p(it);
            const size_t ctx = item_ctx(it);
            const size_t s = item_s(it);
            const size_t ex = item_ex(it);
            const size_t j = item_j(it);
            const size_t used = item_used(it);
            switch (item_phase(it)) {
                case Keep:
                    if (!(cfg_->one_step && used == 1)) {
                        for (size_t k = 0; k < ctxs.size(); ++k) {
                            push(pack(p, Alpha, k, depth, 0, 0, used));
                        }
                    }
                    break;
                case Alpha:
                    if (j == ctxs[ctx].left.size()) push(pack(p, Stem, ctx, s, 0, 0, used));
                    break;
                case Stem:
                    push(pack(p, Loop, ctx, s, depth, 0, used));
                    break;
                case Loop:
                    if (loop_admissible(cfg_->params->model, ex - s, depth - ex)) {
                        push(pack(p, Mirror, ctx, s, ex, 0, used));
                    }
                    break;
                case Mirror:
                    if (j == ex - s) push(pack(p, Gap, ctx, s, ex, 0, used));
                    break;
                case Gap:
                    push(pack(p, Beta, ctx, s, ex, 0, used));
                    break;
                case Beta:
                    if (j == ctxs[ctx].right.size()) push(pack(p, Keep, 0, 0, 0, 0, 1));
                    break;
            }
        });
        std::erase_if(items, [&](Item it) {
            size_t cost = tau_->size() - item_p(it);
            const size_t ctx = item_ctx(it);
            const size_t s = item_s(it);
            const size_t ex = item_ex(it);
            const size_t j = item_j(it);
            switch (item_phase(it)) {
                case Keep:
                    if (item_used(it) == 0 && !cfg_->empty_ok) {
                        if (cfg_->min_block == SIZE_MAX) return true;
                        cost += cfg_->min_block;
                    }
                    break;
                case Alpha:
                    // the mirror will repeat at least all of alpha
                    cost += ctxs[ctx].left.size() - j + ctxs[ctx].left.size() +
                            ctxs[ctx].right.size();
                    break;
                case Stem:
                    cost += (depth - s) + ctxs[ctx].right.size();
                    break;
                case Loop:
                    cost += (ex - s) + ctxs[ctx].right.size();
                    break;
                case Mirror:
                    cost += (ex - s - j) + ctxs[ctx].right.size();
                    break;
                case Gap:
                    cost += ctxs[ctx].right.size();
                    break;
                case Beta:
                    cost += ctxs[ctx].right.size() - j;
                    break;
            }
            return cost > remaining;
        });
    }

    const LariatConfig* cfg_;
    const Word* tau_;
};

// Subsequence-only tracking for the kinds without an exact stretch
// automaton; full-length candidates are confirmed against the derivation set
// before acceptance.
class LooseTracker {
public:
    explicit LooseTracker(const Word& tau) : tau_(&tau) {}

    void init(std::vector<Item>& items, size_t total) const {
        items.clear();
        if (tau_->size() <= total) items.push_back(0);
    }

    void step(const std::vector<Item>& in, Letter c, const Word&, size_t, size_t remaining,
              std::vector<Item>& out) const {
        out.clear();
        if (in.empty()) return;
        size_t p = static_cast<size_t>(in.back());
        if (p < tau_->size() && (*tau_)[p] == c) ++p;
        if (tau_->size() - p <= remaining) out.push_back(p);
    }

    bool accepts(Item it) const { return static_cast<size_t>(it) == tau_->size(); }

private:
    const Word* tau_;
};

std::vector<Letter> candidate_letters(const ProblemInstance& inst) {
    std::set<Letter> pool;
    for (const Word& w : inst.targets) pool.insert(w.begin(), w.end());
    for (const Context& c : inst.contexts.items()) {
        pool.insert(c.left.begin(), c.left.end());
        pool.insert(c.right.begin(), c.right.end());
    }
    if (inst.lariat) {
        // mirror parts are written through theta, so close the pool under it
        std::set<Letter> closed = pool;
        for (Letter a : pool) closed.insert(inst.lariat->theta(a));
        pool = std::move(closed);
    }
    return {pool.begin(), pool.end()};
}

template <class Tracker>
SearchResult run_search(const ProblemInstance& inst, const std::vector<Tracker>& trackers,
                        bool confirm_decides, size_t node_budget) {
    const size_t k = *inst.bound;
    size_t low = 0;
    for (const Word& w : inst.targets) low = std::max(low, w.size());

    const std::vector<Letter> pool = candidate_letters(inst);
    const size_t n = trackers.size();
    SearchCounters counters{0, node_budget};

    Word path;
    std::vector<std::vector<std::vector<Item>>> frontiers;  // [depth][target]

    auto leaf_valid = [&]() -> bool {
        for (size_t i = 0; i < n; ++i) {
            bool any = false;
            for (Item it : frontiers[path.size()][i]) {
                if (trackers[i].accepts(it)) {
                    any = true;
                    break;
                }
            }
            if (!any) return false;
        }
        DerivedSet derived(inst, path);
        for (const Word& w : inst.targets) {
            if (!derived.contains(w)) {
                if (!confirm_decides) {
                    throw std::logic_error("search tracker accepted an invalid template");
                }
                return false;
            }
        }
        return true;
    };

    try {
        for (size_t L = low; L <= k; ++L) {
            frontiers.assign(L + 1, std::vector<std::vector<Item>>(n));
            bool alive = true;
            for (size_t i = 0; i < n; ++i) {
                trackers[i].init(frontiers[0][i], L);
                if (frontiers[0][i].empty()) alive = false;
            }
            if (!alive) continue;
            path.clear();

            auto dfs = [&](auto&& self, size_t d) -> bool {
                if (d == L) return leaf_valid();
                const size_t remaining = L - d - 1;
                for (Letter c : pool) {
                    path.push_back(c);
                    bool ok = true;
                    for (size_t i = 0; i < n; ++i) {
                        counters.tick();
                        trackers[i].step(frontiers[d][i], c, path, d + 1, remaining,
                                         frontiers[d + 1][i]);
                        if (frontiers[d + 1][i].empty()) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok && self(self, d + 1)) return true;
                    path.pop_back();
                }
                return false;
            };
            if (dfs(dfs, 0)) {
                return {SearchStatus::Found, path, counters.nodes};
            }
        }
    } catch (const BudgetStop&) {
        return {SearchStatus::BudgetExceeded, std::nullopt, counters.nodes};
    } catch (const ResourceError&) {
        return {SearchStatus::BudgetExceeded, std::nullopt, counters.nodes};
    }
    return {SearchStatus::NoneWithinBound, std::nullopt, counters.nodes};
}

bool contexts_fit_blocks(const ContextSet& ctxs) {
    for (const Context& c : ctxs.items()) {
        if (c.left.size() > 1 || c.right.size() > 1) return false;
    }
    return ctxs.size() < 0xfffe;
}

bool contexts_fit_step_items(const ContextSet& ctxs) {
    if (ctxs.size() > 0xf0) return false;
    for (const Context& c : ctxs.items()) {
        if (c.left.size() > 0xf00 || c.right.size() > 0xf00) return false;
    }
    return true;
}

}  // namespace

SearchResult constructability_search(const ProblemInstance& inst, size_t node_budget) {
    validate_instance(inst);
    if (!inst.bound) throw std::invalid_argument("search without a length bound");

    ProblemInstance work = inst;
    std::sort(work.targets.begin(), work.targets.end(), length_lex_less);
    work.targets.erase(std::unique(work.targets.begin(), work.targets.end()),
                       work.targets.end());
    work.template_word.reset();
    for (const Word& w : work.targets) {
        if (w.size() > *work.bound) return {SearchStatus::NoneWithinBound, std::nullopt, 0};
    }

    switch (work.op) {
        case DeletionKind::BracketedStep:
        case DeletionKind::BracketedStepGreedy:
            if (contexts_fit_step_items(work.contexts)) {
                StepConfig cfg(work.contexts, kind_is_greedy(work.op));
                std::vector<StepTracker> trackers;
                trackers.reserve(work.targets.size());
                for (const Word& w : work.targets) trackers.emplace_back(cfg, w);
                return run_search(work, trackers, false, node_budget);
            }
            break;
        case DeletionKind::BracketedClosure:
            if (contexts_fit_blocks(work.contexts)) {
                std::vector<BlockTracker> trackers;
                trackers.reserve(work.targets.size());
                for (const Word& w : work.targets) trackers.emplace_back(work.contexts, w);
                return run_search(work, trackers, false, node_budget);
            }
            break;
        case DeletionKind::BracketedClosureGreedy:
            break;
        case DeletionKind::LariatOneStep:
        case DeletionKind::LariatParallel:
            if (*work.bound <= 0xf0 && work.contexts.size() <= 0xf0) {
                LariatConfig cfg(*work.lariat, work.op == DeletionKind::LariatOneStep, *work.bound);
                std::vector<LariatTracker> trackers;
                trackers.reserve(work.targets.size());
                for (const Word& w : work.targets) trackers.emplace_back(cfg, w);
                return run_search(work, trackers, false, node_budget);
            }
            break;
    }
    std::vector<LooseTracker> trackers;
    trackers.reserve(work.targets.size());
    for (const Word& w : work.targets) trackers.emplace_back(w);
    return run_search(work, trackers, true, node_budget);
}

namespace {

struct EncodedAlphabet {
    AlphabetPtr alphabet;
    Letter start = 0;
    Letter end = 0;
};

EncodedAlphabet marker_alphabet(const AlphabetPtr& base) {
    std::vector<std::string> symbols = base->symbols();
    for (const std::string& s : symbols) {
        if (s == "#s" || s == "#e") {
            throw std::invalid_argument("base alphabet already uses a marker symbol");
        }
    }
    symbols.push_back("#s");
    symbols.push_back("#e");
    EncodedAlphabet enc;
    enc.alphabet = std::make_shared<Alphabet>(std::move(symbols));
    enc.start = static_cast<Letter>(base->size());
    enc.end = static_cast<Letter>(base->size() + 1);
    return enc;
}

void validate_scse(const ScseInstance& inst) {
    if (!inst.alphabet) throw std::invalid_argument("instance has no alphabet");
    if (inst.words.empty()) throw std::invalid_argument("instance has no words");
    if (inst.k == 0) throw std::invalid_argument("length bound must be positive");
    for (const Word& w : inst.words) require_word_over(inst.alphabet, w, "word");
}

std::vector<Word> encode_words(const ScseInstance& inst, Letter start, Letter end,
                               size_t end_copies) {
    std::vector<Word> out;
    for (const Word& w : inst.words) {
        Word enc;
        enc.reserve(w.size() * (2 + end_copies));
        for (Letter a : w) {
            enc.push_back(start);
            enc.push_back(a);
            for (size_t i = 0; i < end_copies; ++i) enc.push_back(end);
        }
        out.push_back(std::move(enc));
    }
    std::sort(out.begin(), out.end(), length_lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

ProblemInstance scse_encode_bracketed(const ScseInstance& inst) {
    validate_scse(inst);
    EncodedAlphabet enc = marker_alphabet(inst.alphabet);
    ContextSet contexts({{Word{enc.start}, Word{enc.end}}});
    ProblemInstance out = ProblemInstance::bracketed(
        enc.alphabet, encode_words(inst, enc.start, enc.end, 1), std::move(contexts),
        DeletionKind::BracketedClosure);
    out.bound = 3 * inst.k;
    return out;
}

ProblemInstance scse_encode_lariat(const ScseInstance& inst, const EnergyModel& model) {
    validate_scse(inst);
    EncodedAlphabet enc = marker_alphabet(inst.alphabet);
    ContextSet contexts({{Word{enc.start}, Word{enc.end}}});
    std::vector<Letter> image(enc.alphabet->size());
    for (size_t i = 0; i < inst.alphabet->size(); ++i) image[i] = static_cast<Letter>(i);
    image[static_cast<size_t>(enc.start)] = enc.end;
    image[static_cast<size_t>(enc.end)] = enc.start;
    LariatParams params{model, 0, contexts, Involution(enc.alphabet, std::move(image))};
    ProblemInstance out = ProblemInstance::lariat_op(
        enc.alphabet, encode_words(inst, enc.start, enc.end, 2), std::move(params),
        DeletionKind::LariatParallel);
    out.bound = 4 * inst.k + 3;
    return out;
}

bool scse_brute(const ScseInstance& inst, size_t budget) {
    validate_scse(inst);
    std::set<Letter> seen;
    size_t longest = 0;
    for (const Word& w : inst.words) {
        seen.insert(w.begin(), w.end());
        longest = std::max(longest, w.size());
    }
    if (longest > inst.k) return false;
    const std::vector<Letter> pool(seen.begin(), seen.end());

    const size_t n = inst.words.size();
    std::vector<size_t> matched(n, 0);
    size_t nodes = 0;

    // grow a candidate supersequence letter by letter; greedy per-word
    // prefix matching is exact for the supersequence check
    auto rec = [&](auto&& self, size_t depth) -> bool {
        bool all = true;
        size_t need = 0;
        for (size_t i = 0; i < n; ++i) {
            if (matched[i] < inst.words[i].size()) all = false;
            need = std::max(need, inst.words[i].size() - matched[i]);
        }
        if (all) return true;
        if (depth >= inst.k || need > inst.k - depth) return false;
        for (Letter c : pool) {
            if (++nodes > budget) {
                throw ResourceError("supersequence search exceeded its node budget");
            }
            const std::vector<size_t> saved = matched;
            for (size_t i = 0; i < n; ++i) {
                if (matched[i] < inst.words[i].size() && inst.words[i][matched[i]] == c) {
                    ++matched[i];
                }
            }
            if (self(self, depth + 1)) return true;
            matched = saved;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace splice
