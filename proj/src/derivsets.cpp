#include "splice/derivsets.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <tuple>

#include "splice/energy.hpp"

namespace splice {
namespace {

void require_epsilon_free(const Nfa& a, const char* op) {
    if (a.has_epsilon()) {
        throw std::invalid_argument(std::string(op) + ": automaton has epsilon transitions");
    }
}

void require_state(const Nfa& a, int q) {
    if (q < 0 || q >= a.num_states()) throw std::out_of_range("state index out of range");
}

// Per-letter forward/backward adjacency, plus deduplicated any-letter successors.
struct LetterAdj {
    std::vector<std::vector<std::vector<int>>> fwd;  // fwd[letter][from] -> targets
    std::vector<std::vector<std::vector<int>>> rev;  // rev[letter][to] -> sources
    std::vector<std::vector<int>> fwd_any;
    std::vector<std::vector<int>> rev_any;
};

LetterAdj build_adj(const Nfa& a) {
    const size_t n = static_cast<size_t>(a.num_states());
    const size_t letters = a.alphabet()->size();
    LetterAdj adj;
    adj.fwd.assign(letters, std::vector<std::vector<int>>(n));
    adj.rev.assign(letters, std::vector<std::vector<int>>(n));
    adj.fwd_any.assign(n, {});
    adj.rev_any.assign(n, {});
    for (int from = 0; from < a.num_states(); ++from) {
        for (const auto& [label, to] : a.out(from)) {
            adj.fwd[static_cast<size_t>(label)][static_cast<size_t>(from)].push_back(to);
            adj.rev[static_cast<size_t>(label)][static_cast<size_t>(to)].push_back(from);
            adj.fwd_any[static_cast<size_t>(from)].push_back(to);
            adj.rev_any[static_cast<size_t>(to)].push_back(from);
        }
    }
    for (auto& row : adj.fwd_any) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    for (auto& row : adj.rev_any) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return adj;
}

// States that reach q by reading z beta with |z| <= gap.
std::vector<int> gap_beta_sources(const LetterAdj& adj, int num_states, int q, const Word& beta,
                                  int64_t gap) {
    std::vector<char> cur(static_cast<size_t>(num_states), 0);
    cur[static_cast<size_t>(q)] = 1;
    for (size_t i = beta.size(); i-- > 0;) {
        std::vector<char> prev(static_cast<size_t>(num_states), 0);
        for (int s = 0; s < num_states; ++s) {
            if (!cur[static_cast<size_t>(s)]) continue;
            for (int t : adj.rev[static_cast<size_t>(beta[i])][static_cast<size_t>(s)]) {
                prev[static_cast<size_t>(t)] = 1;
            }
        }
        cur = std::move(prev);
    }
    std::vector<char> all = cur;
    std::vector<char> layer = cur;
    for (int64_t k = 0; k < gap; ++k) {
        std::vector<char> prev(static_cast<size_t>(num_states), 0);
        for (int s = 0; s < num_states; ++s) {
            if (!layer[static_cast<size_t>(s)]) continue;
            for (int t : adj.rev_any[static_cast<size_t>(s)]) prev[static_cast<size_t>(t)] = 1;
        }
        layer = std::move(prev);
        for (int s = 0; s < num_states; ++s) {
            if (layer[static_cast<size_t>(s)]) all[static_cast<size_t>(s)] = 1;
        }
    }
    std::vector<int> out;
    for (int s = 0; s < num_states; ++s) {
        if (all[static_cast<size_t>(s)]) out.push_back(s);
    }
    return out;
}

// Memoized shortest walk lengths within the base automaton (loop candidates).
class LoopCache {
public:
    explicit LoopCache(const std::vector<std::vector<int>>& succ) : succ_(succ) {}

    std::optional<uint64_t> min_len(int r, int s) {
        auto& row = rows_[static_cast<size_t>(r)];
        if (row.empty()) {
            row.assign(succ_.size(), -1);
            row[static_cast<size_t>(r)] = 0;
            std::deque<int> queue{r};
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int t : succ_[static_cast<size_t>(v)]) {
                    if (row[static_cast<size_t>(t)] < 0) {
                        row[static_cast<size_t>(t)] = row[static_cast<size_t>(v)] + 1;
                        queue.push_back(t);
                    }
                }
            }
        }
        int64_t d = row[static_cast<size_t>(s)];
        if (d < 0) return std::nullopt;
        return static_cast<uint64_t>(d);
    }

    void prepare(size_t num_states) { rows_.assign(num_states, {}); }

private:
    const std::vector<std::vector<int>>& succ_;
    std::vector<std::vector<int64_t>> rows_;
};

// Stem-walker pairs (forward state, backward state) encoded as f*n + b.
struct PairWalk {
    std::vector<int> nodes;                  // pair codes, in discovery order
    std::vector<std::vector<int>> succ;      // local adjacency
    std::vector<int> seeds;                  // local ids of the post-alpha seeds
    std::vector<int> local_of;               // code -> local id or -1
};

std::set<std::pair<int, int>> force_alpha(const LetterAdj& adj, const Involution& theta, int p,
                                          const std::vector<int>& s_back, const Word& alpha) {
    std::set<std::pair<int, int>> cur;
    for (int t : s_back) cur.insert({p, t});
    for (Letter c : alpha) {
        std::set<std::pair<int, int>> next;
        const auto& fwd = adj.fwd[static_cast<size_t>(c)];
        const auto& rev = adj.rev[static_cast<size_t>(theta(c))];
        for (const auto& [f, b] : cur) {
            for (int f2 : fwd[static_cast<size_t>(f)]) {
                for (int b2 : rev[static_cast<size_t>(b)]) next.insert({f2, b2});
            }
        }
        cur = std::move(next);
        if (cur.empty()) break;
    }
    return cur;
}

PairWalk explore_pairs(const LetterAdj& adj, const Involution& theta, int num_states,
                       const std::set<std::pair<int, int>>& seeds, size_t state_budget) {
    const size_t n = static_cast<size_t>(num_states);
    if (n * n > 50'000'000) throw ResourceError("pair walker state space too large");
    PairWalk walk;
    walk.local_of.assign(n * n, -1);
    auto intern = [&](int f, int b) {
        int code = f * num_states + b;
        int& id = walk.local_of[static_cast<size_t>(code)];
        if (id < 0) {
            if (walk.nodes.size() >= state_budget) {
                throw ResourceError("pair walker exceeds state budget");
            }
            id = static_cast<int>(walk.nodes.size());
            walk.nodes.push_back(code);
            walk.succ.emplace_back();
        }
        return id;
    };
    std::deque<int> queue;
    for (const auto& [f, b] : seeds) {
        int id = intern(f, b);
        walk.seeds.push_back(id);
        queue.push_back(id);
    }
    std::sort(walk.seeds.begin(), walk.seeds.end());
    walk.seeds.erase(std::unique(walk.seeds.begin(), walk.seeds.end()), walk.seeds.end());
    std::set<int> expanded;
    const size_t letters = adj.fwd.size();
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (!expanded.insert(id).second) continue;
        int f = walk.nodes[static_cast<size_t>(id)] / num_states;
        int b = walk.nodes[static_cast<size_t>(id)] % num_states;
        std::set<int> targets;
        for (size_t c = 0; c < letters; ++c) {
            const auto& fs = adj.fwd[c][static_cast<size_t>(f)];
            const auto& bs = adj.rev[static_cast<size_t>(theta(static_cast<Letter>(c)))]
                                    [static_cast<size_t>(b)];
            for (int f2 : fs) {
                for (int b2 : bs) targets.insert(intern(f2, b2));
            }
        }
        for (int t : targets) {
            walk.succ[static_cast<size_t>(id)].push_back(t);
            queue.push_back(t);
        }
    }
    return walk;
}

// Exact decision: does any stem extension n and loop m fit the model?
bool decide_hairpin(const LetterAdj& adj, LoopCache& loops, int num_states, int p,
                    const std::vector<int>& s_back, const Context& ctx, const LariatParams& params,
                    size_t state_budget) {
    auto seeds = force_alpha(adj, params.theta, p, s_back, ctx.left);
    if (seeds.empty()) return false;
    PairWalk walk = explore_pairs(adj, params.theta, num_states, seeds, state_budget);
    WalkLengthTable table(walk.succ, walk.seeds);
    const size_t k = ctx.left.size();
    const EnergyModel& model = params.model;
    const bool threshold_unbounded = model.kind != ModelKind::Con && model.d2 > 0;
    for (size_t id = 0; id < walk.nodes.size(); ++id) {
        int r = walk.nodes[id] / num_states;
        int s = walk.nodes[id] % num_states;
        auto m = loops.min_len(r, s);
        if (!m) continue;
        UltimatelyPeriodicSet lengths = table.lengths_to(static_cast<int>(id));
        if (lengths.empty()) continue;
        if (lengths.infinite() && threshold_unbounded) return true;
        uint64_t n_eval = lengths.infinite() ? lengths.min() : lengths.max_finite();
        if (loop_admissible(model, k + static_cast<size_t>(n_eval), static_cast<size_t>(*m))) {
            return true;
        }
    }
    return false;
}

// Doubled automaton: copy 0 before any deletion, copy 1 after at least one.
Nfa phase_construction(const Nfa& a, const std::vector<std::tuple<int, int, size_t>>& jumps,
                       LariatMode mode, bool include_source) {
    const int n = a.num_states();
    Nfa d(a.alphabet(), 2 * n);
    for (int q = 0; q < n; ++q) {
        for (const auto& [label, to] : a.out(q)) {
            d.add_transition(q, label, to);
            d.add_transition(n + q, label, n + to);
        }
    }
    for (const auto& [p, q, ctx] : jumps) {
        d.add_transition(p, kEpsilonLabel, n + q);
        if (mode == LariatMode::Parallel) d.add_transition(n + p, kEpsilonLabel, n + q);
        d.add_deletion_edge(p, n + q, ctx);
    }
    for (int q : a.initial()) d.add_initial(q);
    for (int q : a.accepting()) {
        d.add_accepting(n + q);
        if (include_source) d.add_accepting(q);
    }
    return eliminate_epsilon(d);
}

}  // namespace

Nfa regular_closure_bracketed(const Nfa& a, const ContextSet& contexts, bool greedy,
                              size_t state_budget) {
    require_epsilon_free(a, "regular_closure_bracketed");
    const int n = a.num_states();
    if (static_cast<size_t>(n) * static_cast<size_t>(n) > state_budget) {
        throw ResourceError("closure saturation exceeds state budget");
    }
    const size_t letters = a.alphabet()->size();

    // pattern automata and their per-letter adjacency
    std::vector<Nfa> patterns;
    std::vector<std::vector<std::vector<std::vector<int>>>> pat_fwd;  // [ctx][state][letter]
    for (size_t k = 0; k < contexts.size(); ++k) {
        patterns.push_back(pattern_nfa(a.alphabet(), contexts[k], greedy));
        const Nfa& pat = patterns.back();
        std::vector<std::vector<std::vector<int>>> adj(
            static_cast<size_t>(pat.num_states()), std::vector<std::vector<int>>(letters));
        for (int s = 0; s < pat.num_states(); ++s) {
            for (const auto& [label, to] : pat.out(s)) {
                adj[static_cast<size_t>(s)][static_cast<size_t>(label)].push_back(to);
            }
        }
        pat_fwd.push_back(std::move(adj));
    }

    std::vector<char> added(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    std::vector<std::tuple<int, int, size_t>> edges;
    auto rebuild = [&]() {
        Nfa base(a.alphabet(), n);
        for (int q = 0; q < n; ++q) {
            for (const auto& [label, to] : a.out(q)) base.add_transition(q, label, to);
        }
        for (int q : a.initial()) base.add_initial(q);
        for (int q : a.accepting()) base.add_accepting(q);
        for (const auto& [p, q, k] : edges) {
            base.add_transition(p, kEpsilonLabel, q);
            base.add_deletion_edge(p, q, k);
        }
        return eliminate_epsilon(base);
    };

    Nfa cur = rebuild();
    const size_t round_limit =
        static_cast<size_t>(n) * static_cast<size_t>(n) * std::max<size_t>(contexts.size(), 1) + 2;
    size_t rounds = 0;
    while (true) {
        if (++rounds > round_limit) {
            throw std::logic_error("closure saturation failed to stabilize");
        }
        bool fresh = false;
        for (size_t k = 0; k < contexts.size(); ++k) {
            const Nfa& pat = patterns[k];
            const int m = pat.num_states();
            const int pat_init = *pat.initial().begin();
            for (int p = 0; p < n; ++p) {
                // which states q complete a pattern word started at p?
                std::vector<char> seen(static_cast<size_t>(n) * static_cast<size_t>(m), 0);
                std::deque<std::pair<int, int>> queue{{p, pat_init}};
                seen[static_cast<size_t>(p) * static_cast<size_t>(m) +
                     static_cast<size_t>(pat_init)] = 1;
                while (!queue.empty()) {
                    auto [s, t] = queue.front();
                    queue.pop_front();
                    if (pat.is_accepting(t) && s != p) {
                        char& flag = added[static_cast<size_t>(p) * static_cast<size_t>(n) +
                                           static_cast<size_t>(s)];
                        if (!flag) {
                            flag = 1;
                            edges.push_back({p, s, k});
                            fresh = true;
                        }
                    }
                    for (const auto& [label, to] : cur.out(s)) {
                        for (int t2 : pat_fwd[k][static_cast<size_t>(t)][static_cast<size_t>(label)]) {
                            char& flag = seen[static_cast<size_t>(to) * static_cast<size_t>(m) +
                                              static_cast<size_t>(t2)];
                            if (!flag) {
                                flag = 1;
                                queue.push_back({to, t2});
                            }
                        }
                    }
                }
            }
        }
        if (!fresh) break;
        cur = rebuild();
    }
    return cur;
}

Nfa bracketed_closure_nfa(const AlphabetPtr& alphabet, const Word& w, const ContextSet& contexts,
                          bool greedy, size_t state_budget) {
    return regular_closure_bracketed(word_dfa(alphabet, w), contexts, greedy, state_budget);
}

Nfa lariat_set_nfa(const Word& w, const LariatParams& params, LariatMode mode,
                   bool include_source) {
    const AlphabetPtr& alphabet = params.theta.alphabet();
    const int n = static_cast<int>(w.size()) + 1;
    Nfa line(alphabet, n);
    for (size_t i = 0; i < w.size(); ++i) {
        line.add_transition(static_cast<int>(i), w[i], static_cast<int>(i) + 1);
    }
    line.add_initial(0);
    line.add_accepting(n - 1);
    std::vector<std::tuple<int, int, size_t>> jumps;
    for (const LariatSpan& span : lariat_spans(w, params)) {
        jumps.push_back({static_cast<int>(span.begin), static_cast<int>(span.end), span.context});
    }
    return phase_construction(line, jumps, mode, include_source);
}

bool hairpin_reachability(const Nfa& a, int p, int q, const Context& ctx,
                          const LariatParams& params, size_t state_budget) {
    require_epsilon_free(a, "hairpin_reachability");
    require_state(a, p);
    require_state(a, q);
    LetterAdj adj = build_adj(a);
    LoopCache loops(adj.fwd_any);
    loops.prepare(static_cast<size_t>(a.num_states()));
    std::vector<int> s_back = gap_beta_sources(adj, a.num_states(), q, ctx.right, params.gap);
    if (s_back.empty()) return false;
    return decide_hairpin(adj, loops, a.num_states(), p, s_back, ctx, params, state_budget);
}

Nfa regular_closure_lariat(const Nfa& a, const LariatParams& params, LariatMode mode,
                           bool include_source, size_t state_budget) {
    require_epsilon_free(a, "regular_closure_lariat");
    const int n = a.num_states();
    LetterAdj adj = build_adj(a);
    LoopCache loops(adj.fwd_any);
    loops.prepare(static_cast<size_t>(n));
    std::vector<char> has_jump(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    std::vector<std::tuple<int, int, size_t>> jumps;
    for (size_t k = 0; k < params.contexts.size(); ++k) {
        const Context& ctx = params.contexts[k];
        for (int q = 0; q < n; ++q) {
            std::vector<int> s_back = gap_beta_sources(adj, n, q, ctx.right, params.gap);
            if (s_back.empty()) continue;
            for (int p = 0; p < n; ++p) {
                char& flag =
                    has_jump[static_cast<size_t>(p) * static_cast<size_t>(n) + static_cast<size_t>(q)];
                if (flag) continue;  // already justified by an earlier context
                if (decide_hairpin(adj, loops, n, p, s_back, ctx, params, state_budget)) {
                    flag = 1;
                    jumps.push_back({p, q, k});
                }
            }
        }
    }
    std::sort(jumps.begin(), jumps.end());
    return phase_construction(a, jumps, mode, include_source);
}

size_t log_witness_bound(int num_states, const Context& ctx, const LariatParams& params) {
    size_t q = static_cast<size_t>(std::max(num_states, 1));
    size_t lg = 0;
    while ((size_t{1} << lg) < 3 * q) ++lg;
    return lg + 3 * (q - 1) + ctx.left.size() + ctx.right.size() +
           static_cast<size_t>(params.gap < 0 ? 0 : params.gap);
}

std::optional<Word> lariat_witness_search(const Nfa& a, int p, int q, const Context& ctx,
                                          const LariatParams& params, size_t max_len,
                                          size_t state_budget) {
    require_epsilon_free(a, "lariat_witness_search");
    require_state(a, p);
    require_state(a, q);
    const int n = a.num_states();
    const Involution& theta = params.theta;
    LetterAdj adj = build_adj(a);
    LoopCache loops(adj.fwd_any);
    loops.prepare(static_cast<size_t>(n));
    const Word& alpha = ctx.left;
    const Word& beta = ctx.right;
    const size_t k = alpha.size();

    // beta target set, then shortest gap word z per source t
    std::vector<char> beta_set(static_cast<size_t>(n), 0);
    {
        std::vector<char> cur(static_cast<size_t>(n), 0);
        cur[static_cast<size_t>(q)] = 1;
        for (size_t i = beta.size(); i-- > 0;) {
            std::vector<char> prev(static_cast<size_t>(n), 0);
            for (int s = 0; s < n; ++s) {
                if (!cur[static_cast<size_t>(s)]) continue;
                for (int t : adj.rev[static_cast<size_t>(beta[i])][static_cast<size_t>(s)]) {
                    prev[static_cast<size_t>(t)] = 1;
                }
            }
            cur = std::move(prev);
        }
        beta_set = cur;
    }
    // backward layers over arbitrary letters, recording one (letter, next) hop
    std::vector<int64_t> z_len(static_cast<size_t>(n), -1);
    std::vector<std::pair<Letter, int>> z_hop(static_cast<size_t>(n), {0, -1});
    std::deque<int> zqueue;
    for (int s = 0; s < n; ++s) {
        if (beta_set[static_cast<size_t>(s)]) {
            z_len[static_cast<size_t>(s)] = 0;
            zqueue.push_back(s);
        }
    }
    const int64_t gap = params.gap < 0 ? 0 : params.gap;
    while (!zqueue.empty()) {
        int s = zqueue.front();
        zqueue.pop_front();
        if (z_len[static_cast<size_t>(s)] >= gap) continue;
        for (size_t c = 0; c < adj.rev.size(); ++c) {
            for (int t : adj.rev[c][static_cast<size_t>(s)]) {
                if (z_len[static_cast<size_t>(t)] < 0) {
                    z_len[static_cast<size_t>(t)] = z_len[static_cast<size_t>(s)] + 1;
                    z_hop[static_cast<size_t>(t)] = {static_cast<Letter>(c), s};
                    zqueue.push_back(t);
                }
            }
        }
    }

    auto suffix_word = [&](int t) {
        Word z;
        int cur = t;
        while (!beta_set[static_cast<size_t>(cur)]) {
            z.push_back(z_hop[static_cast<size_t>(cur)].first);
            cur = z_hop[static_cast<size_t>(cur)].second;
        }
        z.insert(z.end(), beta.begin(), beta.end());
        return z;
    };

    auto loop_word = [&](int r, int s) -> std::optional<Word> {
        // shortest r -> s walk labels
        std::vector<int64_t> dist(static_cast<size_t>(n), -1);
        std::vector<std::pair<Letter, int>> hop(static_cast<size_t>(n), {0, -1});
        dist[static_cast<size_t>(r)] = 0;
        std::deque<int> queue{r};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (const auto& [label, to] : a.out(v)) {
                if (dist[static_cast<size_t>(to)] < 0) {
                    dist[static_cast<size_t>(to)] = dist[static_cast<size_t>(v)] + 1;
                    hop[static_cast<size_t>(to)] = {label, v};
                    queue.push_back(to);
                }
            }
        }
        if (dist[static_cast<size_t>(s)] < 0) return std::nullopt;
        Word rev_labels;
        int cur = s;
        while (cur != r) {
            rev_labels.push_back(hop[static_cast<size_t>(cur)].first);
            cur = hop[static_cast<size_t>(cur)].second;
        }
        std::reverse(rev_labels.begin(), rev_labels.end());
        return rev_labels;
    };

    auto deletable = [&](const Word& u) {
        if (u.size() < beta.size() || !std::equal(beta.begin(), beta.end(), u.end() - beta.size())) {
            return false;
        }
        for (int64_t zl = 0; zl <= gap; ++zl) {
            if (u.size() < beta.size() + static_cast<size_t>(zl) + 2 * k) continue;
            Word h(u.begin(), u.end() - beta.size() - static_cast<size_t>(zl));
            if (h.size() < k || !std::equal(alpha.begin(), alpha.end(), h.begin())) continue;
            if (is_stable_hairpin(h, params.model, theta, k)) return true;
        }
        return false;
    };

    std::vector<int> s_back = gap_beta_sources(adj, n, q, beta, gap);
    std::vector<std::tuple<int, int, int>> seed_list;  // (f, b, origin t)
    for (int t : s_back) {
        for (const auto& [f, b] : force_alpha(adj, theta, p, {t}, alpha)) {
            seed_list.push_back({f, b, t});
        }
    }
    std::sort(seed_list.begin(), seed_list.end());
    seed_list.erase(std::unique(seed_list.begin(), seed_list.end()), seed_list.end());

    std::optional<Word> best;
    auto consider = [&](const Word& u) {
        if (u.size() > max_len) return;
        if (!deletable(u)) return;
        if (!accepts(with_endpoints(a, {p}, {q}), u)) return;
        if (!best || length_lex_less(u, *best)) best = u;
    };

    const size_t n_cap = max_len / 2;
    for (const auto& [f0, b0, t] : seed_list) {
        // explicit layered reachability of the pair walker from this one seed
        PairWalk walk = explore_pairs(adj, theta, n, {{f0, b0}}, state_budget);
        // layer[l] = nodes with a length-l walk from the seed; parents per layer
        std::vector<std::vector<char>> layer_has;
        std::vector<std::vector<std::pair<int, Letter>>> layer_parent;  // (prev node, letter)
        std::vector<char> first(walk.nodes.size(), 0);
        first[static_cast<size_t>(walk.seeds[0])] = 1;
        layer_has.push_back(first);
        layer_parent.push_back(std::vector<std::pair<int, Letter>>(walk.nodes.size(), {-1, 0}));
        for (size_t layer = 0; layer + 1 <= n_cap; ++layer) {
            std::vector<char> next(walk.nodes.size(), 0);
            std::vector<std::pair<int, Letter>> par(walk.nodes.size(), {-1, 0});
            bool any = false;
            for (size_t id = 0; id < walk.nodes.size(); ++id) {
                if (!layer_has[layer][id]) continue;
                int fcur = walk.nodes[id] / n;
                int bcur = walk.nodes[id] % n;
                for (size_t c = 0; c < adj.fwd.size(); ++c) {
                    for (int f2 : adj.fwd[c][static_cast<size_t>(fcur)]) {
                        for (int b2 : adj.rev[static_cast<size_t>(theta(static_cast<Letter>(c)))]
                                             [static_cast<size_t>(bcur)]) {
                            int nid = walk.local_of[static_cast<size_t>(f2 * n + b2)];
                            if (nid < 0) continue;  // outside the reachable walker
                            if (!next[static_cast<size_t>(nid)]) {
                                next[static_cast<size_t>(nid)] = 1;
                                par[static_cast<size_t>(nid)] = {static_cast<int>(id),
                                                                 static_cast<Letter>(c)};
                                any = true;
                            }
                        }
                    }
                }
            }
            if (!any) break;
            layer_has.push_back(std::move(next));
            layer_parent.push_back(std::move(par));
        }
        Word suffix = suffix_word(t);
        for (size_t len = 0; len < layer_has.size(); ++len) {
            for (size_t id = 0; id < walk.nodes.size(); ++id) {
                if (!layer_has[len][id]) continue;
                int r = walk.nodes[id] / n;
                int s = walk.nodes[id] % n;
                auto m = loops.min_len(r, s);
                if (!m) continue;
                if (!loop_admissible(params.model, k + len, static_cast<size_t>(*m))) continue;
                size_t total = 2 * (k + len) + static_cast<size_t>(*m) + suffix.size();
                if (total > max_len) continue;
                // rebuild x from the layer parents
                Word x;
                size_t cur_id = id;
                for (size_t l = len; l > 0; --l) {
                    auto [prev, letter] = layer_parent[l][cur_id];
                    x.push_back(letter);
                    cur_id = static_cast<size_t>(prev);
                }
                std::reverse(x.begin(), x.end());
                auto lw = loop_word(r, s);
                if (!lw || lw->size() != *m) continue;
                Word stem = alpha;
                stem.insert(stem.end(), x.begin(), x.end());
                Word u = stem;
                u.insert(u.end(), lw->begin(), lw->end());
                Word back = theta(stem);
                u.insert(u.end(), back.begin(), back.end());
                u.insert(u.end(), suffix.begin(), suffix.end());
                consider(u);
            }
        }
    }
    return best;
}

}  // namespace splice
