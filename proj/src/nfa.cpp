#include "splice/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace splice {
namespace {

// kmp_automaton[s][c] = length of the longest prefix of pat that is a suffix
// of (the length-s prefix of pat) + c.
std::vector<std::vector<int>> kmp_automaton(const Word& pat, int letter_count) {
    const int m = static_cast<int>(pat.size());
    std::vector<std::vector<int>> go(static_cast<size_t>(m) + 1,
                                     std::vector<int>(static_cast<size_t>(letter_count), 0));
    std::vector<int> fail(static_cast<size_t>(m) + 1, 0);
    for (int s = 0; s <= m; ++s) {
        for (int c = 0; c < letter_count; ++c) {
            if (s < m && pat[static_cast<size_t>(s)] == c) {
                go[static_cast<size_t>(s)][static_cast<size_t>(c)] = s + 1;
            } else {
                go[static_cast<size_t>(s)][static_cast<size_t>(c)] =
                    s == 0 ? 0 : go[static_cast<size_t>(fail[static_cast<size_t>(s)])][static_cast<size_t>(c)];
            }
        }
        if (s < m) {
            fail[static_cast<size_t>(s) + 1] =
                s == 0 ? 0 : go[static_cast<size_t>(fail[static_cast<size_t>(s)])][pat[static_cast<size_t>(s)]];
        }
    }
    return go;
}

std::vector<int> epsilon_closure(const Nfa& a, int start) {
    std::vector<char> seen(static_cast<size_t>(a.num_states()), 0);
    std::vector<int> order;
    std::deque<int> queue{start};
    seen[static_cast<size_t>(start)] = 1;
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        order.push_back(q);
        for (const auto& [label, to] : a.out(q)) {
            if (label == kEpsilonLabel && !seen[static_cast<size_t>(to)]) {
                seen[static_cast<size_t>(to)] = 1;
                queue.push_back(to);
            }
        }
    }
    std::sort(order.begin(), order.end());
    return order;
}

void require_epsilon_free(const Nfa& a, const char* op) {
    if (a.has_epsilon()) {
        throw std::invalid_argument(std::string(op) + ": automaton has epsilon transitions");
    }
}

}  // namespace

Nfa::Nfa(AlphabetPtr alphabet, int num_states)
    : alphabet_(std::move(alphabet)), num_states_(num_states) {
    if (!alphabet_) throw std::invalid_argument("automaton needs an alphabet");
    if (num_states_ < 0) throw std::invalid_argument("negative state count");
    out_.resize(static_cast<size_t>(num_states_));
}

void Nfa::check_state(int q) const {
    if (q < 0 || q >= num_states_) throw std::out_of_range("state index out of range");
}

void Nfa::add_transition(int from, Letter label, int to) {
    check_state(from);
    check_state(to);
    if (label != kEpsilonLabel &&
        (label < 0 || static_cast<size_t>(label) >= alphabet_->size())) {
        throw std::out_of_range("transition label outside alphabet");
    }
    if (out_[static_cast<size_t>(from)].insert({label, to}).second && label == kEpsilonLabel) {
        ++epsilon_count_;
    }
}

void Nfa::add_initial(int q) {
    check_state(q);
    initial_.insert(q);
}

void Nfa::add_accepting(int q) {
    check_state(q);
    accepting_.insert(q);
}

void Nfa::add_deletion_edge(int from, int to, size_t context) {
    check_state(from);
    check_state(to);
    deletion_edges_.push_back({from, to, context});
}

std::vector<NfaTransition> Nfa::transitions() const {
    std::vector<NfaTransition> all;
    for (int q = 0; q < num_states_; ++q) {
        for (const auto& [label, to] : out_[static_cast<size_t>(q)]) {
            all.push_back({q, label, to});
        }
    }
    return all;
}

size_t Nfa::transition_count() const {
    size_t n = 0;
    for (const auto& s : out_) n += s.size();
    return n;
}

Nfa word_dfa(const AlphabetPtr& alphabet, const Word& w) {
    Nfa a(alphabet, static_cast<int>(w.size()) + 1);
    for (size_t i = 0; i < w.size(); ++i) {
        a.add_transition(static_cast<int>(i), w[i], static_cast<int>(i) + 1);
    }
    a.add_initial(0);
    a.add_accepting(static_cast<int>(w.size()));
    return a;
}

Nfa pattern_nfa(const AlphabetPtr& alphabet, const Context& ctx, bool greedy) {
    const Word& alpha = ctx.left;
    const Word& beta = ctx.right;
    const int k = static_cast<int>(alpha.size());
    const int letter_count = static_cast<int>(alphabet->size());
    if (greedy) {
        // alpha chain, then the beta prefix automaton; the full-match state has
        // no outgoing edges, so any completed occurrence of beta ends the word.
        const int m = static_cast<int>(beta.size());
        Nfa a(alphabet, k + m + 1);
        for (int i = 0; i < k; ++i) a.add_transition(i, alpha[static_cast<size_t>(i)], i + 1);
        auto go = kmp_automaton(beta, letter_count);
        for (int s = 0; s < m; ++s) {
            for (int c = 0; c < letter_count; ++c) {
                a.add_transition(k + s, c, k + go[static_cast<size_t>(s)][static_cast<size_t>(c)]);
            }
        }
        a.add_initial(0);
        a.add_accepting(k + m);
        return a;
    }
    const int m = static_cast<int>(beta.size());
    Nfa a(alphabet, k + m + 1);
    for (int i = 0; i < k; ++i) a.add_transition(i, alpha[static_cast<size_t>(i)], i + 1);
    for (int c = 0; c < letter_count; ++c) a.add_transition(k, c, k);
    for (int j = 0; j < m; ++j) a.add_transition(k + j, beta[static_cast<size_t>(j)], k + j + 1);
    a.add_initial(0);
    a.add_accepting(k + m);
    return a;
}

Nfa finite_language_nfa(const AlphabetPtr& alphabet, std::vector<Word> words) {
    std::sort(words.begin(), words.end(), length_lex_less);
    words.erase(std::unique(words.begin(), words.end()), words.end());
    std::vector<std::map<Letter, int>> children(1);
    std::vector<char> accept(1, 0);
    for (const Word& w : words) {
        int node = 0;
        for (Letter c : w) {
            auto it = children[static_cast<size_t>(node)].find(c);
            if (it == children[static_cast<size_t>(node)].end()) {
                int next = static_cast<int>(children.size());
                children[static_cast<size_t>(node)].emplace(c, next);
                children.emplace_back();
                accept.push_back(0);
                node = next;
            } else {
                node = it->second;
            }
        }
        accept[static_cast<size_t>(node)] = 1;
    }
    Nfa a(alphabet, static_cast<int>(children.size()));
    a.add_initial(0);
    for (int q = 0; q < a.num_states(); ++q) {
        for (const auto& [c, to] : children[static_cast<size_t>(q)]) a.add_transition(q, c, to);
        if (accept[static_cast<size_t>(q)]) a.add_accepting(q);
    }
    return a;
}

Nfa eliminate_epsilon(const Nfa& a) {
    Nfa out(a.alphabet(), a.num_states());
    for (int q : a.initial()) out.add_initial(q);
    for (int p = 0; p < a.num_states(); ++p) {
        bool accept = false;
        for (int q : epsilon_closure(a, p)) {
            if (a.is_accepting(q)) accept = true;
            for (const auto& [label, to] : a.out(q)) {
                if (label != kEpsilonLabel) out.add_transition(p, label, to);
            }
        }
        if (accept) out.add_accepting(p);
    }
    for (const DeletionEdge& e : a.deletion_edges()) out.add_deletion_edge(e.from, e.to, e.context);
    return out;
}

Nfa product_intersect(const Nfa& a, const Nfa& b, size_t state_budget) {
    require_epsilon_free(a, "product_intersect");
    require_epsilon_free(b, "product_intersect");
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> order;
    std::deque<std::pair<int, int>> queue;
    auto intern = [&](int qa, int qb) {
        auto [it, inserted] = index.try_emplace({qa, qb}, static_cast<int>(order.size()));
        if (inserted) {
            if (order.size() >= state_budget) {
                throw ResourceError("product automaton exceeds state budget");
            }
            order.push_back({qa, qb});
            queue.push_back({qa, qb});
        }
        return it->second;
    };
    for (int qa : a.initial()) {
        for (int qb : b.initial()) intern(qa, qb);
    }
    std::vector<NfaTransition> edges;
    while (!queue.empty()) {
        auto [qa, qb] = queue.front();
        queue.pop_front();
        int from = index.at({qa, qb});
        for (const auto& [la, ta] : a.out(qa)) {
            for (const auto& [lb, tb] : b.out(qb)) {
                if (la != lb) continue;
                edges.push_back({from, la, intern(ta, tb)});
            }
        }
    }
    Nfa prod(a.alphabet(), static_cast<int>(order.size()));
    for (int qa : a.initial()) {
        for (int qb : b.initial()) prod.add_initial(index.at({qa, qb}));
    }
    for (const auto& e : edges) prod.add_transition(e.from, e.label, e.to);
    for (size_t i = 0; i < order.size(); ++i) {
        if (a.is_accepting(order[i].first) && b.is_accepting(order[i].second)) {
            prod.add_accepting(static_cast<int>(i));
        }
    }
    return prod;
}

bool is_empty(const Nfa& a) {
    std::vector<char> seen(static_cast<size_t>(a.num_states()), 0);
    std::deque<int> queue;
    for (int q : a.initial()) {
        seen[static_cast<size_t>(q)] = 1;
        queue.push_back(q);
    }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        if (a.is_accepting(q)) return false;
        for (const auto& [label, to] : a.out(q)) {
            if (!seen[static_cast<size_t>(to)]) {
                seen[static_cast<size_t>(to)] = 1;
                queue.push_back(to);
            }
        }
    }
    return true;
}

bool accepts(const Nfa& a, const Word& w) {
    auto close = [&](std::set<int> s) {
        if (!a.has_epsilon()) return s;
        std::deque<int> queue(s.begin(), s.end());
        while (!queue.empty()) {
            int q = queue.front();
            queue.pop_front();
            for (const auto& [label, to] : a.out(q)) {
                if (label == kEpsilonLabel && s.insert(to).second) queue.push_back(to);
            }
        }
        return s;
    };
    std::set<int> current = close(a.initial());
    for (Letter c : w) {
        std::set<int> next;
        for (int q : current) {
            for (const auto& [label, to] : a.out(q)) {
                if (label == c) next.insert(to);
            }
        }
        current = close(std::move(next));
        if (current.empty()) return false;
    }
    for (int q : current) {
        if (a.is_accepting(q)) return true;
    }
    return false;
}

Nfa complement(const Nfa& a, size_t state_budget) {
    require_epsilon_free(a, "complement");
    const int letter_count = a.letter_count();
    std::map<std::set<int>, int> index;
    std::vector<std::set<int>> order;
    std::deque<int> queue;
    auto intern = [&](std::set<int> s) {
        auto [it, inserted] = index.try_emplace(std::move(s), static_cast<int>(order.size()));
        if (inserted) {
            if (order.size() >= state_budget) {
                throw ResourceError("subset construction exceeds state budget");
            }
            order.push_back(it->first);
            queue.push_back(it->second);
        }
        return it->second;
    };
    int start = intern(std::set<int>(a.initial().begin(), a.initial().end()));
    std::vector<NfaTransition> edges;
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        std::set<int> subset = order[static_cast<size_t>(id)];
        for (int c = 0; c < letter_count; ++c) {
            std::set<int> next;
            for (int q : subset) {
                for (const auto& [label, to] : a.out(q)) {
                    if (label == c) next.insert(to);
                }
            }
            edges.push_back({id, c, intern(std::move(next))});
        }
    }
    Nfa out(a.alphabet(), static_cast<int>(order.size()));
    out.add_initial(start);
    for (const auto& e : edges) out.add_transition(e.from, e.label, e.to);
    for (size_t i = 0; i < order.size(); ++i) {
        bool hits_accepting = false;
        for (int q : order[i]) {
            if (a.is_accepting(q)) hits_accepting = true;
        }
        if (!hits_accepting) out.add_accepting(static_cast<int>(i));
    }
    return out;
}

std::vector<Word> enumerate_language(const Nfa& a, size_t max_len, size_t node_budget) {
    require_epsilon_free(a, "enumerate_language");
    const int letter_count = a.letter_count();
    std::vector<Word> found;
    Word current;
    size_t nodes = 0;
    std::set<int> start(a.initial().begin(), a.initial().end());
    auto walk = [&](auto&& self, const std::set<int>& subset) -> void {
        if (++nodes > node_budget) throw ResourceError("language enumeration exceeds node budget");
        for (int q : subset) {
            if (a.is_accepting(q)) {
                found.push_back(current);
                break;
            }
        }
        if (current.size() == max_len) return;
        for (int c = 0; c < letter_count; ++c) {
            std::set<int> next;
            for (int q : subset) {
                for (const auto& [label, to] : a.out(q)) {
                    if (label == c) next.insert(to);
                }
            }
            if (next.empty()) continue;
            current.push_back(c);
            self(self, next);
            current.pop_back();
        }
    };
    walk(walk, start);
    std::sort(found.begin(), found.end(), length_lex_less);
    return found;
}

Nfa with_endpoints(const Nfa& a, const std::set<int>& initial, const std::set<int>& accepting) {
    Nfa out(a.alphabet(), a.num_states());
    for (int q = 0; q < a.num_states(); ++q) {
        for (const auto& [label, to] : a.out(q)) out.add_transition(q, label, to);
    }
    for (int q : initial) out.add_initial(q);
    for (int q : accepting) out.add_accepting(q);
    return out;
}

}  // namespace splice
