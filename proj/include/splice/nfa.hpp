#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "splice/alphabet.hpp"

namespace splice {

// Epsilon is internal only: constructions may add epsilon edges, but every
// public construction returns an epsilon-free automaton.
constexpr Letter kEpsilonLabel = -1;

struct NfaTransition {
    int from;
    Letter label;
    int to;
    auto operator<=>(const NfaTransition&) const = default;
};

// An epsilon edge recorded by a deletion construction, kept as annotation for
// traces and DOT output after the edge itself has been eliminated.
struct DeletionEdge {
    int from;
    int to;
    size_t context;
    auto operator<=>(const DeletionEdge&) const = default;
};

class Nfa {
public:
    Nfa(AlphabetPtr alphabet, int num_states);

    int num_states() const { return num_states_; }
    const AlphabetPtr& alphabet() const { return alphabet_; }
    int letter_count() const { return static_cast<int>(alphabet_->size()); }

    void add_transition(int from, Letter label, int to);
    void add_initial(int q);
    void add_accepting(int q);

    const std::set<int>& initial() const { return initial_; }
    const std::set<int>& accepting() const { return accepting_; }
    bool is_accepting(int q) const { return accepting_.count(q) > 0; }

    // outgoing (label, to) pairs in deterministic order
    const std::set<std::pair<Letter, int>>& out(int q) const { return out_.at(static_cast<size_t>(q)); }
    std::vector<NfaTransition> transitions() const;
    size_t transition_count() const;
    bool has_epsilon() const { return epsilon_count_ > 0; }

    const std::vector<DeletionEdge>& deletion_edges() const { return deletion_edges_; }
    void add_deletion_edge(int from, int to, size_t context);

private:
    void check_state(int q) const;

    AlphabetPtr alphabet_;
    int num_states_;
    std::vector<std::set<std::pair<Letter, int>>> out_;
    std::set<int> initial_;
    std::set<int> accepting_;
    std::vector<DeletionEdge> deletion_edges_;
    size_t epsilon_count_ = 0;
};

constexpr size_t kDefaultStateBudget = 1'000'000;

// Line automaton accepting exactly {w}: states 0..|w|, initial 0, accepting |w|.
Nfa word_dfa(const AlphabetPtr& alphabet, const Word& w);

// Automaton for the removable-factor shapes alpha Sigma* beta. In greedy mode
// the language is restricted to alpha z beta where beta occurs in z beta only
// as the final suffix (a prefix chain for alpha feeding a beta matcher that
// dies on any early completion).
Nfa pattern_nfa(const AlphabetPtr& alphabet, const Context& ctx, bool greedy);

// Trie over the given words; input is deduplicated and length-lex sorted.
Nfa finite_language_nfa(const AlphabetPtr& alphabet, std::vector<Word> words);

// Forward epsilon elimination: same states, epsilon-free, same language.
Nfa eliminate_epsilon(const Nfa& a);

// Product intersection of two epsilon-free automata (reachable part only).
Nfa product_intersect(const Nfa& a, const Nfa& b, size_t state_budget = kDefaultStateBudget);

bool is_empty(const Nfa& a);
bool accepts(const Nfa& a, const Word& w);

// Subset-construction complement over the full alphabet (epsilon-free input).
Nfa complement(const Nfa& a, size_t state_budget = kDefaultStateBudget);

// All accepted words of length <= max_len in length-lex order.
std::vector<Word> enumerate_language(const Nfa& a, size_t max_len,
                                     size_t node_budget = 50'000'000);

// Copy of a with the initial/accepting sets replaced.
Nfa with_endpoints(const Nfa& a, const std::set<int>& initial, const std::set<int>& accepting);

}  // namespace splice
