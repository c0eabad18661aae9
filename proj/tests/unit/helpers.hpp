#pragma once

#include <random>
#include <string>
#include <vector>

#include "splice/alphabet.hpp"
#include "splice/nfa.hpp"

namespace splice::testing {

inline Word rna(const std::string& text) { return rna_alphabet()->parse(text); }

// ab / abcd style alphabets with the identity involution unavailable --
// letters are just indices, contexts built from strings like "ab".
inline AlphabetPtr letters_alphabet(int count) {
    std::vector<std::string> symbols;
    for (int i = 0; i < count; ++i) symbols.push_back(std::string(1, static_cast<char>('a' + i)));
    return std::make_shared<const Alphabet>(symbols);
}

inline Word parse_on(const AlphabetPtr& alphabet, const std::string& text) {
    return alphabet->parse(text);
}

inline Word random_word(std::mt19937& rng, const AlphabetPtr& alphabet, size_t max_len) {
    std::uniform_int_distribution<size_t> len_dist(0, max_len);
    std::uniform_int_distribution<Letter> letter_dist(0, static_cast<Letter>(alphabet->size()) - 1);
    Word w(len_dist(rng));
    for (Letter& c : w) c = letter_dist(rng);
    return w;
}

// Random epsilon-free NFA with every state reachable-ish; plain uniform edges.
inline Nfa random_nfa(std::mt19937& rng, const AlphabetPtr& alphabet, int max_states,
                      double edge_prob = 0.3) {
    std::uniform_int_distribution<int> state_dist(1, max_states);
    int n = state_dist(rng);
    Nfa a(alphabet, n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int p = 0; p < n; ++p) {
        for (int c = 0; c < static_cast<int>(alphabet->size()); ++c) {
            for (int q = 0; q < n; ++q) {
                if (coin(rng) < edge_prob) a.add_transition(p, c, q);
            }
        }
    }
    a.add_initial(0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    a.add_accepting(pick(rng));
    if (coin(rng) < 0.3) a.add_accepting(pick(rng));
    return a;
}

}  // namespace splice::testing
