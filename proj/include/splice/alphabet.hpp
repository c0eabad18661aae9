#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace splice {

// Letters are indices into an Alphabet's symbol table.
using Letter = int32_t;
using Word = std::vector<Letter>;

// Raised when an operation would exceed a configured resource budget.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Ordered set of distinct printable tokens. Tokens may span several
// characters ("#s"); words are parsed by greedy longest match, and
// whitespace always separates tokens.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols);

    size_t size() const { return symbols_.size(); }
    const std::string& symbol(Letter a) const { return symbols_.at(static_cast<size_t>(a)); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    std::optional<Letter> find(const std::string& token) const;
    Letter letter(const std::string& token) const;

    Word parse(const std::string& text) const;
    std::string format(const Word& w) const;

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<std::string> symbols_;
    std::map<std::string, Letter> index_;
    size_t max_token_len_ = 0;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

// Antimorphic involution: a self-inverse letter permutation extended to
// words by theta(wa) = theta(a) theta(w).
class Involution {
public:
    Involution(AlphabetPtr alphabet, std::vector<Letter> image);

    const AlphabetPtr& alphabet() const { return alphabet_; }
    Letter operator()(Letter a) const { return image_.at(static_cast<size_t>(a)); }
    Word operator()(const Word& w) const;

private:
    AlphabetPtr alphabet_;
    std::vector<Letter> image_;
};

// A deletion context: left part alpha, right part beta. Either may be empty.
struct Context {
    Word left;
    Word right;

    bool operator==(const Context& other) const = default;
};

// Deduplicated context list in canonical order (length-lex on left, then right).
class ContextSet {
public:
    ContextSet() = default;
    explicit ContextSet(std::vector<Context> contexts);

    const std::vector<Context>& items() const { return contexts_; }
    bool empty() const { return contexts_.empty(); }
    size_t size() const { return contexts_.size(); }
    const Context& operator[](size_t i) const { return contexts_.at(i); }

private:
    std::vector<Context> contexts_;
};

// The four-letter RNA alphabet A, C, G, U.
AlphabetPtr rna_alphabet();

// Watson-Crick complement (A<->U, C<->G) over rna_alphabet().
Involution wc_involution();
Involution wc_involution(const AlphabetPtr& alphabet);

// theta applied to a word; same as inv(w), provided for symmetry with the
// letter-level call sites.
Word theta_apply(const Involution& inv, const Word& w);

// Start positions of all (possibly overlapping) occurrences of `factor` in
// `w`, ascending. The empty factor occurs at every position 0..|w|.
std::vector<size_t> factor_occurrences(const Word& w, const Word& factor);

// true when `factor` occurs in w[from..to).
bool occurs_within(const Word& w, const Word& factor, size_t from, size_t to);

// Length-lex order: shorter first, then lexicographic by letter index.
bool length_lex_less(const Word& a, const Word& b);

}  // namespace splice
