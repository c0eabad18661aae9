#include "splice/alphabet.hpp"

#include <algorithm>
#include <cctype>

namespace splice {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must not be empty");
    for (size_t i = 0; i < symbols_.size(); ++i) {
        const std::string& s = symbols_[i];
        if (s.empty()) throw std::invalid_argument("alphabet token must not be empty");
        for (char c : s) {
            if (!std::isprint(static_cast<unsigned char>(c)) || std::isspace(static_cast<unsigned char>(c)))
                throw std::invalid_argument("alphabet token must be printable and free of whitespace: \"" + s + "\"");
        }
        if (!index_.emplace(s, static_cast<Letter>(i)).second)
            throw std::invalid_argument("duplicate alphabet token \"" + s + "\"");
        max_token_len_ = std::max(max_token_len_, s.size());
    }
}

std::optional<Letter> Alphabet::find(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Letter Alphabet::letter(const std::string& token) const {
    auto a = find(token);
    if (!a) throw std::invalid_argument("unknown token \"" + token + "\"");
    return *a;
}

Word Alphabet::parse(const std::string& text) const {
    Word w;
    size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        // greedy longest match
        size_t best = 0;
        Letter letter = -1;
        size_t limit = std::min(max_token_len_, text.size() - i);
        for (size_t len = 1; len <= limit; ++len) {
            auto it = index_.find(text.substr(i, len));
            if (it != index_.end()) {
                best = len;
                letter = it->second;
            }
        }
        if (best == 0)
            throw std::invalid_argument("cannot tokenize \"" + text + "\" at offset " + std::to_string(i));
        w.push_back(letter);
        i += best;
    }
    return w;
}

std::string Alphabet::format(const Word& w) const {
    std::string out;
    for (Letter a : w) out += symbol(a);
    return out;
}

Involution::Involution(AlphabetPtr alphabet, std::vector<Letter> image)
    : alphabet_(std::move(alphabet)), image_(std::move(image)) {
    if (!alphabet_) throw std::invalid_argument("involution needs an alphabet");
    if (image_.size() != alphabet_->size())
        throw std::invalid_argument("involution image size mismatch");
    for (size_t i = 0; i < image_.size(); ++i) {
        Letter j = image_[i];
        if (j < 0 || static_cast<size_t>(j) >= image_.size())
            throw std::invalid_argument("involution image out of range");
        if (image_[static_cast<size_t>(j)] != static_cast<Letter>(i))
            throw std::invalid_argument("involution must be self-inverse");
    }
}

Word Involution::operator()(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back((*this)(*it));
    return out;
}

ContextSet::ContextSet(std::vector<Context> contexts) : contexts_(std::move(contexts)) {
    std::sort(contexts_.begin(), contexts_.end(), [](const Context& a, const Context& b) {
        if (a.left != b.left) return length_lex_less(a.left, b.left);
        return length_lex_less(a.right, b.right);
    });
    contexts_.erase(std::unique(contexts_.begin(), contexts_.end()), contexts_.end());
}

AlphabetPtr rna_alphabet() {
    static const AlphabetPtr rna = std::make_shared<Alphabet>(std::vector<std::string>{"A", "C", "G", "U"});
    return rna;
}

Involution wc_involution() { return wc_involution(rna_alphabet()); }

Involution wc_involution(const AlphabetPtr& alphabet) {
    static const std::map<std::string, std::string> pairs{
        {"A", "U"}, {"U", "A"}, {"C", "G"}, {"G", "C"}};
    std::vector<Letter> image(alphabet->size());
    for (size_t i = 0; i < alphabet->size(); ++i) {
        auto it = pairs.find(alphabet->symbol(static_cast<Letter>(i)));
        if (it == pairs.end())
            throw std::invalid_argument("Watson-Crick pairing needs the A/C/G/U tokens");
        image[i] = alphabet->letter(it->second);
    }
    return Involution(alphabet, std::move(image));
}

Word theta_apply(const Involution& inv, const Word& w) { return inv(w); }

std::vector<size_t> factor_occurrences(const Word& w, const Word& factor) {
    std::vector<size_t> hits;
    if (factor.empty()) {
        for (size_t i = 0; i <= w.size(); ++i) hits.push_back(i);
        return hits;
    }
    if (factor.size() > w.size()) return hits;
    for (size_t i = 0; i + factor.size() <= w.size(); ++i) {
        if (std::equal(factor.begin(), factor.end(), w.begin() + static_cast<ptrdiff_t>(i)))
            hits.push_back(i);
    }
    return hits;
}

bool occurs_within(const Word& w, const Word& factor, size_t from, size_t to) {
    to = std::min(to, w.size());
    if (from > to) return false;
    if (factor.empty()) return true;
    if (to - from < factor.size()) return false;
    for (size_t i = from; i + factor.size() <= to; ++i) {
        if (std::equal(factor.begin(), factor.end(), w.begin() + static_cast<ptrdiff_t>(i))) return true;
    }
    return false;
}

bool length_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace splice
