#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "splice/nfa.hpp"

namespace splice::io {

// Parsed alphabet file: the symbol table plus the involution, when present.
struct AlphabetSpec {
    AlphabetPtr alphabet;
    std::optional<Involution> theta;
};

// JSON file formats. Every emitted document carries a "format": 1 field;
// readers accept a missing field and reject any other version. All readers
// throw std::invalid_argument on malformed input.
AlphabetSpec read_alphabet(std::istream& in);
std::string write_alphabet(const AlphabetPtr& alphabet, const Involution* theta);

ContextSet read_contexts(std::istream& in, const AlphabetPtr& alphabet);
std::string write_contexts(const ContextSet& contexts, const AlphabetPtr& alphabet);

std::vector<Word> read_words(std::istream& in, const AlphabetPtr& alphabet);
std::string write_words(const std::vector<Word>& words, const AlphabetPtr& alphabet);

// Automaton files embed their symbol table (plus the involution for
// hairpin-based constructions, so the file can seed a later run); reading
// falls back to `fallback` when the file has none. The empty label is
// reserved for internal epsilon edges and rejected in files. The
// "deletions" block is annotation only (which deletion construction
// justified which jump) and is not read back.
Nfa read_automaton(std::istream& in, const AlphabetPtr& fallback);
std::string write_automaton(const Nfa& a, const ContextSet& contexts,
                            const Involution* theta = nullptr);

// Graphviz export; deletion edges are dashed and labeled del:(alpha,beta).
std::string write_dot(const Nfa& a, const ContextSet& contexts);

// Single-character alphabet inferred from the distinct non-space characters
// of the given texts, in character order.
AlphabetPtr infer_alphabet(const std::vector<std::string>& texts);

// Every string value in a JSON document, in document order. Used to feed
// infer_alphabet with the words of a file before an alphabet exists.
std::vector<std::string> json_strings(const std::string& text);

// The alphabet a file carries alongside its payload (a "symbols" key with
// optional "theta"), if any. Lets one emitted instance file serve as the
// alphabet, word, and context input of a later run.
std::optional<AlphabetSpec> embedded_alphabet(const std::string& text);

}  // namespace splice::io
