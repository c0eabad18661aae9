#include "splice/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

namespace splice::io {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

json parse_stream(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
}

void check_format(const json& j, const char* what) {
    if (!j.is_object())
        throw std::invalid_argument(std::string(what) + ": expected a JSON object");
    if (!j.contains("format")) return;
    const json& f = j.at("format");
    if (!f.is_number_integer() || f.get<int>() != 1)
        throw std::invalid_argument(std::string(what) + ": unsupported format version");
}

std::string as_string(const json& j, const char* what) {
    if (!j.is_string())
        throw std::invalid_argument(std::string(what) + " must be a string");
    return j.get<std::string>();
}

int as_state(const json& j, int num_states, const char* what) {
    if (!j.is_number_integer())
        throw std::invalid_argument(std::string(what) + " must be an integer");
    long long q = j.get<long long>();
    if (q < 0 || q >= num_states)
        throw std::invalid_argument(std::string(what) + " out of range: " + std::to_string(q));
    return static_cast<int>(q);
}

}  // namespace

AlphabetSpec read_alphabet(std::istream& in) {
    json j = parse_stream(in);
    check_format(j, "alphabet file");
    if (!j.contains("symbols") || !j.at("symbols").is_array())
        throw std::invalid_argument("alphabet file: missing \"symbols\" array");
    std::vector<std::string> symbols;
    for (const json& s : j.at("symbols")) symbols.push_back(as_string(s, "symbol"));
    auto alphabet = std::make_shared<const Alphabet>(std::move(symbols));

    AlphabetSpec spec{alphabet, std::nullopt};
    if (j.contains("theta")) {
        const json& t = j.at("theta");
        if (!t.is_object())
            throw std::invalid_argument("alphabet file: \"theta\" must map symbols to symbols");
        std::vector<Letter> image(alphabet->size(), -1);
        for (const auto& [key, value] : t.items()) {
            auto from = alphabet->find(key);
            if (!from)
                throw std::invalid_argument("theta maps unknown symbol \"" + key + "\"");
            auto to = alphabet->find(as_string(value, "theta image"));
            if (!to)
                throw std::invalid_argument("theta image of \"" + key + "\" is not a symbol");
            image[static_cast<size_t>(*from)] = *to;
        }
        for (size_t i = 0; i < image.size(); ++i)
            if (image[i] < 0)
                throw std::invalid_argument("theta leaves symbol \"" + alphabet->symbol(static_cast<Letter>(i)) + "\" unmapped");
        spec.theta.emplace(alphabet, std::move(image));
    }
    return spec;
}

std::string write_alphabet(const AlphabetPtr& alphabet, const Involution* theta) {
    ojson j;
    j["format"] = 1;
    j["symbols"] = alphabet->symbols();
    if (theta) {
        ojson t = ojson::object();
        for (size_t i = 0; i < alphabet->size(); ++i) {
            Letter a = static_cast<Letter>(i);
            t[alphabet->symbol(a)] = alphabet->symbol((*theta)(a));
        }
        j["theta"] = std::move(t);
    }
    return j.dump(2) + "\n";
}

ContextSet read_contexts(std::istream& in, const AlphabetPtr& alphabet) {
    json j = parse_stream(in);
    check_format(j, "contexts file");
    if (!j.contains("contexts") || !j.at("contexts").is_array())
        throw std::invalid_argument("contexts file: missing \"contexts\" array");
    std::vector<Context> items;
    for (const json& pair : j.at("contexts")) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("each context must be a [left, right] pair");
        items.push_back(Context{alphabet->parse(as_string(pair.at(0), "context side")),
                                alphabet->parse(as_string(pair.at(1), "context side"))});
    }
    return ContextSet(std::move(items));
}

std::string write_contexts(const ContextSet& contexts, const AlphabetPtr& alphabet) {
    ojson j;
    j["format"] = 1;
    ojson list = ojson::array();
    for (size_t i = 0; i < contexts.size(); ++i)
        list.push_back({alphabet->format(contexts[i].left), alphabet->format(contexts[i].right)});
    j["contexts"] = std::move(list);
    return j.dump(2) + "\n";
}

std::vector<Word> read_words(std::istream& in, const AlphabetPtr& alphabet) {
    json j = parse_stream(in);
    check_format(j, "word file");
    if (!j.contains("words") || !j.at("words").is_array())
        throw std::invalid_argument("word file: missing \"words\" array");
    std::vector<Word> words;
    for (const json& s : j.at("words")) words.push_back(alphabet->parse(as_string(s, "word")));
    return words;
}

std::string write_words(const std::vector<Word>& words, const AlphabetPtr& alphabet) {
    ojson j;
    j["format"] = 1;
    ojson list = ojson::array();
    for (const Word& w : words) list.push_back(alphabet->format(w));
    j["words"] = std::move(list);
    return j.dump(2) + "\n";
}

Nfa read_automaton(std::istream& in, const AlphabetPtr& fallback) {
    json j = parse_stream(in);
    check_format(j, "automaton file");

    AlphabetPtr alphabet = fallback;
    if (j.contains("symbols")) {
        if (!j.at("symbols").is_array())
            throw std::invalid_argument("automaton file: \"symbols\" must be an array");
        std::vector<std::string> symbols;
        for (const json& s : j.at("symbols")) symbols.push_back(as_string(s, "symbol"));
        alphabet = std::make_shared<const Alphabet>(std::move(symbols));
    }
    if (!alphabet)
        throw std::invalid_argument("automaton file has no \"symbols\" and no alphabet was supplied");

    if (!j.contains("states") || !j.at("states").is_number_integer())
        throw std::invalid_argument("automaton file: missing integer \"states\"");
    long long n = j.at("states").get<long long>();
    if (n < 0 || n > (1LL << 30))
        throw std::invalid_argument("automaton file: state count out of range");

    Nfa a(alphabet, static_cast<int>(n));
    for (const char* key : {"initial", "accepting"}) {
        if (!j.contains(key) || !j.at(key).is_array())
            throw std::invalid_argument(std::string("automaton file: missing \"") + key + "\" array");
        for (const json& q : j.at(key)) {
            int state = as_state(q, a.num_states(), key);
            if (key[0] == 'i')
                a.add_initial(state);
            else
                a.add_accepting(state);
        }
    }

    if (j.contains("transitions")) {
        if (!j.at("transitions").is_array())
            throw std::invalid_argument("automaton file: \"transitions\" must be an array");
        for (const json& t : j.at("transitions")) {
            if (!t.is_object())
                throw std::invalid_argument("each transition must be an object");
            std::string label = as_string(t.at("label"), "transition label");
            if (label.empty())
                throw std::invalid_argument("empty transition label: epsilon edges are internal only");
            auto letter = alphabet->find(label);
            if (!letter)
                throw std::invalid_argument("transition label \"" + label + "\" is not a symbol");
            a.add_transition(as_state(t.at("from"), a.num_states(), "transition \"from\""),
                             *letter,
                             as_state(t.at("to"), a.num_states(), "transition \"to\""));
        }
    }
    // A "deletions" block is annotation emitted by the closure constructions;
    // it carries no language information and is ignored here.
    return a;
}

std::string write_automaton(const Nfa& a, const ContextSet& contexts, const Involution* theta) {
    const Alphabet& sigma = *a.alphabet();
    ojson j;
    j["format"] = 1;
    j["symbols"] = sigma.symbols();
    if (theta) {
        if (!(*theta->alphabet() == sigma))
            throw std::invalid_argument("involution is over a different alphabet than the automaton");
        ojson t = ojson::object();
        for (size_t i = 0; i < sigma.size(); ++i) {
            Letter x = static_cast<Letter>(i);
            t[sigma.symbol(x)] = sigma.symbol((*theta)(x));
        }
        j["theta"] = std::move(t);
    }
    j["states"] = a.num_states();
    j["initial"] = std::vector<int>(a.initial().begin(), a.initial().end());
    j["accepting"] = std::vector<int>(a.accepting().begin(), a.accepting().end());

    std::vector<NfaTransition> ts = a.transitions();
    std::sort(ts.begin(), ts.end());
    ojson list = ojson::array();
    for (const NfaTransition& t : ts) {
        ojson entry;
        entry["from"] = t.from;
        entry["label"] = sigma.symbol(t.label);
        entry["to"] = t.to;
        list.push_back(std::move(entry));
    }
    j["transitions"] = std::move(list);

    std::vector<DeletionEdge> dels = a.deletion_edges();
    if (!dels.empty()) {
        std::sort(dels.begin(), dels.end(), [](const DeletionEdge& x, const DeletionEdge& y) {
            return std::tie(x.from, x.to, x.context) < std::tie(y.from, y.to, y.context);
        });
        ojson annot = ojson::array();
        for (const DeletionEdge& d : dels) {
            ojson entry;
            entry["from"] = d.from;
            entry["to"] = d.to;
            if (d.context < contexts.size()) {
                entry["left"] = sigma.format(contexts[d.context].left);
                entry["right"] = sigma.format(contexts[d.context].right);
            }
            annot.push_back(std::move(entry));
        }
        j["deletions"] = std::move(annot);
    }
    return j.dump(2) + "\n";
}

std::string write_dot(const Nfa& a, const ContextSet& contexts) {
    const Alphabet& sigma = *a.alphabet();
    std::ostringstream out;
    out << "digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (int q : a.accepting()) out << "  " << q << " [shape=doublecircle];\n";
    int start = 0;
    for (int q : a.initial()) {
        out << "  start" << start << " [shape=none, label=\"\"];\n";
        out << "  start" << start << " -> " << q << ";\n";
        ++start;
    }

    // Merge parallel letter edges into one arrow with a joined label.
    std::vector<NfaTransition> ts = a.transitions();
    std::sort(ts.begin(), ts.end());
    std::map<std::pair<int, int>, std::vector<std::string>> merged;
    for (const NfaTransition& t : ts)
        merged[{t.from, t.to}].push_back(sigma.symbol(t.label));
    for (const auto& [edge, labels] : merged) {
        out << "  " << edge.first << " -> " << edge.second << " [label=\"";
        for (size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
        out << "\"];\n";
    }

    std::vector<DeletionEdge> dels = a.deletion_edges();
    std::sort(dels.begin(), dels.end(), [](const DeletionEdge& x, const DeletionEdge& y) {
        return std::tie(x.from, x.to, x.context) < std::tie(y.from, y.to, y.context);
    });
    for (const DeletionEdge& d : dels) {
        out << "  " << d.from << " -> " << d.to << " [style=dashed, label=\"del:(";
        if (d.context < contexts.size())
            out << sigma.format(contexts[d.context].left) << ","
                << sigma.format(contexts[d.context].right);
        out << ")\"];\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

void collect_strings(const json& j, std::vector<std::string>& out) {
    if (j.is_string())
        out.push_back(j.get<std::string>());
    else if (j.is_array() || j.is_object())
        for (const json& child : j) collect_strings(child, out);
}

}  // namespace

std::vector<std::string> json_strings(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    std::vector<std::string> out;
    collect_strings(j, out);
    return out;
}

std::optional<AlphabetSpec> embedded_alphabet(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("symbols")) return std::nullopt;
    std::istringstream in(text);
    return read_alphabet(in);
}

AlphabetPtr infer_alphabet(const std::vector<std::string>& texts) {
    std::set<char> chars;
    for (const std::string& text : texts)
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) chars.insert(c);
    if (chars.empty())
        throw std::invalid_argument("cannot infer an alphabet from empty input; pass --alphabet");
    std::vector<std::string> symbols;
    for (char c : chars) symbols.emplace_back(1, c);
    return std::make_shared<const Alphabet>(std::move(symbols));
}

}  // namespace splice::io
