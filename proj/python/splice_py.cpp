#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>

#include "splice/io.hpp"
#include "splice/solvers.hpp"

namespace py = pybind11;
using namespace splice;

namespace {

// pybind11 holders want a mutable shared_ptr; Alphabet is immutable, so the
// const cast only ever feeds the holder.
std::shared_ptr<Alphabet> unconst(const AlphabetPtr& p) {
    return std::const_pointer_cast<Alphabet>(p);
}

using ContextPairs = std::vector<std::pair<std::string, std::string>>;

// Shared keyword plumbing: an explicit alphabet wins; otherwise lariat-flavored
// calls fall back to RNA with Watson-Crick pairing and bracketed ones infer
// single-character symbols from the words in sight.
struct Resolved {
    AlphabetPtr alphabet;
    std::optional<Involution> theta;
};

Resolved resolve(const std::shared_ptr<Alphabet>& alphabet, const std::optional<Involution>& theta,
                 bool need_theta, const std::vector<std::string>& texts,
                 const ContextPairs& contexts) {
    Resolved r;
    if (alphabet) {
        r.alphabet = alphabet;
        if (theta) {
            if (!(*theta->alphabet() == *alphabet))
                throw std::invalid_argument("theta is over a different alphabet");
            r.theta = theta;
        }
    } else if (theta) {
        r.alphabet = theta->alphabet();
        r.theta = theta;
    } else if (need_theta) {
        r.alphabet = rna_alphabet();
    } else {
        std::vector<std::string> all = texts;
        for (const auto& [l, rr] : contexts) {
            all.push_back(l);
            all.push_back(rr);
        }
        r.alphabet = io::infer_alphabet(all);
    }
    if (need_theta && !r.theta) {
        if (*r.alphabet == *rna_alphabet())
            r.theta = wc_involution(r.alphabet);
        else
            throw std::invalid_argument("this operation needs an involution; pass theta=");
    }
    return r;
}

ContextSet make_contexts(const AlphabetPtr& alphabet, const ContextPairs& pairs) {
    std::vector<Context> items;
    items.reserve(pairs.size());
    for (const auto& [l, r] : pairs) items.push_back({alphabet->parse(l), alphabet->parse(r)});
    return ContextSet(std::move(items));
}

py::object step_results(const std::vector<StepResult>& results, const Alphabet& sigma,
                        const ContextSet& contexts, bool trace) {
    if (!trace) {
        py::list words;
        for (const StepResult& r : results) words.append(sigma.format(r.word));
        return words;
    }
    py::list out;
    for (const StepResult& r : results) {
        py::list steps;
        for (const DeletionEvent& e : r.trace.steps) {
            py::dict ev;
            ev["begin"] = e.begin;
            ev["end"] = e.end;
            ev["left"] = sigma.format(contexts[e.context].left);
            ev["right"] = sigma.format(contexts[e.context].right);
            steps.append(std::move(ev));
        }
        py::dict entry;
        entry["word"] = sigma.format(r.word);
        entry["trace"] = std::move(steps);
        out.append(std::move(entry));
    }
    return out;
}

DeletionKind to_kind(const std::string& op, bool greedy) {
    if (op == "bracketed-step")
        return greedy ? DeletionKind::BracketedStepGreedy : DeletionKind::BracketedStep;
    if (op == "bracketed-closure")
        return greedy ? DeletionKind::BracketedClosureGreedy : DeletionKind::BracketedClosure;
    if (greedy) throw std::invalid_argument("greedy applies only to bracketed operations");
    if (op == "lariat-step") return DeletionKind::LariatOneStep;
    if (op == "lariat-parallel") return DeletionKind::LariatParallel;
    throw std::invalid_argument("unknown operation: " + op);
}

ProblemInstance build_instance(const std::vector<std::string>& targets, const ContextPairs& contexts,
                               const std::string& op, bool greedy,
                               const std::optional<EnergyModel>& model, int64_t gap,
                               const std::shared_ptr<Alphabet>& alphabet,
                               const std::optional<Involution>& theta) {
    bool lariat = op.rfind("lariat", 0) == 0;
    DeletionKind kind = to_kind(op, greedy);
    Resolved r = resolve(alphabet, theta, lariat, targets, contexts);
    ContextSet ctxs = make_contexts(r.alphabet, contexts);
    std::vector<Word> words;
    words.reserve(targets.size());
    for (const std::string& t : targets) words.push_back(r.alphabet->parse(t));
    if (!lariat) {
        if (model) throw std::invalid_argument("model applies only to lariat operations");
        return ProblemInstance::bracketed(r.alphabet, std::move(words), std::move(ctxs), kind);
    }
    LariatParams params{model.value_or(EnergyModel::con(1)), gap, std::move(ctxs), *r.theta};
    return ProblemInstance::lariat_op(r.alphabet, std::move(words), std::move(params), kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact engine for contextual and hairpin (lariat) deletion operations";

    py::class_<Alphabet, std::shared_ptr<Alphabet>>(m, "Alphabet")
        .def(py::init([](const std::vector<std::string>& symbols) {
                 return std::make_shared<Alphabet>(symbols);
             }),
             py::arg("symbols"))
        .def_property_readonly("symbols", &Alphabet::symbols)
        .def("__len__", &Alphabet::size)
        .def("parse", [](const Alphabet& a, const std::string& text) { return a.parse(text); },
             py::arg("text"), "tokenize into letter indices")
        .def("format", &Alphabet::format, py::arg("letters"))
        .def("__eq__", [](const Alphabet& a, const Alphabet& b) { return a == b; })
        .def("__repr__", [](const Alphabet& a) {
            std::ostringstream out;
            out << "Alphabet([";
            for (size_t i = 0; i < a.size(); ++i)
                out << (i ? ", " : "") << "'" << a.symbol(static_cast<Letter>(i)) << "'";
            out << "])";
            return out.str();
        });

    m.def("rna_alphabet", [] { return unconst(rna_alphabet()); },
          "the A, C, G, U alphabet");

    py::class_<Involution>(m, "Involution")
        .def(py::init([](const std::shared_ptr<Alphabet>& alphabet,
                         const std::map<std::string, std::string>& image) {
                 std::vector<Letter> img(alphabet->size(), -1);
                 for (const auto& [from, to] : image)
                     img[static_cast<size_t>(alphabet->letter(from))] = alphabet->letter(to);
                 for (size_t i = 0; i < img.size(); ++i)
                     if (img[i] < 0)
                         throw std::invalid_argument(
                             "involution leaves \"" + alphabet->symbol(static_cast<Letter>(i)) + "\" unmapped");
                 return Involution(alphabet, std::move(img));
             }),
             py::arg("alphabet"), py::arg("image"))
        .def_property_readonly("alphabet",
                               [](const Involution& t) { return unconst(t.alphabet()); })
        .def("__call__", [](const Involution& t, const std::string& text) {
            return t.alphabet()->format(t(t.alphabet()->parse(text)));
        }, py::arg("word"), "antimorphic image: reverse and map every letter");

    m.def("wc_involution", [] { return wc_involution(); },
          "Watson-Crick pairing A<->U, C<->G over the RNA alphabet");

    py::class_<EnergyModel>(m, "EnergyModel")
        .def_static("con", &EnergyModel::con, py::arg("c"))
        .def_static("lin", &EnergyModel::lin, py::arg("d1"), py::arg("d2"), py::arg("d"))
        .def_static("log", &EnergyModel::log, py::arg("d1"), py::arg("d2"), py::arg("d"))
        .def("__eq__", [](const EnergyModel& a, const EnergyModel& b) { return a == b; })
        .def("__repr__", &EnergyModel::describe);

    m.def(
        "is_stable_hairpin",
        [](const std::string& word, const EnergyModel& model,
           const std::shared_ptr<Alphabet>& alphabet, const std::optional<Involution>& theta,
           size_t min_stem) -> std::optional<std::pair<size_t, size_t>> {
            Resolved r = resolve(alphabet, theta, true, {word}, {});
            auto dec = is_stable_hairpin(r.alphabet->parse(word), model, *r.theta, min_stem);
            if (!dec) return std::nullopt;
            return std::make_pair(dec->stem, dec->loop);
        },
        py::arg("word"), py::arg("model"), py::arg("alphabet") = nullptr,
        py::arg("theta") = std::nullopt, py::arg("min_stem") = 0,
        "the maximal-stem decomposition (stem, loop) if the word is a stable hairpin");

    m.def(
        "max_stem",
        [](const std::string& word, const std::shared_ptr<Alphabet>& alphabet,
           const std::optional<Involution>& theta) {
            Resolved r = resolve(alphabet, theta, true, {word}, {});
            return max_stem(r.alphabet->parse(word), *r.theta);
        },
        py::arg("word"), py::arg("alphabet") = nullptr, py::arg("theta") = std::nullopt);

    m.def(
        "apply",
        [](const std::string& op, const std::string& word, const ContextPairs& contexts,
           bool greedy, const std::optional<EnergyModel>& model, int64_t gap,
           const std::shared_ptr<Alphabet>& alphabet, const std::optional<Involution>& theta,
           bool trace, bool include_source, size_t budget) {
            bool lariat = op.rfind("lariat", 0) == 0;
            to_kind(op, greedy);  // validates the name / greedy combination
            Resolved r = resolve(alphabet, theta, lariat, {word}, contexts);
            ContextSet ctxs = make_contexts(r.alphabet, contexts);
            Word w = r.alphabet->parse(word);
            std::vector<StepResult> results;
            if (op == "bracketed-step") {
                results = bracketed_step(w, ctxs, greedy);
            } else if (op == "bracketed-closure") {
                results = bracketed_closure(w, ctxs, greedy, budget ? budget : size_t{1} << 20);
            } else {
                LariatParams params{model.value_or(EnergyModel::con(1)), gap, ctxs, *r.theta};
                if (op == "lariat-step") {
                    results = lariat_one_step(w, params);
                } else {
                    results = lariat_parallel(w, params, budget ? budget : size_t{1} << 22);
                    if (include_source) {
                        bool present = false;
                        for (const StepResult& s : results) present |= s.word == w;
                        if (!present) results.push_back({w, {}});
                    }
                }
            }
            return step_results(results, *r.alphabet, ctxs, trace);
        },
        py::arg("op"), py::arg("word"), py::arg("contexts"), py::arg("greedy") = false,
        py::arg("model") = std::nullopt, py::arg("gap") = 0, py::arg("alphabet") = nullptr,
        py::arg("theta") = std::nullopt, py::arg("trace") = false,
        py::arg("include_source") = false, py::arg("budget") = 0,
        "apply a deletion operation; op is bracketed-step | bracketed-closure | "
        "lariat-step | lariat-parallel");

    py::class_<Nfa>(m, "Nfa")
        .def_property_readonly("num_states", &Nfa::num_states)
        .def_property_readonly("alphabet", [](const Nfa& a) { return unconst(a.alphabet()); })
        .def("accepts",
             [](const Nfa& a, const std::string& word) {
                 return accepts(a, a.alphabet()->parse(word));
             },
             py::arg("word"))
        .def("enumerate",
             [](const Nfa& a, size_t max_len) {
                 std::vector<std::string> out;
                 for (const Word& w : enumerate_language(a, max_len))
                     out.push_back(a.alphabet()->format(w));
                 return out;
             },
             py::arg("max_len"), "all accepted words up to the length, length-lex sorted")
        .def("to_json",
             [](const Nfa& a, const ContextPairs& contexts, const std::optional<Involution>& theta) {
                 return io::write_automaton(a, make_contexts(a.alphabet(), contexts),
                                            theta ? &*theta : nullptr);
             },
             py::arg("contexts") = ContextPairs{}, py::arg("theta") = std::nullopt)
        .def("to_dot",
             [](const Nfa& a, const ContextPairs& contexts) {
                 return io::write_dot(a, make_contexts(a.alphabet(), contexts));
             },
             py::arg("contexts") = ContextPairs{})
        .def("__repr__", [](const Nfa& a) {
            std::ostringstream out;
            out << "Nfa(states=" << a.num_states() << ", transitions=" << a.transition_count()
                << ")";
            return out.str();
        });

    m.def(
        "nfa_from_json",
        [](const std::string& text, const std::shared_ptr<Alphabet>& alphabet) {
            std::istringstream in(text);
            return io::read_automaton(in, alphabet);
        },
        py::arg("text"), py::arg("alphabet") = nullptr);

    m.def(
        "word_nfa",
        [](const std::string& word, const std::shared_ptr<Alphabet>& alphabet) {
            Resolved r = resolve(alphabet, std::nullopt, false, {word}, {});
            return word_dfa(r.alphabet, r.alphabet->parse(word));
        },
        py::arg("word"), py::arg("alphabet") = nullptr);

    m.def(
        "finite_language_nfa",
        [](const std::vector<std::string>& words, const std::shared_ptr<Alphabet>& alphabet) {
            Resolved r = resolve(alphabet, std::nullopt, false, words, {});
            std::vector<Word> ws;
            for (const std::string& w : words) ws.push_back(r.alphabet->parse(w));
            return finite_language_nfa(r.alphabet, std::move(ws));
        },
        py::arg("words"), py::arg("alphabet") = nullptr);

    m.def(
        "closure_nfa",
        [](const std::string& word, const ContextPairs& contexts, bool greedy,
           const std::shared_ptr<Alphabet>& alphabet, size_t states) {
            Resolved r = resolve(alphabet, std::nullopt, false, {word}, contexts);
            return bracketed_closure_nfa(r.alphabet, r.alphabet->parse(word),
                                         make_contexts(r.alphabet, contexts), greedy, states);
        },
        py::arg("word"), py::arg("contexts"), py::arg("greedy") = false,
        py::arg("alphabet") = nullptr, py::arg("states") = kDefaultStateBudget,
        "automaton of the bracketed deletion closure of one word");

    m.def(
        "closure_nfa_regular",
        [](const Nfa& a, const ContextPairs& contexts, bool greedy, size_t states) {
            return regular_closure_bracketed(a, make_contexts(a.alphabet(), contexts), greedy,
                                             states);
        },
        py::arg("nfa"), py::arg("contexts"), py::arg("greedy") = false,
        py::arg("states") = kDefaultStateBudget);

    m.def(
        "lariat_nfa",
        [](const std::string& word, const ContextPairs& contexts, const EnergyModel& model,
           int64_t gap, const std::string& mode, const std::shared_ptr<Alphabet>& alphabet,
           const std::optional<Involution>& theta, bool include_source) {
            if (mode != "step" && mode != "parallel")
                throw std::invalid_argument("mode must be step or parallel");
            Resolved r = resolve(alphabet, theta, true, {word}, contexts);
            LariatParams params{model, gap, make_contexts(r.alphabet, contexts), *r.theta};
            return lariat_set_nfa(r.alphabet->parse(word), params,
                                  mode == "step" ? LariatMode::OneStep : LariatMode::Parallel,
                                  include_source);
        },
        py::arg("word"), py::arg("contexts"), py::arg("model"), py::arg("gap") = 0,
        py::arg("mode") = "step", py::arg("alphabet") = nullptr, py::arg("theta") = std::nullopt,
        py::arg("include_source") = false,
        "automaton of the lariat deletion set of one word");

    m.def(
        "lariat_nfa_regular",
        [](const Nfa& a, const ContextPairs& contexts, const EnergyModel& model, int64_t gap,
           const std::string& mode, const std::optional<Involution>& theta, bool include_source,
           size_t states) {
            if (mode != "step" && mode != "parallel")
                throw std::invalid_argument("mode must be step or parallel");
            std::optional<Involution> th = theta;
            if (!th) {
                if (*a.alphabet() == *rna_alphabet())
                    th = wc_involution(a.alphabet());
                else
                    throw std::invalid_argument("this operation needs an involution; pass theta=");
            }
            LariatParams params{model, gap, make_contexts(a.alphabet(), contexts), *th};
            return regular_closure_lariat(a, params,
                                          mode == "step" ? LariatMode::OneStep : LariatMode::Parallel,
                                          include_source, states);
        },
        py::arg("nfa"), py::arg("contexts"), py::arg("model"), py::arg("gap") = 0,
        py::arg("mode") = "step", py::arg("theta") = std::nullopt,
        py::arg("include_source") = false, py::arg("states") = kDefaultStateBudget);

    m.def(
        "verify_template",
        [](const std::string& template_word, const std::vector<std::string>& targets,
           const ContextPairs& contexts, const std::string& op, bool greedy,
           const std::optional<EnergyModel>& model, int64_t gap,
           const std::shared_ptr<Alphabet>& alphabet, const std::optional<Involution>& theta) {
            std::vector<std::string> texts = targets;
            texts.push_back(template_word);
            ProblemInstance inst =
                build_instance(texts, contexts, op, greedy, model, gap, alphabet, theta);
            inst.targets.pop_back();  // the template rode along for alphabet inference
            inst.template_word = inst.alphabet->parse(template_word);
            VerifyResult res = verify_template(inst);
            py::dict out;
            out["ok"] = res.ok;
            py::list missing;
            for (size_t i = 0; i < inst.targets.size(); ++i)
                if (!res.member[i]) missing.append(inst.alphabet->format(inst.targets[i]));
            out["missing"] = std::move(missing);
            return out;
        },
        py::arg("template_word"), py::arg("targets"), py::arg("contexts"),
        py::arg("op") = "bracketed-closure", py::arg("greedy") = false,
        py::arg("model") = std::nullopt, py::arg("gap") = 0, py::arg("alphabet") = nullptr,
        py::arg("theta") = std::nullopt,
        "does the template derive every target under the operation?");

    m.def(
        "exact_template",
        [](const std::vector<std::string>& targets, const ContextPairs& contexts, bool greedy,
           const std::shared_ptr<Alphabet>& alphabet) -> py::object {
            ProblemInstance inst = build_instance(targets, contexts, "bracketed-closure", greedy,
                                                  std::nullopt, 0, alphabet, std::nullopt);
            ExactResult res = exact_constructability(inst);
            py::dict out;
            out["found"] = res.status == ExactStatus::Found;
            if (res.template_word) out["template"] = inst.alphabet->format(*res.template_word);
            switch (res.status) {
                case ExactStatus::Found: break;
                case ExactStatus::AmbiguousLongest: out["reason"] = "ambiguous-longest"; break;
                case ExactStatus::MissingTarget: out["reason"] = "missing-target"; break;
                case ExactStatus::ExtraWord: out["reason"] = "extra-word"; break;
            }
            if (res.counterexample)
                out["counterexample"] = inst.alphabet->format(*res.counterexample);
            return out;
        },
        py::arg("targets"), py::arg("contexts"), py::arg("greedy") = false,
        py::arg("alphabet") = nullptr,
        "is the target set exactly the closure of its longest word?");

    m.def(
        "search_template",
        [](const std::vector<std::string>& targets, const ContextPairs& contexts, size_t k,
           const std::string& op, bool greedy, const std::optional<EnergyModel>& model,
           int64_t gap, const std::shared_ptr<Alphabet>& alphabet,
           const std::optional<Involution>& theta, size_t nodes) {
            ProblemInstance inst =
                build_instance(targets, contexts, op, greedy, model, gap, alphabet, theta);
            inst.bound = k;
            SearchResult res = constructability_search(inst, nodes);
            py::dict out;
            out["status"] = res.status == SearchStatus::Found          ? "found"
                            : res.status == SearchStatus::NoneWithinBound ? "none"
                                                                          : "budget";
            if (res.template_word) out["template"] = inst.alphabet->format(*res.template_word);
            out["nodes"] = res.nodes;
            return out;
        },
        py::arg("targets"), py::arg("contexts"), py::arg("k"),
        py::arg("op") = "bracketed-closure", py::arg("greedy") = false,
        py::arg("model") = std::nullopt, py::arg("gap") = 0, py::arg("alphabet") = nullptr,
        py::arg("theta") = std::nullopt, py::arg("nodes") = kDefaultSearchBudget,
        "shortest template within the length bound, or none / budget");

    m.def(
        "scse_encode",
        [](const std::vector<std::string>& words, size_t k, const std::string& mode,
           const std::optional<EnergyModel>& model, const std::shared_ptr<Alphabet>& alphabet) {
            Resolved r = resolve(alphabet, std::nullopt, false, words, {});
            std::vector<Word> ws;
            for (const std::string& w : words) ws.push_back(r.alphabet->parse(w));
            ScseInstance sinst{r.alphabet, std::move(ws), k};
            ProblemInstance enc;
            if (mode == "bracketed")
                enc = scse_encode_bracketed(sinst);
            else if (mode == "lariat")
                enc = scse_encode_lariat(sinst, model.value_or(EnergyModel::con(1)));
            else
                throw std::invalid_argument("mode must be bracketed or lariat");
            const Alphabet& sigma = *enc.alphabet;
            py::dict out;
            out["symbols"] = sigma.symbols();
            if (enc.lariat) {
                py::dict theta;
                for (size_t i = 0; i < sigma.size(); ++i) {
                    Letter x = static_cast<Letter>(i);
                    theta[py::str(sigma.symbol(x))] = sigma.symbol(enc.lariat->theta(x));
                }
                out["theta"] = std::move(theta);
            }
            py::list targets;
            for (const Word& w : enc.targets) targets.append(sigma.format(w));
            out["words"] = std::move(targets);
            py::list ctxs;
            for (size_t i = 0; i < enc.contexts.size(); ++i)
                ctxs.append(py::make_tuple(sigma.format(enc.contexts[i].left),
                                           sigma.format(enc.contexts[i].right)));
            out["contexts"] = std::move(ctxs);
            out["op"] = enc.op == DeletionKind::LariatParallel ? "lariat-parallel"
                       : enc.op == DeletionKind::LariatOneStep ? "lariat-step"
                                                               : "bracketed-closure";
            out["bound"] = *enc.bound;
            return out;
        },
        py::arg("words"), py::arg("k"), py::arg("mode") = "bracketed",
        py::arg("model") = std::nullopt, py::arg("alphabet") = nullptr,
        "encode a bounded common-supersequence instance as a template search");

    m.def(
        "scse_brute",
        [](const std::vector<std::string>& words, size_t k,
           const std::shared_ptr<Alphabet>& alphabet, size_t budget) {
            Resolved r = resolve(alphabet, std::nullopt, false, words, {});
            std::vector<Word> ws;
            for (const std::string& w : words) ws.push_back(r.alphabet->parse(w));
            return scse_brute(ScseInstance{r.alphabet, std::move(ws), k}, budget);
        },
        py::arg("words"), py::arg("k"), py::arg("alphabet") = nullptr,
        py::arg("budget") = size_t{1} << 24,
        "is there a common supersequence of length at most k?");

    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
}
