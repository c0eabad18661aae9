#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "splice/io.hpp"
#include "splice/solvers.hpp"

namespace {

using namespace splice;
using ojson = nlohmann::ordered_json;

// Bad flag combinations the option parser cannot express (exit 64).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimeBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::chrono::steady_clock::time_point g_start;
double g_time_cap = 0.0;  // seconds; 0 = unlimited

// The wall-clock cap is checked between pipeline stages (after loading
// inputs, after each construction); the in-stage budgets stay count-based
// so results are reproducible across machines.
void check_deadline() {
    if (g_time_cap <= 0.0) return;
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - g_start;
    if (elapsed.count() > g_time_cap) throw TimeBudgetExceeded("time budget exceeded");
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// shared option bundles

struct ModelFlags {
    std::string model = "con";
    int64_t c = 1;
    int64_t d1 = 1, d2 = 1, d = 0;
    int64_t gap = 0;
    CLI::Option* model_opt = nullptr;
    CLI::Option* gap_opt = nullptr;

    void attach(CLI::App* cmd, bool with_gap = true) {
        model_opt = cmd->add_option("--model", model, "hairpin energy model: con | lin | log (default con)")
                        ->check(CLI::IsMember({"con", "lin", "log"}));
        cmd->add_option("--c", c, "loop cap of the constant model (default 1)");
        cmd->add_option("--d1", d1, "loop weight of the lin/log models (default 1)");
        cmd->add_option("--d2", d2, "stem weight of the lin/log models (default 1)");
        cmd->add_option("--d", d, "offset of the lin/log models (default 0)");
        if (with_gap)
            gap_opt = cmd->add_option("--gap", gap, "max letters between hairpin and right context (default 0)")
                          ->check(CLI::NonNegativeNumber);
    }

    bool touched() const {
        return model_opt && model_opt->count() > 0;
    }

    EnergyModel to_model() const {
        if (model == "con") return EnergyModel::con(c);
        if (model == "lin") return EnergyModel::lin(d1, d2, d);
        return EnergyModel::log(d1, d2, d);
    }

    void reject_for_bracketed() const {
        if (model_opt && model_opt->count()) throw UsageError("--model applies only to lariat operations");
        if (gap_opt && gap_opt->count()) throw UsageError("--gap applies only to lariat operations");
    }
};

struct AlphabetCtx {
    AlphabetPtr alphabet;
    std::optional<Involution> theta;
};

// Resolution order: an explicit --alphabet file; a "symbols" table embedded
// in one of the JSON inputs; the RNA alphabet with Watson-Crick pairing when
// an involution is required; otherwise single-character inference over every
// string in sight.
AlphabetCtx resolve_alphabet(const std::string& alphabet_path, bool need_theta,
                             const std::vector<std::string>& json_texts,
                             const std::vector<std::string>& raw_texts) {
    if (!alphabet_path.empty()) {
        std::istringstream in(slurp(alphabet_path));
        io::AlphabetSpec spec = io::read_alphabet(in);
        if (need_theta && !spec.theta)
            throw std::invalid_argument("alphabet file lacks \"theta\": this operation needs an involution");
        return {spec.alphabet, std::move(spec.theta)};
    }
    for (const std::string& text : json_texts)
        if (auto spec = io::embedded_alphabet(text)) {
            if (need_theta && !spec->theta)
                throw std::invalid_argument(
                    "embedded alphabet lacks \"theta\": this operation needs an involution; pass --alphabet");
            return {spec->alphabet, std::move(spec->theta)};
        }
    if (need_theta) {
        AlphabetPtr a = rna_alphabet();
        return {a, wc_involution(a)};
    }
    std::vector<std::string> texts = raw_texts;
    for (const std::string& text : json_texts) {
        std::vector<std::string> more = io::json_strings(text);
        texts.insert(texts.end(), more.begin(), more.end());
    }
    return {io::infer_alphabet(texts), std::nullopt};
}

ContextSet load_contexts(const std::string& text, const AlphabetPtr& alphabet) {
    std::istringstream in(text);
    ContextSet contexts = io::read_contexts(in, alphabet);
    size_t empty_sides = 0;
    for (size_t i = 0; i < contexts.size(); ++i)
        if (contexts[i].left.empty() || contexts[i].right.empty()) ++empty_sides;
    if (empty_sides)
        std::cerr << "warning: " << empty_sides
                  << " context(s) have an empty side; an empty side matches everywhere\n";
    return contexts;
}

// ---------------------------------------------------------------------------
// output helpers

void print_trace_text(std::ostream& out, const DerivationTrace& trace, const Alphabet& sigma,
                      const ContextSet& contexts) {
    for (const DeletionEvent& e : trace.steps)
        out << "  [" << e.begin << "," << e.end << ") ("
            << sigma.format(contexts[e.context].left) << ","
            << sigma.format(contexts[e.context].right) << ")\n";
}

ojson trace_json(const DerivationTrace& trace, const Alphabet& sigma, const ContextSet& contexts) {
    ojson steps = ojson::array();
    for (const DeletionEvent& e : trace.steps) {
        ojson ev;
        ev["begin"] = e.begin;
        ev["end"] = e.end;
        ev["left"] = sigma.format(contexts[e.context].left);
        ev["right"] = sigma.format(contexts[e.context].right);
        steps.push_back(std::move(ev));
    }
    return steps;
}

void emit_words(const std::vector<StepResult>& results, const Alphabet& sigma,
                const ContextSet& contexts, bool trace, bool json_out) {
    if (!json_out) {
        for (const StepResult& r : results) {
            std::cout << sigma.format(r.word) << "\n";
            if (trace) print_trace_text(std::cout, r.trace, sigma, contexts);
        }
        return;
    }
    ojson j;
    j["format"] = 1;
    ojson words = ojson::array();
    for (const StepResult& r : results) {
        if (!trace) {
            words.push_back(sigma.format(r.word));
        } else {
            ojson entry;
            entry["word"] = sigma.format(r.word);
            entry["trace"] = trace_json(r.trace, sigma, contexts);
            words.push_back(std::move(entry));
        }
    }
    j["words"] = std::move(words);
    std::cout << j.dump(2) << "\n";
}

void emit_automaton(const Nfa& a, const ContextSet& contexts, bool dot, const Involution* theta) {
    std::cout << (dot ? io::write_dot(a, contexts) : io::write_automaton(a, contexts, theta));
}

const char* kind_name(DeletionKind op) {
    switch (op) {
        case DeletionKind::BracketedStep:
        case DeletionKind::BracketedStepGreedy:
            return "bracketed-step";
        case DeletionKind::BracketedClosure:
        case DeletionKind::BracketedClosureGreedy:
            return "bracketed-closure";
        case DeletionKind::LariatOneStep:
            return "lariat-step";
        default:
            return "lariat-parallel";
    }
}

DeletionKind parse_kind(const std::string& name, bool greedy) {
    if (name == "bracketed-step")
        return greedy ? DeletionKind::BracketedStepGreedy : DeletionKind::BracketedStep;
    if (name == "bracketed-closure")
        return greedy ? DeletionKind::BracketedClosureGreedy : DeletionKind::BracketedClosure;
    if (greedy) throw UsageError("--greedy applies only to bracketed operations");
    if (name == "lariat-step") return DeletionKind::LariatOneStep;
    return DeletionKind::LariatParallel;
}

ojson model_json(const EnergyModel& model, int64_t gap) {
    ojson j;
    switch (model.kind) {
        case ModelKind::Con:
            j["model"] = "con";
            j["c"] = model.c;
            break;
        case ModelKind::Lin:
        case ModelKind::Log:
            j["model"] = model.kind == ModelKind::Lin ? "lin" : "log";
            j["d1"] = model.d1;
            j["d2"] = model.d2;
            j["d"] = model.d;
            break;
    }
    j["gap"] = gap;
    return j;
}

// ---------------------------------------------------------------------------
// subcommand runners

struct OpArgs {
    std::string kind;
    std::string word_text;
    std::string contexts_path;
    std::string alphabet_path;
    ModelFlags mf;
    bool greedy = false;
    bool trace = false;
    bool include_source = false;
    bool json_out = false;
    size_t budget = 0;  // 0 = per-kind default
};

int run_op(const OpArgs& a) {
    bool lariat = a.kind.rfind("lariat", 0) == 0;
    if (!lariat) {
        a.mf.reject_for_bracketed();
        if (a.include_source) throw UsageError("--include-source applies only to lariat-parallel");
    } else {
        if (a.greedy) throw UsageError("--greedy applies only to bracketed operations");
        if (a.include_source && a.kind != "lariat-parallel")
            throw UsageError("--include-source applies only to lariat-parallel");
    }

    std::string contexts_text = slurp(a.contexts_path);
    AlphabetCtx ctx = resolve_alphabet(a.alphabet_path, lariat, {contexts_text}, {a.word_text});
    ContextSet contexts = load_contexts(contexts_text, ctx.alphabet);
    Word w = ctx.alphabet->parse(a.word_text);
    check_deadline();

    std::vector<StepResult> results;
    if (a.kind == "bracketed-step") {
        results = bracketed_step(w, contexts, a.greedy);
    } else if (a.kind == "bracketed-closure") {
        results = bracketed_closure(w, contexts, a.greedy, a.budget ? a.budget : size_t{1} << 20);
    } else {
        LariatParams params{a.mf.to_model(), a.mf.gap, contexts, *ctx.theta};
        if (a.kind == "lariat-step") {
            results = lariat_one_step(w, params);
        } else {
            results = lariat_parallel(w, params, a.budget ? a.budget : size_t{1} << 22);
            if (a.include_source) {
                bool present = false;
                for (const StepResult& r : results) present |= r.word == w;
                // w is strictly longest among the results, so appending keeps
                // the length-lex order.
                if (!present) results.push_back({w, {}});
            }
        }
    }
    check_deadline();
    emit_words(results, *ctx.alphabet, contexts, a.trace, a.json_out);
    return 0;
}

struct HairpinArgs {
    std::string word_text;
    std::string alphabet_path;
    ModelFlags mf;
    bool json_out = false;
};

int run_hairpin(const HairpinArgs& a) {
    AlphabetCtx ctx = resolve_alphabet(a.alphabet_path, true, {}, {});
    Word w = ctx.alphabet->parse(a.word_text);
    std::optional<HairpinDecomposition> dec = is_stable_hairpin(w, a.mf.to_model(), *ctx.theta);
    if (a.json_out) {
        ojson j;
        j["format"] = 1;
        j["stable"] = dec.has_value();
        if (dec) {
            j["stem"] = dec->stem;
            j["loop"] = dec->loop;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (dec ? "stable" : "unstable") << "\n";
    }
    return dec ? 0 : 1;
}

struct NfaArgs {
    std::string which;  // closure-word | closure-reg | lariat-word | lariat-reg
    std::string input_text;  // word, or automaton file path
    std::string contexts_path;
    std::string alphabet_path;
    std::string mode;  // step | parallel, lariat only
    ModelFlags mf;
    bool greedy = false;
    bool include_source = false;
    bool dot = false;
    size_t states = kDefaultStateBudget;
};

int run_nfa(const NfaArgs& a) {
    bool lariat = a.which.rfind("lariat", 0) == 0;
    bool word_based = a.which == "closure-word" || a.which == "lariat-word";

    std::string contexts_text = slurp(a.contexts_path);
    std::vector<std::string> json_texts{contexts_text};
    std::string automaton_text;
    if (!word_based) {
        automaton_text = slurp(a.input_text);
        json_texts.insert(json_texts.begin(), automaton_text);
    }
    std::vector<std::string> raw_texts;
    if (word_based) raw_texts.push_back(a.input_text);

    AlphabetCtx ctx = resolve_alphabet(a.alphabet_path, lariat, json_texts, raw_texts);
    ContextSet contexts = load_contexts(contexts_text, ctx.alphabet);
    check_deadline();

    Nfa result = [&] {
        if (a.which == "closure-word") {
            Word w = ctx.alphabet->parse(a.input_text);
            return bracketed_closure_nfa(ctx.alphabet, w, contexts, a.greedy, a.states);
        }
        if (a.which == "lariat-word") {
            Word w = ctx.alphabet->parse(a.input_text);
            LariatParams params{a.mf.to_model(), a.mf.gap, contexts, *ctx.theta};
            LariatMode mode = a.mode == "step" ? LariatMode::OneStep : LariatMode::Parallel;
            return lariat_set_nfa(w, params, mode, a.include_source);
        }
        std::istringstream in(automaton_text);
        Nfa base = io::read_automaton(in, ctx.alphabet);
        if (!(*base.alphabet() == *ctx.alphabet))
            throw std::invalid_argument("automaton symbols disagree with the supplied alphabet");
        if (a.which == "closure-reg")
            return regular_closure_bracketed(base, contexts, a.greedy, a.states);
        LariatParams params{a.mf.to_model(), a.mf.gap, contexts, *ctx.theta};
        LariatMode mode = a.mode == "step" ? LariatMode::OneStep : LariatMode::Parallel;
        return regular_closure_lariat(base, params, mode, a.include_source, a.states);
    }();
    check_deadline();
    emit_automaton(result, contexts, a.dot, ctx.theta ? &*ctx.theta : nullptr);
    return 0;
}

struct SolveArgs {
    std::string verb;  // verify | exact | construct
    std::string targets_path;
    std::string contexts_path;
    std::string alphabet_path;
    std::string op_name = "bracketed-closure";
    std::string template_text;  // verify only
    ModelFlags mf;
    bool greedy = false;
    bool trace = false;
    bool json_out = false;
    size_t k = 0;
    size_t nodes = kDefaultSearchBudget;
};

ProblemInstance make_instance(const SolveArgs& a) {
    bool lariat = a.op_name.rfind("lariat", 0) == 0;
    if (!lariat) a.mf.reject_for_bracketed();
    DeletionKind op = parse_kind(a.op_name, a.greedy);

    std::string targets_text = slurp(a.targets_path);
    std::string contexts_text = slurp(a.contexts_path);
    AlphabetCtx ctx = resolve_alphabet(a.alphabet_path, lariat, {targets_text, contexts_text}, {});
    ContextSet contexts = load_contexts(contexts_text, ctx.alphabet);
    std::istringstream tin(targets_text);
    std::vector<Word> targets = io::read_words(tin, ctx.alphabet);

    if (!lariat) return ProblemInstance::bracketed(ctx.alphabet, std::move(targets), std::move(contexts), op);
    LariatParams params{a.mf.to_model(), a.mf.gap, std::move(contexts), *ctx.theta};
    return ProblemInstance::lariat_op(ctx.alphabet, std::move(targets), std::move(params), op);
}

int run_solve_verify(const SolveArgs& a) {
    ProblemInstance inst = make_instance(a);
    inst.template_word = inst.alphabet->parse(a.template_text);
    check_deadline();
    VerifyResult res = verify_template(inst);
    const Alphabet& sigma = *inst.alphabet;

    if (a.json_out) {
        ojson j;
        j["format"] = 1;
        j["ok"] = res.ok;
        ojson targets = ojson::array();
        for (size_t i = 0; i < inst.targets.size(); ++i) {
            ojson entry;
            entry["word"] = sigma.format(inst.targets[i]);
            entry["derived"] = static_cast<bool>(res.member[i]);
            if (a.trace && res.traces[i]) entry["trace"] = trace_json(*res.traces[i], sigma, inst.contexts);
            targets.push_back(std::move(entry));
        }
        j["targets"] = std::move(targets);
        std::cout << j.dump(2) << "\n";
    } else if (a.trace) {
        for (size_t i = 0; i < inst.targets.size(); ++i) {
            std::cout << sigma.format(inst.targets[i]) << (res.member[i] ? "" : " missing") << "\n";
            if (res.member[i] && res.traces[i]) print_trace_text(std::cout, *res.traces[i], sigma, inst.contexts);
        }
    } else if (res.ok) {
        std::cout << "ok\n";
    } else {
        for (size_t i = 0; i < inst.targets.size(); ++i)
            if (!res.member[i]) std::cout << "missing: " << sigma.format(inst.targets[i]) << "\n";
    }
    return res.ok ? 0 : 1;
}

int run_solve_exact(const SolveArgs& a) {
    if (a.op_name != "bracketed-closure")
        throw UsageError("exact construction applies to the bracketed closure kinds");
    ProblemInstance inst = make_instance(a);
    check_deadline();
    ExactResult res = exact_constructability(inst);
    const Alphabet& sigma = *inst.alphabet;

    const char* reason = nullptr;
    switch (res.status) {
        case ExactStatus::Found:
            break;
        case ExactStatus::AmbiguousLongest:
            reason = "several targets of maximal length";
            break;
        case ExactStatus::MissingTarget:
            reason = "not derivable from the longest target";
            break;
        case ExactStatus::ExtraWord:
            reason = "the longest target derives a word outside the set";
            break;
    }
    if (a.json_out) {
        ojson j;
        j["format"] = 1;
        j["found"] = res.status == ExactStatus::Found;
        if (res.template_word) j["template"] = sigma.format(*res.template_word);
        if (reason) j["reason"] = reason;
        if (res.counterexample) j["counterexample"] = sigma.format(*res.counterexample);
        std::cout << j.dump(2) << "\n";
    } else if (res.status == ExactStatus::Found) {
        std::cout << sigma.format(*res.template_word) << "\n";
    } else {
        std::cout << "none: " << reason;
        if (res.counterexample) std::cout << " (" << sigma.format(*res.counterexample) << ")";
        std::cout << "\n";
    }
    return res.status == ExactStatus::Found ? 0 : 1;
}

int run_solve_construct(const SolveArgs& a) {
    ProblemInstance inst = make_instance(a);
    inst.bound = a.k;
    check_deadline();
    SearchResult res = constructability_search(inst, a.nodes);
    const Alphabet& sigma = *inst.alphabet;

    if (a.json_out) {
        ojson j;
        j["format"] = 1;
        j["status"] = res.status == SearchStatus::Found          ? "found"
                      : res.status == SearchStatus::NoneWithinBound ? "none"
                                                                    : "budget";
        if (res.template_word) j["template"] = sigma.format(*res.template_word);
        j["nodes"] = res.nodes;
        std::cout << j.dump(2) << "\n";
    } else if (res.status == SearchStatus::Found) {
        std::cout << sigma.format(*res.template_word) << "\n";
    } else if (res.status == SearchStatus::NoneWithinBound) {
        std::cout << "none within bound " << a.k << "\n";
    }
    if (res.status == SearchStatus::BudgetExceeded) {
        std::cerr << "search budget exceeded after " << res.nodes << " nodes\n";
        return 2;
    }
    return res.status == SearchStatus::Found ? 0 : 1;
}

struct ReduceArgs {
    std::string mode;  // bracketed | lariat
    std::string words_path;
    std::string alphabet_path;
    ModelFlags mf;
    size_t k = 0;
};

int run_reduce(const ReduceArgs& a) {
    if (a.mode == "bracketed" && a.mf.touched())
        throw UsageError("--model applies only to the lariat encoding");
    std::string words_text = slurp(a.words_path);
    AlphabetCtx ctx = resolve_alphabet(a.alphabet_path, false, {words_text}, {});
    std::istringstream win(words_text);
    std::vector<Word> words = io::read_words(win, ctx.alphabet);
    check_deadline();

    ScseInstance sinst{ctx.alphabet, std::move(words), a.k};
    ProblemInstance encoded = a.mode == "bracketed" ? scse_encode_bracketed(sinst)
                                                    : scse_encode_lariat(sinst, a.mf.to_model());

    const Alphabet& sigma = *encoded.alphabet;
    ojson j;
    j["format"] = 1;
    j["symbols"] = sigma.symbols();
    if (encoded.lariat) {
        ojson theta = ojson::object();
        for (size_t i = 0; i < sigma.size(); ++i) {
            Letter x = static_cast<Letter>(i);
            theta[sigma.symbol(x)] = sigma.symbol(encoded.lariat->theta(x));
        }
        j["theta"] = std::move(theta);
    }
    ojson targets = ojson::array();
    for (const Word& w : encoded.targets) targets.push_back(sigma.format(w));
    j["words"] = std::move(targets);
    ojson contexts = ojson::array();
    for (size_t i = 0; i < encoded.contexts.size(); ++i)
        contexts.push_back({sigma.format(encoded.contexts[i].left), sigma.format(encoded.contexts[i].right)});
    j["contexts"] = std::move(contexts);
    j["op"] = kind_name(encoded.op);
    j["greedy"] = kind_is_greedy(encoded.op);
    j["bound"] = *encoded.bound;
    if (encoded.lariat) j.update(model_json(encoded.lariat->model, encoded.lariat->gap));
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    g_start = std::chrono::steady_clock::now();
    CLI::App app{"exact engine for contextual and hairpin (lariat) deletion operations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "splice 0.1.0");
    app.add_option("--time-cap", g_time_cap, "wall-clock cap in seconds, checked between pipeline stages")
        ->check(CLI::PositiveNumber);

    int rc = 0;
    static const std::vector<std::string> kOpKinds{"bracketed-step", "bracketed-closure", "lariat-step",
                                                   "lariat-parallel"};

    // splice op <kind> --contexts C.json [flags] <word>
    auto op_args = std::make_shared<OpArgs>();
    CLI::App* op = app.add_subcommand("op", "apply a deletion operation to one word");
    op->add_option("kind", op_args->kind, "bracketed-step | bracketed-closure | lariat-step | lariat-parallel")
        ->required()
        ->check(CLI::IsMember(kOpKinds));
    op->add_option("word", op_args->word_text, "input word")->required();
    op->add_option("--contexts", op_args->contexts_path, "JSON context file")->required();
    op->add_option("--alphabet", op_args->alphabet_path, "JSON alphabet file (default: inferred, RNA for lariat)");
    op->add_flag("--greedy", op_args->greedy, "rightmost-context variant of the bracketed operations");
    op->add_flag("--trace", op_args->trace, "print the removed spans under each word");
    op->add_flag("--include-source", op_args->include_source, "keep the input word in the parallel result set");
    op->add_flag("--json", op_args->json_out, "emit JSON instead of plain lines");
    op->add_option("--budget", op_args->budget, "cap on enumerated words (default 2^20, parallel 2^22)");
    op_args->mf.attach(op);
    op->callback([op_args, &rc] { rc = run_op(*op_args); });

    // splice hairpin check [model flags] <word>
    auto hp_args = std::make_shared<HairpinArgs>();
    CLI::App* hairpin = app.add_subcommand("hairpin", "hairpin stability questions");
    hairpin->require_subcommand(1);
    CLI::App* hp_check = hairpin->add_subcommand("check", "is the word a stable hairpin x l theta(x)?");
    hp_check->add_option("word", hp_args->word_text, "candidate hairpin")->required();
    hp_check->add_option("--alphabet", hp_args->alphabet_path, "JSON alphabet file with \"theta\" (default: RNA)");
    hp_check->add_flag("--json", hp_args->json_out, "emit JSON instead of stable/unstable");
    hp_args->mf.attach(hp_check, /*with_gap=*/false);
    hp_check->callback([hp_args, &rc] { rc = run_hairpin(*hp_args); });

    // splice nfa <which> ...
    CLI::App* nfa = app.add_subcommand("nfa", "derivation-set automata");
    nfa->require_subcommand(1);
    auto add_nfa_sub = [&](const std::string& which, const char* help, bool word_based, bool lariat) {
        auto args = std::make_shared<NfaArgs>();
        args->which = which;
        CLI::App* sub = nfa->add_subcommand(which, help);
        if (word_based)
            sub->add_option("word", args->input_text, "input word")->required();
        else
            sub->add_option("automaton", args->input_text, "JSON automaton file")->required();
        sub->add_option("--contexts", args->contexts_path, "JSON context file")->required();
        sub->add_option("--alphabet", args->alphabet_path, "JSON alphabet file");
        sub->add_flag("--dot", args->dot, "emit Graphviz DOT with deletion edges annotated del:(alpha,beta)");
        sub->add_option("--states", args->states, "state budget (default 1000000)");
        if (lariat) {
            sub->add_option("--mode", args->mode, "step | parallel")
                ->required()
                ->check(CLI::IsMember({"step", "parallel"}));
            sub->add_flag("--include-source", args->include_source, "accept the source language as well");
            args->mf.attach(sub);
        } else {
            sub->add_flag("--greedy", args->greedy, "rightmost-context variant");
        }
        sub->callback([args, &rc] { rc = run_nfa(*args); });
    };
    add_nfa_sub("closure-word", "automaton of the bracketed deletion closure of one word", true, false);
    add_nfa_sub("closure-reg", "automaton of the bracketed deletion closure of a regular language", false, false);
    add_nfa_sub("lariat-word", "automaton of the lariat deletion set of one word", true, true);
    add_nfa_sub("lariat-reg", "automaton of the lariat deletion set of a regular language", false, true);

    // splice solve verify|exact|construct ...
    CLI::App* solve = app.add_subcommand("solve", "template verification and construction");
    solve->require_subcommand(1);
    auto add_solve_sub = [&](const std::string& verb, const char* help) {
        auto args = std::make_shared<SolveArgs>();
        args->verb = verb;
        CLI::App* sub = solve->add_subcommand(verb, help);
        if (verb == "verify") sub->add_option("template", args->template_text, "candidate template word")->required();
        sub->add_option("--targets", args->targets_path, "JSON word file with the target set")->required();
        sub->add_option("--contexts", args->contexts_path, "JSON context file")->required();
        sub->add_option("--alphabet", args->alphabet_path, "JSON alphabet file");
        sub->add_option("--op", args->op_name, "deletion kind (default bracketed-closure)")
            ->check(CLI::IsMember(kOpKinds));
        sub->add_flag("--greedy", args->greedy, "rightmost-context variant of the bracketed kinds");
        sub->add_flag("--json", args->json_out, "emit JSON");
        if (verb == "verify") sub->add_flag("--trace", args->trace, "print a derivation per target");
        if (verb == "construct") {
            sub->add_option("--k", args->k, "length bound for the template")->required();
            sub->add_option("--nodes", args->nodes, "search node budget (default 2^28)");
        }
        args->mf.attach(sub);
        sub->callback([args, &rc] {
            if (args->verb == "verify")
                rc = run_solve_verify(*args);
            else if (args->verb == "exact")
                rc = run_solve_exact(*args);
            else
                rc = run_solve_construct(*args);
        });
    };
    add_solve_sub("verify", "does the template derive every target?");
    add_solve_sub("exact", "is the target set exactly a deletion closure, and of which template?");
    add_solve_sub("construct", "find a shortest template within a length bound");

    // splice reduce scse --mode bracketed|lariat W.json k
    auto red_args = std::make_shared<ReduceArgs>();
    CLI::App* reduce = app.add_subcommand("reduce", "problem encodings");
    reduce->require_subcommand(1);
    CLI::App* scse = reduce->add_subcommand(
        "scse", "encode a bounded shortest-common-supersequence instance as a template search");
    scse->add_option("words", red_args->words_path, "JSON word file with the base words")->required();
    scse->add_option("k", red_args->k, "supersequence length bound")->required()->check(CLI::PositiveNumber);
    scse->add_option("--mode", red_args->mode, "bracketed | lariat")
        ->required()
        ->check(CLI::IsMember({"bracketed", "lariat"}));
    scse->add_option("--alphabet", red_args->alphabet_path, "JSON alphabet file for the base words");
    red_args->mf.attach(scse, /*with_gap=*/false);
    scse->callback([red_args, &rc] { rc = run_reduce(*red_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    } catch (const TimeBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const ResourceError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return rc;
}
