#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "splice/derivsets.hpp"

using namespace splice;
using namespace splice::testing;

namespace {

LariatParams rna_params(const EnergyModel& model, int64_t gap, std::vector<Context> ctxs) {
    LariatParams p{model, gap, ContextSet(std::move(ctxs)), wc_involution()};
    return p;
}

std::vector<EnergyModel> model_sweep() {
    return {EnergyModel::con(0),       EnergyModel::con(2),       EnergyModel::con(4),
            EnergyModel::lin(1, 1, 0), EnergyModel::lin(2, 1, 1), EnergyModel::log(1, 1, 0),
            EnergyModel::log(2, 1, -1)};
}

Context random_context(std::mt19937& rng, const AlphabetPtr& alphabet, size_t max_side) {
    std::uniform_int_distribution<size_t> len(0, max_side);
    auto side = [&] {
        Word w;
        size_t n = len(rng);
        std::uniform_int_distribution<Letter> pick(0, static_cast<Letter>(alphabet->size()) - 1);
        for (size_t i = 0; i < n; ++i) w.push_back(pick(rng));
        return w;
    };
    return Context{side(), side()};
}

std::set<Word> language_set(const Nfa& a, size_t max_len) {
    auto v = enumerate_language(a, max_len);
    return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("closure automaton of a single word matches the worked example") {
    auto alphabet = letters_alphabet(4);
    Word w = parse_on(alphabet, "abcd");
    ContextSet contexts({{parse_on(alphabet, "a"), parse_on(alphabet, "c")},
                         {parse_on(alphabet, "c"), parse_on(alphabet, "d")}});
    for (bool greedy : {false, true}) {
        Nfa closure = bracketed_closure_nfa(alphabet, w, contexts, greedy);
        auto words = enumerate_language(closure, w.size());
        std::vector<Word> expect{parse_on(alphabet, "d"), parse_on(alphabet, "ab"), w};
        CHECK(words == expect);
        CHECK(!closure.deletion_edges().empty());
        for (const auto& edge : closure.deletion_edges()) {
            CHECK(edge.context < contexts.size());
            CHECK(edge.from >= 0);
            CHECK(edge.to <= closure.num_states());
        }
    }
    // a word with no removable factor closes to itself
    ContextSet absent({{parse_on(alphabet, "d"), parse_on(alphabet, "a")}});
    Nfa still = bracketed_closure_nfa(alphabet, w, absent, false);
    CHECK(language_set(still, w.size()) == std::set<Word>{w});
}

TEST_CASE("closure automata agree with the rewrite closure on random words") {
    auto alphabet = rna_alphabet();
    std::mt19937 rng(101);
    for (int round = 0; round < 120; ++round) {
        Word w = random_word(rng, alphabet, 9);
        std::uniform_int_distribution<int> count(0, 3);
        std::vector<Context> ctxs;
        int n = count(rng);
        for (int i = 0; i < n; ++i) ctxs.push_back(random_context(rng, alphabet, 2));
        ContextSet contexts(ctxs);
        for (bool greedy : {false, true}) {
            Nfa closure = bracketed_closure_nfa(alphabet, w, contexts, greedy);
            auto expect = brute_bracketed_closure(w, contexts, greedy);
            if (language_set(closure, w.size()) != expect) {
                CAPTURE(round);
                CAPTURE(alphabet->format(w));
                CAPTURE(greedy);
                REQUIRE(language_set(closure, w.size()) == expect);
            }
        }
    }
}

TEST_CASE("closure of a regular language covers whole families at once") {
    auto alphabet = letters_alphabet(4);
    SUBCASE("finite languages close to the union of their word closures") {
        std::mt19937 rng(103);
        for (int round = 0; round < 60; ++round) {
            std::set<Word> words;
            std::uniform_int_distribution<int> count(1, 3);
            int n = count(rng);
            size_t longest = 0;
            for (int i = 0; i < n; ++i) {
                Word w = random_word(rng, alphabet, 7);
                longest = std::max(longest, w.size());
                words.insert(w);
            }
            std::vector<Context> ctxs{random_context(rng, alphabet, 2)};
            if (round % 2) ctxs.push_back(random_context(rng, alphabet, 1));
            ContextSet contexts(ctxs);
            for (bool greedy : {false, true}) {
                Nfa base = finite_language_nfa(alphabet, {words.begin(), words.end()});
                Nfa closure = regular_closure_bracketed(base, contexts, greedy);
                std::set<Word> expect;
                for (const Word& w : words) {
                    auto part = brute_bracketed_closure(w, contexts, greedy);
                    expect.insert(part.begin(), part.end());
                }
                if (language_set(closure, longest) != expect) {
                    CAPTURE(round);
                    CAPTURE(greedy);
                    REQUIRE(language_set(closure, longest) == expect);
                }
            }
        }
    }
    SUBCASE("a loop language stays closed") {
        // (ac)* deleting a..c factors only reaches shorter (ac)^k
        Nfa loop(alphabet, 2);
        loop.add_initial(0);
        loop.add_accepting(0);
        loop.add_transition(0, alphabet->letter("a"), 1);
        loop.add_transition(1, alphabet->letter("c"), 0);
        ContextSet contexts({{parse_on(alphabet, "a"), parse_on(alphabet, "c")}});
        Nfa closure = regular_closure_bracketed(loop, contexts, false);
        std::set<Word> expect;
        Word acc;
        for (int k = 0; k <= 6; ++k) {
            expect.insert(acc);
            acc.push_back(alphabet->letter("a"));
            acc.push_back(alphabet->letter("c"));
        }
        CHECK(language_set(closure, 12) == expect);
    }
    SUBCASE("an infinite family gains the empty word") {
        // a b^n c all delete entirely: closure is the family plus the empty word
        Nfa tower(alphabet, 3);
        tower.add_initial(0);
        tower.add_accepting(2);
        tower.add_transition(0, alphabet->letter("a"), 1);
        tower.add_transition(1, alphabet->letter("b"), 1);
        tower.add_transition(1, alphabet->letter("c"), 2);
        ContextSet contexts({{parse_on(alphabet, "a"), parse_on(alphabet, "c")}});
        Nfa closure = regular_closure_bracketed(tower, contexts, false);
        std::set<Word> expect{{}};
        for (int n = 0; n <= 4; ++n) {
            Word w = parse_on(alphabet, "a");
            for (int i = 0; i < n; ++i) w.push_back(alphabet->letter("b"));
            w.push_back(alphabet->letter("c"));
            expect.insert(w);
        }
        CHECK(language_set(closure, 6) == expect);
    }
    SUBCASE("sound on arbitrary automata") {
        std::mt19937 rng(107);
        for (int round = 0; round < 40; ++round) {
            Nfa a = random_nfa(rng, alphabet, 4);
            std::vector<Context> ctxs{random_context(rng, alphabet, 2)};
            ContextSet contexts(ctxs);
            Nfa closure = regular_closure_bracketed(a, contexts, false);
            for (const Word& w : enumerate_language(a, 6)) {
                for (const Word& derived : brute_bracketed_closure(w, contexts, false)) {
                    if (!accepts(closure, derived)) {
                        CAPTURE(round);
                        CAPTURE(alphabet->format(w));
                        CAPTURE(alphabet->format(derived));
                        REQUIRE(accepts(closure, derived));
                    }
                }
            }
        }
    }
    SUBCASE("state budget refuses oversized saturations") {
        Nfa a = word_dfa(alphabet, parse_on(alphabet, "abc"));
        ContextSet contexts({{parse_on(alphabet, "a"), parse_on(alphabet, "c")}});
        CHECK_THROWS_AS(regular_closure_bracketed(a, contexts, false, 4), ResourceError);
    }
}

TEST_CASE("single-word lariat automata match the rewrite results") {
    auto alphabet = rna_alphabet();
    std::mt19937 rng(211);
    auto models = model_sweep();
    for (int round = 0; round < 120; ++round) {
        Word w = random_word(rng, alphabet, 11);
        std::uniform_int_distribution<int> count(1, 2);
        std::vector<Context> ctxs;
        int n = count(rng);
        for (int i = 0; i < n; ++i) ctxs.push_back(random_context(rng, alphabet, 2));
        std::uniform_int_distribution<int64_t> gaps(0, 2);
        std::uniform_int_distribution<size_t> pick_model(0, models.size() - 1);
        LariatParams params = rna_params(models[pick_model(rng)], gaps(rng), ctxs);
        for (bool include_source : {false, true}) {
            Nfa one = lariat_set_nfa(w, params, LariatMode::OneStep, include_source);
            auto expect_one = result_words(lariat_one_step(w, params));
            if (include_source) expect_one.insert(w);
            if (language_set(one, w.size()) != expect_one) {
                CAPTURE(round);
                CAPTURE(alphabet->format(w));
                REQUIRE(language_set(one, w.size()) == expect_one);
            }
            Nfa par = lariat_set_nfa(w, params, LariatMode::Parallel, include_source);
            auto expect_par = brute_lariat_parallel(w, params);
            if (include_source) expect_par.insert(w);
            if (language_set(par, w.size()) != expect_par) {
                CAPTURE(round);
                CAPTURE(alphabet->format(w));
                REQUIRE(language_set(par, w.size()) == expect_par);
            }
        }
    }
}

TEST_CASE("hairpin reachability over a word line equals the direct factor test") {
    auto alphabet = rna_alphabet();
    std::mt19937 rng(223);
    auto models = model_sweep();
    for (int round = 0; round < 80; ++round) {
        Word w = random_word(rng, alphabet, 9);
        Context ctx = random_context(rng, alphabet, 2);
        std::uniform_int_distribution<int64_t> gaps(0, 2);
        std::uniform_int_distribution<size_t> pick_model(0, models.size() - 1);
        LariatParams params = rna_params(models[pick_model(rng)], gaps(rng), {ctx});
        Nfa line = word_dfa(alphabet, w);
        for (size_t i = 0; i <= w.size(); ++i) {
            for (size_t j = i; j <= w.size(); ++j) {
                Word factor(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(j));
                bool expect =
                    brute_lariat_factor(factor, ctx, params.model, params.gap, params.theta);
                bool got = hairpin_reachability(line, static_cast<int>(i), static_cast<int>(j), ctx,
                                                params);
                if (got != expect) {
                    CAPTURE(round);
                    CAPTURE(alphabet->format(w));
                    CAPTURE(alphabet->format(factor));
                    CAPTURE(params.model.describe());
                    CAPTURE(params.gap);
                    REQUIRE(got == expect);
                }
            }
        }
    }
}

TEST_CASE("hairpin reachability pinned decisions") {
    auto alphabet = rna_alphabet();
    Context ctx{rna("AA"), rna("GGG")};
    Word removable = rna("AAACGGCUUUCCGGG");
    Nfa line = word_dfa(alphabet, removable);
    int end = static_cast<int>(removable.size());
    CHECK(hairpin_reachability(line, 0, end, ctx, rna_params(EnergyModel::log(1, 1, 0), 2, {ctx})));
    CHECK(hairpin_reachability(line, 0, end, ctx, rna_params(EnergyModel::con(4), 2, {ctx})));
    CHECK(!hairpin_reachability(line, 0, end, ctx, rna_params(EnergyModel::lin(1, 1, 0), 2, {ctx})));

    // with a trailing letter the right context is no longer a suffix
    Word longer = rna("AAACGGCUUUCCGGGC");
    Nfa line2 = word_dfa(alphabet, longer);
    auto log_params = rna_params(EnergyModel::log(1, 1, 0), 2, {ctx});
    CHECK(!hairpin_reachability(line2, 0, static_cast<int>(longer.size()), ctx, log_params));
    CHECK(hairpin_reachability(line2, 0, static_cast<int>(longer.size()) - 1, ctx, log_params));

    // unbounded stems through a cycle: A+U+ admits arbitrarily tall hairpins
    Nfa tall(alphabet, 3);
    tall.add_initial(0);
    tall.add_accepting(2);
    tall.add_transition(0, alphabet->letter("A"), 1);
    tall.add_transition(1, alphabet->letter("A"), 1);
    tall.add_transition(1, alphabet->letter("U"), 2);
    tall.add_transition(2, alphabet->letter("U"), 2);
    Context au{rna("A"), rna("U")};
    CHECK(hairpin_reachability(tall, 0, 2, au, rna_params(EnergyModel::lin(1, 1, 0), 0, {au})));
    // but not when only unpaired letters fit between p and q
    CHECK(!hairpin_reachability(tall, 0, 1, au, rna_params(EnergyModel::lin(1, 1, 0), 0, {au})));
}

TEST_CASE("lariat closure of a regular language") {
    auto alphabet = rna_alphabet();
    std::mt19937 rng(227);
    auto models = model_sweep();
    SUBCASE("word-line closure equals the single-word construction") {
        for (int round = 0; round < 60; ++round) {
            Word w = random_word(rng, alphabet, 9);
            Context ctx = random_context(rng, alphabet, 2);
            std::uniform_int_distribution<int64_t> gaps(0, 2);
            std::uniform_int_distribution<size_t> pick_model(0, models.size() - 1);
            LariatParams params = rna_params(models[pick_model(rng)], gaps(rng), {ctx});
            for (LariatMode mode : {LariatMode::OneStep, LariatMode::Parallel}) {
                Nfa direct = lariat_set_nfa(w, params, mode);
                Nfa lifted = regular_closure_lariat(word_dfa(alphabet, w), params, mode);
                if (language_set(direct, w.size()) != language_set(lifted, w.size())) {
                    CAPTURE(round);
                    CAPTURE(alphabet->format(w));
                    CAPTURE(params.model.describe());
                    REQUIRE(language_set(direct, w.size()) == language_set(lifted, w.size()));
                }
            }
        }
    }
    SUBCASE("finite languages reduce to per-word unions") {
        for (int round = 0; round < 40; ++round) {
            std::set<Word> words;
            std::uniform_int_distribution<int> count(1, 3);
            int n = count(rng);
            size_t longest = 0;
            for (int i = 0; i < n; ++i) {
                Word w = random_word(rng, alphabet, 8);
                longest = std::max(longest, w.size());
                words.insert(w);
            }
            std::uniform_int_distribution<size_t> pick_model(0, models.size() - 1);
            LariatParams params =
                rna_params(models[pick_model(rng)], 1, {random_context(rng, alphabet, 2)});
            Nfa base = finite_language_nfa(alphabet, {words.begin(), words.end()});
            for (bool include_source : {false, true}) {
                Nfa closure =
                    regular_closure_lariat(base, params, LariatMode::Parallel, include_source);
                std::set<Word> expect;
                for (const Word& w : words) {
                    auto part = brute_lariat_parallel(w, params);
                    expect.insert(part.begin(), part.end());
                    if (include_source) expect.insert(w);
                }
                if (language_set(closure, longest) != expect) {
                    CAPTURE(round);
                    CAPTURE(include_source);
                    REQUIRE(language_set(closure, longest) == expect);
                }
            }
        }
    }
    SUBCASE("an infinite language keeps only reachable shapes") {
        Nfa tall(alphabet, 3);
        tall.add_initial(0);
        tall.add_accepting(2);
        tall.add_transition(0, alphabet->letter("A"), 1);
        tall.add_transition(1, alphabet->letter("A"), 1);
        tall.add_transition(1, alphabet->letter("U"), 2);
        tall.add_transition(2, alphabet->letter("U"), 2);
        Context au{rna("A"), rna("U")};
        LariatParams params = rna_params(EnergyModel::lin(1, 1, 0), 0, {au});
        Nfa closure = regular_closure_lariat(tall, params, LariatMode::Parallel);
        CHECK(accepts(closure, {}));           // AUU deleted out of AUU... entirely
        CHECK(accepts(closure, rna("A")));     // AAUU minus AUU
        CHECK(accepts(closure, rna("AU")));    // AAUUU minus its inner AUU
        CHECK(accepts(closure, rna("AAU")));   // AAAUUU minus AUU
        CHECK(!accepts(closure, rna("UA")));   // order of blocks cannot flip
        CHECK(!accepts(closure, rna("UAA")));
    }
}

TEST_CASE("witness search certifies reachability decisions") {
    auto alphabet = rna_alphabet();
    std::mt19937 rng(229);
    auto models = model_sweep();
    SUBCASE("pinned witness inside the guide word") {
        Word w = rna("CUCAAACGGCUUUCCGGGC");
        Nfa line = word_dfa(alphabet, w);
        Context ctx{rna("AA"), rna("GGG")};
        auto log_params = rna_params(EnergyModel::log(1, 1, 0), 2, {ctx});
        auto found = lariat_witness_search(line, 3, 18, ctx, log_params, 20);
        REQUIRE(found.has_value());
        CHECK(*found == rna("AAACGGCUUUCCGGG"));
        auto lin_params = rna_params(EnergyModel::lin(1, 1, 0), 2, {ctx});
        CHECK(!lariat_witness_search(line, 3, 18, ctx, lin_params, 20).has_value());
    }
    SUBCASE("witness found exactly when the bounded language contains one") {
        for (int round = 0; round < 50; ++round) {
            Nfa a = random_nfa(rng, alphabet, 4);
            Context ctx = random_context(rng, alphabet, 1);
            std::uniform_int_distribution<size_t> pick_model(0, models.size() - 1);
            LariatParams params = rna_params(models[pick_model(rng)], 1, {ctx});
            std::uniform_int_distribution<int> pick(0, a.num_states() - 1);
            int p = pick(rng), q = pick(rng);
            bool decision = hairpin_reachability(a, p, q, ctx, params);
            auto witness = lariat_witness_search(a, p, q, ctx, params, 12);
            if (witness) {
                // a verified witness forces the decision
                CHECK(decision);
                CHECK(brute_lariat_factor(*witness, ctx, params.model, params.gap, params.theta));
                Nfa segment = with_endpoints(a, {p}, {q});
                CHECK(accepts(segment, *witness));
            } else {
                // no witness below the bound: the shortest segment words must agree
                Nfa segment = with_endpoints(a, {p}, {q});
                auto candidates = enumerate_language(segment, 8);
                if (candidates.size() > 2500) candidates.resize(2500);
                for (const Word& u : candidates) {
                    if (brute_lariat_factor(u, ctx, params.model, params.gap, params.theta)) {
                        CAPTURE(round);
                        CAPTURE(alphabet->format(u));
                        REQUIRE(!brute_lariat_factor(u, ctx, params.model, params.gap,
                                                     params.theta));
                    }
                }
            }
        }
    }
    SUBCASE("positive decisions under the logarithmic model stay within the bound") {
        int hits = 0;
        for (int round = 0; round < 200 && hits < 25; ++round) {
            Nfa a = random_nfa(rng, alphabet, 4);
            Context ctx = random_context(rng, alphabet, 1);
            LariatParams params = rna_params(EnergyModel::log(1, 1, 0), 1, {ctx});
            std::uniform_int_distribution<int> pick(0, a.num_states() - 1);
            int p = pick(rng), q = pick(rng);
            if (!hairpin_reachability(a, p, q, ctx, params)) continue;
            ++hits;
            size_t bound = log_witness_bound(a.num_states(), ctx, params);
            auto witness = lariat_witness_search(a, p, q, ctx, params, bound);
            if (!witness) {
                CAPTURE(round);
                CAPTURE(p);
                CAPTURE(q);
                REQUIRE(witness.has_value());
            }
            CHECK(witness->size() <= bound);
        }
        CHECK(hits > 0);
    }
}
