#include "doctest.h"
#include "helpers.hpp"
#include "splice/alphabet.hpp"

using namespace splice;
using namespace splice::testing;

TEST_CASE("alphabet parses and formats by greedy longest match") {
    Alphabet a({"a", "b", "#s", "#e"});
    Word w = a.parse("a#sb#e");
    REQUIRE(w.size() == 4);
    CHECK(a.format(w) == "a#sb#e");
    CHECK(a.parse("a #s b #e") == w);
    CHECK_THROWS(a.parse("axb"));
    CHECK_THROWS(Alphabet({"a", "a"}));
    CHECK_THROWS(Alphabet({""}));
}

TEST_CASE("watson-crick involution is a self-inverse antimorphism") {
    Involution theta = wc_involution();
    auto alphabet = theta.alphabet();
    CHECK(alphabet->format(theta(rna("ACGU"))) == "ACGU");  // reverse of complements
    for (Letter c = 0; c < static_cast<Letter>(alphabet->size()); ++c) {
        CHECK(theta(theta(c)) == c);
    }
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        Word u = random_word(rng, alphabet, 6);
        Word v = random_word(rng, alphabet, 6);
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        Word expect = theta(v);
        Word tu = theta(u);
        expect.insert(expect.end(), tu.begin(), tu.end());
        CHECK(theta(uv) == expect);        // theta(uv) = theta(v) theta(u)
        CHECK(theta(theta(uv)) == uv);     // involution
    }
}

TEST_CASE("factor occurrences are complete and ascending") {
    CHECK(factor_occurrences(rna("AAUAU"), rna("AA")) == std::vector<size_t>{0});
    CHECK(factor_occurrences(rna("AAA"), rna("AA")) == std::vector<size_t>{0, 1});
    CHECK(factor_occurrences(rna("CUCAAACGGCUUUCCGGGC"), rna("GGG")) == std::vector<size_t>{15});
    CHECK(factor_occurrences(rna("AC"), Word{}) == std::vector<size_t>{0, 1, 2});
    CHECK(factor_occurrences(rna("AC"), rna("ACG")).empty());
}

TEST_CASE("occurs_within respects the window") {
    Word w = rna("GGAGG");
    CHECK(occurs_within(w, rna("GG"), 0, 2));
    CHECK(!occurs_within(w, rna("GG"), 1, 4));
    CHECK(occurs_within(w, rna("GG"), 3, 5));
    CHECK(occurs_within(w, Word{}, 2, 2));
}

TEST_CASE("context sets deduplicate and order canonically") {
    auto a = letters_alphabet(4);
    Context c1{parse_on(a, "ab"), parse_on(a, "c")};
    Context c2{parse_on(a, "b"), parse_on(a, "d")};
    ContextSet set({c1, c2, c1});
    REQUIRE(set.size() == 2);
    CHECK(set[0] == c2);  // shorter left part first
    CHECK(set[1] == c1);
}

TEST_CASE("length-lex order sorts by length first") {
    auto a = letters_alphabet(3);
    CHECK(length_lex_less(parse_on(a, "c"), parse_on(a, "ab")));
    CHECK(length_lex_less(parse_on(a, "ab"), parse_on(a, "ba")));
    CHECK(!length_lex_less(parse_on(a, "ba"), parse_on(a, "ab")));
}
