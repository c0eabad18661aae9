#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "splice/nfa.hpp"
#include "splice/ultimately_periodic.hpp"

using namespace splice;
using namespace splice::testing;

namespace {

// reference: reachability table by exact walk length
std::vector<std::vector<bool>> walk_table(const std::vector<std::vector<int>>& succ,
                                          const std::vector<int>& sources, size_t max_len) {
    size_t n = succ.size();
    std::vector<std::vector<bool>> reach(max_len + 1, std::vector<bool>(n, false));
    for (int s : sources) reach[0][static_cast<size_t>(s)] = true;
    for (size_t len = 1; len <= max_len; ++len) {
        for (size_t q = 0; q < n; ++q) {
            if (!reach[len - 1][q]) continue;
            for (int t : succ[q]) reach[len][static_cast<size_t>(t)] = true;
        }
    }
    return reach;
}

std::vector<std::vector<int>> nfa_successors(const Nfa& a) {
    std::vector<std::vector<int>> succ(static_cast<size_t>(a.num_states()));
    for (int q = 0; q < a.num_states(); ++q) {
        for (const auto& [label, to] : a.out(q)) {
            if (label != kEpsilonLabel) succ[static_cast<size_t>(q)].push_back(to);
        }
        auto& row = succ[static_cast<size_t>(q)];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return succ;
}

}  // namespace

TEST_CASE("eventually periodic length sets normalize their representation") {
    SUBCASE("finite set") {
        std::vector<char> bits{1, 0, 1, 0, 0};
        auto s = UltimatelyPeriodicSet::from_bits(bits, 4, 1);
        CHECK(!s.infinite());
        CHECK(!s.empty());
        CHECK(s.contains(0));
        CHECK(!s.contains(1));
        CHECK(s.contains(2));
        CHECK(!s.contains(3));
        CHECK(!s.contains(100));
        CHECK(s.min() == 0);
        CHECK(s.max_finite() == 2);
        CHECK(s.period() == 1);
    }
    SUBCASE("empty set") {
        auto s = UltimatelyPeriodicSet::empty_set();
        CHECK(s.empty());
        CHECK(!s.contains(0));
        CHECK(!s.contains(7));
    }
    SUBCASE("everything from a threshold") {
        std::vector<char> bits{0, 0, 1, 1};
        auto s = UltimatelyPeriodicSet::from_bits(bits, 2, 2);
        CHECK(s.infinite());
        CHECK(s.min() == 2);
        CHECK(s.period() == 1);
        CHECK(s.threshold() <= 2);
        for (uint64_t n = 2; n < 40; ++n) CHECK(s.contains(n));
    }
    SUBCASE("oversized stated period collapses to the true one") {
        // membership is 'even' but the caller reports period 6
        std::vector<char> bits(12);
        for (size_t i = 0; i < bits.size(); ++i) bits[i] = (i % 2 == 0) ? 1 : 0;
        auto s = UltimatelyPeriodicSet::from_bits(bits, 6, 6);
        CHECK(s.period() == 2);
        CHECK(s.threshold() == 0);
        for (uint64_t n = 0; n < 50; ++n) CHECK(s.contains(n) == (n % 2 == 0));
    }
    SUBCASE("true period survives when it is composite") {
        // {2+2k} union {2+3k}: residues {0,2,4,5} mod 6 past the threshold
        std::vector<char> bits(26, 0);
        for (uint64_t n = 2; n < 26; n += 2) bits[n] = 1;
        for (uint64_t n = 2; n < 26; n += 3) bits[n] = 1;
        auto s = UltimatelyPeriodicSet::from_bits(bits, 14, 6);
        CHECK(s.period() == 6);
        CHECK(s.infinite());
        for (uint64_t n = 0; n < 200; ++n) {
            bool expect = (n >= 2) && ((n % 2 == 0) || (n % 3 == 2));
            CHECK(s.contains(n) == expect);
        }
        CHECK(s.min() == 2);
    }
}

TEST_CASE("walk length sets for simple shapes") {
    auto alphabet = letters_alphabet(1);
    SUBCASE("self loop gives every length") {
        Nfa a(alphabet, 1);
        a.add_transition(0, 0, 0);
        auto s = walk_length_set(a, 0, 0);
        CHECK(s.infinite());
        CHECK(s.period() == 1);
        CHECK(s.threshold() == 0);
        for (uint64_t n = 0; n < 30; ++n) CHECK(s.contains(n));
    }
    SUBCASE("two-cycle gives the even lengths") {
        Nfa a(alphabet, 2);
        a.add_transition(0, 0, 1);
        a.add_transition(1, 0, 0);
        auto s = walk_length_set(a, 0, 0);
        CHECK(s.period() == 2);
        for (uint64_t n = 0; n < 30; ++n) CHECK(s.contains(n) == (n % 2 == 0));
        auto t = walk_length_set(a, 0, 1);
        for (uint64_t n = 0; n < 30; ++n) CHECK(t.contains(n) == (n % 2 == 1));
    }
    SUBCASE("a line gives a singleton") {
        Nfa a(alphabet, 4);
        for (int q = 0; q + 1 < 4; ++q) a.add_transition(q, 0, q + 1);
        auto s = walk_length_set(a, 1, 3);
        CHECK(!s.infinite());
        CHECK(s.min() == 2);
        CHECK(s.max_finite() == 2);
        for (uint64_t n = 0; n < 10; ++n) CHECK(s.contains(n) == (n == 2));
        CHECK(walk_length_set(a, 3, 0).empty());
    }
    SUBCASE("unreachable target gives the empty set") {
        Nfa a(alphabet, 2);
        a.add_transition(0, 0, 0);
        CHECK(walk_length_set(a, 0, 1).empty());
    }
    SUBCASE("competing cycle lengths mix into a composite period") {
        // p -> u -> q with a 2-cycle at u, and p -> v -> q with a 3-cycle at v:
        // lengths {2+2k} union {2+3k}, whose eventual period is 6 even though
        // the individual cycle lengths are coprime.
        Nfa a(alphabet, 7);
        int p = 0, u = 1, u2 = 2, v = 3, v2 = 4, v3 = 5, q = 6;
        a.add_transition(p, 0, u);
        a.add_transition(u, 0, u2);
        a.add_transition(u2, 0, u);
        a.add_transition(u, 0, q);
        a.add_transition(p, 0, v);
        a.add_transition(v, 0, v2);
        a.add_transition(v2, 0, v3);
        a.add_transition(v3, 0, v);
        a.add_transition(v, 0, q);
        auto s = walk_length_set(a, p, q);
        CHECK(s.period() == 6);
        for (uint64_t n = 0; n < 120; ++n) {
            bool expect = (n >= 2) && ((n % 2 == 0) || (n % 3 == 2));
            CHECK(s.contains(n) == expect);
        }
    }
}

TEST_CASE("walk length sets agree with direct length-indexed reachability") {
    auto alphabet = letters_alphabet(2);
    std::mt19937 rng(71);
    for (int round = 0; round < 120; ++round) {
        Nfa a = random_nfa(rng, alphabet, 6);
        auto succ = nfa_successors(a);
        size_t n = succ.size();
        size_t horizon = 4 * n * n;
        std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
        int p = pick(rng);
        auto reach = walk_table(succ, {p}, horizon);
        for (int q = 0; q < static_cast<int>(n); ++q) {
            auto s = walk_length_set(a, p, q);
            for (size_t len = 0; len <= horizon; ++len) {
                if (s.contains(len) != reach[len][static_cast<size_t>(q)]) {
                    CAPTURE(round);
                    CAPTURE(p);
                    CAPTURE(q);
                    CAPTURE(len);
                    REQUIRE(s.contains(len) == reach[len][static_cast<size_t>(q)]);
                }
            }
            if (!s.empty() && !s.infinite()) {
                CHECK(s.contains(s.min()));
                CHECK(s.contains(s.max_finite()));
                CHECK(!s.contains(s.max_finite() + 1));
            }
        }
    }
}

TEST_CASE("walk length tables handle multiple sources") {
    std::vector<std::vector<int>> succ{{1}, {2}, {}};
    WalkLengthTable table(succ, {0, 1});
    auto to2 = table.lengths_to(2);
    CHECK(to2.contains(1));  // from 1
    CHECK(to2.contains(2));  // from 0
    CHECK(!to2.contains(0));
    CHECK(!to2.contains(3));
    auto to0 = table.lengths_to(0);
    CHECK(to0.contains(0));
    CHECK(!to0.contains(1));
}
