#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "splice/nfa.hpp"

namespace splice {

// A set of natural numbers that is eventually periodic: below threshold()
// membership is listed explicitly, at or above it membership depends only on
// the residue modulo period(). Stored in canonical form (minimal period, then
// minimal threshold).
class UltimatelyPeriodicSet {
public:
    // bits[n] gives membership for n < tail_start + tail_period, and the
    // pattern repeats with tail_period from tail_start on.
    static UltimatelyPeriodicSet from_bits(const std::vector<char>& bits, size_t tail_start,
                                           size_t tail_period);
    static UltimatelyPeriodicSet empty_set();

    bool contains(uint64_t n) const;
    bool empty() const { return explicit_.empty() && residues_.empty(); }
    bool infinite() const { return !residues_.empty(); }
    uint64_t min() const;         // smallest member; throws on empty set
    uint64_t max_finite() const;  // largest member; throws unless finite and nonempty

    uint64_t threshold() const { return threshold_; }
    uint64_t period() const { return period_; }
    const std::set<uint64_t>& residues() const { return residues_; }
    const std::set<uint64_t>& explicit_values() const { return explicit_; }

private:
    std::set<uint64_t> explicit_;  // members below threshold_
    uint64_t threshold_ = 0;
    uint64_t period_ = 1;
    std::set<uint64_t> residues_;  // residue classes that are members from threshold_ on
};

// Walk lengths from a fixed source set in a directed graph, for every target
// at once. The subset sequence S_0 = sources, S_{n+1} = successors(S_n) is
// iterated until the first repeat, which pins down the exact eventually
// periodic behaviour of every membership sequence.
class WalkLengthTable {
public:
    WalkLengthTable(const std::vector<std::vector<int>>& successors, const std::vector<int>& sources,
                    size_t step_budget = 1u << 20);

    UltimatelyPeriodicSet lengths_to(int target) const;
    bool reachable(int target) const;
    size_t tail_start() const { return tail_start_; }
    size_t tail_period() const { return tail_period_; }

private:
    size_t num_nodes_;
    size_t words_;
    std::vector<std::vector<uint64_t>> sequence;  // sequence[n] = bitset of nodes with a length-n walk
    size_t tail_start_ = 0;
    size_t tail_period_ = 1;
};

// Lengths of walks from p to q in an epsilon-free automaton, one step per
// transition regardless of label.
UltimatelyPeriodicSet walk_length_set(const Nfa& a, int p, int q, size_t step_budget = 1u << 20);

}  // namespace splice
