#include "splice/ultimately_periodic.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace splice {
namespace {

struct BitsetHash {
    size_t operator()(const std::vector<uint64_t>& v) const {
        size_t h = 1469598103934665603ull;
        for (uint64_t w : v) {
            h ^= static_cast<size_t>(w);
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

UltimatelyPeriodicSet UltimatelyPeriodicSet::empty_set() { return UltimatelyPeriodicSet{}; }

UltimatelyPeriodicSet UltimatelyPeriodicSet::from_bits(const std::vector<char>& bits,
                                                       size_t tail_start, size_t tail_period) {
    if (tail_period == 0 || bits.size() < tail_start + tail_period) {
        throw std::invalid_argument("inconsistent eventually periodic description");
    }
    auto tail_bit = [&](size_t r) { return bits[tail_start + r] != 0; };

    // The minimal eventual period divides every eventual period, so it is
    // found among the divisors of tail_period.
    size_t period = tail_period;
    for (size_t m = 1; m <= tail_period; ++m) {
        if (tail_period % m != 0) continue;
        bool ok = true;
        for (size_t r = 0; r < tail_period && ok; ++r) {
            if (tail_bit(r) != tail_bit((r + m) % tail_period)) ok = false;
        }
        if (ok) {
            period = m;
            break;
        }
    }

    UltimatelyPeriodicSet out;
    out.period_ = period;
    for (size_t r = 0; r < period; ++r) {
        if (tail_bit(r)) out.residues_.insert((tail_start + r) % period);
    }

    size_t threshold = tail_start;
    while (threshold > 0) {
        bool periodic_bit = out.residues_.count((threshold - 1) % period) > 0;
        if ((bits[threshold - 1] != 0) != periodic_bit) break;
        --threshold;
    }
    out.threshold_ = threshold;
    for (size_t n = 0; n < threshold; ++n) {
        if (bits[n]) out.explicit_.insert(n);
    }
    if (out.residues_.empty()) {
        out.period_ = 1;
    }
    return out;
}

bool UltimatelyPeriodicSet::contains(uint64_t n) const {
    if (n < threshold_) return explicit_.count(n) > 0;
    return residues_.count(n % period_) > 0;
}

uint64_t UltimatelyPeriodicSet::min() const {
    if (!explicit_.empty()) return *explicit_.begin();
    if (residues_.empty()) throw std::logic_error("min of empty set");
    for (uint64_t n = threshold_;; ++n) {
        if (residues_.count(n % period_)) return n;
    }
}

uint64_t UltimatelyPeriodicSet::max_finite() const {
    if (!residues_.empty()) throw std::logic_error("max of infinite set");
    if (explicit_.empty()) throw std::logic_error("max of empty set");
    return *explicit_.rbegin();
}

WalkLengthTable::WalkLengthTable(const std::vector<std::vector<int>>& successors,
                                 const std::vector<int>& sources, size_t step_budget) {
    num_nodes_ = successors.size();
    words_ = (num_nodes_ + 63) / 64;
    std::vector<std::vector<uint64_t>> succ_bits(num_nodes_, std::vector<uint64_t>(words_, 0));
    for (size_t v = 0; v < num_nodes_; ++v) {
        for (int t : successors[v]) {
            if (t < 0 || static_cast<size_t>(t) >= num_nodes_) {
                throw std::out_of_range("successor index out of range");
            }
            succ_bits[v][static_cast<size_t>(t) / 64] |= uint64_t{1} << (static_cast<size_t>(t) % 64);
        }
    }

    std::vector<uint64_t> current(words_, 0);
    for (int s : sources) {
        if (s < 0 || static_cast<size_t>(s) >= num_nodes_) {
            throw std::out_of_range("source index out of range");
        }
        current[static_cast<size_t>(s) / 64] |= uint64_t{1} << (static_cast<size_t>(s) % 64);
    }

    std::unordered_map<std::vector<uint64_t>, size_t, BitsetHash> seen;
    while (true) {
        auto [it, inserted] = seen.try_emplace(current, sequence.size());
        if (!inserted) {
            tail_start_ = it->second;
            tail_period_ = sequence.size() - it->second;
            break;
        }
        sequence.push_back(current);
        if (sequence.size() > step_budget) {
            throw ResourceError("walk length iteration exceeds step budget");
        }
        std::vector<uint64_t> next(words_, 0);
        for (size_t v = 0; v < num_nodes_; ++v) {
            if (current[v / 64] >> (v % 64) & 1) {
                const auto& row = succ_bits[v];
                for (size_t wi = 0; wi < words_; ++wi) next[wi] |= row[wi];
            }
        }
        current = std::move(next);
    }
}

UltimatelyPeriodicSet WalkLengthTable::lengths_to(int target) const {
    if (target < 0 || static_cast<size_t>(target) >= num_nodes_) {
        throw std::out_of_range("target index out of range");
    }
    std::vector<char> bits(sequence.size(), 0);
    for (size_t n = 0; n < sequence.size(); ++n) {
        bits[n] = static_cast<char>(sequence[n][static_cast<size_t>(target) / 64] >>
                                        (static_cast<size_t>(target) % 64) &
                                    1);
    }
    return UltimatelyPeriodicSet::from_bits(bits, tail_start_, tail_period_);
}

bool WalkLengthTable::reachable(int target) const {
    for (size_t n = 0; n < sequence.size(); ++n) {
        if (sequence[n][static_cast<size_t>(target) / 64] >> (static_cast<size_t>(target) % 64) & 1) {
            return true;
        }
    }
    return false;
}

UltimatelyPeriodicSet walk_length_set(const Nfa& a, int p, int q, size_t step_budget) {
    if (a.has_epsilon()) throw std::invalid_argument("walk_length_set: epsilon transitions present");
    std::vector<std::vector<int>> succ(static_cast<size_t>(a.num_states()));
    for (int v = 0; v < a.num_states(); ++v) {
        int last = -1;
        for (const auto& [label, to] : a.out(v)) {
            if (to != last) {
                succ[static_cast<size_t>(v)].push_back(to);
                last = to;
            }
        }
    }
    // out() is ordered by (label, to), so duplicate targets may not be adjacent
    for (auto& row : succ) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    WalkLengthTable table(succ, {p}, step_budget);
    return table.lengths_to(q);
}

}  // namespace splice
