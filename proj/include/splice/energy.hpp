#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "splice/alphabet.hpp"

namespace splice {

// Hairpin stability models. A hairpin x l theta(x) with stem length n = |x|
// and loop length m = |l| is stable when
//   Con(c):          m <= c
//   Lin(d1, d2, d):  d1*m - d2*n <= d
//   Log(d1, d2, d):  d1*log2(m) - d2*n <= d   (m = 0 always stable for d1 > 0)
// All decisions are exact: the Log case reduces to the integer comparison
// m^d1 <= 2^(d + d2*n).
enum class ModelKind { Con, Lin, Log };

struct EnergyModel {
    ModelKind kind = ModelKind::Con;
    int64_t c = 0;            // Con
    int64_t d1 = 0, d2 = 0;   // Lin/Log weights, both >= 0
    int64_t d = 0;            // Lin/Log offset, may be negative

    static EnergyModel con(int64_t c);
    static EnergyModel lin(int64_t d1, int64_t d2, int64_t d);
    static EnergyModel log(int64_t d1, int64_t d2, int64_t d);

    std::string describe() const;
    bool operator==(const EnergyModel&) const = default;
};

// Largest admissible loop length for a given stem length: a finite value,
// unbounded, or no admissible loop at all (not even the empty one).
struct LoopBound {
    enum class Kind { None, Finite, Infinite };
    Kind kind = Kind::None;
    mpz_class value;  // meaningful only for Finite

    bool admits(const mpz_class& loop_len) const;
    bool admits(size_t loop_len) const;
    std::string describe() const;
};

// Largest s <= |w|/2 such that the length-s prefix and suffix pair under
// theta, i.e. w = x l theta(x) for every stem length up to s.
size_t max_stem(const Word& w, const Involution& theta);

LoopBound loop_threshold(const EnergyModel& model, size_t stem_len);

// Exact stability test for stem length n and loop length m; equivalent to
// loop_threshold(model, n).admits(m) but avoids building huge thresholds.
bool loop_admissible(const EnergyModel& model, size_t stem_len, size_t loop_len);

struct HairpinDecomposition {
    size_t stem = 0;
    size_t loop = 0;
    bool operator==(const HairpinDecomposition&) const = default;
};

// Is w = x l theta(x) for some stem |x| >= min_stem whose loop is admissible?
// Checking the maximal stem suffices: admissible stems are upward closed
// (shrinking the loop by two while growing the stem never hurts for
// d1, d2 >= 0). Returns the maximal-stem decomposition on success.
std::optional<HairpinDecomposition> is_stable_hairpin(const Word& w, const EnergyModel& model,
                                                      const Involution& theta, size_t min_stem = 0);

}  // namespace splice
