#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "splice/energy.hpp"

using namespace splice;
using namespace splice::testing;

TEST_CASE("maximal stem lengths on hand-checked words") {
    Involution theta = wc_involution();
    CHECK(max_stem(rna("UUAGGAGUAAUCCUAA"), theta) == 6);  // loop GUAA
    CHECK(max_stem(rna("AAACGGCUUU"), theta) == 3);        // loop CGGC
    CHECK(max_stem(rna("GAGUAAUC"), theta) == 2);          // loop GUAA
    CHECK(max_stem(rna("AUAU"), theta) == 2);              // empty loop
    CHECK(max_stem(rna("AUU"), theta) == 1);
    CHECK(max_stem(rna("GGG"), theta) == 0);
    CHECK(max_stem(Word{}, theta) == 0);
}

TEST_CASE("loop thresholds per model") {
    auto check_finite = [](const LoopBound& b, long value) {
        REQUIRE(b.kind == LoopBound::Kind::Finite);
        CHECK(b.value == value);
    };
    check_finite(loop_threshold(EnergyModel::con(4), 0), 4);
    check_finite(loop_threshold(EnergyModel::con(4), 9), 4);
    check_finite(loop_threshold(EnergyModel::lin(1, 1, 0), 3), 3);
    check_finite(loop_threshold(EnergyModel::lin(2, 1, 1), 3), 2);   // floor(4/2)
    check_finite(loop_threshold(EnergyModel::log(1, 1, 0), 3), 8);   // 2^3
    check_finite(loop_threshold(EnergyModel::log(2, 1, 0), 3), 2);   // floor(8^(1/2))
    check_finite(loop_threshold(EnergyModel::log(1, 0, 2), 7), 4);
    CHECK(loop_threshold(EnergyModel::lin(1, 1, -4), 3).kind == LoopBound::Kind::None);
    CHECK(loop_threshold(EnergyModel::lin(0, 1, -2), 3).kind == LoopBound::Kind::Infinite);
    CHECK(loop_threshold(EnergyModel::lin(0, 1, -4), 3).kind == LoopBound::Kind::None);
    CHECK(loop_threshold(EnergyModel::log(0, 0, 0), 5).kind == LoopBound::Kind::Infinite);
    // Log with negative exponent still admits the empty loop
    LoopBound tight = loop_threshold(EnergyModel::log(1, 0, -3), 2);
    REQUIRE(tight.kind == LoopBound::Kind::Finite);
    CHECK(tight.value == 0);
}

TEST_CASE("admissibility agrees with direct big-integer evaluation") {
    std::vector<EnergyModel> models;
    for (int64_t c = 0; c <= 4; ++c) models.push_back(EnergyModel::con(c));
    for (int64_t d1 = 0; d1 <= 2; ++d1) {
        for (int64_t d2 = 0; d2 <= 2; ++d2) {
            for (int64_t d = -2; d <= 2; ++d) {
                models.push_back(EnergyModel::lin(d1, d2, d));
                models.push_back(EnergyModel::log(d1, d2, d));
            }
        }
    }
    for (const auto& model : models) {
        for (size_t stem = 0; stem <= 12; ++stem) {
            for (size_t loop = 0; loop <= 40; ++loop) {
                CAPTURE(model.describe());
                CAPTURE(stem);
                CAPTURE(loop);
                CHECK(loop_admissible(model, stem, loop) == brute_stable(model, stem, loop));
                LoopBound bound = loop_threshold(model, stem);
                CHECK(bound.admits(loop) == brute_stable(model, stem, loop));
            }
        }
    }
}

TEST_CASE("threshold boundaries are exact for large exponents") {
    // m^d1 <= 2^e right at the boundary, far beyond double precision
    EnergyModel model = EnergyModel::log(2, 1, 100);  // threshold 2^((100+stem)/2)
    LoopBound b = loop_threshold(model, 0);
    REQUIRE(b.kind == LoopBound::Kind::Finite);
    mpz_class expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), 2, 50);
    CHECK(b.value == expect);
    CHECK(loop_admissible(model, 0, static_cast<size_t>(1) << 50));
    CHECK(!b.admits(expect + 1));
}

TEST_CASE("stable hairpin detection matches the all-stems oracle") {
    Involution theta = wc_involution();
    std::vector<EnergyModel> models = {
        EnergyModel::con(0),        EnergyModel::con(4),        EnergyModel::lin(1, 1, 0),
        EnergyModel::lin(1, 0, 2),  EnergyModel::lin(0, 1, -2), EnergyModel::log(1, 1, 0),
        EnergyModel::log(2, 2, -1),
    };
    std::mt19937 rng(11);
    for (int i = 0; i < 400; ++i) {
        Word w = random_word(rng, theta.alphabet(), 10);
        for (const auto& model : models) {
            for (size_t min_stem = 0; min_stem <= 2; ++min_stem) {
                bool direct = false;
                for (size_t stem = min_stem; 2 * stem <= w.size() && !direct; ++stem) {
                    Word prefix(w.begin(), w.begin() + static_cast<long>(stem));
                    Word suffix(w.end() - static_cast<long>(stem), w.end());
                    if (theta(prefix) == suffix && brute_stable(model, stem, w.size() - 2 * stem)) {
                        direct = true;
                    }
                }
                CAPTURE(model.describe());
                CAPTURE(min_stem);
                CHECK(is_stable_hairpin(w, model, theta, min_stem).has_value() == direct);
            }
        }
    }
}

TEST_CASE("worked stability decisions") {
    Involution theta = wc_involution();
    CHECK(is_stable_hairpin(rna("AAACGGCUUU"), EnergyModel::log(1, 1, 0), theta, 2));
    CHECK(!is_stable_hairpin(rna("AAACGGCUUU"), EnergyModel::lin(1, 1, 0), theta, 2));
    CHECK(is_stable_hairpin(rna("AAACGGCUUU"), EnergyModel::con(4), theta, 2));
    CHECK(is_stable_hairpin(rna("GAGUAAUC"), EnergyModel::log(1, 1, 0), theta, 1));
    CHECK(!is_stable_hairpin(rna("GAGUAAUC"), EnergyModel::lin(1, 1, 0), theta, 1));
    CHECK(is_stable_hairpin(rna("UUAGGAGUAAUCCUAA"), EnergyModel::lin(1, 1, 0), theta, 1));
    auto h = is_stable_hairpin(rna("UUAGGAGUAAUCCUAA"), EnergyModel::lin(1, 1, 0), theta, 1);
    REQUIRE(h.has_value());
    CHECK(h->stem == 6);
    CHECK(h->loop == 4);
}
