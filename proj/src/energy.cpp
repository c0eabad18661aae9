#include "splice/energy.hpp"

#include <stdexcept>

namespace splice {

namespace {

void require_nonneg(int64_t v, const char* name) {
    if (v < 0) throw std::invalid_argument(std::string(name) + " must be >= 0");
}

// m^d1 <= 2^E for m >= 1, d1 >= 1, any integer E.
bool pow_le_pow2(uint64_t m, uint64_t d1, int64_t e) {
    if (e < 0) return false;  // m^d1 >= 1 > 2^e
    if (m == 1) return true;
    // bit-length band: 2^(d1*(b-1)) <= m^d1 < 2^(d1*b) for b = bitlen(m)
    uint64_t b = 64 - static_cast<uint64_t>(__builtin_clzll(m));
    if (d1 * (b - 1) > static_cast<uint64_t>(e)) return false;
    if (d1 * b <= static_cast<uint64_t>(e)) return true;
    mpz_class lhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), m, static_cast<unsigned long>(d1));
    mpz_class rhs = 1;
    rhs <<= static_cast<unsigned long>(e);
    return lhs <= rhs;
}

}  // namespace

EnergyModel EnergyModel::con(int64_t c) {
    require_nonneg(c, "c");
    EnergyModel m;
    m.kind = ModelKind::Con;
    m.c = c;
    return m;
}

EnergyModel EnergyModel::lin(int64_t d1, int64_t d2, int64_t d) {
    require_nonneg(d1, "d1");
    require_nonneg(d2, "d2");
    EnergyModel m;
    m.kind = ModelKind::Lin;
    m.d1 = d1;
    m.d2 = d2;
    m.d = d;
    return m;
}

EnergyModel EnergyModel::log(int64_t d1, int64_t d2, int64_t d) {
    require_nonneg(d1, "d1");
    require_nonneg(d2, "d2");
    EnergyModel m;
    m.kind = ModelKind::Log;
    m.d1 = d1;
    m.d2 = d2;
    m.d = d;
    return m;
}

std::string EnergyModel::describe() const {
    switch (kind) {
        case ModelKind::Con: return "con(" + std::to_string(c) + ")";
        case ModelKind::Lin:
            return "lin(" + std::to_string(d1) + "," + std::to_string(d2) + "," + std::to_string(d) + ")";
        case ModelKind::Log:
            return "log(" + std::to_string(d1) + "," + std::to_string(d2) + "," + std::to_string(d) + ")";
    }
    return "?";
}

bool LoopBound::admits(const mpz_class& loop_len) const {
    switch (kind) {
        case Kind::None: return false;
        case Kind::Infinite: return true;
        case Kind::Finite: return loop_len <= value;
    }
    return false;
}

bool LoopBound::admits(size_t loop_len) const {
    return admits(mpz_class(static_cast<unsigned long>(loop_len)));
}

std::string LoopBound::describe() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Infinite: return "inf";
        case Kind::Finite: return value.get_str();
    }
    return "?";
}

size_t max_stem(const Word& w, const Involution& theta) {
    size_t n = w.size();
    size_t s = 0;
    while (s < n / 2 && w[n - 1 - s] == theta(w[s])) ++s;
    return s;
}

LoopBound loop_threshold(const EnergyModel& model, size_t stem_len) {
    LoopBound out;
    int64_t n = static_cast<int64_t>(stem_len);
    switch (model.kind) {
        case ModelKind::Con:
            out.kind = LoopBound::Kind::Finite;
            out.value = static_cast<long>(model.c);
            return out;
        case ModelKind::Lin: {
            // d1*m - d2*n <= d
            mpz_class rhs = mpz_class(static_cast<long>(model.d)) + mpz_class(static_cast<long>(model.d2)) * n;
            if (model.d1 == 0) {
                out.kind = rhs >= 0 ? LoopBound::Kind::Infinite : LoopBound::Kind::None;
                return out;
            }
            if (rhs < 0) {
                out.kind = LoopBound::Kind::None;
                return out;
            }
            out.kind = LoopBound::Kind::Finite;
            mpz_fdiv_q(out.value.get_mpz_t(), rhs.get_mpz_t(), mpz_class(static_cast<long>(model.d1)).get_mpz_t());
            return out;
        }
        case ModelKind::Log: {
            int64_t e = model.d + model.d2 * n;
            if (model.d1 == 0) {
                out.kind = e >= 0 ? LoopBound::Kind::Infinite : LoopBound::Kind::None;
                return out;
            }
            if (e < 0) {
                // only the empty loop qualifies
                out.kind = LoopBound::Kind::Finite;
                out.value = 0;
                return out;
            }
            // largest m with m^d1 <= 2^e, i.e. floor of the d1-th root of 2^e
            mpz_class pow2 = 1;
            pow2 <<= static_cast<unsigned long>(e);
            out.kind = LoopBound::Kind::Finite;
            mpz_root(out.value.get_mpz_t(), pow2.get_mpz_t(), static_cast<unsigned long>(model.d1));
            return out;
        }
    }
    return out;
}

bool loop_admissible(const EnergyModel& model, size_t stem_len, size_t loop_len) {
    int64_t n = static_cast<int64_t>(stem_len);
    int64_t m = static_cast<int64_t>(loop_len);
    switch (model.kind) {
        case ModelKind::Con:
            return m <= model.c;
        case ModelKind::Lin:
            // widths stay well inside int64 at word scale
            return model.d1 * m - model.d2 * n <= model.d;
        case ModelKind::Log: {
            if (model.d1 == 0) return -model.d2 * n <= model.d;
            if (m == 0) return true;  // log2(0) treated as -infinity
            return pow_le_pow2(static_cast<uint64_t>(m), static_cast<uint64_t>(model.d1),
                               model.d + model.d2 * n);
        }
    }
    return false;
}

std::optional<HairpinDecomposition> is_stable_hairpin(const Word& w, const EnergyModel& model,
                                                      const Involution& theta, size_t min_stem) {
    size_t s = max_stem(w, theta);
    if (s < min_stem) return std::nullopt;
    size_t loop = w.size() - 2 * s;
    if (!loop_admissible(model, s, loop)) return std::nullopt;
    return HairpinDecomposition{s, loop};
}

}  // namespace splice
