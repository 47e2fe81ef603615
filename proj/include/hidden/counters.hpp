#pragma once

#include <cstdint>

namespace hidden {

// Per-call-context accumulator for the dominant operations. Passed by
// pointer to the primitives; a null pointer disables accounting. Costs
// follow the pricing convention of the protocols: a complex modular
// exponentiation counts as one unit here and as four integer modular
// exponentiations in equivalent terms.
struct OpCounters {
    std::uint64_t complex_modexp = 0; // modexp in Z[i]*_p
    std::uint64_t int_modexp = 0;     // modexp in Z*_p (incl. priced inversions)
    std::uint64_t modexp_n2 = 0;      // modexp mod n^2 (Paillier)

    void reset() { *this = OpCounters{}; }

    // 4x rule: one complex modexp ~ four integer modexps.
    std::uint64_t equivalent_int_modexp() const {
        return 4 * complex_modexp + int_modexp;
    }
};

inline void count_complex_modexp(OpCounters* c) { if (c) ++c->complex_modexp; }
inline void count_int_modexp(OpCounters* c) { if (c) ++c->int_modexp; }
inline void count_modexp_n2(OpCounters* c, std::uint64_t k = 1) { if (c) c->modexp_n2 += k; }

} // namespace hidden
