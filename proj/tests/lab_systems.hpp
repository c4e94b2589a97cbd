#pragma once

#include "parop/fuchsian.hpp"

namespace parop::testing {

// Rank-2 system at 0, 1, 2 whose residues all have spectrum {2/5, 3/5} and
// generate an irreducible monodromy group.
inline FuchsianSystem oper_rank2_system() {
    CMat a1(2), a2(2), a3(2);
    a1(0, 0) = 0.4; a1(0, 1) = 1.0; a1(1, 1) = 0.6;
    a2(0, 0) = 0.6; a2(1, 0) = 1.0; a2(1, 1) = 0.4;
    a3(0, 0) = 0.4; a3(1, 1) = 0.6;
    return build_fuchsian(2, {{cplx(0.0, 0.0), a1}, {cplx(1.0, 0.0), a2},
                              {cplx(2.0, 0.0), a3}});
}

// Trace-free order-2 operator with exponent classes {2/5, 3/5} at 0, 1, 2:
// the Papperitz form with exponents {2/5,3/5},{2/5,3/5},{-3/5,-2/5} (sum 1,
// infinity ordinary), gauged by (z-2)^{-1} to clear the subleading term.
inline MonicOperator oper_rank2_model_operator() {
    std::array<Rat, 3> pts{Rat(0), Rat(1), Rat(2)};
    std::array<std::pair<Rat, Rat>, 3> expo{
        std::make_pair(Rat(2, 5), Rat(3, 5)),
        std::make_pair(Rat(2, 5), Rat(3, 5)),
        std::make_pair(Rat(-3, 5), Rat(-2, 5)),
    };
    return gauge_by_power(riemann_operator(pts, expo), Rat(2), -1);
}

} // namespace parop::testing
