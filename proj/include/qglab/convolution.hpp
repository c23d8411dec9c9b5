#pragma once

#include "qglab/quantum_group.hpp"

namespace qglab {

// omega in L^1(G) = A^*, stored by its values on the basis.
struct Functional {
    QG owner;
    Vec coeffs;
};

Functional functional(const QG& g, const Vec& values);
Functional basis_functional(const QG& g, int i);
Functional counit_functional(const QG& g);
Functional haar_functional(const QG& g);

// <x, omega>
cd pairing(const AlgebraElement& x, const Functional& w);

Functional convolve(const Functional& a, const Functional& b);
Functional star_l1(const Functional& w);
Functional sharp(const Functional& w);

struct L1Norm {
    double value = 0.0;
    AlgebraElement witness;  // norm <= 1 with <witness, omega> = value
};

L1Norm norm_l1_with_witness(const Functional& w);
double norm_l1(const Functional& w);

// Trace-pairing matrices W_k with omega(x) = sum_k tr(W_k x_k).
std::vector<Mat> trace_pairing_blocks(const Functional& w);

}  // namespace qglab
