#pragma once

#include <complex>

namespace qfc
{
// Line-center second moments of the out-coupled signal/idler pair, per unit
// bandwidth.  Everything downstream (variance, g2, JSI) is built from these.
struct QuantumMoments
{
    double n_s = 0.0;             // <b_s^dag b_s>
    double n_i = 0.0;             // <b_i^dag b_i>
    std::complex<double> m_si{};  // <b_s b_i>; <b_s^dag b_i^dag> is its conjugate
};
} // namespace qfc
